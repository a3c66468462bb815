use super::{detect_extrema, AmplitudeSeries, DspError};
use crate::classifier::ClassifierConfig;

/// Summary statistics of an amplitude series, phrased in the vocabulary the
/// rule classifier reasons with.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFeatures {
    /// max - min of the series.
    pub variation_range: f64,
    /// Number of extrema whose prominence reaches
    /// `prominence_sigma_factor * std(series)`.
    pub num_large_extrema: usize,
    /// Largest prominence divided by the second largest among the large
    /// extrema; infinite when fewer than two qualify.
    pub dominant_ratio: f64,
    /// Standard deviation of the samples strictly after the most prominent
    /// extremum; the whole-series deviation when no extremum qualifies.
    pub post_event_std: f64,
    /// Mean absolute first difference divided by the variation range;
    /// zero for constant series.
    pub smoothness: f64,
}

/// Computes [`SeriesFeatures`] using the prominence rule from `config`: an
/// extremum counts as "large" when its prominence reaches
/// `prominence_sigma_factor` times the series standard deviation.
pub fn extract_features(
    series: &AmplitudeSeries,
    config: &ClassifierConfig,
) -> Result<SeriesFeatures, DspError> {
    if series.len() < 3 {
        return Err(DspError::SeriesTooShort {
            len: series.len(),
            required: 3,
        });
    }
    let values = series.values();
    let std = series.std();
    let variation_range = series.max() - series.min();

    let large = detect_extrema(series, config.prominence_sigma_factor * std);

    let dominant_ratio = match large.top_prominences() {
        (Some(first), Some(second)) if second > 0.0 => first / second,
        _ => f64::INFINITY,
    };

    let post_event_std = match large.most_prominent() {
        Some(e) if e.index + 1 < values.len() => slice_std(&values[e.index + 1..]),
        Some(_) => 0.0,
        None => std,
    };

    let mean_abs_diff = values
        .windows(2)
        .map(|w| (w[1] - w[0]).abs())
        .sum::<f64>()
        / (values.len() - 1) as f64;
    let smoothness = if variation_range > 0.0 {
        mean_abs_diff / variation_range
    } else {
        0.0
    };

    Ok(SeriesFeatures {
        variation_range,
        num_large_extrema: large.len(),
        dominant_ratio,
        post_event_std,
        smoothness,
    })
}

fn slice_std(v: &[f64]) -> f64 {
    if v.is_empty() {
        return 0.0;
    }
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    (v.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / v.len() as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn series(values: Vec<f64>, rate: f64) -> AmplitudeSeries {
        AmplitudeSeries::new(values, rate).unwrap()
    }

    #[test]
    fn constant_series_has_zero_range_and_no_extrema() {
        let f = extract_features(&series(vec![2.0; 100], 10.0), &ClassifierConfig::default()).unwrap();
        assert_eq!(f.variation_range, 0.0);
        assert_eq!(f.num_large_extrema, 0);
        assert_eq!(f.smoothness, 0.0);
        assert!(f.dominant_ratio.is_infinite());
    }

    #[test]
    fn slow_sine_peak_to_peak_equals_twice_amplitude() {
        // 0.3 Hz sine, amplitude 2, 5 s at 100 Hz.
        let n = 500;
        let values: Vec<f64> = (0..n)
            .map(|i| 10.0 + 2.0 * (TAU * 0.3 * i as f64 / 100.0).sin())
            .collect();
        let f = extract_features(&series(values, 100.0), &ClassifierConfig::default()).unwrap();
        assert!((f.variation_range - 4.0).abs() < 0.01);
    }

    #[test]
    fn pulse_then_flat_has_dominant_extremum_and_quiet_tail() {
        // Hand-constructed fall-shaped series: a single pulse that releases
        // straight back to the baseline, then flat. Independently computed:
        // the pulse peak is the only extremum, so the dominance ratio is
        // infinite and everything after the peak has zero deviation.
        let mut values = vec![1.0; 500];
        for (k, v) in values[40..51].iter_mut().enumerate() {
            let x = k as f64 / 10.0;
            *v = 1.0 + 8.0 * x * x;
        }
        let f = extract_features(&series(values, 100.0), &ClassifierConfig::default()).unwrap();
        assert_eq!(f.num_large_extrema, 1);
        assert!(f.dominant_ratio.is_infinite());
        assert!(f.post_event_std < 1e-12);
    }

    #[test]
    fn too_short_series_is_rejected() {
        let err = extract_features(&series(vec![1.0, 2.0], 10.0), &ClassifierConfig::default());
        assert!(matches!(err, Err(DspError::SeriesTooShort { .. })));
    }
}
