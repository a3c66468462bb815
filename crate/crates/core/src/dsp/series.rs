use super::DspError;
use crate::csi::CsiSegment;

/// A real-valued amplitude time series at a known sample rate. The unit of
/// smoothing, feature extraction and classification.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeSeries {
    values: Vec<f64>,
    sample_rate: f64,
}

impl AmplitudeSeries {
    /// Validates that the series is non-empty, finite, and has a positive
    /// sample rate.
    pub fn new(values: Vec<f64>, sample_rate: f64) -> Result<Self, DspError> {
        if values.is_empty() {
            return Err(DspError::SeriesTooShort { len: 0, required: 1 });
        }
        if !(sample_rate > 0.0) || !sample_rate.is_finite() {
            return Err(DspError::InvalidSampleRate(sample_rate));
        }
        for (index, &value) in values.iter().enumerate() {
            if !value.is_finite() {
                return Err(DspError::NonFiniteSample { index, value });
            }
        }
        Ok(Self {
            values,
            sample_rate,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn duration(&self) -> f64 {
        self.values.len() as f64 / self.sample_rate
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Population standard deviation.
    pub fn std(&self) -> f64 {
        let mean = self.mean();
        let var = self
            .values
            .iter()
            .map(|v| (v - mean) * (v - mean))
            .sum::<f64>()
            / self.values.len() as f64;
        var.sqrt()
    }

    pub fn min(&self) -> f64 {
        self.values.iter().cloned().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Amplitude of a single subcarrier across all frames.
pub fn amplitude_of(segment: &CsiSegment, subcarrier_index: usize) -> Result<AmplitudeSeries, DspError> {
    let count = segment.subcarrier_count();
    if subcarrier_index >= count {
        return Err(DspError::SubcarrierOutOfRange {
            index: subcarrier_index,
            count,
        });
    }
    let values = segment
        .frames()
        .iter()
        .map(|f| f.subcarriers[subcarrier_index].amplitude())
        .collect();
    AmplitudeSeries::new(values, segment.sample_rate())
}

/// Arithmetic mean of the per-subcarrier amplitudes of each frame. With
/// independent I/Q noise this cuts per-sample variance by roughly a factor
/// of the subcarrier count.
pub fn mean_amplitude(segment: &CsiSegment) -> Result<AmplitudeSeries, DspError> {
    let count = segment.subcarrier_count();
    let values = segment
        .frames()
        .iter()
        .map(|f| f.subcarriers.iter().map(|s| s.amplitude()).sum::<f64>() / count as f64)
        .collect();
    AmplitudeSeries::new(values, segment.sample_rate())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csi::{ComplexSample, CsiFrame, CsiSegment};

    fn segment_from_samples(rows: Vec<Vec<ComplexSample>>) -> CsiSegment {
        let n = rows.len();
        let frames = rows
            .into_iter()
            .enumerate()
            .map(|(i, s)| CsiFrame::new(i as f64 / 10.0, s))
            .collect();
        CsiSegment::new(frames, 10.0, n as f64 / 10.0, None).unwrap()
    }

    #[test]
    fn amplitude_of_three_four_samples_is_five() {
        let seg = segment_from_samples(vec![vec![ComplexSample::new(3.0, 4.0); 2]; 5]);
        let series = amplitude_of(&seg, 0).unwrap();
        assert!(series.values().iter().all(|&v| v == 5.0));
        assert_eq!(series.len(), 5);
    }

    #[test]
    fn amplitude_of_zero_sample_is_zero() {
        let seg = segment_from_samples(vec![vec![ComplexSample::new(0.0, 0.0); 2]; 3]);
        let series = amplitude_of(&seg, 1).unwrap();
        assert!(series.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn amplitude_of_rejects_out_of_range_index() {
        let seg = segment_from_samples(vec![vec![ComplexSample::new(1.0, 0.0); 2]; 3]);
        assert_eq!(
            amplitude_of(&seg, 2),
            Err(DspError::SubcarrierOutOfRange { index: 2, count: 2 })
        );
    }

    #[test]
    fn mean_amplitude_of_identical_subcarriers_matches_single() {
        let seg = segment_from_samples(vec![vec![ComplexSample::new(3.0, 4.0); 4]; 6]);
        let mean = mean_amplitude(&seg).unwrap();
        let single = amplitude_of(&seg, 2).unwrap();
        assert_eq!(mean, single);
    }

    #[test]
    fn mean_amplitude_averages_subcarriers() {
        // Subcarrier amplitudes 1..=30, constant in time -> mean 15.5.
        let row: Vec<ComplexSample> = (1..=30).map(|k| ComplexSample::new(k as f64, 0.0)).collect();
        let seg = segment_from_samples(vec![row; 4]);
        let mean = mean_amplitude(&seg).unwrap();
        for &v in mean.values() {
            assert!((v - 15.5).abs() < 1e-12);
        }
    }

    #[test]
    fn series_rejects_non_finite_and_empty() {
        assert!(AmplitudeSeries::new(vec![], 10.0).is_err());
        assert!(AmplitudeSeries::new(vec![1.0, f64::NAN], 10.0).is_err());
        assert!(AmplitudeSeries::new(vec![1.0], 0.0).is_err());
    }
}
