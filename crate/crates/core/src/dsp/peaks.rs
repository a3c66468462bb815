//! Local extrema with topographic prominence.
//!
//! The prominence of a peak is its height above the higher of the two
//! lowest points separating it from strictly higher terrain (or from the
//! series boundary if no higher point exists on that side). Troughs are the
//! peaks of the negated series. Plateaus count once and report their
//! leftmost index.

use super::AmplitudeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Peak,
    Trough,
}

/// One detected local extremum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    /// Sample index (leftmost index for plateaus).
    pub index: usize,
    /// Series value at the extremum.
    pub value: f64,
    /// Topographic prominence; always non-negative.
    pub prominence: f64,
    pub kind: ExtremumKind,
}

/// Extrema of a series, ordered by index.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PeakSet {
    extrema: Vec<Extremum>,
}

impl PeakSet {
    pub fn extrema(&self) -> &[Extremum] {
        &self.extrema
    }

    pub fn len(&self) -> usize {
        self.extrema.len()
    }

    pub fn is_empty(&self) -> bool {
        self.extrema.is_empty()
    }

    pub fn peaks(&self) -> impl Iterator<Item = &Extremum> {
        self.extrema.iter().filter(|e| e.kind == ExtremumKind::Peak)
    }

    pub fn troughs(&self) -> impl Iterator<Item = &Extremum> {
        self.extrema.iter().filter(|e| e.kind == ExtremumKind::Trough)
    }

    /// The extremum with the largest prominence; ties resolve to the lowest
    /// index. `None` when the set is empty.
    pub fn most_prominent(&self) -> Option<&Extremum> {
        self.extrema
            .iter()
            .reduce(|best, e| if e.prominence > best.prominence { e } else { best })
    }

    /// The two largest prominences in descending order.
    pub fn top_prominences(&self) -> (Option<f64>, Option<f64>) {
        let mut first = None;
        let mut second = None;
        for e in &self.extrema {
            if first.map_or(true, |f| e.prominence > f) {
                second = first;
                first = Some(e.prominence);
            } else if second.map_or(true, |s| e.prominence > s) {
                second = Some(e.prominence);
            }
        }
        (first, second)
    }
}

/// Finds all local maxima and minima whose topographic prominence reaches
/// `prominence_threshold` (negative thresholds behave like zero). An empty
/// set is a valid result; monotone series have no interior extrema.
pub fn detect_extrema(series: &AmplitudeSeries, prominence_threshold: f64) -> PeakSet {
    let threshold = prominence_threshold.max(0.0);
    let values = series.values();
    let negated: Vec<f64> = values.iter().map(|v| -v).collect();

    let mut extrema = Vec::new();
    for index in local_maxima(values) {
        let prominence = prominence_at(values, index);
        if prominence >= threshold {
            extrema.push(Extremum {
                index,
                value: values[index],
                prominence,
                kind: ExtremumKind::Peak,
            });
        }
    }
    for index in local_maxima(&negated) {
        let prominence = prominence_at(&negated, index);
        if prominence >= threshold {
            extrema.push(Extremum {
                index,
                value: values[index],
                prominence,
                kind: ExtremumKind::Trough,
            });
        }
    }
    extrema.sort_by_key(|e| e.index);
    PeakSet { extrema }
}

/// Interior local maxima; plateaus report their leftmost sample.
fn local_maxima(v: &[f64]) -> Vec<usize> {
    let n = v.len();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let mut i = 1;
    while i < n - 1 {
        if v[i] > v[i - 1] {
            let start = i;
            while i + 1 < n && v[i + 1] == v[i] {
                i += 1;
            }
            if i + 1 < n && v[i + 1] < v[i] {
                out.push(start);
            }
        }
        i += 1;
    }
    out
}

/// Prominence of the local maximum at `p`: walk out on both sides until a
/// strictly higher sample (or the boundary), track the minimum of each walk,
/// and measure the height above the higher of the two minima.
fn prominence_at(v: &[f64], p: usize) -> f64 {
    let h = v[p];
    let mut left_min = h;
    let mut j = p;
    while j > 0 && v[j - 1] <= h {
        j -= 1;
        if v[j] < left_min {
            left_min = v[j];
        }
    }
    let mut right_min = h;
    let mut j = p;
    while j + 1 < v.len() && v[j + 1] <= h {
        j += 1;
        if v[j] < right_min {
            right_min = v[j];
        }
    }
    h - left_min.max(right_min)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(values: Vec<f64>) -> AmplitudeSeries {
        AmplitudeSeries::new(values, 10.0).unwrap()
    }

    #[test]
    fn monotone_series_has_no_extrema() {
        let s = series((0..20).map(|i| i as f64).collect());
        assert!(detect_extrema(&s, 0.0).is_empty());
    }

    #[test]
    fn triangle_pulse_prominence_equals_height() {
        // Brute-force oracle for the 11-point pulse: one interior maximum,
        // both walks reach the boundary, both side minima are the baseline,
        // so prominence = 8 - 0 = 8.
        let s = series(vec![0.0, 0.0, 0.0, 2.0, 4.0, 6.0, 8.0, 6.0, 4.0, 2.0, 0.0]);
        let set = detect_extrema(&s, 3.0);
        assert_eq!(set.len(), 1);
        let e = set.extrema()[0];
        assert_eq!(e.index, 6);
        assert_eq!(e.value, 8.0);
        assert_eq!(e.prominence, 8.0);
        assert_eq!(e.kind, ExtremumKind::Peak);
    }

    #[test]
    fn five_period_sine_has_five_peaks_and_troughs() {
        let n = 1000;
        let s = series(
            (0..n)
                .map(|i| (std::f64::consts::TAU * 5.0 * i as f64 / n as f64).sin())
                .collect(),
        );
        let set = detect_extrema(&s, 0.5);
        assert_eq!(set.peaks().count(), 5);
        assert_eq!(set.troughs().count(), 5);
    }

    #[test]
    fn plateau_reports_leftmost_index_once() {
        let s = series(vec![0.0, 1.0, 3.0, 3.0, 3.0, 1.0, 0.0]);
        let set = detect_extrema(&s, 0.0);
        assert_eq!(set.len(), 1);
        assert_eq!(set.extrema()[0].index, 2);
    }

    #[test]
    fn boundary_plateau_is_not_an_extremum() {
        let s = series(vec![3.0, 3.0, 2.0, 1.0, 0.0]);
        assert!(detect_extrema(&s, 0.0).is_empty());
    }

    #[test]
    fn threshold_filters_small_extrema() {
        let s = series(vec![0.0, 0.5, 0.0, 5.0, 0.0, 0.4, 0.0]);
        assert_eq!(detect_extrema(&s, 1.0).len(), 1);
        // threshold 0 keeps the small peaks and the interior troughs
        assert!(detect_extrema(&s, 0.0).len() > 1);
    }

    #[test]
    fn trough_prominence_mirrors_negated_peaks() {
        let v = vec![5.0, 3.0, 5.0, 5.5, 1.0, 5.0, 4.0, 6.0];
        let s = series(v.clone());
        let neg = series(v.iter().map(|x| -x).collect());
        let troughs: Vec<(usize, f64)> = detect_extrema(&s, 0.0)
            .troughs()
            .map(|e| (e.index, e.prominence))
            .collect();
        let neg_peaks: Vec<(usize, f64)> = detect_extrema(&neg, 0.0)
            .peaks()
            .map(|e| (e.index, e.prominence))
            .collect();
        assert_eq!(troughs, neg_peaks);
    }
}
