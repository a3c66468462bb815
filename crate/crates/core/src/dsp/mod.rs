//! Amplitude-series processing: extraction, smoothing, peak detection and
//! the features the rule classifier consumes.

mod features;
mod peaks;
mod savgol;
mod series;

pub use features::{extract_features, SeriesFeatures};
pub use peaks::{detect_extrema, Extremum, ExtremumKind, PeakSet};
pub use savgol::{savgol_smooth, savgol_weights};
pub use series::{amplitude_of, mean_amplitude, AmplitudeSeries};

use thiserror::Error;

/// Default Savitzky-Golay window length (samples) at the default 1000 Hz
/// packet rate: long enough to average out I/Q noise, short enough to keep a
/// fall transient intact.
pub const DEFAULT_SAVGOL_WINDOW: usize = 31;
/// Default Savitzky-Golay polynomial order.
pub const DEFAULT_SAVGOL_POLY_ORDER: usize = 3;

/// Errors raised by series construction and processing.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DspError {
    #[error("series must contain at least {required} samples, got {len}")]
    SeriesTooShort { len: usize, required: usize },
    #[error("series values must be finite (sample {index} is {value})")]
    NonFiniteSample { index: usize, value: f64 },
    #[error("sample_rate must be positive, got {0}")]
    InvalidSampleRate(f64),
    #[error("subcarrier index {index} out of range for {count} subcarriers")]
    SubcarrierOutOfRange { index: usize, count: usize },
    #[error("window must be odd, got {0}")]
    EvenWindow(usize),
    #[error("window {window} too small for polynomial order {poly_order} (need >= order + 2)")]
    WindowTooSmall { window: usize, poly_order: usize },
    #[error("evaluation offset {offset} outside window half-width {half}")]
    OffsetOutOfWindow { offset: isize, half: usize },
    #[error("numerical failure: {0}")]
    Numerical(String),
}
