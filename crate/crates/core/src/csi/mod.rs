//! CSI domain types and the multipath channel simulator.
//!
//! The channel response seen by a receiver is modelled as the sum of a
//! static component (line of sight plus stationary reflectors) and a single
//! dynamic component reflected off a moving target. The dynamic component's
//! phase advances by 2π for every wavelength of path-length change, so the
//! overall amplitude oscillates between `|H_s| + |H_d|` (constructive) and
//! `|H_s| - |H_d|` (destructive) as the target moves.

mod label;
mod params;
mod scenario;
mod segment;
mod simulator;
mod trajectory;

pub use label::ActivityLabel;
pub use params::{
    ScenarioParams, DEFAULT_DYNAMIC_ATTENUATION, DEFAULT_NOISE_SIGMA, DEFAULT_STATIC_AMPLITUDE,
    DEFAULT_WAVELENGTH,
};
pub use scenario::make_scenario;
pub use segment::{ComplexSample, CsiFrame, CsiSegment, DEFAULT_SUBCARRIERS};
pub use simulator::simulate;
pub use trajectory::PathTrajectory;

use thiserror::Error;

/// Default packet (frame) rate in Hz.
pub const DEFAULT_SAMPLE_RATE: f64 = 1000.0;
/// Default segment length in seconds.
pub const DEFAULT_DURATION: f64 = 5.0;

/// Errors raised when constructing or simulating CSI data.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CsiError {
    /// A scenario or simulation parameter violates its invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    /// A segment violates a structural invariant.
    #[error("invalid segment: {0}")]
    InvalidSegment(String),
}
