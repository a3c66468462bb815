//! Wi-Fi CSI activity sensing toolkit.
//!
//! The crate covers the whole pipeline from physics to metrics:
//!
//! - [`csi`] — domain types plus a multipath simulator that synthesises
//!   channel-state segments for four activity scenarios (breathing, walking,
//!   falling, no event).
//! - [`dsp`] — amplitude extraction, Savitzky-Golay smoothing, peak/trough
//!   detection with topographic prominence, and series features.
//! - [`classifier`] — a deterministic zero-shot rule engine that turns those
//!   features into an activity label with a step-by-step decision trace.
//! - [`prompting`] — text and plot representations of a series and the five
//!   prompt strategies for chat-completion models.
//! - [`gateway`] — a pluggable chat-completion backend: an HTTP client for
//!   OpenAI-compatible endpoints plus a scriptable mock for offline runs.
//! - [`harness`] — segment file IO, synthetic dataset generation,
//!   evaluation metrics and the experiment runner behind the CLI.

pub mod classifier;
pub mod csi;
pub mod dsp;
pub mod gateway;
pub mod harness;
pub mod prompting;

mod util;
