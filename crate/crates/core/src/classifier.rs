//! Deterministic zero-shot activity classifier.
//!
//! The rules run in a fixed order and the first match wins: a tiny
//! variation range means no event; a single dominant extremum followed by a
//! quiet tail means a fall; many large extrema mean walking; a smooth series
//! with moderate range means breathing; anything else falls back on the
//! variation range alone. Every evaluated step lands in the decision trace,
//! so a classification can be audited after the fact.
//!
//! All thresholds compare ranges, prominences and deviations — never
//! absolute levels — so adding a constant offset to a series cannot change
//! the decision.

use thiserror::Error;

use crate::csi::ActivityLabel;
use crate::dsp::{extract_features, AmplitudeSeries, DspError, SeriesFeatures};

/// Thresholds for the rule engine. The defaults are tuned to the simulator's
/// default scale (static magnitude 10, dynamic magnitude 3); real hardware
/// reports different amplitude scales, so everything is adjustable.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierConfig {
    /// Rule 1: variation ranges below this mean "no event".
    pub noevent_range_max: f64,
    /// Rule 4: breathing must stay below this variation range.
    pub breath_range_max: f64,
    /// An extremum is "large" when its prominence reaches this multiple of
    /// the series standard deviation. The smoothing kernel's own over- and
    /// undershoot around a sharp transient reaches roughly 3-4 sigma, so the
    /// default sits above that.
    pub prominence_sigma_factor: f64,
    /// Rule 3: at least this many large extrema mean walking.
    pub walk_min_extrema: usize,
    /// Rule 2: the largest prominence must exceed the runner-up by this
    /// factor.
    pub dominance_ratio: f64,
    /// Rule 2: the samples after the dominant extremum must stay within
    /// this standard deviation.
    pub stable_tail_std_max: f64,
    /// Rule 4: breathing smoothness bound (mean |first difference| over
    /// variation range).
    pub smoothness_max_for_breath: f64,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        Self {
            noevent_range_max: 1.0,
            breath_range_max: 5.0,
            prominence_sigma_factor: 4.5,
            walk_min_extrema: 3,
            dominance_ratio: 2.0,
            stable_tail_std_max: 0.5,
            smoothness_max_for_breath: 0.05,
        }
    }
}

impl ClassifierConfig {
    pub fn validate(&self) -> Result<(), ClassifierError> {
        let positive = [
            ("noevent_range_max", self.noevent_range_max),
            ("breath_range_max", self.breath_range_max),
            ("prominence_sigma_factor", self.prominence_sigma_factor),
            ("dominance_ratio", self.dominance_ratio),
            ("stable_tail_std_max", self.stable_tail_std_max),
            ("smoothness_max_for_breath", self.smoothness_max_for_breath),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return Err(ClassifierError::InvalidConfig(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        if self.walk_min_extrema == 0 {
            return Err(ClassifierError::InvalidConfig(
                "walk_min_extrema must be positive".into(),
            ));
        }
        if self.noevent_range_max >= self.breath_range_max {
            return Err(ClassifierError::InvalidConfig(format!(
                "noevent_range_max ({}) must be below breath_range_max ({})",
                self.noevent_range_max, self.breath_range_max
            )));
        }
        Ok(())
    }
}

/// One evaluated rule step.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceStep {
    pub step: &'static str,
    pub measured: f64,
    pub threshold: f64,
    pub passed: bool,
}

impl TraceStep {
    fn new(step: &'static str, measured: f64, threshold: f64, passed: bool) -> Self {
        Self {
            step,
            measured,
            threshold,
            passed,
        }
    }
}

/// A classification plus the ordered record of every rule step that was
/// evaluated to reach it.
#[derive(Debug, Clone, PartialEq)]
pub struct Decision {
    pub label: ActivityLabel,
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ClassifierError {
    #[error("invalid classifier config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Series(#[from] DspError),
}

/// Applies the rules in fixed order and returns on the first match.
pub fn classify(
    series: &AmplitudeSeries,
    config: &ClassifierConfig,
) -> Result<Decision, ClassifierError> {
    config.validate()?;
    let features = extract_features(series, config)?;
    Ok(decide(&features, config))
}

/// Rule evaluation on precomputed features.
pub fn decide(features: &SeriesFeatures, config: &ClassifierConfig) -> Decision {
    let mut trace = Vec::new();

    // Rule 1: a very small variation range means nothing happened.
    let noevent = features.variation_range < config.noevent_range_max;
    trace.push(TraceStep::new(
        "no_event_range",
        features.variation_range,
        config.noevent_range_max,
        noevent,
    ));
    if noevent {
        return Decision {
            label: ActivityLabel::NoEvent,
            trace,
        };
    }

    // Rule 2: exactly one large extremum, clearly dominant, with a stable
    // tail after it.
    let single = features.num_large_extrema == 1;
    trace.push(TraceStep::new(
        "fall_single_large_extremum",
        features.num_large_extrema as f64,
        1.0,
        single,
    ));
    if single {
        let dominant = features.dominant_ratio >= config.dominance_ratio;
        trace.push(TraceStep::new(
            "fall_dominance",
            features.dominant_ratio,
            config.dominance_ratio,
            dominant,
        ));
        if dominant {
            let stable = features.post_event_std <= config.stable_tail_std_max;
            trace.push(TraceStep::new(
                "fall_stable_tail",
                features.post_event_std,
                config.stable_tail_std_max,
                stable,
            ));
            if stable {
                return Decision {
                    label: ActivityLabel::Falling,
                    trace,
                };
            }
        }
    }

    // Rule 3: many large extrema mean walking.
    let walking = features.num_large_extrema >= config.walk_min_extrema;
    trace.push(TraceStep::new(
        "walk_large_extrema",
        features.num_large_extrema as f64,
        config.walk_min_extrema as f64,
        walking,
    ));
    if walking {
        return Decision {
            label: ActivityLabel::Walking,
            trace,
        };
    }

    // Rule 4: moderate range changing smoothly means breathing.
    let moderate = features.variation_range < config.breath_range_max;
    trace.push(TraceStep::new(
        "breath_range",
        features.variation_range,
        config.breath_range_max,
        moderate,
    ));
    if moderate {
        let smooth = features.smoothness <= config.smoothness_max_for_breath;
        trace.push(TraceStep::new(
            "breath_smoothness",
            features.smoothness,
            config.smoothness_max_for_breath,
            smooth,
        ));
        if smooth {
            return Decision {
                label: ActivityLabel::Breathing,
                trace,
            };
        }
    }

    // Rule 5: forced answer on the variation range alone.
    let fallback_walk = features.variation_range >= config.breath_range_max;
    trace.push(TraceStep::new(
        "fallback_range",
        features.variation_range,
        config.breath_range_max,
        fallback_walk,
    ));
    Decision {
        label: if fallback_walk {
            ActivityLabel::Walking
        } else {
            ActivityLabel::Breathing
        },
        trace,
    }
}
