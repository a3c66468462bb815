use super::{ActivityLabel, CsiError};

/// Number of OFDM subcarriers reported per frame by the simulator and the
/// segment file format.
pub const DEFAULT_SUBCARRIERS: usize = 30;

/// One complex channel response sample (I/Q pair).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexSample {
    /// In-phase (real) part.
    pub re: f64,
    /// Quadrature (imaginary) part.
    pub im: f64,
}

impl ComplexSample {
    pub fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }

    /// Vector magnitude in the IQ plane; always non-negative.
    pub fn amplitude(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// The per-packet channel snapshot: one complex sample per subcarrier.
#[derive(Debug, Clone, PartialEq)]
pub struct CsiFrame {
    /// Seconds since the start of the segment.
    pub timestamp: f64,
    /// Per-subcarrier channel response, in subcarrier order.
    pub subcarriers: Vec<ComplexSample>,
}

impl CsiFrame {
    pub fn new(timestamp: f64, subcarriers: Vec<ComplexSample>) -> Self {
        Self {
            timestamp,
            subcarriers,
        }
    }
}

/// A fixed-duration window of CSI frames, optionally labelled with the
/// activity that produced it.
///
/// Invariants enforced at construction:
/// - `sample_rate > 0`, `duration > 0`
/// - `frames.len() == round(sample_rate * duration)` and is at least 1
/// - timestamps strictly increase
/// - every frame carries the same number of subcarriers (at least 1)
#[derive(Debug, Clone, PartialEq)]
pub struct CsiSegment {
    frames: Vec<CsiFrame>,
    sample_rate: f64,
    duration: f64,
    label: Option<ActivityLabel>,
}

impl CsiSegment {
    pub fn new(
        frames: Vec<CsiFrame>,
        sample_rate: f64,
        duration: f64,
        label: Option<ActivityLabel>,
    ) -> Result<Self, CsiError> {
        if !(sample_rate > 0.0) || !sample_rate.is_finite() {
            return Err(CsiError::InvalidSegment(format!(
                "sample_rate must be positive and finite, got {sample_rate}"
            )));
        }
        if !(duration > 0.0) || !duration.is_finite() {
            return Err(CsiError::InvalidSegment(format!(
                "duration must be positive and finite, got {duration}"
            )));
        }
        let expected = (sample_rate * duration).round() as usize;
        if expected == 0 {
            return Err(CsiError::InvalidSegment(
                "sample_rate * duration rounds to zero frames".into(),
            ));
        }
        if frames.len() != expected {
            return Err(CsiError::InvalidSegment(format!(
                "expected {expected} frames for {sample_rate} Hz x {duration} s, got {}",
                frames.len()
            )));
        }
        let subcarriers = frames[0].subcarriers.len();
        if subcarriers == 0 {
            return Err(CsiError::InvalidSegment(
                "frames must carry at least one subcarrier".into(),
            ));
        }
        for (i, frame) in frames.iter().enumerate() {
            if frame.subcarriers.len() != subcarriers {
                return Err(CsiError::InvalidSegment(format!(
                    "frame {i} has {} subcarriers, expected {subcarriers}",
                    frame.subcarriers.len()
                )));
            }
            if i > 0 && frame.timestamp <= frames[i - 1].timestamp {
                return Err(CsiError::InvalidSegment(format!(
                    "timestamps must strictly increase (frame {i}: {} after {})",
                    frame.timestamp,
                    frames[i - 1].timestamp
                )));
            }
        }
        Ok(Self {
            frames,
            sample_rate,
            duration,
            label,
        })
    }

    pub fn frames(&self) -> &[CsiFrame] {
        &self.frames
    }

    pub fn len(&self) -> usize {
        self.frames.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }

    pub fn sample_rate(&self) -> f64 {
        self.sample_rate
    }

    pub fn duration(&self) -> f64 {
        self.duration
    }

    pub fn subcarrier_count(&self) -> usize {
        self.frames[0].subcarriers.len()
    }

    pub fn label(&self) -> Option<ActivityLabel> {
        self.label
    }

    /// Returns the same segment with its label replaced.
    pub fn with_label(mut self, label: Option<ActivityLabel>) -> Self {
        self.label = label;
        self
    }
}
