use std::f64::consts::TAU;

use super::CsiError;

/// The path length `d(t)` of the dynamic (moving-reflector) component, in
/// meters, as a function of time in seconds.
#[derive(Debug, Clone, PartialEq)]
pub enum PathTrajectory {
    /// Fixed path length; the reflector does not move.
    Constant { distance: f64 },
    /// `d(t) = start + velocity * t`.
    Linear { start: f64, velocity: f64 },
    /// Linear interpolation between `(time, distance)` knots. Before the
    /// first knot and after the last the boundary value holds.
    Piecewise { knots: Vec<(f64, f64)> },
    /// `d(t) = center + displacement * sin(2π * frequency * t + phase)`.
    Sinusoidal {
        center: f64,
        displacement: f64,
        frequency: f64,
        phase: f64,
    },
}

impl PathTrajectory {
    /// Path length at time `t` seconds.
    pub fn distance_at(&self, t: f64) -> f64 {
        match self {
            PathTrajectory::Constant { distance } => *distance,
            PathTrajectory::Linear { start, velocity } => start + velocity * t,
            PathTrajectory::Piecewise { knots } => interpolate(knots, t),
            PathTrajectory::Sinusoidal {
                center,
                displacement,
                frequency,
                phase,
            } => center + displacement * (TAU * frequency * t + phase).sin(),
        }
    }

    /// Structural validation; positivity of `d(t)` is checked per sample by
    /// the simulator.
    pub fn validate(&self) -> Result<(), CsiError> {
        match self {
            PathTrajectory::Constant { distance } => {
                finite(*distance, "constant distance")?;
            }
            PathTrajectory::Linear { start, velocity } => {
                finite(*start, "linear start")?;
                finite(*velocity, "linear velocity")?;
            }
            PathTrajectory::Piecewise { knots } => {
                if knots.is_empty() {
                    return Err(CsiError::InvalidParameter(
                        "piecewise trajectory needs at least one knot".into(),
                    ));
                }
                for (i, (t, d)) in knots.iter().enumerate() {
                    finite(*t, "knot time")?;
                    finite(*d, "knot distance")?;
                    if i > 0 && *t <= knots[i - 1].0 {
                        return Err(CsiError::InvalidParameter(format!(
                            "knot times must strictly increase (knot {i}: {t} after {})",
                            knots[i - 1].0
                        )));
                    }
                }
            }
            PathTrajectory::Sinusoidal {
                center,
                displacement,
                frequency,
                phase,
            } => {
                finite(*center, "sinusoid center")?;
                finite(*displacement, "sinusoid displacement")?;
                finite(*frequency, "sinusoid frequency")?;
                finite(*phase, "sinusoid phase")?;
                if *displacement < 0.0 {
                    return Err(CsiError::InvalidParameter(
                        "sinusoid displacement must be non-negative".into(),
                    ));
                }
                if *frequency <= 0.0 {
                    return Err(CsiError::InvalidParameter(
                        "sinusoid frequency must be positive".into(),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn finite(v: f64, what: &str) -> Result<(), CsiError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CsiError::InvalidParameter(format!("{what} must be finite, got {v}")))
    }
}

fn interpolate(knots: &[(f64, f64)], t: f64) -> f64 {
    let first = knots[0];
    let last = knots[knots.len() - 1];
    if t <= first.0 {
        return first.1;
    }
    if t >= last.0 {
        return last.1;
    }
    // partition_point returns the first knot with time > t
    let hi = knots.partition_point(|(kt, _)| *kt <= t);
    let (t0, d0) = knots[hi - 1];
    let (t1, d1) = knots[hi];
    d0 + (d1 - d0) * (t - t0) / (t1 - t0)
}
