use super::{CsiError, PathTrajectory};

/// Default static component magnitude `|H_s|`.
pub const DEFAULT_STATIC_AMPLITUDE: f64 = 10.0;
/// Default dynamic component attenuation `a`.
pub const DEFAULT_DYNAMIC_ATTENUATION: f64 = 3.0;
/// Default carrier wavelength in meters (5.32 GHz Wi-Fi).
pub const DEFAULT_WAVELENGTH: f64 = 0.0564;
/// Default additive I/Q noise standard deviation.
pub const DEFAULT_NOISE_SIGMA: f64 = 0.1;

/// Everything the simulator needs to synthesise one segment.
///
/// The channel is `H(t) = H_s + a * exp(-j * 2π * d(t) / λ)` with
/// `H_s = static_amplitude * exp(j * static_phase)`, plus independent
/// Gaussian noise on the I and Q parts of every subcarrier sample.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioParams {
    /// Magnitude of the static component; must be positive.
    pub static_amplitude: f64,
    /// Phase of the static component in radians.
    pub static_phase: f64,
    /// Magnitude of the dynamic component, held constant over the segment.
    /// Zero means no moving reflector.
    pub dynamic_attenuation: f64,
    /// Carrier wavelength in meters.
    pub wavelength: f64,
    /// Path length of the dynamic component over time.
    pub trajectory: PathTrajectory,
    /// Standard deviation of the additive Gaussian noise applied
    /// independently to I and Q of every subcarrier.
    pub noise_sigma: f64,
    /// Seed for the noise generator; identical seeds reproduce segments
    /// bit for bit.
    pub rng_seed: u64,
}

impl ScenarioParams {
    /// A no-motion scenario with library defaults: static component only.
    pub fn static_only(rng_seed: u64) -> Self {
        Self {
            static_amplitude: DEFAULT_STATIC_AMPLITUDE,
            static_phase: 0.0,
            dynamic_attenuation: 0.0,
            wavelength: DEFAULT_WAVELENGTH,
            trajectory: PathTrajectory::Constant { distance: 2.0 },
            noise_sigma: DEFAULT_NOISE_SIGMA,
            rng_seed,
        }
    }

    pub fn validate(&self) -> Result<(), CsiError> {
        if !(self.static_amplitude > 0.0) || !self.static_amplitude.is_finite() {
            return Err(CsiError::InvalidParameter(format!(
                "static_amplitude must be positive, got {}",
                self.static_amplitude
            )));
        }
        if !self.static_phase.is_finite() {
            return Err(CsiError::InvalidParameter("static_phase must be finite".into()));
        }
        if !(self.dynamic_attenuation >= 0.0) || !self.dynamic_attenuation.is_finite() {
            return Err(CsiError::InvalidParameter(format!(
                "dynamic_attenuation must be non-negative, got {}",
                self.dynamic_attenuation
            )));
        }
        if !(self.wavelength > 0.0) || !self.wavelength.is_finite() {
            return Err(CsiError::InvalidParameter(format!(
                "wavelength must be positive, got {}",
                self.wavelength
            )));
        }
        if !(self.noise_sigma >= 0.0) || !self.noise_sigma.is_finite() {
            return Err(CsiError::InvalidParameter(format!(
                "noise_sigma must be non-negative, got {}",
                self.noise_sigma
            )));
        }
        self.trajectory.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        let mut p = ScenarioParams::static_only(0);
        p.wavelength = 0.0;
        assert!(p.validate().is_err());

        let mut p = ScenarioParams::static_only(0);
        p.static_amplitude = -1.0;
        assert!(p.validate().is_err());

        let mut p = ScenarioParams::static_only(0);
        p.noise_sigma = -0.1;
        assert!(p.validate().is_err());

        let mut p = ScenarioParams::static_only(0);
        p.trajectory = PathTrajectory::Piecewise { knots: vec![] };
        assert!(p.validate().is_err());
    }
}
