use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{ComplexSample, CsiError, CsiFrame, CsiSegment, ScenarioParams, DEFAULT_SUBCARRIERS};

/// Synthesises a CSI segment from a scenario description.
///
/// Every subcarrier of frame `i` (at `t = i / sample_rate`) carries
/// `H_s + a * exp(-j * 2π * d(t) / λ)` plus independent Gaussian noise on I
/// and Q. The output is a pure function of `(params, sample_rate, duration)`.
pub fn simulate(
    params: &ScenarioParams,
    sample_rate: f64,
    duration: f64,
) -> Result<CsiSegment, CsiError> {
    params.validate()?;
    if !(sample_rate > 0.0) || !sample_rate.is_finite() {
        return Err(CsiError::InvalidParameter(format!(
            "sample_rate must be positive, got {sample_rate}"
        )));
    }
    if !(duration > 0.0) || !duration.is_finite() {
        return Err(CsiError::InvalidParameter(format!(
            "duration must be positive, got {duration}"
        )));
    }
    let n = (sample_rate * duration).round() as usize;
    if n == 0 {
        return Err(CsiError::InvalidParameter(
            "sample_rate * duration rounds to zero frames".into(),
        ));
    }

    let static_re = params.static_amplitude * params.static_phase.cos();
    let static_im = params.static_amplitude * params.static_phase.sin();

    let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
    let noise = if params.noise_sigma > 0.0 {
        Some(Normal::new(0.0, params.noise_sigma).expect("validated sigma"))
    } else {
        None
    };

    let mut frames = Vec::with_capacity(n);
    for i in 0..n {
        let t = i as f64 / sample_rate;
        let d = params.trajectory.distance_at(t);
        if !(d > 0.0) || !d.is_finite() {
            return Err(CsiError::InvalidParameter(format!(
                "path length must stay positive, got d({t}) = {d}"
            )));
        }
        let theta = TAU * d / params.wavelength;
        let re = static_re + params.dynamic_attenuation * theta.cos();
        let im = static_im - params.dynamic_attenuation * theta.sin();

        let mut subcarriers = Vec::with_capacity(DEFAULT_SUBCARRIERS);
        match &noise {
            Some(dist) => {
                for _ in 0..DEFAULT_SUBCARRIERS {
                    subcarriers.push(ComplexSample::new(
                        re + dist.sample(&mut rng),
                        im + dist.sample(&mut rng),
                    ));
                }
            }
            None => {
                subcarriers.resize(DEFAULT_SUBCARRIERS, ComplexSample::new(re, im));
            }
        }
        frames.push(CsiFrame::new(t, subcarriers));
    }

    CsiSegment::new(frames, sample_rate, duration, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csi::{PathTrajectory, DEFAULT_WAVELENGTH};

    fn noise_free(trajectory: PathTrajectory, dynamic: f64) -> ScenarioParams {
        ScenarioParams {
            static_amplitude: 10.0,
            static_phase: 0.7,
            dynamic_attenuation: dynamic,
            wavelength: DEFAULT_WAVELENGTH,
            trajectory,
            noise_sigma: 0.0,
            rng_seed: 1,
        }
    }

    #[test]
    fn static_only_amplitude_equals_static_magnitude() {
        let params = noise_free(PathTrajectory::Constant { distance: 2.0 }, 0.0);
        let seg = simulate(&params, 100.0, 1.0).unwrap();
        for frame in seg.frames() {
            for s in &frame.subcarriers {
                assert!((s.amplitude() - 10.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn no_event_series_is_exactly_constant() {
        let params = noise_free(PathTrajectory::Constant { distance: 2.0 }, 0.0);
        let seg = simulate(&params, 100.0, 1.0).unwrap();
        let first = seg.frames()[0].subcarriers[0];
        for frame in seg.frames() {
            for s in &frame.subcarriers {
                assert_eq!(*s, first);
            }
        }
    }

    #[test]
    fn constant_trajectory_amplitude_within_triangle_bounds() {
        let params = noise_free(PathTrajectory::Constant { distance: 1.77 }, 3.0);
        let seg = simulate(&params, 100.0, 1.0).unwrap();
        let first = seg.frames()[0].subcarriers[0];
        let amp = first.amplitude();
        assert!((7.0..=13.0).contains(&amp), "amplitude {amp} out of bounds");
        for frame in seg.frames() {
            assert_eq!(frame.subcarriers[0], first);
        }
    }

    #[test]
    fn five_wavelength_sweep_gives_five_cycles() {
        // Independent oracle: evaluate |H_s + a e^{-j 2π d/λ}| on a dense
        // grid and count interior local maxima.
        let lambda = DEFAULT_WAVELENGTH;
        let d0 = 2.0;
        let total = 5.0 * lambda;
        let duration = 5.0;
        let velocity = total / duration;
        // Start at the destructive-interference point so every peak lies
        // strictly inside the window.
        let static_phase = std::f64::consts::PI - TAU * d0 / lambda;

        let oracle_amp = |t: f64| -> f64 {
            let theta = TAU * (d0 + velocity * t) / lambda;
            let re = 10.0 * static_phase.cos() + 3.0 * theta.cos();
            let im = 10.0 * static_phase.sin() - 3.0 * theta.sin();
            re.hypot(im)
        };
        let dense: Vec<f64> = (0..200_000)
            .map(|i| oracle_amp(duration * i as f64 / 199_999.0))
            .collect();
        let oracle_count = dense
            .windows(3)
            .filter(|w| w[1] > w[0] && w[1] > w[2])
            .count();
        assert_eq!(oracle_count, 5);

        let params = ScenarioParams {
            static_amplitude: 10.0,
            static_phase,
            dynamic_attenuation: 3.0,
            wavelength: lambda,
            trajectory: PathTrajectory::Linear {
                start: d0,
                velocity,
            },
            noise_sigma: 0.0,
            rng_seed: 0,
        };
        let seg = simulate(&params, 1000.0, duration).unwrap();
        let amps: Vec<f64> = seg
            .frames()
            .iter()
            .map(|f| f.subcarriers[0].amplitude())
            .collect();
        let count = amps
            .windows(3)
            .filter(|w| w[1] > w[0] && w[1] > w[2])
            .count();
        assert_eq!(count, 5);
    }

    #[test]
    fn identical_seeds_reproduce_identical_segments() {
        let mut params = noise_free(PathTrajectory::Constant { distance: 2.0 }, 3.0);
        params.noise_sigma = 0.25;
        params.rng_seed = 42;
        let a = simulate(&params, 200.0, 1.0).unwrap();
        let b = simulate(&params, 200.0, 1.0).unwrap();
        assert_eq!(a, b);
        params.rng_seed = 43;
        let c = simulate(&params, 200.0, 1.0).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn rejects_non_positive_path_lengths() {
        let params = noise_free(
            PathTrajectory::Linear {
                start: 0.5,
                velocity: -1.0,
            },
            3.0,
        );
        assert!(simulate(&params, 100.0, 1.0).is_err());
    }

    #[test]
    fn rejects_invalid_rate_and_duration() {
        let params = noise_free(PathTrajectory::Constant { distance: 2.0 }, 0.0);
        assert!(simulate(&params, 0.0, 1.0).is_err());
        assert!(simulate(&params, 100.0, 0.0).is_err());
    }
}
