use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    ActivityLabel, PathTrajectory, ScenarioParams, DEFAULT_DYNAMIC_ATTENUATION,
    DEFAULT_NOISE_SIGMA, DEFAULT_STATIC_AMPLITUDE, DEFAULT_WAVELENGTH,
};
use crate::util::derive_seed;

/// Builds randomized-but-seeded scenario parameters whose simulated segment
/// carries the physical signature of `label`.
///
/// The generators are tuned for the default 5-second segment:
///
/// - **Walking** sweeps the path linearly at 0.5–1.5 m/s, so the dynamic
///   phase turns many times and the amplitude oscillates over its full
///   constructive/destructive range for the whole segment.
/// - **Falling** packs five or six wavelengths of path change into a few
///   tens of milliseconds. The rotations are far too fast for the default
///   smoother to resolve, so the smoothed series shows a single spike (or
///   dip, depending on the starting phase) against an otherwise flat line;
///   the whole-wavelength sweep returns the amplitude to its pre-fall level.
/// - **Breathing** moves the path sinusoidally by a few millimeters around
///   the quadrature point of the IQ circle, where the amplitude responds
///   monotonically to path change. The series is a slow, smooth wave whose
///   range stays well inside the full swing.
/// - **NoEvent** has no dynamic component at all.
pub fn make_scenario(label: ActivityLabel, seed: u64) -> ScenarioParams {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, label.index() as u64));
    let rng_seed = rng.gen::<u64>();
    let lambda = DEFAULT_WAVELENGTH;

    match label {
        ActivityLabel::Walking => {
            let start = rng.gen_range(1.0..3.0);
            let velocity = rng.gen_range(0.5..1.5);
            ScenarioParams {
                static_amplitude: DEFAULT_STATIC_AMPLITUDE,
                static_phase: rng.gen_range(0.0..TAU),
                dynamic_attenuation: DEFAULT_DYNAMIC_ATTENUATION,
                wavelength: lambda,
                trajectory: PathTrajectory::Linear { start, velocity },
                noise_sigma: DEFAULT_NOISE_SIGMA,
                rng_seed,
            }
        }
        ActivityLabel::Falling => {
            let start = rng.gen_range(1.0..3.0);
            let wavelengths = if rng.gen::<bool>() { 5.0 } else { 6.0 };
            let fall_time = rng.gen_range(0.033..0.05);
            let onset = rng.gen_range(0.5..3.0);
            // Starting at destructive (π) or constructive (0) interference
            // decides whether the smoothed transient is a spike or a dip;
            // the integer wavelength count brings the amplitude back to the
            // same level afterwards.
            let pre_phase = if rng.gen::<bool>() { PI } else { 0.0 };
            let static_phase = wrap_angle(pre_phase - TAU * start / lambda);
            ScenarioParams {
                static_amplitude: DEFAULT_STATIC_AMPLITUDE,
                static_phase,
                dynamic_attenuation: DEFAULT_DYNAMIC_ATTENUATION,
                wavelength: lambda,
                trajectory: PathTrajectory::Piecewise {
                    knots: vec![
                        (0.0, start),
                        (onset, start),
                        (onset + fall_time, start + wavelengths * lambda),
                    ],
                },
                noise_sigma: DEFAULT_NOISE_SIGMA,
                rng_seed,
            }
        }
        ActivityLabel::Breathing => {
            let center = rng.gen_range(1.5..3.0);
            let displacement = rng.gen_range(0.005..0.006);
            // Whole-plus-half cycle counts over the 5 s window, with the
            // start phase tied to the cycle count so the window is balanced
            // around the sinusoid's mean.
            let cycles = rng.gen_range(1.55..1.95);
            let frequency = cycles / 5.0;
            let phase = wrap_angle(-PI * cycles + if rng.gen::<bool>() { PI } else { 0.0 });
            let static_phase = wrap_angle(PI / 2.0 - TAU * center / lambda);
            ScenarioParams {
                static_amplitude: DEFAULT_STATIC_AMPLITUDE,
                static_phase,
                dynamic_attenuation: DEFAULT_DYNAMIC_ATTENUATION,
                wavelength: lambda,
                trajectory: PathTrajectory::Sinusoidal {
                    center,
                    displacement,
                    frequency,
                    phase,
                },
                noise_sigma: DEFAULT_NOISE_SIGMA,
                rng_seed,
            }
        }
        ActivityLabel::NoEvent => ScenarioParams {
            static_amplitude: DEFAULT_STATIC_AMPLITUDE,
            static_phase: rng.gen_range(0.0..TAU),
            dynamic_attenuation: 0.0,
            wavelength: lambda,
            trajectory: PathTrajectory::Constant {
                distance: rng.gen_range(1.0..3.0),
            },
            noise_sigma: DEFAULT_NOISE_SIGMA,
            rng_seed,
        },
    }
}

fn wrap_angle(x: f64) -> f64 {
    x.rem_euclid(TAU)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no_event_has_no_dynamic_component() {
        let params = make_scenario(ActivityLabel::NoEvent, 1);
        assert_eq!(params.dynamic_attenuation, 0.0);
        assert!(params.validate().is_ok());
    }

    #[test]
    fn breathing_phase_excursion_stays_under_full_turn() {
        // Oracle: a displacement below λ/2 keeps the peak-to-peak dynamic
        // phase excursion 2π * 2 * displacement / λ under 2π, so the
        // amplitude can never visit both interference extremes.
        let params = make_scenario(ActivityLabel::Breathing, 7);
        let PathTrajectory::Sinusoidal { displacement, .. } = params.trajectory else {
            panic!("breathing must use a sinusoidal trajectory");
        };
        let excursion = TAU * 2.0 * displacement / params.wavelength;
        assert!(excursion < TAU, "excursion {excursion} spans a full turn");
    }

    #[test]
    fn falling_sweeps_three_wavelengths_within_half_second() {
        let params = make_scenario(ActivityLabel::Falling, 3);
        let d = |t: f64| params.trajectory.distance_at(t);
        let grid: Vec<f64> = (0..=5000).map(|i| d(5.0 * i as f64 / 5000.0)).collect();
        let min = grid.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = grid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(max - min >= 3.0 * params.wavelength);

        // The change must complete within 0.5 s.
        let eps = 1e-12;
        let start = grid.iter().position(|&v| (v - min).abs() > eps).unwrap();
        let end = grid.iter().rposition(|&v| (max - v).abs() > eps).unwrap();
        let window = 5.0 * (end - start) as f64 / 5000.0;
        assert!(window <= 0.5, "fall took {window} s");
    }

    #[test]
    fn scenarios_are_deterministic_per_seed() {
        for label in ActivityLabel::ALL {
            assert_eq!(make_scenario(label, 9), make_scenario(label, 9));
            assert_ne!(make_scenario(label, 9), make_scenario(label, 10));
        }
    }

    #[test]
    fn all_scenarios_validate() {
        for label in ActivityLabel::ALL {
            for seed in 0..25 {
                assert!(make_scenario(label, seed).validate().is_ok());
            }
        }
    }
}
