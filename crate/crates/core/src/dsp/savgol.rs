//! Savitzky-Golay smoothing: each output sample is the value of the
//! least-squares polynomial fit over a sliding window, evaluated at the
//! window center. Near the edges the polynomial is fitted over the first
//! (or last) full window and evaluated at the edge positions, so the output
//! keeps the input length.

use super::{AmplitudeSeries, DspError};

/// Convolution weights of the least-squares polynomial fit.
///
/// `offset` is the evaluation position relative to the window center:
/// `0` gives the interior smoothing weights, negative offsets give the
/// weights used for the leading edge samples, positive for the trailing
/// edge. `dot(weights, window)` equals the fitted polynomial at that
/// position.
pub fn savgol_weights(
    window: usize,
    poly_order: usize,
    offset: isize,
) -> Result<Vec<f64>, DspError> {
    validate(window, poly_order)?;
    let half = (window / 2) as isize;
    if offset.abs() > half {
        return Err(DspError::OffsetOutOfWindow {
            offset,
            half: window / 2,
        });
    }
    let m = poly_order + 1;
    // Positions normalized to [-1, 1] keep the normal equations well
    // conditioned for the window sizes used here.
    let scale = half as f64;
    let positions: Vec<f64> = (-half..=half).map(|j| j as f64 / scale).collect();

    // Gram matrix G[r][c] = sum_j u_j^(r+c).
    let mut moments = vec![0.0; 2 * m - 1];
    for &u in &positions {
        let mut p = 1.0;
        for moment in moments.iter_mut() {
            *moment += p;
            p *= u;
        }
    }
    let mut gram = vec![vec![0.0; m]; m];
    for (r, row) in gram.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = moments[r + c];
        }
    }

    // Right-hand side: powers of the normalized evaluation offset.
    let u0 = offset as f64 / scale;
    let mut rhs = vec![0.0; m];
    let mut p = 1.0;
    for r in rhs.iter_mut() {
        *r = p;
        p *= u0;
    }

    let coeffs = solve(gram, rhs)?;
    Ok(positions
        .iter()
        .map(|&u| {
            let mut p = 1.0;
            let mut w = 0.0;
            for &c in &coeffs {
                w += c * p;
                p *= u;
            }
            w
        })
        .collect())
}

/// Smooths a series, preserving its length and sample rate.
pub fn savgol_smooth(
    series: &AmplitudeSeries,
    window: usize,
    poly_order: usize,
) -> Result<AmplitudeSeries, DspError> {
    validate(window, poly_order)?;
    let v = series.values();
    let n = v.len();
    if n < window {
        return Err(DspError::SeriesTooShort {
            len: n,
            required: window,
        });
    }
    let half = window / 2;
    let center = savgol_weights(window, poly_order, 0)?;

    let mut out = vec![0.0; n];
    for i in half..n - half {
        out[i] = dot(&center, &v[i - half..i + half + 1]);
    }
    for i in 0..half {
        let w = savgol_weights(window, poly_order, i as isize - half as isize)?;
        out[i] = dot(&w, &v[..window]);
    }
    for i in n - half..n {
        let offset = (i + half + 1 - n) as isize;
        let w = savgol_weights(window, poly_order, offset)?;
        out[i] = dot(&w, &v[n - window..]);
    }
    AmplitudeSeries::new(out, series.sample_rate())
}

fn validate(window: usize, poly_order: usize) -> Result<(), DspError> {
    if window % 2 == 0 {
        return Err(DspError::EvenWindow(window));
    }
    if window < poly_order + 2 {
        return Err(DspError::WindowTooSmall { window, poly_order });
    }
    Ok(())
}

fn dot(w: &[f64], v: &[f64]) -> f64 {
    w.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Gaussian elimination with partial pivoting on a small dense system.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Result<Vec<f64>, DspError> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .expect("non-empty range");
        if a[pivot][col].abs() < 1e-300 {
            return Err(DspError::Numerical("singular normal equations".into()));
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                a[row][k] -= factor * a[col][k];
            }
            b[row] -= factor * b[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc -= a[row][k] * x[k];
        }
        x[row] = acc / a[row][row];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(values: Vec<f64>) -> AmplitudeSeries {
        AmplitudeSeries::new(values, 100.0).unwrap()
    }

    #[test]
    fn classic_quadratic_window_five_weights() {
        let w = savgol_weights(5, 2, 0).unwrap();
        let expected = [-3.0, 12.0, 17.0, 12.0, -3.0].map(|x| x / 35.0);
        for (got, want) in w.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12, "got {got}, want {want}");
        }
    }

    #[test]
    fn constant_series_is_preserved() {
        let s = series(vec![4.2; 50]);
        let out = savgol_smooth(&s, 7, 2).unwrap();
        for &v in out.values() {
            assert!((v - 4.2).abs() < 1e-12);
        }
    }

    #[test]
    fn polynomials_up_to_order_pass_through() {
        // Degree-3 polynomial over t in [0, 5]; window 31, order 3 must
        // reproduce it everywhere including the edges.
        let n = 500;
        let t: Vec<f64> = (0..n).map(|i| 5.0 * i as f64 / (n - 1) as f64).collect();
        let poly = |x: f64| 1.5 - 2.0 * x + 0.75 * x * x - 0.1 * x * x * x;
        let s = series(t.iter().map(|&x| poly(x) + 10.0).collect());
        let out = savgol_smooth(&s, 31, 3, ).unwrap();
        for (got, want) in out.values().iter().zip(s.values()) {
            assert!((got - want).abs() < 1e-9, "got {got}, want {want}");
        }
    }

    #[test]
    fn output_length_matches_input() {
        let s = series((0..40).map(|i| (i as f64 * 0.3).sin()).collect());
        let out = savgol_smooth(&s, 9, 3).unwrap();
        assert_eq!(out.len(), s.len());
        assert_eq!(out.sample_rate(), s.sample_rate());
    }

    #[test]
    fn rejects_bad_windows() {
        let s = series(vec![1.0; 20]);
        assert!(matches!(savgol_smooth(&s, 4, 2), Err(DspError::EvenWindow(4))));
        assert!(matches!(
            savgol_smooth(&s, 3, 2),
            Err(DspError::WindowTooSmall { .. })
        ));
        assert!(matches!(
            savgol_smooth(&s, 21, 3),
            Err(DspError::SeriesTooShort { .. })
        ));
    }
}
