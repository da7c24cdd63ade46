use crate::operators::OperatorMatrix;
use crate::{Error, Result};

/// Number of eigenvalues strictly below `shift`, from the signs of the
/// pivots of `T - shift*I = L D L^T`.
fn count_below(diag: &[f64], off_sq: &[f64], shift: f64) -> usize {
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = 1.0;
    for (i, &d) in diag.iter().enumerate() {
        let coupling = if i == 0 { 0.0 } else { off_sq[i - 1] / q };
        q = d - shift - coupling;
        if q == 0.0 {
            q = -tiny;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Eigenvalues of the real symmetric tridiagonal matrix with diagonal `diag`
/// and off-diagonal `off`, ascending, by Sturm-sequence bisection.
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    let n = diag.len();
    assert_eq!(off.len(), n.saturating_sub(1), "off-diagonal length");
    match n {
        0 => return Vec::new(),
        1 => return vec![diag[0]],
        _ => {}
    }
    let off_sq: Vec<f64> = off.iter().map(|e| e * e).collect();
    // Gershgorin enclosure.
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let radius = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
    }
    let pad = f64::EPSILON * (lo.abs().max(hi.abs()) + 1.0);
    lo -= pad;
    hi += pad;
    let tol = f64::EPSILON * lo.abs().max(hi.abs());

    (0..n)
        .map(|k| {
            let (mut a, mut b) = (lo, hi);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if b - a <= tol || mid <= a || mid >= b {
                    break;
                }
                if count_below(diag, &off_sq, mid) > k {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            // The bracket is as tight as the arithmetic allows; report an
            // eigenvalue it cannot tell apart from zero as exactly zero.
            if a <= 0.0 && b >= 0.0 {
                0.0
            } else {
                0.5 * (a + b)
            }
        })
        .collect()
}

/// Eigenvalues of a Hermitian matrix with shift radius at most 1.
///
/// The diagonal similarity that rotates each off-diagonal entry onto the
/// positive real axis turns it into a real symmetric tridiagonal matrix with
/// off-diagonal `|m_{j,j+1}|`.
pub fn hermitian_tridiagonal_eigenvalues(m: &OperatorMatrix) -> Result<Vec<f64>> {
    if m.shift_radius() > 1 {
        return Err(Error::Degenerate(format!("matrix has shift radius {}, expected <= 1", m.shift_radius())));
    }
    let e = m.entries();
    let n = m.dim();
    let diag: Vec<f64> = (0..n).map(|j| e[(j, j)].re).collect();
    let off: Vec<f64> = (0..n.saturating_sub(1)).map(|j| e[(j, j + 1)].norm()).collect();
    Ok(symmetric_tridiagonal_eigenvalues(&diag, &off))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let ev = symmetric_tridiagonal_eigenvalues(&[1.0, 1.0], &[2.0]);
        assert!((ev[0] + 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14, "{ev:?}");
    }

    #[test]
    fn discrete_laplacian_closed_form() {
        // tridiag(-1, 2, -1) has eigenvalues 2 - 2 cos(k pi/(n+1)).
        let n = 12;
        let ev = symmetric_tridiagonal_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1]);
        for (k, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13, "{k}: {v} vs {exact}");
        }
    }

    #[test]
    fn decoupled_blocks_and_empty() {
        let ev = symmetric_tridiagonal_eigenvalues(&[3.0, -1.0, 0.5], &[0.0, 0.0]);
        assert_eq!(ev.len(), 3);
        for (v, e) in ev.iter().zip([-1.0, 0.5, 3.0]) {
            assert!((v - e).abs() < 1e-14);
        }
        assert!(symmetric_tridiagonal_eigenvalues(&[], &[]).is_empty());
    }
}
