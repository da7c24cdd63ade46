//! Eigenvectors of the position operator in momentum space.
//!
//! `X phi = x phi` with `X = (A - Abar)/(2ia)` is the three-term recurrence
//! `phi(p + a) - phi(p - a) = 2iax phi(p)`. Its characteristic roots are
//! `alpha = iax - sqrt(1 - a^2 x^2)` and `-conj(alpha)`, both of unit modulus
//! inside the band `|a x| <= 1`.

mod tridiagonal;

use num_complex::Complex64;
use serde::Serialize;

use crate::lattice::{GridFunction, MomentumLattice};
use crate::operators::{apply, build_operator, OperatorName};
use crate::{Error, Result};

pub use tridiagonal::{hermitian_tridiagonal_eigenvalues, symmetric_tridiagonal_eigenvalues};

/// The unimodular root governing the eigenvector recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaValue {
    pub x: f64,
    pub a: f64,
    #[serde(serialize_with = "ser_complex")]
    pub alpha: Complex64,
}

impl AlphaValue {
    pub fn conj(&self) -> Complex64 {
        self.alpha.conj()
    }
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("Complex", 2)?;
    st.serialize_field("re", &crate::report::round15(z.re))?;
    st.serialize_field("im", &crate::report::round15(z.im))?;
    st.end()
}

fn band_check(x: f64, a: f64) -> Result<f64> {
    let ax = a * x;
    if !ax.is_finite() || ax.abs() > 1.0 {
        return Err(Error::OutsideBand(ax.abs()));
    }
    Ok(ax)
}

/// `alpha = iax - sqrt(1 - a^2 x^2)` on the principal branch.
pub fn alpha(x: f64, a: f64) -> Result<AlphaValue> {
    let ax = band_check(x, a)?;
    let root = (1.0 - ax * ax).max(0.0).sqrt();
    Ok(AlphaValue { x, a, alpha: Complex64::new(-root, ax) })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Recurrence,
    ClosedForm,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Recurrence => "recurrence",
            Method::ClosedForm => "closed_form",
        }
    }
}

/// A candidate eigenvector of `X` sampled on a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub x: f64,
    pub phi: GridFunction,
    pub phi0: Complex64,
    pub method: Method,
}

impl EigenResult {
    pub fn lattice(&self) -> &MomentumLattice {
        self.phi.lattice()
    }
}

/// Runs `phi_{j+1} = phi_{j-1} + 2iax phi_j` from `phi_0 = phi0`,
/// `phi_{-1} = 0`.
pub fn eigenvector_recurrence(lattice: MomentumLattice, x: f64, phi0: Complex64) -> Result<EigenResult> {
    let ax = band_check(x, lattice.spacing())?;
    let step = Complex64::new(0.0, 2.0 * ax);
    let n = lattice.n_points();
    let mut values = Vec::with_capacity(n);
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = phi0;
    for _ in 0..n {
        values.push(cur);
        let next = prev + step * cur;
        prev = cur;
        cur = next;
    }
    Ok(EigenResult { x, phi: GridFunction::new(lattice, values)?, phi0, method: Method::Recurrence })
}

/// `phi_j = phi0 (alpha^{j+1} - (-conj alpha)^{j+1}) / (alpha + conj alpha)`.
pub fn eigenvector_closed_form(lattice: MomentumLattice, x: f64, phi0: Complex64) -> Result<EigenResult> {
    let ax = band_check(x, lattice.spacing())?;
    if ax.abs() >= 1.0 {
        return Err(Error::OutsideBand(ax.abs()));
    }
    let al = alpha(x, lattice.spacing())?.alpha;
    let other = -al.conj();
    let denom = al + al.conj();
    if denom.norm() == 0.0 {
        return Err(Error::Degenerate("alpha + conj(alpha) vanishes".into()));
    }
    let values = (0..lattice.n_points())
        .map(|j| {
            let e = j as i32 + 1;
            phi0 * (al.powi(e) - other.powi(e)) / denom
        })
        .collect();
    Ok(EigenResult { x, phi: GridFunction::new(lattice, values)?, phi0, method: Method::ClosedForm })
}

/// Positive `s` with `<s phi | s phi> = 1`, i.e. `1/sqrt(a sum |phi_j|^2)`.
pub fn normalization_direct(result: &EigenResult) -> Result<f64> {
    let a = result.lattice().spacing();
    let sum: f64 = result.phi.values().iter().map(|v| v.norm_sqr()).sum();
    if sum == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(1.0 / (a * sum).sqrt())
}

/// `|phi(p_0)|` from the closed-form normalization
///
/// ```text
/// |phi(p_0)|^2 = (alpha + conj alpha)^2
///     / (a [2N + 1 + ((-alpha^2)^{N+1} - (-alpha^{-2})^N) / (alpha^2 + 1)])
/// ```
///
/// evaluated literally. Summing `|phi_j|^2` from the closed form gives
/// exactly this bracket for `j = 0 .. N-1`, so the value agrees with
/// [`normalization_direct`] on a lattice of `N` points (not `N + 1`).
pub fn normalization_closed_form(x: f64, a: f64, n: usize) -> Result<f64> {
    let ax = band_check(x, a)?;
    if ax.abs() >= 1.0 {
        return Err(Error::OutsideBand(ax.abs()));
    }
    let al = alpha(x, a)?.alpha;
    let sq = al * al;
    let big = n as i32;
    let bracket = Complex64::new((2 * n + 1) as f64, 0.0) + ((-sq).powi(big + 1) - (-sq.inv()).powi(big)) / (sq + 1.0);
    let top = (al + al.conj()).powi(2);
    let value = top / (bracket * a);
    if bracket.norm() == 0.0 || value.re.is_nan() || value.re <= 0.0 {
        return Err(Error::Degenerate(format!("normalization bracket {bracket} is not positive")));
    }
    Ok(value.re.sqrt())
}

/// `h_j = phi_j - alpha phi_{j-1}` (with `phi_{-1} = 0`).
pub fn h_sequence(result: &EigenResult) -> Result<Vec<Complex64>> {
    let al = alpha(result.x, result.lattice().spacing())?.alpha;
    let v = result.phi.values();
    Ok((0..v.len()).map(|j| v[j] - if j == 0 { Complex64::new(0.0, 0.0) } else { al * v[j - 1] }).collect())
}

/// `max_{1 <= j <= n-2} |(X phi)_j - x phi_j|`.
pub fn eigen_equation_residual(result: &EigenResult) -> Result<f64> {
    let lattice = *result.lattice();
    let n = lattice.n_points();
    let xphi = apply(&build_operator(lattice, OperatorName::X), &result.phi)?;
    Ok((1..n.saturating_sub(1))
        .map(|j| (xphi.values()[j] - result.phi.values()[j] * result.x).norm())
        .fold(0.0, f64::max))
}

/// Eigenvalues of the truncated `X`, ascending.
pub fn truncated_spectrum(lattice: MomentumLattice) -> Vec<f64> {
    let x = build_operator(lattice, OperatorName::X);
    hermitian_tridiagonal_eigenvalues(&x).expect("X is Hermitian tridiagonal")
}

#[cfg(test)]
mod tests;
