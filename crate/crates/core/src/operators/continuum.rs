use num_complex::Complex64;
use serde::Serialize;

use super::{apply, bracket, build_operator, BracketKind, OperatorMatrix, OperatorName};
use crate::lattice::{GridFunction, MomentumLattice};
use crate::report::ser_real;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    #[serde(serialize_with = "ser_real")]
    pub a: f64,
    #[serde(serialize_with = "ser_real")]
    pub r: f64,
    #[serde(serialize_with = "ser_real")]
    pub log_a: f64,
    #[serde(serialize_with = "ser_real")]
    pub log_r: f64,
}

/// Residual of `[X,P] = -i` at each spacing and the fitted log-log slope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `log r` against `log a`; NaN when some `r`
    /// vanishes.
    #[serde(serialize_with = "ser_real")]
    pub slope: f64,
}

impl ConvergenceTable {
    /// `r(a_i) / r(a_{i+1})` for consecutive rows.
    pub fn ratios(&self) -> Vec<f64> {
        self.rows.windows(2).map(|w| w[0].r / w[1].r).collect()
    }
}

/// The unit Gaussian `exp(-p^2/2)`.
pub fn gaussian(p: f64) -> Complex64 {
    Complex64::new((-0.5 * p * p).exp(), 0.0)
}

/// For each spacing, covers `window` with a lattice, samples `f` and records
/// `r(a) = max_interior |(([X,P] + i) f)(p_j)| / max |f|`.
pub fn continuum_scan(spacings: &[f64], f: impl Fn(f64) -> Complex64, window: (f64, f64)) -> Result<ConvergenceTable> {
    if spacings.len() < 3 {
        return Err(Error::InvalidScan(format!("need at least 3 spacings, got {}", spacings.len())));
    }
    if spacings.iter().any(|a| !(a.is_finite() && *a > 0.0)) {
        return Err(Error::InvalidScan("spacings must be positive".into()));
    }
    if spacings.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidScan("spacings must be strictly decreasing".into()));
    }
    let (lo, hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::InvalidScan(format!("empty window [{lo}, {hi}]")));
    }

    let mut rows = Vec::with_capacity(spacings.len());
    for &a in spacings {
        let n = ((hi - lo) / a + 1e-9).floor() as usize + 1;
        if n < 3 {
            return Err(Error::InvalidScan(format!("spacing {a} leaves fewer than 3 points in the window")));
        }
        let lattice = MomentumLattice::new(lo, a, n)?;
        let samples = GridFunction::from_fn(lattice, &f);
        let x = build_operator(lattice, OperatorName::X);
        let p = build_operator(lattice, OperatorName::P);
        let deviation = bracket(BracketKind::Commutator, &x, &p)?
            .add(&OperatorMatrix::scalar(lattice, Complex64::new(0.0, 1.0)))?;
        let margin = deviation.shift_radius();
        let out = apply(&deviation, &samples)?;
        let peak = samples.max_abs();
        let worst = out.values()[margin..n - margin].iter().map(|v| v.norm()).fold(0.0, f64::max);
        let r = if peak > 0.0 { worst / peak } else { 0.0 };
        rows.push(ConvergenceRow { a, r, log_a: a.ln(), log_r: r.ln() });
    }
    let slope = if rows.iter().all(|row| row.r > 0.0) {
        least_squares_slope(rows.iter().map(|row| (row.log_a, row.log_r)))
    } else {
        f64::NAN
    };
    Ok(ConvergenceTable { rows, slope })
}

fn least_squares_slope(points: impl Iterator<Item = (f64, f64)> + Clone) -> f64 {
    let n = points.clone().count() as f64;
    let (sx, sy) = points.clone().fold((0.0, 0.0), |(sx, sy), (x, y)| (sx + x, sy + y));
    let (mx, my) = (sx / n, sy / n);
    let (sxy, sxx) =
        points.fold((0.0, 0.0), |(sxy, sxx), (x, y)| (sxy + (x - mx) * (y - my), sxx + (x - mx) * (x - mx)));
    sxy / sxx
}
