//! Truncated matrix representations of the lattice operators.
//!
//! Every operator lives on a finite window of the lattice. Values beyond the
//! window are taken to be zero, so `A` has a zero last row and `Abar` a zero
//! first row. Identities that hold on the infinite lattice therefore hold on
//! the truncated matrices only away from the edges; [`interior_residual`]
//! measures them on rows at least `margin` away from either end.

mod continuum;
mod suite;

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::algebra::{normal_form, Atom, Expression};
use crate::lattice::{GridFunction, MomentumLattice};
use crate::{Error, Result};

pub use continuum::{continuum_scan, gaussian, ConvergenceRow, ConvergenceTable};
pub use suite::{verify_identity_suite, ResidualReport, MIN_SUITE_POINTS};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// The named operators that have a matrix representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OperatorName {
    /// Forward shift, `(A f)(p) = f(p + a)`.
    A,
    /// Backward shift, `(Abar f)(p) = f(p - a)`.
    Abar,
    /// Forward difference `(A - 1)/a`.
    D,
    /// Backward difference `(1 - Abar)/a`.
    Dbar,
    /// Momentum, `(P f)(p) = p f(p)`.
    P,
    /// Position, `(D + Dbar)/(2i)`.
    X,
    /// `Dbar - D`.
    Q,
    /// `X^2 + P^2`.
    H,
    I,
}

impl OperatorName {
    pub const ALL: [OperatorName; 9] = [
        OperatorName::A,
        OperatorName::Abar,
        OperatorName::D,
        OperatorName::Dbar,
        OperatorName::P,
        OperatorName::X,
        OperatorName::Q,
        OperatorName::H,
        OperatorName::I,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            OperatorName::A => "A",
            OperatorName::Abar => "Abar",
            OperatorName::D => "D",
            OperatorName::Dbar => "Dbar",
            OperatorName::P => "P",
            OperatorName::X => "X",
            OperatorName::Q => "Q",
            OperatorName::H => "H",
            OperatorName::I => "I",
        }
    }
}

impl FromStr for OperatorName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        OperatorName::ALL.into_iter().find(|n| n.as_str() == s).ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

impl fmt::Display for OperatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A dense `n x n` matrix on a lattice with tracked band structure.
///
/// `lower` and `upper` bound the number of nonzero sub- and superdiagonals;
/// entries outside the band are always zero. They add under products, so the
/// bounds of any expression tree are known without inspecting entries.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    lattice: MomentumLattice,
    entries: DMatrix<Complex64>,
    lower: usize,
    upper: usize,
}

impl OperatorMatrix {
    fn with_band(lattice: MomentumLattice, entries: DMatrix<Complex64>, lower: usize, upper: usize) -> Self {
        let cap = lattice.n_points() - 1;
        Self { lattice, entries, lower: lower.min(cap), upper: upper.min(cap) }
    }

    pub fn identity(lattice: MomentumLattice) -> Self {
        let n = lattice.n_points();
        Self::with_band(lattice, DMatrix::identity(n, n), 0, 0)
    }

    pub fn zeros(lattice: MomentumLattice) -> Self {
        let n = lattice.n_points();
        Self::with_band(lattice, DMatrix::zeros(n, n), 0, 0)
    }

    /// `c * I`.
    pub fn scalar(lattice: MomentumLattice, c: Complex64) -> Self {
        Self::identity(lattice).scale(c)
    }

    pub fn lattice(&self) -> &MomentumLattice {
        &self.lattice
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    /// Maximum `|row - column|` that may hold a nonzero entry.
    pub fn shift_radius(&self) -> usize {
        self.lower.max(self.upper)
    }

    pub fn bandwidths(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    /// Largest magnitude found outside the tracked band; zero for every
    /// correctly built matrix.
    pub fn band_leakage(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for k in 0..n {
            for j in 0..n {
                let outside = (j > k && j - k > self.lower) || (k > j && k - j > self.upper);
                if outside {
                    worst = worst.max(self.entries[(j, k)].norm());
                }
            }
        }
        worst
    }

    fn band_columns(&self, row: usize) -> std::ops::Range<usize> {
        row.saturating_sub(self.lower)..(row + self.upper + 1).min(self.dim())
    }

    fn check_same_lattice(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { entries: self.entries.map(|v| v * c), ..self.clone() }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_lattice(other)?;
        Ok(Self::with_band(
            self.lattice,
            &self.entries + &other.entries,
            self.lower.max(other.lower),
            self.upper.max(other.upper),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_lattice(other)?;
        Ok(Self::with_band(
            self.lattice,
            &self.entries - &other.entries,
            self.lower.max(other.lower),
            self.upper.max(other.upper),
        ))
    }

    /// Matrix product restricted to the band; `O(n * r1 * r2)`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_lattice(other)?;
        let n = self.dim();
        let mut out = DMatrix::from_element(n, n, ZERO);
        for j in 0..n {
            for l in self.band_columns(j) {
                let left = self.entries[(j, l)];
                if left == ZERO {
                    continue;
                }
                for k in other.band_columns(l) {
                    out[(j, k)] += left * other.entries[(l, k)];
                }
            }
        }
        Ok(Self::with_band(self.lattice, out, self.lower + other.lower, self.upper + other.upper))
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut acc = Self::identity(self.lattice);
        for _ in 0..n {
            acc = acc.matmul(self)?;
        }
        Ok(acc)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::with_band(self.lattice, self.entries.adjoint(), self.upper, self.lower)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Builds the truncated matrix of a named operator.
pub fn build_operator(lattice: MomentumLattice, name: OperatorName) -> OperatorMatrix {
    let n = lattice.n_points();
    let inv_a = Complex64::new(1.0 / lattice.spacing(), 0.0);
    let shift = |up: bool| {
        let mut m = DMatrix::from_element(n, n, ZERO);
        for j in 0..n.saturating_sub(1) {
            if up {
                m[(j, j + 1)] = ONE;
            } else {
                m[(j + 1, j)] = ONE;
            }
        }
        m
    };
    let op = |name| build_operator(lattice, name);
    let combine = |r: Result<OperatorMatrix>| r.expect("operands share a lattice");
    match name {
        OperatorName::I => OperatorMatrix::identity(lattice),
        OperatorName::A => OperatorMatrix::with_band(lattice, shift(true), 0, 1),
        OperatorName::Abar => OperatorMatrix::with_band(lattice, shift(false), 1, 0),
        OperatorName::P => {
            let diag = nalgebra::DVector::from_iterator(n, lattice.momenta().map(|p| Complex64::new(p, 0.0)));
            OperatorMatrix::with_band(lattice, DMatrix::from_diagonal(&diag), 0, 0)
        }
        OperatorName::D => combine(op(OperatorName::A).sub(&op(OperatorName::I))).scale(inv_a),
        OperatorName::Dbar => combine(op(OperatorName::I).sub(&op(OperatorName::Abar))).scale(inv_a),
        OperatorName::X => {
            // 1/(2i) = -i/2
            combine(op(OperatorName::D).add(&op(OperatorName::Dbar))).scale(Complex64::new(0.0, -0.5))
        }
        OperatorName::Q => combine(op(OperatorName::Dbar).sub(&op(OperatorName::D))),
        OperatorName::H => {
            let x = op(OperatorName::X);
            let p = op(OperatorName::P);
            combine(combine(x.matmul(&x)).add(&combine(p.matmul(&p))))
        }
    }
}

/// Parses an operator name and builds it.
pub fn build_operator_named(lattice: MomentumLattice, name: &str) -> Result<OperatorMatrix> {
    Ok(build_operator(lattice, name.parse()?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketKind {
    Commutator,
    Anticommutator,
}

/// `M1 M2 - M2 M1` or `M1 M2 + M2 M1`.
pub fn bracket(kind: BracketKind, m1: &OperatorMatrix, m2: &OperatorMatrix) -> Result<OperatorMatrix> {
    let forward = m1.matmul(m2)?;
    let backward = m2.matmul(m1)?;
    match kind {
        BracketKind::Commutator => forward.sub(&backward),
        BracketKind::Anticommutator => forward.add(&backward),
    }
}

/// Matrix-vector product.
pub fn apply(m: &OperatorMatrix, f: &GridFunction) -> Result<GridFunction> {
    if m.lattice != *f.lattice() {
        return Err(Error::LatticeMismatch);
    }
    let values = f.values();
    let out = (0..m.dim()).map(|j| m.band_columns(j).map(|k| m.entries[(j, k)] * values[k]).sum()).collect();
    GridFunction::new(m.lattice, out)
}

/// Largest entry magnitude over rows `margin .. n - margin`.
pub fn interior_residual(m: &OperatorMatrix, margin: usize) -> Result<f64> {
    let n = m.dim();
    if 2 * margin >= n {
        return Err(Error::MarginTooLarge { margin, n_points: n });
    }
    let mut worst = 0.0f64;
    for j in margin..n - margin {
        for k in 0..n {
            worst = worst.max(m.entries[(j, k)].norm());
        }
    }
    Ok(worst)
}

/// Evaluates an operator expression with the truncated matrices.
///
/// Scalars (`i`, `a`, numbers) become multiples of the identity; division
/// accepts the same scalar monomials as [`normal_form`].
pub fn evaluate(expr: &Expression, lattice: MomentumLattice) -> Result<OperatorMatrix> {
    let a = lattice.spacing();
    Ok(match expr {
        Expression::Atom(atom) => match atom {
            Atom::Imag => OperatorMatrix::scalar(lattice, Complex64::new(0.0, 1.0)),
            Atom::Spacing => OperatorMatrix::scalar(lattice, Complex64::new(a, 0.0)),
            other => build_operator_named(lattice, other.name())?,
        },
        Expression::Number(_) => OperatorMatrix::scalar(lattice, scalar_value(expr, a)?),
        Expression::Div(..) if is_scalar_expr(expr) => OperatorMatrix::scalar(lattice, scalar_value(expr, a)?),
        Expression::Neg(e) => evaluate(e, lattice)?.scale(Complex64::new(-1.0, 0.0)),
        Expression::Add(l, r) => evaluate(l, lattice)?.add(&evaluate(r, lattice)?)?,
        Expression::Sub(l, r) => evaluate(l, lattice)?.sub(&evaluate(r, lattice)?)?,
        Expression::Mul(l, r) => evaluate(l, lattice)?.matmul(&evaluate(r, lattice)?)?,
        Expression::Div(l, r) => evaluate(l, lattice)?.scale(divisor_inverse(r, a)?),
        Expression::Pow(b, n) => evaluate(b, lattice)?.pow(*n)?,
        Expression::Commutator(l, r) => {
            bracket(BracketKind::Commutator, &evaluate(l, lattice)?, &evaluate(r, lattice)?)?
        }
        Expression::Anticommutator(l, r) => {
            bracket(BracketKind::Anticommutator, &evaluate(l, lattice)?, &evaluate(r, lattice)?)?
        }
    })
}

fn is_scalar_expr(e: &Expression) -> bool {
    match e {
        Expression::Atom(a) => a.is_scalar(),
        Expression::Number(_) => true,
        Expression::Neg(x) | Expression::Pow(x, _) => is_scalar_expr(x),
        Expression::Add(l, r) | Expression::Sub(l, r) | Expression::Mul(l, r) | Expression::Div(l, r) => {
            is_scalar_expr(l) && is_scalar_expr(r)
        }
        Expression::Commutator(..) | Expression::Anticommutator(..) => false,
    }
}

/// Numeric value of an expression that normal-orders to a multiple of `I`.
fn scalar_value(e: &Expression, a: f64) -> Result<Complex64> {
    let coef = normal_form(e)?.as_scalar().ok_or(Error::NonScalarDivision)?;
    let (re, im) = coef.evaluate(a);
    Ok(Complex64::new(re, im))
}

/// `1/d` for a divisor that normal-orders to a nonzero `c * a^k`.
fn divisor_inverse(d: &Expression, a: f64) -> Result<Complex64> {
    let inv = normal_form(d)?.as_scalar().and_then(|c| c.inv_monomial()).ok_or(Error::NonScalarDivision)?;
    let (re, im) = inv.evaluate(a);
    Ok(Complex64::new(re, im))
}

/// Parses and evaluates in one step.
pub fn evaluate_str(text: &str, lattice: MomentumLattice) -> Result<OperatorMatrix> {
    evaluate(&crate::algebra::parse(text)?, lattice)
}

#[cfg(test)]
mod tests;
