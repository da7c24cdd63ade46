//! The momentum grid and the function space on top of it.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::report::fmt_real;
use crate::{Error, Result};

/// The finite window `p_j = p0 + j*a`, `j = 0 .. n_points-1`, of a
/// semi-infinite momentum lattice.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentumLattice {
    #[serde(serialize_with = "crate::report::ser_real")]
    p0: f64,
    #[serde(serialize_with = "crate::report::ser_real")]
    a: f64,
    n_points: usize,
}

impl MomentumLattice {
    pub fn new(p0: f64, a: f64, n_points: usize) -> Result<Self> {
        if !p0.is_finite() {
            return Err(Error::InvalidLattice(format!("p0 must be finite, got {p0}")));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidLattice(format!("spacing must be positive, got {a}")));
        }
        if n_points == 0 {
            return Err(Error::InvalidLattice("n_points must be at least 1".into()));
        }
        Ok(Self { p0, a, n_points })
    }

    /// The lattice of allowed momenta `p_N = hbar*pi*N/L` of the infinite
    /// square well of width `length`, one point per energy level.
    pub fn square_well(length: f64, n_levels: usize, hbar: f64) -> Result<Self> {
        if !(length.is_finite() && length > 0.0) {
            return Err(Error::InvalidLattice(format!("well width must be positive, got {length}")));
        }
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidLattice(format!("hbar must be positive, got {hbar}")));
        }
        let step = hbar * PI / length;
        Self::new(step, step, n_levels)
    }

    pub fn p0(&self) -> f64 {
        self.p0
    }

    pub fn spacing(&self) -> f64 {
        self.a
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn momentum_at(&self, j: usize) -> Result<f64> {
        if j >= self.n_points {
            return Err(Error::IndexOutOfRange { index: j, len: self.n_points });
        }
        Ok(self.p0 + j as f64 * self.a)
    }

    /// All lattice momenta in index order.
    pub fn momenta(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |j| self.p0 + j as f64 * self.a)
    }
}

/// Free-function form of [`MomentumLattice::momentum_at`].
pub fn momentum_at(lattice: &MomentumLattice, j: usize) -> Result<f64> {
    lattice.momentum_at(j)
}

/// Free-function form of [`MomentumLattice::square_well`].
pub fn square_well_lattice(length: f64, n_levels: usize, hbar: f64) -> Result<MomentumLattice> {
    MomentumLattice::square_well(length, n_levels, hbar)
}

/// A complex function sampled at every point of a lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    lattice: MomentumLattice,
    values: Vec<Complex64>,
}

impl GridFunction {
    pub fn new(lattice: MomentumLattice, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != lattice.n_points() {
            return Err(Error::LengthMismatch { expected: lattice.n_points(), got: values.len() });
        }
        Ok(Self { lattice, values })
    }

    pub fn zeros(lattice: MomentumLattice) -> Self {
        Self { lattice, values: vec![Complex64::new(0.0, 0.0); lattice.n_points()] }
    }

    /// Samples `f` at every lattice momentum.
    pub fn from_fn(lattice: MomentumLattice, f: impl Fn(f64) -> Complex64) -> Self {
        let values = lattice.momenta().map(f).collect();
        Self { lattice, values }
    }

    pub fn lattice(&self) -> &MomentumLattice {
        &self.lattice
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self { lattice: self.lattice, values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Pointwise product.
    pub fn mul_pointwise(&self, other: &Self) -> Result<Self> {
        self.check_same_lattice(other)?;
        let values = self.values.iter().zip(&other.values).map(|(f, g)| f * g).collect();
        Ok(Self { lattice: self.lattice, values })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub(crate) fn check_same_lattice(&self, other: &Self) -> Result<()> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(())
    }

    /// Serialises to the `j,p,re,im` interchange format.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,p,re,im\n");
        for (j, (p, v)) in self.lattice.momenta().zip(&self.values).enumerate() {
            writeln!(out, "{},{},{},{}", j, fmt_real(p), fmt_real(v.re), fmt_real(v.im))
                .expect("writing to a String cannot fail");
        }
        out
    }

    /// Parses the `j,p,re,im` format. With `spacing = None` the lattice is
    /// inferred from the first two momenta, which needs at least two rows.
    pub fn from_csv(text: &str, spacing: Option<f64>) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Csv("empty input".into()))?;
        let cols: Vec<&str> = header.split(',').map(str::trim).collect();
        if cols != ["j", "p", "re", "im"] {
            return Err(Error::Csv(format!("expected header `j,p,re,im`, got `{header}`")));
        }
        let mut momenta = Vec::new();
        let mut values = Vec::new();
        for (row, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 4 {
                return Err(Error::Csv(format!("row {row}: expected 4 fields")));
            }
            let j: usize =
                fields[0].parse().map_err(|_| Error::Csv(format!("row {row}: bad index `{}`", fields[0])))?;
            if j != row {
                return Err(Error::Csv(format!("row {row}: index {j} out of order")));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Csv(format!("row {row}: bad number `{s}`")));
            momenta.push(num(fields[1])?);
            values.push(Complex64::new(num(fields[2])?, num(fields[3])?));
        }
        if momenta.is_empty() {
            return Err(Error::Csv("no data rows".into()));
        }
        let a = match spacing {
            Some(a) => a,
            None if momenta.len() >= 2 => momenta[1] - momenta[0],
            None => return Err(Error::Csv("cannot infer spacing from a single row".into())),
        };
        let lattice = MomentumLattice::new(momenta[0], a, momenta.len())?;
        for (j, p) in momenta.iter().enumerate() {
            let expected = lattice.p0 + j as f64 * a;
            if (p - expected).abs() > 1e-9 * (1.0 + expected.abs()) {
                return Err(Error::Csv(format!("row {j}: momentum {p} is off the lattice")));
            }
        }
        GridFunction::new(lattice, values)
    }
}

/// The discrete integral `a * sum_j f(p_j)` over the window.
pub fn a_integral(f: &GridFunction) -> Complex64 {
    f.values.iter().sum::<Complex64>() * f.lattice.a
}

/// `<f|g> = a * sum_j conj(f_j) g_j`; conjugate-linear in `f`.
pub fn inner_product(f: &GridFunction, g: &GridFunction) -> Result<Complex64> {
    f.check_same_lattice(g)?;
    let s: Complex64 = f.values.iter().zip(&g.values).map(|(x, y)| x.conj() * y).sum();
    Ok(s * f.lattice.a)
}
