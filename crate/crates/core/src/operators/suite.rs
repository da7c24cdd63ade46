use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{apply, build_operator, evaluate_str, interior_residual, OperatorMatrix, OperatorName};
use crate::algebra::IDENTITIES;
use crate::lattice::{inner_product, GridFunction, MomentumLattice};
use crate::report::ser_real;
use crate::{Error, Result};

/// Smallest lattice on which every identity still has interior rows.
pub const MIN_SUITE_POINTS: usize = 8;

const SEED: u64 = 0x6d6f_6d6c_6174;
const RANDOM_TRIALS: usize = 4;

/// Interior residual of one identity on one lattice.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub identity_name: String,
    #[serde(serialize_with = "ser_real")]
    pub max_interior_residual: f64,
    pub margin_rows: usize,
    pub lattice: MomentumLattice,
}

impl ResidualReport {
    fn new(name: &str, residual: f64, margin: usize, lattice: MomentumLattice) -> Self {
        Self { identity_name: name.into(), max_interior_residual: residual, margin_rows: margin, lattice }
    }
}

/// Checks every operator identity on `lattice`.
///
/// Algebraic identities are evaluated as residual matrices `lhs - rhs` and
/// measured with a margin equal to the residual's shift radius. On top of
/// those: exact hermiticity of `P` and `X`, exact adjointness `Abar = A^+`,
/// `<f|A g> = <Abar f|g>` for functions vanishing at both ends, and the two
/// product rules on random functions.
pub fn verify_identity_suite(lattice: MomentumLattice) -> Result<Vec<ResidualReport>> {
    if lattice.n_points() < MIN_SUITE_POINTS {
        return Err(Error::LatticeTooSmall(format!(
            "identity suite needs at least {MIN_SUITE_POINTS} points, got {}",
            lattice.n_points()
        )));
    }
    let mut reports = Vec::with_capacity(IDENTITIES.len() + 6);
    for id in IDENTITIES {
        let m = evaluate_str(id.residual, lattice)?;
        let margin = m.shift_radius();
        reports.push(ResidualReport::new(id.name, interior_residual(&m, margin)?, margin, lattice));
    }

    let op = |name| build_operator(lattice, name);
    let self_adjoint_gap = |m: &OperatorMatrix| -> Result<f64> { interior_residual(&m.sub(&m.adjoint())?, 0) };
    reports.push(ResidualReport::new("hermitian_P", self_adjoint_gap(&op(OperatorName::P))?, 0, lattice));
    reports.push(ResidualReport::new("hermitian_X", self_adjoint_gap(&op(OperatorName::X))?, 0, lattice));
    let adj = op(OperatorName::Abar).sub(&op(OperatorName::A).adjoint())?;
    reports.push(ResidualReport::new("adjoint_Abar_is_A_dagger", interior_residual(&adj, 0)?, 0, lattice));

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut inner = 0.0f64;
    let mut leibniz_fwd = 0.0f64;
    let mut leibniz_bwd = 0.0f64;
    for _ in 0..RANDOM_TRIALS {
        let f = random_function(&mut rng, lattice, true);
        let g = random_function(&mut rng, lattice, true);
        inner = inner.max(adjoint_inner_product_gap(&f, &g)?);
        let f = random_function(&mut rng, lattice, false);
        let g = random_function(&mut rng, lattice, false);
        let (fwd, bwd) = leibniz_gaps(&f, &g)?;
        leibniz_fwd = leibniz_fwd.max(fwd);
        leibniz_bwd = leibniz_bwd.max(bwd);
    }
    reports.push(ResidualReport::new("adjoint_inner_product", inner, 1, lattice));
    reports.push(ResidualReport::new("product_rule_D", leibniz_fwd, 1, lattice));
    reports.push(ResidualReport::new("product_rule_Dbar", leibniz_bwd, 1, lattice));
    Ok(reports)
}

fn random_function(rng: &mut ChaCha8Rng, lattice: MomentumLattice, pinned_ends: bool) -> GridFunction {
    let n = lattice.n_points();
    let values = (0..n)
        .map(|j| {
            if pinned_ends && (j == 0 || j == n - 1) {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
            }
        })
        .collect();
    GridFunction::new(lattice, values).expect("length matches lattice")
}

/// `|<f|A g> - <Abar f|g>|`.
pub fn adjoint_inner_product_gap(f: &GridFunction, g: &GridFunction) -> Result<f64> {
    let lattice = *f.lattice();
    let a = build_operator(lattice, OperatorName::A);
    let abar = build_operator(lattice, OperatorName::Abar);
    let lhs = inner_product(f, &apply(&a, g)?)?;
    let rhs = inner_product(&apply(&abar, f)?, g)?;
    Ok((lhs - rhs).norm())
}

/// Largest interior violation of the two product rules
/// `D(fg) = (Df) g + f(p+a) (Dg)` and `Dbar(fg) = (Dbar f) g + f(p-a) (Dbar g)`.
pub fn leibniz_gaps(f: &GridFunction, g: &GridFunction) -> Result<(f64, f64)> {
    let lattice = *f.lattice();
    let n = lattice.n_points();
    let fg = f.mul_pointwise(g)?;
    let d = build_operator(lattice, OperatorName::D);
    let dbar = build_operator(lattice, OperatorName::Dbar);
    let (d_fg, d_f, d_g) = (apply(&d, &fg)?, apply(&d, f)?, apply(&d, g)?);
    let (b_fg, b_f, b_g) = (apply(&dbar, &fg)?, apply(&dbar, f)?, apply(&dbar, g)?);
    let (fv, gv) = (f.values(), g.values());
    let mut fwd = 0.0f64;
    let mut bwd = 0.0f64;
    for j in 1..n.saturating_sub(1) {
        let r = d_fg.values()[j] - d_f.values()[j] * gv[j] - fv[j + 1] * d_g.values()[j];
        fwd = fwd.max(r.norm());
        let r = b_fg.values()[j] - b_f.values()[j] * gv[j] - fv[j - 1] * b_g.values()[j];
        bwd = bwd.max(r.norm());
    }
    Ok((fwd, bwd))
}
