use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use super::suite::leibniz_gaps;
use super::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn lat(p0: f64, a: f64, n: usize) -> MomentumLattice {
    MomentumLattice::new(p0, a, n).unwrap()
}

fn real_rows(m: &OperatorMatrix) -> Vec<Vec<f64>> {
    (0..m.dim()).map(|j| (0..m.dim()).map(|k| m.entries()[(j, k)].re).collect()).collect()
}

#[test]
fn shift_matrix_layout() {
    let a = build_operator(lat(0.0, 1.0, 3), OperatorName::A);
    assert_eq!(real_rows(&a), vec![vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 0.0]]);
    let abar = build_operator(lat(0.0, 1.0, 3), OperatorName::Abar);
    assert_eq!(real_rows(&abar), vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]);
}

#[test]
fn momentum_is_diagonal() {
    let p = build_operator(lat(0.0, 0.5, 2), OperatorName::P);
    assert_eq!(real_rows(&p), vec![vec![0.0, 0.0], vec![0.0, 0.5]]);
    assert_eq!(p.shift_radius(), 0);
}

#[test]
fn single_point_position_is_zero() {
    let x = build_operator(lat(3.0, 0.7, 1), OperatorName::X);
    assert_eq!(x.entries()[(0, 0)], c(0.0, 0.0));
    assert_eq!(x.shift_radius(), 0);
}

#[test]
fn position_entries() {
    let a = 0.25;
    let x = build_operator(lat(0.0, a, 4), OperatorName::X);
    // X = (A - Abar)/(2ia): superdiagonal -i/(2a), subdiagonal +i/(2a).
    assert_eq!(x.entries()[(0, 1)], c(0.0, -0.5 / a));
    assert_eq!(x.entries()[(1, 0)], c(0.0, 0.5 / a));
    assert_eq!(x.entries()[(1, 1)], c(0.0, 0.0));
}

#[test]
fn radii_of_named_operators() {
    let l = lat(0.0, 0.1, 10);
    let expected = [
        (OperatorName::P, 0),
        (OperatorName::I, 0),
        (OperatorName::A, 1),
        (OperatorName::Abar, 1),
        (OperatorName::D, 1),
        (OperatorName::Dbar, 1),
        (OperatorName::X, 1),
        (OperatorName::Q, 1),
        (OperatorName::H, 2),
    ];
    for (name, r) in expected {
        let m = build_operator(l, name);
        assert_eq!(m.shift_radius(), r, "{name}");
        assert_eq!(m.band_leakage(), 0.0, "{name}");
    }
}

#[test]
fn unknown_operator_name() {
    assert_eq!("Z".parse::<OperatorName>(), Err(Error::UnknownOperator("Z".into())));
    assert!(build_operator_named(lat(0.0, 1.0, 3), "Abar").is_ok());
}

#[test]
fn bracket_examples() {
    let l = lat(0.0, 0.5, 8);
    let p = build_operator(l, OperatorName::P);
    let pp = bracket(BracketKind::Commutator, &p, &p).unwrap();
    assert_eq!(pp.max_abs(), 0.0);

    let a = build_operator(l, OperatorName::A);
    let ap = bracket(BracketKind::Commutator, &a, &p).unwrap();
    let resid = ap.sub(&a.scale(c(0.5, 0.0))).unwrap();
    assert_eq!(interior_residual(&resid, 1).unwrap(), 0.0);

    let q = build_operator(l, OperatorName::Q);
    let id = OperatorMatrix::identity(l);
    let anti = bracket(BracketKind::Anticommutator, &id, &q).unwrap();
    assert_eq!(anti, OperatorMatrix { entries: q.entries().map(|v| v * 2.0), ..anti.clone() });
    assert_eq!(anti.shift_radius(), 1);

    let other = build_operator(lat(0.0, 0.25, 8), OperatorName::P);
    assert_eq!(bracket(BracketKind::Commutator, &p, &other), Err(Error::LatticeMismatch));
}

#[test]
fn apply_examples() {
    let l = lat(0.0, 1.0, 3);
    let f = GridFunction::new(l, vec![c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]).unwrap();
    let shifted = apply(&build_operator(l, OperatorName::A), &f).unwrap();
    assert_eq!(shifted.values(), &[c(2.0, 0.0), c(3.0, 0.0), c(0.0, 0.0)]);
    let back = apply(&build_operator(l, OperatorName::Abar), &f).unwrap();
    assert_eq!(back.values(), &[c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0)]);
    assert_eq!(apply(&build_operator(l, OperatorName::I), &f).unwrap(), f);
    let g = GridFunction::zeros(lat(0.0, 1.0, 4));
    assert!(apply(&build_operator(l, OperatorName::I), &g).is_err());
}

#[test]
fn interior_residual_examples() {
    let l = lat(0.0, 1.0, 8);
    let a = build_operator(l, OperatorName::A);
    let p = build_operator(l, OperatorName::P);
    let m = bracket(BracketKind::Commutator, &a, &p).unwrap().sub(&a).unwrap();
    assert_eq!(interior_residual(&m, 1).unwrap(), 0.0);

    let abar = build_operator(l, OperatorName::Abar);
    let m = a.matmul(&abar).unwrap().sub(&OperatorMatrix::identity(l)).unwrap();
    assert_eq!(interior_residual(&m, 1).unwrap(), 0.0);
    assert_eq!(interior_residual(&m, 0).unwrap(), 1.0);

    assert_eq!(interior_residual(&OperatorMatrix::zeros(l), 0).unwrap(), 0.0);
    assert_eq!(interior_residual(&m, 4), Err(Error::MarginTooLarge { margin: 4, n_points: 8 }));
}

#[test]
fn shift_products_bandwidths() {
    let l = lat(0.0, 1.0, 8);
    let a = build_operator(l, OperatorName::A);
    let abar = build_operator(l, OperatorName::Abar);
    // A has only a superdiagonal and Abar only a subdiagonal, so A*Abar
    // spreads by one in each direction rather than two.
    assert_eq!(a.matmul(&abar).unwrap().bandwidths(), (1, 1));
    assert_eq!(a.matmul(&a).unwrap().bandwidths(), (0, 2));
}

#[test]
fn evaluation_of_scalars_and_division() {
    let l = lat(0.0, 0.5, 8);
    let m = evaluate_str("(i*a/2)*I", l).unwrap();
    assert_eq!(m.entries()[(3, 3)], c(0.0, 0.25));
    let m = evaluate_str("P/(2*a)", l).unwrap();
    assert_eq!(m.entries()[(4, 4)], c(2.0, 0.0));
    assert_eq!(evaluate_str("A/P", l), Err(Error::NonScalarDivision));
    let h = evaluate_str("H", l).unwrap();
    assert_eq!(h, build_operator(l, OperatorName::H));
}

#[test]
fn identity_suite_on_fine_lattice() {
    let reports = verify_identity_suite(lat(0.0, 0.1, 64)).unwrap();
    assert!(reports.len() >= 14);
    for r in &reports {
        assert!(r.max_interior_residual < 1e-12, "{r:?}");
    }
    let margin_of = |name: &str| reports.iter().find(|r| r.identity_name == name).unwrap().margin_rows;
    assert_eq!(margin_of("shift_inverse_A_Abar"), 1);
    assert_eq!(margin_of("commutator_A_P"), 1);
    assert_eq!(margin_of("commutator_X_P"), 1);
    assert_eq!(margin_of("hamiltonian_shift_form"), 2);
    assert_eq!(margin_of("lie_hamilton_X_ordered"), 3);
    assert_eq!(margin_of("lie_hamilton_P_anticommutator"), 2);
    for exact in ["hermitian_P", "hermitian_X", "adjoint_Abar_is_A_dagger"] {
        let r = reports.iter().find(|r| r.identity_name == exact).unwrap();
        assert_eq!(r.max_interior_residual, 0.0, "{exact}");
    }
}

#[test]
fn identity_suite_on_square_well() {
    let reports = verify_identity_suite(MomentumLattice::square_well(1.0, 16, 1.0).unwrap()).unwrap();
    for r in &reports {
        assert!(r.max_interior_residual < 1e-10, "{r:?}");
    }
}

#[test]
fn identity_suite_needs_eight_points() {
    assert!(matches!(verify_identity_suite(lat(0.0, 0.1, 7)), Err(Error::LatticeTooSmall(_))));
}

#[test]
fn residuals_are_not_vacuous() {
    // A deliberately wrong identity must show an O(1) interior residual.
    let m = evaluate_str("[X,P] - (i + (i/2)*a*Q)", lat(0.0, 0.1, 32)).unwrap();
    assert_abs_diff_eq!(interior_residual(&m, 1).unwrap(), 2.0, epsilon = 1e-12);
}

fn random_values(n: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), n).prop_map(|v| v.into_iter().map(|(r, i)| c(r, i)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_rules_hold(
        (f, g) in (3usize..48).prop_flat_map(|n| (random_values(n), random_values(n))),
        p0 in -5.0..5.0f64,
        a in 0.05..1.0f64,
    ) {
        let l = lat(p0, a, f.len());
        let f = GridFunction::new(l, f).unwrap();
        let g = GridFunction::new(l, g).unwrap();
        let (fwd, bwd) = leibniz_gaps(&f, &g).unwrap();
        // Values are O(1); differences carry a 1/a factor.
        prop_assert!(fwd < 1e-12 / a.min(1.0) * 10.0, "D rule {fwd}");
        prop_assert!(bwd < 1e-12 / a.min(1.0) * 10.0, "Dbar rule {bwd}");
    }

    #[test]
    fn suite_holds_on_moderate_lattices(p0 in -10.0..0.0f64, a in 0.1..1.0f64, n in 8usize..40) {
        prop_assume!(p0 + a * (n - 1) as f64 <= 10.0);
        for r in verify_identity_suite(lat(p0, a, n)).unwrap() {
            prop_assert!(r.max_interior_residual < 1e-12, "{:?}", r);
        }
    }

    #[test]
    fn bands_survive_arithmetic(n in 2usize..20, a in 0.1..2.0f64) {
        let l = lat(-1.0, a, n);
        for text in ["[X,H]", "{Q,P}", "X*Q*P", "H^2 - A*Abar", "[D,[Dbar,P]]"] {
            let m = evaluate_str(text, l).unwrap();
            prop_assert_eq!(m.band_leakage(), 0.0, "{}", text);
        }
    }
}
