use approx::assert_abs_diff_eq;
use nalgebra::DMatrix;
use proptest::prelude::*;

use super::*;
use crate::lattice::inner_product;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn lat(a: f64, n: usize) -> MomentumLattice {
    MomentumLattice::new(0.0, a, n).unwrap()
}

fn one() -> Complex64 {
    c(1.0, 0.0)
}

#[test]
fn alpha_examples() {
    assert_eq!(alpha(0.0, 1.0).unwrap().alpha, c(-1.0, 0.0));
    assert_eq!(alpha(1.0, 1.0).unwrap().alpha, c(0.0, 1.0));
    let half = alpha(0.5, 1.0).unwrap().alpha;
    assert_abs_diff_eq!(half.re, -0.8660254, epsilon = 1e-7);
    assert_abs_diff_eq!(half.im, 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(half.norm(), 1.0, epsilon = 1e-15);
}

#[test]
fn alpha_rejects_outside_band() {
    let err = alpha(2.0, 1.0).unwrap_err();
    assert_eq!(err, Error::OutsideBand(2.0));
    assert!(err.to_string().contains("eigenvalue outside lattice band"));
    assert!(alpha(f64::NAN, 1.0).is_err());
}

#[test]
fn recurrence_examples() {
    let r = eigenvector_recurrence(lat(1.0, 5), 0.0, one()).unwrap();
    let expect = [1.0, 0.0, 1.0, 0.0, 1.0].map(|v| c(v, 0.0));
    assert_eq!(r.phi.values(), &expect);
    assert_eq!(r.phi.values()[0], r.phi0);

    for x in [0.2, -0.7, 1.0] {
        let r = eigenvector_recurrence(lat(1.0, 3), x, one()).unwrap();
        assert_eq!(r.phi.values()[1], c(0.0, 2.0 * x));
    }
    assert!(eigenvector_recurrence(lat(1.0, 3), 1.5, one()).is_err());
}

#[test]
fn closed_form_examples() {
    let phi0 = c(0.3, -1.2);
    let r = eigenvector_closed_form(lat(1.0, 6), 0.5, phi0).unwrap();
    assert!((r.phi.values()[0] - phi0).norm() < 1e-15);
    assert!((r.phi.values()[1] - phi0 * c(0.0, 1.0)).norm() < 1e-15);

    let r = eigenvector_closed_form(lat(1.0, 6), 0.0, one()).unwrap();
    for (j, v) in r.phi.values().iter().enumerate() {
        let expected = if j % 2 == 0 { 1.0 } else { 0.0 };
        assert!((v - c(expected, 0.0)).norm() < 1e-15, "{j}: {v}");
    }

    let rec = eigenvector_recurrence(lat(1.0, 4), 0.5, one()).unwrap();
    let cf = eigenvector_closed_form(lat(1.0, 4), 0.5, one()).unwrap();
    for (x, y) in rec.phi.values().iter().zip(cf.phi.values()) {
        assert!((x - y).norm() < 1e-12);
    }
}

#[test]
fn closed_form_rejects_band_edge() {
    assert_eq!(eigenvector_closed_form(lat(1.0, 4), 1.0, one()).unwrap_err(), Error::OutsideBand(1.0));
    assert!(eigenvector_closed_form(lat(0.5, 4), -3.0, one()).is_err());
}

#[test]
fn direct_normalization_examples() {
    let r = eigenvector_recurrence(lat(1.0, 5), 0.0, one()).unwrap();
    assert_abs_diff_eq!(normalization_direct(&r).unwrap(), 0.5773503, epsilon = 1e-7);
    let r = eigenvector_recurrence(lat(0.25, 5), 0.0, one()).unwrap();
    assert_abs_diff_eq!(normalization_direct(&r).unwrap(), 1.1547005, epsilon = 1e-7);
    // Oracle: 50-digit recurrence gives sum |phi|^2 = 6, so s = 1/sqrt(6).
    let r = eigenvector_closed_form(lat(1.0, 8), 0.5, one()).unwrap();
    assert_abs_diff_eq!(normalization_direct(&r).unwrap(), 0.408248290463863, epsilon = 1e-14);

    let zero = eigenvector_recurrence(lat(1.0, 3), 0.3, c(0.0, 0.0)).unwrap();
    assert_eq!(normalization_direct(&zero), Err(Error::ZeroVector));
}

#[test]
fn closed_form_normalization_literal_values() {
    // x = 0, a = 1: bracket = 8 for both N = 4 and N = 3.
    assert_abs_diff_eq!(normalization_closed_form(0.0, 1.0, 4).unwrap().powi(2), 0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(normalization_closed_form(0.0, 1.0, 3).unwrap().powi(2), 0.5, epsilon = 1e-15);
    // The N = 4 value disagrees with the five-point sum j = 0..4 ...
    let five = eigenvector_recurrence(lat(1.0, 5), 0.0, one()).unwrap();
    assert_abs_diff_eq!(normalization_direct(&five).unwrap().powi(2), 1.0 / 3.0, epsilon = 1e-15);
    // ... and matches the four-point sum j = 0..3.
    let four = eigenvector_recurrence(lat(1.0, 4), 0.0, one()).unwrap();
    assert_abs_diff_eq!(normalization_direct(&four).unwrap().powi(2), 0.5, epsilon = 1e-15);

    // 50-digit oracle values, N = number of lattice points.
    assert_abs_diff_eq!(normalization_closed_form(0.5, 1.0, 8).unwrap(), 0.408248290463863, epsilon = 1e-14);
    assert_abs_diff_eq!(normalization_closed_form(0.3, 0.1, 8).unwrap(), 1.57419681866395, epsilon = 1e-13);
    assert_abs_diff_eq!(normalization_closed_form(0.7, 1.0, 128).unwrap(), 0.0890425174729522, epsilon = 1e-14);
    assert_abs_diff_eq!(normalization_closed_form(9.9, 0.1, 1024).unwrap(), 0.0197384771708965, epsilon = 1e-14);

    assert!(normalization_closed_form(1.0, 1.0, 4).is_err());
}

#[test]
fn spectrum_small_cases() {
    assert_eq!(truncated_spectrum(lat(1.0, 1)), vec![0.0]);
    let two = truncated_spectrum(lat(1.0, 2));
    assert_abs_diff_eq!(two[0], -0.5, epsilon = 1e-15);
    assert_abs_diff_eq!(two[1], 0.5, epsilon = 1e-15);
    let three = truncated_spectrum(lat(1.0, 3));
    let h = std::f64::consts::FRAC_1_SQRT_2;
    for (v, e) in three.iter().zip([-h, 0.0, h]) {
        assert_abs_diff_eq!(*v, e, epsilon = 1e-14);
    }
}

fn dense_oracle(lattice: MomentumLattice) -> Vec<f64> {
    let x = build_operator(lattice, OperatorName::X);
    let m: DMatrix<Complex64> = x.entries().clone();
    let mut ev: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

#[test]
fn spectrum_matches_dense_solver_and_cosine_pattern() {
    for &(a, n) in &[(1.0, 16), (0.3, 25), (2.0, 7)] {
        let l = lat(a, n);
        let ours = truncated_spectrum(l);
        let oracle = dense_oracle(l);
        for (x, y) in ours.iter().zip(&oracle) {
            assert!((x - y).abs() < 1e-10, "a={a} n={n}: {x} vs {y}");
        }
        // Confirmed against the oracle above: (1/a) cos(k pi/(n+1)).
        for (idx, v) in ours.iter().enumerate() {
            let k = n - idx;
            let pattern = (k as f64 * std::f64::consts::PI / (n + 1) as f64).cos() / a;
            assert!((v - pattern).abs() < 1e-10);
            assert!(v.abs() <= 1.0 / a);
        }
    }
}

proptest! {
    #[test]
    fn alpha_is_unimodular(a in 0.01..10.0f64, t in -1.0..=1.0f64) {
        let x = t / a;
        let al = alpha(x, a).unwrap();
        prop_assert!(((al.alpha * al.conj()).re - 1.0).abs() < 1e-12);
        prop_assert!((al.alpha.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn recurrence_and_closed_form_agree(a in 0.05..2.0f64, t in -0.99..0.99f64, n in 1usize..400) {
        let l = lat(a, n);
        let x = t / a;
        let rec = eigenvector_recurrence(l, x, one()).unwrap();
        let cf = eigenvector_closed_form(l, x, one()).unwrap();
        let scale = cf.phi.max_abs();
        for (u, v) in rec.phi.values().iter().zip(cf.phi.values()) {
            prop_assert!((u - v).norm() <= 1e-12 * scale);
        }
        let h = h_sequence(&rec).unwrap();
        let minus_conj = -alpha(x, a).unwrap().conj();
        for (j, hj) in h.iter().enumerate() {
            prop_assert!((hj - minus_conj.powi(j as i32)).norm() < 1e-12);
        }
    }

    #[test]
    fn normalized_vectors_have_unit_norm(a in 0.05..2.0f64, t in -0.99..0.99f64, n in 1usize..300, phase in 0.0..std::f64::consts::TAU) {
        let r = eigenvector_closed_form(lat(a, n), t / a, Complex64::from_polar(1.0, phase)).unwrap();
        let s = normalization_direct(&r).unwrap();
        let v = r.phi.scaled(c(s, 0.0));
        let norm = inner_product(&v, &v).unwrap();
        prop_assert!((norm.re - 1.0).abs() < 1e-12 && norm.im.abs() < 1e-12);
    }

    #[test]
    fn literal_normalization_matches_points_count(a in 0.05..2.0f64, t in -0.95..0.95f64, n in 1usize..300) {
        let r = eigenvector_closed_form(lat(a, n), t / a, one()).unwrap();
        let direct = normalization_direct(&r).unwrap();
        let literal = normalization_closed_form(t / a, a, n).unwrap();
        prop_assert!((direct - literal).abs() <= 1e-10 * direct);
    }

    #[test]
    fn spectrum_lies_in_band(a in 0.05..5.0f64, n in 1usize..60) {
        for v in truncated_spectrum(lat(a, n)) {
            prop_assert!(v.abs() <= 1.0 / a);
        }
    }
}
