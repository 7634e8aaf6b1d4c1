//! Spline evaluation and line integrals against a textbook Cox-de Boor
//! recursion and composite Gauss quadrature written independently here.

use feec_pic::{DeRhamComplex1d, SplineSpace};
use proptest::prelude::*;

mod common;
use common::{composite, periodic, periodic_derivative};

fn dense(space: &SplineSpace, x: f64) -> Vec<f64> {
    let mut v = vec![0.0; space.n_cells()];
    for (j, val) in space.eval_basis(x).iter() {
        v[j] += val;
    }
    v
}

#[test]
fn basis_values_match_cox_de_boor() {
    let n = 11;
    for p in 0..=6 {
        let space = SplineSpace::new(p, n, 3.3).unwrap();
        let dx = space.cell_width();
        for m in 0..97 {
            let x = m as f64 * 0.034 + 1e-3;
            let s = x / dx;
            let got = dense(&space, x);
            for (j, g) in got.iter().enumerate() {
                let want = periodic(j, p, n, s);
                assert!((g - want).abs() < 1e-14, "p={p} x={x} j={j}: {g} vs {want}");
            }
        }
    }
}

#[test]
fn derivatives_match_the_lower_degree_identity() {
    let n = 9;
    for p in 1..=5 {
        let space = SplineSpace::new(p, n, 2.0).unwrap();
        let dx = space.cell_width();
        for m in 0..53 {
            let x = m as f64 * 0.0377;
            let mut got = vec![0.0; n];
            for (j, v) in space.eval_basis_derivative(x).unwrap().iter() {
                got[j] += v;
            }
            for (j, g) in got.iter().enumerate() {
                let want = periodic_derivative(j, p, n, x / dx) / dx;
                assert!((g - want).abs() < 1e-12, "p={p} x={x} j={j}");
            }
        }
    }
}

#[test]
fn quadratic_integral_over_one_cell() {
    let space = SplineSpace::new(2, 8, 4.0).unwrap();
    let dx = space.cell_width();
    let ints = space.integrate_basis_along_segment(3.0 * dx, 4.0 * dx);
    for j in 0..8 {
        let want = dx * composite(|s| periodic(j, 2, 8, s), 3.0, 4.0);
        let got = ints.get(&j).copied().unwrap_or(0.0);
        assert!((got - want).abs() < 1e-14, "j={j}: {got} vs {want}");
    }
    // the three active pieces integrate to 1/6, 2/3, 1/6 of a cell
    assert!((ints[&1] - dx / 6.0).abs() < 1e-15);
    assert!((ints[&2] - 2.0 * dx / 3.0).abs() < 1e-15);
    assert!((ints[&3] - dx / 6.0).abs() < 1e-15);
}

fn segment_dense(space: &SplineSpace, a: f64, b: f64) -> Vec<f64> {
    let mut v = vec![0.0; space.n_cells()];
    space.for_each_segment_integral(a, b, |j, val| v[j] += val);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partition_of_unity(p in 0usize..=7, n in 9usize..40, x in -10.0f64..10.0) {
        let space = SplineSpace::new(p, n, 1.7).unwrap();
        let total: f64 = space.eval_basis(x).values().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-14);
        prop_assert!(space.eval_basis(x).values().iter().all(|v| *v >= 0.0));
    }

    #[test]
    fn segment_integrals_match_quadrature(
        p in 0usize..=7,
        x0 in 0.0f64..3.0,
        len in -4.0f64..4.0,
    ) {
        let n = 10;
        let space = SplineSpace::new(p, n, 3.0).unwrap();
        let dx = space.cell_width();
        let got = segment_dense(&space, x0, x0 + len);
        for (j, g) in got.iter().enumerate() {
            let want = dx * composite(|s| periodic(j, p, n, s), x0 / dx, (x0 + len) / dx);
            prop_assert!((g - want).abs() < 1e-13, "p={} j={}: {} vs {}", p, j, g, want);
        }
    }

    #[test]
    fn segment_integrals_are_additive(
        p in 0usize..=6,
        a in 0.0f64..2.0,
        b in -3.0f64..5.0,
        c in -3.0f64..5.0,
    ) {
        let space = SplineSpace::new(p, 12, 2.0).unwrap();
        let ab = segment_dense(&space, a, b);
        let bc = segment_dense(&space, b, c);
        let ac = segment_dense(&space, a, c);
        let ba = segment_dense(&space, b, a);
        for j in 0..12 {
            prop_assert!((ab[j] + bc[j] - ac[j]).abs() < 1e-13);
            prop_assert!((ab[j] + ba[j]).abs() < 1e-13);
        }
    }

    /// `d/dx` of a V0 field is the V1 field with coefficients `G e`.
    #[test]
    fn commuting_diagram(
        p in 1usize..=6,
        coeffs in prop::collection::vec(-1.0f64..1.0, 16),
        x in 0.0f64..5.0,
    ) {
        let complex = DeRhamComplex1d::new(p, 16, 5.0).unwrap();
        let lhs = complex.v0().eval_basis_derivative(x).unwrap().dot(&coeffs);
        let ge = complex.apply_deriv(&coeffs);
        let rhs = complex.v1().eval_field(&ge, x).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-11 * (1.0 + lhs.abs()));
    }

    /// `G^T` of the path integrals is the change of the V0 basis along the
    /// path, the discrete continuity equation for one particle.
    #[test]
    fn path_integrals_telescope(
        p in 1usize..=6,
        x0 in 0.0f64..4.0,
        len in -9.0f64..9.0,
    ) {
        let complex = DeRhamComplex1d::new(p, 14, 4.0).unwrap();
        let ints = segment_dense(complex.v1(), x0, x0 + len);
        let gt = complex.apply_deriv_transpose(&ints);
        let mut diff = vec![0.0; 14];
        complex.v0().eval_basis(x0 + len).scatter(1.0, &mut diff);
        complex.v0().eval_basis(x0).scatter(-1.0, &mut diff);
        for j in 0..14 {
            prop_assert!((gt[j] - diff[j]).abs() < 1e-12, "j={}: {} vs {}", j, gt[j], diff[j]);
        }
    }
}
