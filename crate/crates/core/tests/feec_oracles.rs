//! Mass matrices, Poisson solve and the field terms of the diagnostics
//! against quadrature of independently evaluated splines.

use feec_pic::diagnostics::{bracket_sum, momentum_report};
use feec_pic::{DeRhamComplex1d, Error, FieldCoeffs, MassId, ParticleSet, SpaceId};
use nalgebra::SymmetricEigen;
use proptest::prelude::*;

mod common;
use common::{field, over_domain, periodic, periodic_derivative};

fn no_particles() -> ParticleSet {
    ParticleSet {
        x: vec![],
        v1: vec![],
        v2: vec![],
        weight: 1.0,
        charge: -1.0,
        mass: 1.0,
    }
}

fn wiggle(n: usize, seed: f64) -> Vec<f64> {
    (0..n).map(|i| ((i as f64 + 1.0) * seed).sin()).collect()
}

#[test]
fn mass_entries_match_quadrature() {
    let n = 10;
    for p in 1..=5 {
        let c = DeRhamComplex1d::new(p, n, 5.0).unwrap();
        let dx = c.cell_width();
        for i in 0..n {
            for j in 0..n {
                let m0 = over_domain(|x| periodic(i, p, n, x / dx) * periodic(j, p, n, x / dx), n, dx);
                let m1 = over_domain(|x| periodic(i, p - 1, n, x / dx) * periodic(j, p - 1, n, x / dx), n, dx);
                let m01 = over_domain(|x| periodic(i, p, n, x / dx) * periodic(j, p - 1, n, x / dx), n, dx);
                assert!((c.mass(MassId::M0).entry(i, j) - m0).abs() < 1e-13, "M0 p={p} ({i},{j})");
                assert!((c.mass(MassId::M1).entry(i, j) - m1).abs() < 1e-13, "M1 p={p} ({i},{j})");
                assert!((c.mixed_mass().entry(i, j) - m01).abs() < 1e-13, "M01 p={p} ({i},{j})");
            }
        }
    }
}

#[test]
fn electric_magnetic_bracket_of_unit_vectors() {
    // {H_E, H_B} with e and b single basis functions is int N_k' N_m dx
    let n = 12;
    let p = 3;
    let c = DeRhamComplex1d::new(p, n, 2.0 * std::f64::consts::PI / 1.25).unwrap();
    let dx = c.cell_width();
    for (k, m) in [(0, 0), (3, 2), (3, 3), (3, 4), (5, 7), (11, 0)] {
        let mut f = FieldCoeffs::zeros(n);
        f.e[k] = 1.0;
        f.b[m] = 1.0;
        let got = bracket_sum(&no_particles(), &f, &c);
        let want = over_domain(|x| periodic_derivative(k, p, n, x / dx) / dx * periodic(m, p - 1, n, x / dx), n, dx);
        assert!((got - want).abs() < 1e-13, "({k},{m}): {got} vs {want}");
    }
}

#[test]
fn particle_brackets_use_the_fields_at_the_particle() {
    let n = 9;
    let p = 3;
    let c = DeRhamComplex1d::new(p, n, 4.0).unwrap();
    let dx = c.cell_width();
    let f = FieldCoeffs {
        d: wiggle(n, 0.7),
        e: wiggle(n, 1.9),
        b: wiggle(n, 2.3),
    };
    let mut ps = no_particles();
    ps.x = vec![0.3, 1.77, 3.99];
    ps.v1 = vec![0.5, -1.2, 0.1];
    ps.v2 = vec![-0.4, 0.8, 2.0];
    ps.weight = 0.25;
    let field_part = bracket_sum(&no_particles(), &f, &c);
    let mut want = 0.0;
    for a in 0..3 {
        let x = ps.x[a];
        let bh = field(&f.b, p - 1, dx, x);
        let dh = field(&f.d, p - 1, dx, x);
        let eh = field(&f.e, p, dx, x);
        want += -0.25 * (ps.v1[a] * bh * ps.v2[a] - ps.v1[a] * dh - ps.v2[a] * eh);
    }
    let got = bracket_sum(&ps, &f, &c) - field_part;
    assert!((got - want).abs() < 1e-13, "{got} vs {want}");
}

#[test]
fn momentum_field_terms_match_quadrature() {
    let n = 11;
    for p in 2..=4 {
        let c = DeRhamComplex1d::new(p, n, 6.0).unwrap();
        let dx = c.cell_width();
        let f = FieldCoeffs {
            d: wiggle(n, 0.31),
            e: wiggle(n, 1.13),
            b: wiggle(n, 2.71),
        };
        let (p1, p2) = momentum_report(&no_particles(), &f, &c);
        let eb = over_domain(|x| field(&f.e, p, dx, x) * field(&f.b, p - 1, dx, x), n, dx);
        let db = over_domain(|x| field(&f.d, p - 1, dx, x) * field(&f.b, p - 1, dx, x), n, dx);
        assert!((p1 - eb).abs() < 1e-12, "p={p}: {p1} vs {eb}");
        assert!((p2 + db).abs() < 1e-12, "p={p}: {p2} vs {}", -db);
        let int_e = over_domain(|x| field(&f.e, p, dx, x), n, dx);
        assert!((c.field_integral(SpaceId::V0, &f.e) - int_e).abs() < 1e-12);
    }
}

#[test]
fn projection_reproduces_splines() {
    let n = 14;
    let c = DeRhamComplex1d::new(3, n, 3.0).unwrap();
    let dx = c.cell_width();
    let coeffs = wiggle(n, 0.83);
    for (id, p) in [(SpaceId::V0, 3), (SpaceId::V1, 2)] {
        let got = c.l2_project(id, |x| field(&coeffs, p, dx, x));
        for (g, w) in got.iter().zip(&coeffs) {
            assert!((g - w).abs() < 1e-12, "{id:?}");
        }
    }
}

#[test]
fn poisson_rejects_a_net_charge() {
    let c = DeRhamComplex1d::new(3, 8, 2.0).unwrap();
    let rho = vec![0.1; 8];
    assert!(matches!(
        c.poisson_solve_initial_field(&rho),
        Err(Error::IncompatibleCharge { .. })
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mass_matrices_are_spd(p in 1usize..=6, extra in 1usize..20, len in 0.5f64..20.0) {
        let n = p + extra;
        let c = DeRhamComplex1d::new(p, n, len).unwrap();
        for m in [c.mass(MassId::M0), c.mass(MassId::M1)] {
            let dense = m.to_dense();
            prop_assert!((&dense - dense.transpose()).amax() < 1e-15);
            let min = SymmetricEigen::new(dense).eigenvalues.min();
            prop_assert!(min > 0.0, "smallest eigenvalue {}", min);
        }
    }

    /// `G^T M1 d = -rho` and `d` has zero mean for any neutral load vector.
    #[test]
    fn poisson_solves_gauss_law(rho in prop::collection::vec(-1.0f64..1.0, 16), p in 2usize..=5) {
        let mean = rho.iter().sum::<f64>() / 16.0;
        let rho: Vec<f64> = rho.iter().map(|r| r - mean).collect();
        let c = DeRhamComplex1d::new(p, 16, 7.0).unwrap();
        let d = c.poisson_solve_initial_field(&rho).unwrap();
        let lhs = c.apply_deriv_transpose(&c.mass(MassId::M1).apply(&d));
        for (l, r) in lhs.iter().zip(&rho) {
            prop_assert!((l + r).abs() < 1e-11);
        }
        prop_assert!(d.iter().sum::<f64>().abs() < 1e-12);
    }

    #[test]
    fn mass_solves_invert(b in prop::collection::vec(-1.0f64..1.0, 12), p in 1usize..=5) {
        let c = DeRhamComplex1d::new(p, 12, 3.0).unwrap();
        for id in [MassId::M0, MassId::M1] {
            let x = c.solve_mass(id, &b).unwrap();
            let back = c.mass(id).apply(&x);
            for (u, v) in back.iter().zip(&b) {
                prop_assert!((u - v).abs() < 1e-11);
            }
        }
    }
}
