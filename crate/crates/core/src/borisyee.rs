//! Time-staggered Boris-Yee scheme on the same spline spaces.
//!
//! Positions and the electric fields live at half steps, velocities and the
//! magnetic field at full steps. The scheme is second order and cheap but,
//! unlike the splitting methods, does not preserve Gauss' law.

use crate::diagnostics::EnergyReport;
use crate::feec::{DeRhamComplex1d, FieldCoeffs, MassId};
use crate::hamsplit::SimState;
use crate::particles::ParticleSet;

/// `particles.x` holds `x^{n+1/2}` and the velocities hold `v^n`; `d`, `e`
/// are at `n + 1/2`, `d_prev`, `e_prev` at `n - 1/2`, and `b` at `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct StaggeredState {
    pub particles: ParticleSet,
    pub d: Vec<f64>,
    pub e: Vec<f64>,
    pub d_prev: Vec<f64>,
    pub e_prev: Vec<f64>,
    pub b: Vec<f64>,
    /// `t^n`, the time of the velocities and of `b`.
    pub time: f64,
}

impl StaggeredState {
    /// Energy at `t^n`, with the electric parts as products of the two
    /// neighbouring half-step fields.
    pub fn energy(&self, complex: &DeRhamComplex1d) -> EnergyReport {
        let m0 = complex.mass(MassId::M0);
        let m1 = complex.mass(MassId::M1);
        EnergyReport {
            kinetic: crate::diagnostics::kinetic_energy(&self.particles),
            e1: 0.5 * m1.bilinear(&self.d_prev, &self.d),
            e2: 0.5 * m0.bilinear(&self.e_prev, &self.e),
            b: 0.5 * m1.bilinear(&self.b, &self.b),
        }
    }

    /// Positions and electric fields at `t^{n+1/2}` with `v^n`, `b^n`; what
    /// Gauss' law is checked against.
    pub fn half_step_view(&self) -> SimState {
        SimState {
            particles: self.particles.clone(),
            fields: FieldCoeffs {
                d: self.d.clone(),
                e: self.e.clone(),
                b: self.b.clone(),
            },
            time: self.time,
        }
    }
}

/// Rotation of `(v1, v2)` by the magnetic field with tangent half-angle
/// `alpha`.
#[inline]
pub fn boris_rotate(v1: f64, v2: f64, alpha: f64) -> (f64, f64) {
    let a2 = alpha * alpha;
    let inv = 1.0 / (1.0 + a2);
    let c = (1.0 - a2) * inv;
    let s = 2.0 * alpha * inv;
    (c * v1 + s * v2, -s * v1 + c * v2)
}

#[derive(Debug)]
pub struct BorisYee<'a> {
    complex: &'a DeRhamComplex1d,
    j1: Vec<f64>,
    j2: Vec<f64>,
}

impl<'a> BorisYee<'a> {
    pub fn new(complex: &'a DeRhamComplex1d) -> Self {
        let n = complex.n_cells();
        Self {
            complex,
            j1: vec![0.0; n],
            j2: vec![0.0; n],
        }
    }

    /// Half step from `t = 0` to `x^{1/2}`, `d^{1/2}`, `e^{1/2}`, using `b^0`
    /// and `v^0` in place of the quarter-step values.
    pub fn init(&mut self, state: SimState, dt: f64) -> StaggeredState {
        let SimState {
            mut particles,
            fields,
            time,
        } = state;
        let h = 0.5 * dt;
        self.drift_and_deposit(&mut particles, h);
        let (d, e) = self.update_fields(&fields.d, &fields.e, &fields.b, h);
        StaggeredState {
            particles,
            d,
            e,
            d_prev: fields.d,
            e_prev: fields.e,
            b: fields.b,
            time,
        }
    }

    /// One full step `n - 1 -> n`.
    pub fn step(&mut self, s: &mut StaggeredState, dt: f64) {
        let c = self.complex;
        let v0 = c.v0();

        // b^n and the time-centred b^{n-1/2}
        let ge = c.apply_deriv(&s.e);
        let b_mid: Vec<f64> = s.b.iter().zip(&ge).map(|(b, g)| b - 0.5 * dt * g).collect();
        for (b, g) in s.b.iter_mut().zip(&ge) {
            *b -= dt * g;
        }

        // kick, rotate, kick at x^{n-1/2}
        let p = &mut s.particles;
        let half = 0.5 * dt * p.charge_to_mass();
        for ((x, u1), u2) in p.x.iter().zip(p.v1.iter_mut()).zip(p.v2.iter_mut()) {
            let (cell, t) = v0.locate(*x);
            let (b1, b0) = v0.basis_pair_in_cell(cell, t);
            let e1 = b1.dot(&s.d);
            let e2 = b0.dot(&s.e);
            let alpha = half * b1.dot(&b_mid);
            let (r1, r2) = boris_rotate(*u1 + half * e1, *u2 + half * e2, alpha);
            *u1 = r1 + half * e1;
            *u2 = r2 + half * e2;
        }

        self.drift_and_deposit(p, dt);
        let (d, e) = self.update_fields(&s.d, &s.e, &s.b, dt);
        s.d_prev = std::mem::replace(&mut s.d, d);
        s.e_prev = std::mem::replace(&mut s.e, e);
        s.time += dt;
    }

    /// `x += h v1`, depositing `q w v Lambda` at the unwrapped midpoint.
    fn drift_and_deposit(&mut self, p: &mut ParticleSet, h: f64) {
        let v0 = self.complex.v0();
        self.j1.iter_mut().for_each(|j| *j = 0.0);
        self.j2.iter_mut().for_each(|j| *j = 0.0);
        let qw = p.particle_charge();
        for ((x, u1), u2) in p.x.iter_mut().zip(&p.v1).zip(&p.v2) {
            let x1 = *x + h * u1;
            let (cell, t) = v0.locate(0.5 * (*x + x1));
            let (b1, b0) = v0.basis_pair_in_cell(cell, t);
            b1.scatter(qw * u1, &mut self.j1);
            b0.scatter(qw * u2, &mut self.j2);
            *x = v0.wrap(x1);
        }
    }

    /// `M1 d' = M1 d - h j1`, `M0 e' = M0 e + h G^T M1 b - h j2`.
    fn update_fields(&self, d: &[f64], e: &[f64], b: &[f64], h: f64) -> (Vec<f64>, Vec<f64>) {
        let c = self.complex;
        let dd = c.solve_mass(MassId::M1, &self.j1).expect("grid-sized buffer");
        let curl = c.apply_deriv_transpose(&c.mass(MassId::M1).apply(b));
        let rhs: Vec<f64> = curl.iter().zip(&self.j2).map(|(cb, j)| cb - j).collect();
        let de = c.solve_mass(MassId::M0, &rhs).expect("grid-sized buffer");
        (
            d.iter().zip(dd).map(|(d, v)| d - h * v).collect(),
            e.iter().zip(de).map(|(e, v)| e + h * v).collect(),
        )
    }
}
