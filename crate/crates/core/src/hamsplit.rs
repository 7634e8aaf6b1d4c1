//! Exact flows of the four sub-Hamiltonians of the 1d2v system and their
//! compositions into Poisson integrators.
//!
//! The Hamiltonian is split as `H = (H_D + H_E) + H_B + H_p1 + H_p2`. Each
//! piece generates a flow that can be solved exactly: the particle pieces only
//! need line integrals of splines along straight paths. The base Lie map
//! applies `H_D + H_E`, then `H_B`, `H_p1`, `H_p2`; its adjoint applies the
//! same flows in reverse order. Every higher-order method below is a sequence
//! of these two maps with scaled steps.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feec::{DeRhamComplex1d, FieldCoeffs, MassId};
use crate::particles::ParticleSet;

/// Parameter of the second-order four-stage Lie composition with the small
/// error constant.
pub const DEFAULT_LIE_ALPHA: f64 = 0.1932;

/// Full simulation state `(X, V1, V2, d, e, b)` at `time`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    pub particles: ParticleSet,
    pub fields: FieldCoeffs,
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SubFlow {
    /// `H_D + H_E`: electric kick of both velocity components and Faraday
    /// update of `b`.
    Electric,
    /// `H_B`: the curl term of Ampere's law for `e`.
    Magnetic,
    /// `H_p1`: motion along `x`, with the magnetic kick of `v2` and the `E_1`
    /// current integrated along the path.
    Particle1,
    /// `H_p2`: magnetic kick of `v1` and the `E_2` current.
    Particle2,
}

impl SubFlow {
    pub const LIE_ORDER: [SubFlow; 4] = [
        SubFlow::Electric,
        SubFlow::Magnetic,
        SubFlow::Particle1,
        SubFlow::Particle2,
    ];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropagatorId {
    Lie,
    Strang,
    #[serde(rename = "order2_4lie")]
    Order2FourLie,
    #[serde(rename = "order4_3strang")]
    Order4ThreeStrang,
    #[serde(rename = "order4_10lie")]
    Order4TenLie,
    Boris,
}

impl PropagatorId {
    pub const SPLITTINGS: [PropagatorId; 5] = [
        PropagatorId::Lie,
        PropagatorId::Strang,
        PropagatorId::Order2FourLie,
        PropagatorId::Order4ThreeStrang,
        PropagatorId::Order4TenLie,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PropagatorId::Lie => "lie",
            PropagatorId::Strang => "strang",
            PropagatorId::Order2FourLie => "order2_4lie",
            PropagatorId::Order4ThreeStrang => "order4_3strang",
            PropagatorId::Order4TenLie => "order4_10lie",
            PropagatorId::Boris => "boris",
        }
    }

    /// Formal order of accuracy in time.
    pub fn order(&self) -> u32 {
        match self {
            PropagatorId::Lie => 1,
            PropagatorId::Strang | PropagatorId::Order2FourLie | PropagatorId::Boris => 2,
            PropagatorId::Order4ThreeStrang | PropagatorId::Order4TenLie => 4,
        }
    }
}

impl fmt::Display for PropagatorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropagatorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [PropagatorId::Boris]
            .into_iter()
            .chain(PropagatorId::SPLITTINGS)
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::Unknown {
                kind: "propagator",
                name: s.to_string(),
            })
    }
}

/// Coefficients of the fourth-order composition of ten Lie maps:
/// `(a_1..a_5, b_1..b_5)`, applied as `L(a_5), L*(b_5), ..., L(a_1), L*(b_1)`.
pub fn ten_lie_coefficients() -> ([f64; 5], [f64; 5]) {
    let r = 19f64.sqrt();
    let a = [
        (146.0 + 5.0 * r) / 540.0,
        (-2.0 + 10.0 * r) / 135.0,
        1.0 / 5.0,
        (-23.0 - 20.0 * r) / 270.0,
        (14.0 - r) / 108.0,
    ];
    let mut b = a;
    b.reverse();
    (a, b)
}

/// Triple-jump weights `(gamma_1, gamma_2)`.
pub fn triple_jump_coefficients() -> (f64, f64) {
    let c = 2f64.powf(1.0 / 3.0);
    (1.0 / (2.0 - c), -c / (2.0 - c))
}

fn push_lie(stages: &mut Vec<(SubFlow, f64)>, h: f64) {
    stages.extend(SubFlow::LIE_ORDER.iter().map(|&s| (s, h)));
}

fn push_adjoint(stages: &mut Vec<(SubFlow, f64)>, h: f64) {
    stages.extend(SubFlow::LIE_ORDER.iter().rev().map(|&s| (s, h)));
}

fn push_strang(stages: &mut Vec<(SubFlow, f64)>, h: f64) {
    push_lie(stages, 0.5 * h);
    push_adjoint(stages, 0.5 * h);
}

/// Sub-flow sequence of one step, with step fractions in application order.
///
/// Compositions are read left to right as written, so Strang is
/// `L(dt/2)` followed by `L*(dt/2)` and the electric flow sits on the outside
/// of the step. With that placement the change of the second momentum
/// component over a Strang step is exactly the trapezoid rule of `int E_h`.
///
/// Adjacent stages of the same sub-flow are merged: each flow is exact, so
/// `flow(s, a) . flow(s, b) = flow(s, a + b)`.
pub fn stages(prop: PropagatorId, alpha: f64) -> Result<Vec<(SubFlow, f64)>> {
    let mut s = Vec::new();
    match prop {
        PropagatorId::Lie => push_lie(&mut s, 1.0),
        PropagatorId::Strang => push_strang(&mut s, 1.0),
        PropagatorId::Order2FourLie => {
            push_lie(&mut s, alpha);
            push_adjoint(&mut s, 0.5 - alpha);
            push_lie(&mut s, 0.5 - alpha);
            push_adjoint(&mut s, alpha);
        }
        PropagatorId::Order4ThreeStrang => {
            let (g1, g2) = triple_jump_coefficients();
            push_strang(&mut s, g1);
            push_strang(&mut s, g2);
            push_strang(&mut s, g1);
        }
        PropagatorId::Order4TenLie => {
            let (a, b) = ten_lie_coefficients();
            for (ai, bi) in a.iter().zip(&b).rev() {
                push_lie(&mut s, *ai);
                push_adjoint(&mut s, *bi);
            }
        }
        PropagatorId::Boris => {
            return Err(Error::Config(
                "boris is not a splitting propagator".to_string(),
            ))
        }
    }
    let mut merged: Vec<(SubFlow, f64)> = Vec::with_capacity(s.len());
    for (flow, h) in s {
        match merged.last_mut() {
            Some((last, acc)) if *last == flow => *acc += h,
            _ => merged.push((flow, h)),
        }
    }
    Ok(merged)
}

/// Applies sub-flows and compositions to a [`SimState`] on a fixed complex.
#[derive(Debug)]
pub struct HamiltonianSplitting<'a> {
    complex: &'a DeRhamComplex1d,
    alpha: f64,
    rhs: Vec<f64>,
}

impl<'a> HamiltonianSplitting<'a> {
    pub fn new(complex: &'a DeRhamComplex1d) -> Self {
        Self::with_alpha(complex, DEFAULT_LIE_ALPHA)
    }

    /// `alpha` parameterizes [`PropagatorId::Order2FourLie`].
    pub fn with_alpha(complex: &'a DeRhamComplex1d, alpha: f64) -> Self {
        Self {
            complex,
            alpha,
            rhs: vec![0.0; complex.n_cells()],
        }
    }

    pub fn complex(&self) -> &'a DeRhamComplex1d {
        self.complex
    }

    /// One step of `prop`.
    pub fn compose(&mut self, prop: PropagatorId, state: &mut SimState, dt: f64) -> Result<()> {
        let time = state.time;
        for (flow, h) in stages(prop, self.alpha)? {
            self.flow(flow, state, h * dt);
        }
        state.time = time + dt;
        Ok(())
    }

    /// Base Lie map over `dt`.
    pub fn compose_lie(&mut self, state: &mut SimState, dt: f64) {
        for flow in SubFlow::LIE_ORDER {
            self.flow(flow, state, dt);
        }
        state.time += dt;
    }

    /// Adjoint of the Lie map: the sub-flows in reverse order.
    pub fn compose_adjoint(&mut self, state: &mut SimState, dt: f64) {
        for flow in SubFlow::LIE_ORDER.iter().rev() {
            self.flow(*flow, state, dt);
        }
        state.time += dt;
    }

    /// Exact solution of one sub-system over `dt` (any sign). Leaves
    /// `state.time` alone.
    pub fn flow(&mut self, sub: SubFlow, state: &mut SimState, dt: f64) {
        match sub {
            SubFlow::Electric => self.flow_electric(state, dt),
            SubFlow::Magnetic => self.flow_magnetic(state, dt),
            SubFlow::Particle1 => self.flow_particle1(state, dt),
            SubFlow::Particle2 => self.flow_particle2(state, dt),
        }
    }

    /// `v1 += dt q/m D_h(x)`, `v2 += dt q/m E_h(x)`, `b -= dt G e`.
    fn flow_electric(&mut self, state: &mut SimState, dt: f64) {
        let c = self.complex;
        let v0 = c.v0();
        let p = &mut state.particles;
        let kick = dt * p.charge_to_mass();
        let f = &state.fields;
        for ((x, u1), u2) in p.x.iter().zip(p.v1.iter_mut()).zip(p.v2.iter_mut()) {
            let (cell, t) = v0.locate(*x);
            let (b1, b0) = v0.basis_pair_in_cell(cell, t);
            *u1 += kick * b1.dot(&f.d);
            *u2 += kick * b0.dot(&f.e);
        }
        let ge = c.apply_deriv(&state.fields.e);
        for (b, g) in state.fields.b.iter_mut().zip(ge) {
            *b -= dt * g;
        }
    }

    /// `M0 e += dt G^T M1 b`.
    fn flow_magnetic(&mut self, state: &mut SimState, dt: f64) {
        let c = self.complex;
        let m1b = c.mass(MassId::M1).apply(&state.fields.b);
        let rhs = c.apply_deriv_transpose(&m1b);
        let de = c.solve_mass(MassId::M0, &rhs).expect("length checked at construction");
        for (e, v) in state.fields.e.iter_mut().zip(de) {
            *e += dt * v;
        }
    }

    /// `x += dt v1`; `v2 -= q/m int B_h ds`; `M1 d -= q w int Lambda^1 ds`,
    /// with both integrals over the straight path on the periodic line.
    fn flow_particle1(&mut self, state: &mut SimState, dt: f64) {
        let c = self.complex;
        let space = c.v1();
        let v0 = c.v0();
        let p = &mut state.particles;
        let qm = p.charge_to_mass();
        let qw = p.particle_charge();
        let b = &state.fields.b;
        let rhs = &mut self.rhs;
        rhs.iter_mut().for_each(|r| *r = 0.0);
        for ((x, u1), u2) in p.x.iter_mut().zip(&p.v1).zip(p.v2.iter_mut()) {
            let x1 = *x + dt * *u1;
            let mut bint = 0.0;
            space.for_each_segment_integral(*x, x1, |j, val| {
                bint += b[j] * val;
                rhs[j] += val;
            });
            *u2 -= qm * bint;
            *x = v0.wrap(x1);
        }
        let dd = c.solve_mass(MassId::M1, rhs).expect("length checked at construction");
        for (d, v) in state.fields.d.iter_mut().zip(dd) {
            *d -= qw * v;
        }
    }

    /// `v1 += dt q/m B_h(x) v2`; `M0 e -= dt q w Lambda^0(x)^T v2`.
    fn flow_particle2(&mut self, state: &mut SimState, dt: f64) {
        let c = self.complex;
        let v0 = c.v0();
        let p = &mut state.particles;
        let kick = dt * p.charge_to_mass();
        let qw = p.particle_charge();
        let b = &state.fields.b;
        let rhs = &mut self.rhs;
        rhs.iter_mut().for_each(|r| *r = 0.0);
        for ((x, u1), u2) in p.x.iter().zip(p.v1.iter_mut()).zip(&p.v2) {
            let (cell, t) = v0.locate(*x);
            let (b1, b0) = v0.basis_pair_in_cell(cell, t);
            *u1 += kick * b1.dot(b) * u2;
            b0.scatter(*u2, rhs);
        }
        let de = c.solve_mass(MassId::M0, rhs).expect("length checked at construction");
        for (e, v) in state.fields.e.iter_mut().zip(de) {
            *e -= dt * qw * v;
        }
    }
}
