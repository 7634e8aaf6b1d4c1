//! Scalar observables of a simulation state: energies, the first-order
//! modified energy, the Gauss-law residual, momentum with its time-integrated
//! reference, and growth-rate fits.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feec::{DeRhamComplex1d, FieldCoeffs, MassId, SpaceId};
use crate::hamsplit::SimState;
use crate::particles::{deposit_charge, ParticleSet};

/// One row of the diagnostics time series.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub time: f64,
    pub kinetic_energy: f64,
    pub e1_energy: f64,
    pub e2_energy: f64,
    pub b_energy: f64,
    pub total_energy: f64,
    pub modified_energy: f64,
    pub gauss_residual: f64,
    pub momentum_p1: f64,
    pub momentum_p2: f64,
    pub momentum_ref_p1: f64,
    pub momentum_ref_p2: f64,
}

/// Energy split of the discrete Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EnergyReport {
    pub kinetic: f64,
    pub e1: f64,
    pub e2: f64,
    pub b: f64,
}

impl EnergyReport {
    pub fn total(&self) -> f64 {
        self.kinetic + self.e1 + self.e2 + self.b
    }
}

pub fn kinetic_energy(particles: &ParticleSet) -> f64 {
    let mw = particles.mass * particles.weight;
    0.5 * mw
        * particles
            .v1
            .iter()
            .zip(&particles.v2)
            .map(|(a, b)| a * a + b * b)
            .sum::<f64>()
}

/// `H = 1/2 sum m w |v|^2 + 1/2 d^T M1 d + 1/2 e^T M0 e + 1/2 b^T M1 b`.
pub fn energy_report(particles: &ParticleSet, fields: &FieldCoeffs, complex: &DeRhamComplex1d) -> EnergyReport {
    let m0 = complex.mass(MassId::M0);
    let m1 = complex.mass(MassId::M1);
    EnergyReport {
        kinetic: kinetic_energy(particles),
        e1: 0.5 * m1.bilinear(&fields.d, &fields.d),
        e2: 0.5 * m0.bilinear(&fields.e, &fields.e),
        b: 0.5 * m1.bilinear(&fields.b, &fields.b),
    }
}

/// Sum of the non-vanishing Poisson brackets between the sub-Hamiltonians
/// of the splitting:
///
/// `{H_E, H_B} + {H_p1, H_p2} + {H_D, H_p1} + {H_E, H_p2}`
/// `= e^T G^T M1 b + sum q w v1 B_h(x) v2 - sum q w v1 D_h(x) - sum q w v2 E_h(x)`.
pub fn bracket_sum(particles: &ParticleSet, fields: &FieldCoeffs, complex: &DeRhamComplex1d) -> f64 {
    let v0 = complex.v0();
    let ge = complex.apply_deriv(&fields.e);
    let field_part = complex.mass(MassId::M1).bilinear(&ge, &fields.b);
    let mut particle_part = 0.0;
    for ((x, u1), u2) in particles.x.iter().zip(&particles.v1).zip(&particles.v2) {
        let (cell, t) = v0.locate(*x);
        let (b1, b0) = v0.basis_pair_in_cell(cell, t);
        let bh = b1.dot(&fields.b);
        let dh = b1.dot(&fields.d);
        let eh = b0.dot(&fields.e);
        particle_part += u1 * bh * u2 - u1 * dh - u2 * eh;
    }
    field_part + particles.particle_charge() * particle_part
}

/// First-order modified energy of the Lie map, `H + dt H_1` with
/// `H_1 = -1/2 bracket_sum`.
///
/// The brackets are evaluated with the sub-flow order used by the Lie map
/// (electric first). With that order the correction enters with a minus
/// sign; the opposite sign leaves an `O(dt)` error in place.
pub fn modified_energy(particles: &ParticleSet, fields: &FieldCoeffs, complex: &DeRhamComplex1d, dt: f64) -> f64 {
    energy_report(particles, fields, complex).total() - 0.5 * dt * bracket_sum(particles, fields, complex)
}

/// `max_j |d_j - d_j^Poisson|`, where `d^Poisson` solves Gauss' law for the
/// current particle positions.
///
/// Gauss' law does not see the constant mode of `d`, which Ampere's law moves
/// with the mean current; it is removed before the comparison.
pub fn gauss_residual(state: &SimState, complex: &DeRhamComplex1d) -> Result<f64> {
    let rho = deposit_charge(&state.particles, complex);
    let poisson = complex.poisson_solve_initial_field(&rho)?;
    let d = &state.fields.d;
    let mean = d.iter().sum::<f64>() / d.len() as f64;
    Ok(d
        .iter()
        .zip(&poisson)
        .map(|(a, b)| (a - mean - b).abs())
        .fold(0.0, f64::max))
}

/// `(P1, P2)` with `P1 = sum m w v1 + int E_h B_h dx` and
/// `P2 = sum m w v2 - int D_h B_h dx`.
pub fn momentum_report(particles: &ParticleSet, fields: &FieldCoeffs, complex: &DeRhamComplex1d) -> (f64, f64) {
    let mw = particles.mass * particles.weight;
    let s1: f64 = particles.v1.iter().sum();
    let s2: f64 = particles.v2.iter().sum();
    let p1 = mw * s1 + complex.mixed_inner(&fields.e, &fields.b);
    let p2 = mw * s2 - complex.mass(MassId::M1).bilinear(&fields.d, &fields.b);
    (p1, p2)
}

/// Trapezoid accumulation of the momentum source terms: the reference
/// values change by `-dt/2 (int D_prev + int D_now)` and
/// `-dt/2 (int E_prev + int E_now)` per step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumReference {
    pub p1: f64,
    pub p2: f64,
}

impl MomentumReference {
    pub fn new(p1: f64, p2: f64) -> Self {
        Self { p1, p2 }
    }

    pub fn update(&mut self, prev: &FieldCoeffs, now: &FieldCoeffs, dt: f64, complex: &DeRhamComplex1d) {
        self.update_parts(&prev.d, &prev.e, &now.d, &now.e, dt, complex);
    }

    pub fn update_parts(
        &mut self,
        d_prev: &[f64],
        e_prev: &[f64],
        d_now: &[f64],
        e_now: &[f64],
        dt: f64,
        complex: &DeRhamComplex1d,
    ) {
        let int = |id, c: &[f64]| complex.field_integral(id, c);
        self.p1 -= 0.5 * dt * (int(SpaceId::V1, d_prev) + int(SpaceId::V1, d_now));
        self.p2 -= 0.5 * dt * (int(SpaceId::V0, e_prev) + int(SpaceId::V0, e_now));
    }
}

/// Least-squares slope of `ln(values)` against `times` over samples with
/// `t_a <= t <= t_b`. With `energy = true` the slope is halved, since an
/// energy grows like `exp(2 gamma t)`.
pub fn fit_growth_rate(times: &[f64], values: &[f64], window: (f64, f64), energy: bool) -> Result<f64> {
    if times.len() != values.len() {
        return Err(Error::LengthMismatch {
            expected: times.len(),
            got: values.len(),
        });
    }
    let (ta, tb) = window;
    let mut pts = Vec::new();
    for (&t, &v) in times.iter().zip(values) {
        if t < ta || t > tb {
            continue;
        }
        if !(v > 0.0) {
            return Err(Error::Fit(format!("nonpositive value {v} at t = {t}")));
        }
        pts.push((t, v.ln()));
    }
    if pts.len() < 4 {
        return Err(Error::Fit(format!(
            "window [{ta}, {tb}] holds {} samples, need at least 4",
            pts.len()
        )));
    }
    let slope = least_squares_slope(&pts);
    Ok(if energy { 0.5 * slope } else { slope })
}

/// Slope of the least-squares line through `(x, y)` points.
pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (t, y) in pts {
        sxy += (t - mt) * (y - my);
        sxx += (t - mt) * (t - mt);
    }
    sxy / sxx
}

/// Strict local maxima over a 3-sample window, as `(time, value)` pairs.
pub fn local_maxima(times: &[f64], values: &[f64]) -> Vec<(f64, f64)> {
    values
        .windows(3)
        .zip(times.iter().skip(1))
        .filter(|(w, _)| w[1] > w[0] && w[1] >= w[2])
        .map(|(w, &t)| (t, w[1]))
        .collect()
}

/// Growth rate from the local maxima of `values` inside the window, fitted
/// by least squares on their logarithms. Suited to oscillating signals such
/// as the electric energy in Landau damping.
pub fn fit_growth_rate_maxima(times: &[f64], values: &[f64], window: (f64, f64), energy: bool) -> Result<f64> {
    let peaks: Vec<(f64, f64)> = local_maxima(times, values)
        .into_iter()
        .filter(|(t, _)| *t >= window.0 && *t <= window.1)
        .collect();
    if peaks.len() < 2 {
        return Err(Error::Fit(format!(
            "window [{}, {}] holds {} local maxima, need at least 2",
            window.0,
            window.1,
            peaks.len()
        )));
    }
    if let Some((t, v)) = peaks.iter().find(|(_, v)| !(*v > 0.0)) {
        return Err(Error::Fit(format!("nonpositive maximum {v} at t = {t}")));
    }
    let pts: Vec<(f64, f64)> = peaks.iter().map(|(t, v)| (*t, v.ln())).collect();
    let slope = least_squares_slope(&pts);
    Ok(if energy { 0.5 * slope } else { slope })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complex() -> DeRhamComplex1d {
        DeRhamComplex1d::new(3, 8, 2.0).unwrap()
    }

    fn particles(x: Vec<f64>, v1: Vec<f64>, v2: Vec<f64>) -> ParticleSet {
        ParticleSet {
            x,
            v1,
            v2,
            weight: 1.0,
            charge: -1.0,
            mass: 1.0,
        }
    }

    #[test]
    fn zero_state_has_zero_energy() {
        let c = complex();
        let p = particles(vec![0.3], vec![0.0], vec![0.0]);
        let f = FieldCoeffs::zeros(8);
        let r = energy_report(&p, &f, &c);
        assert_eq!(r.total(), 0.0);
        assert_eq!(modified_energy(&p, &f, &c, 0.1), 0.0);
    }

    #[test]
    fn single_free_particle() {
        let c = complex();
        let p = particles(vec![0.3], vec![1.0], vec![0.0]);
        let f = FieldCoeffs::zeros(8);
        assert_eq!(energy_report(&p, &f, &c).kinetic, 0.5);
        assert_eq!(bracket_sum(&p, &f, &c), 0.0);
    }

    #[test]
    fn momentum_without_magnetic_field() {
        let c = complex();
        let p = particles(vec![0.3, 1.1], vec![1.0, 2.0], vec![-1.0, 0.5]);
        let mut f = FieldCoeffs::zeros(8);
        f.d[2] = 3.0;
        f.e[5] = -1.0;
        assert_eq!(momentum_report(&p, &f, &c), (3.0, -0.5));
    }

    #[test]
    fn trapezoid_of_constant_field() {
        let c = complex();
        let mut f = FieldCoeffs::zeros(8);
        f.d = vec![0.5; 8];
        let mut r = MomentumReference::new(1.0, 2.0);
        for _ in 0..10 {
            r.update(&f, &f, 0.1, &c);
        }
        // int D = 0.5 * L = 1
        assert!((r.p1 - 0.0).abs() < 1e-14);
        assert_eq!(r.p2, 2.0);
    }

    #[test]
    fn fits_exact_exponential() {
        let t: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let v: Vec<f64> = t.iter().map(|t| (2.0 * 0.03 * t).exp()).collect();
        let g = fit_growth_rate(&t, &v, (10.0, 80.0), true).unwrap();
        assert!((g - 0.03).abs() < 1e-12);
        let c = vec![4.0; 100];
        assert_eq!(fit_growth_rate(&t, &c, (0.0, 99.0), false).unwrap(), 0.0);
    }

    #[test]
    fn fit_errors() {
        let t = [0.0, 1.0, 2.0, 3.0, 4.0];
        assert!(fit_growth_rate(&t, &[1.0; 5], (0.0, 2.0), false).is_err());
        assert!(fit_growth_rate(&t, &[1.0, 0.0, 1.0, 1.0, 1.0], (0.0, 4.0), false).is_err());
        assert!(fit_growth_rate(&t, &[1.0; 4], (0.0, 4.0), false).is_err());
    }

    #[test]
    fn maxima_of_damped_cosine() {
        let t: Vec<f64> = (0..4000).map(|i| i as f64 * 0.01).collect();
        let v: Vec<f64> = t.iter().map(|t| (-0.2 * t).exp() * (2.0 * t).cos().abs()).collect();
        let peaks = local_maxima(&t, &v);
        assert!(peaks.len() > 20);
        let g = fit_growth_rate_maxima(&t, &v, (0.0, 40.0), false).unwrap();
        assert!((g + 0.2).abs() < 1e-3, "{g}");
    }
}
