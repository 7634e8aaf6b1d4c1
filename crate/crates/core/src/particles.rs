//! Particle storage, quasi-random loading of the benchmark distributions and
//! the particle/grid transfer operators.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feec::{DeRhamComplex1d, FieldCoeffs, SpaceId};
use crate::normal::inverse_normal_cdf;
use crate::sobol::Sobol;

/// Electrons with uniform weights in scaled units.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleSet {
    pub x: Vec<f64>,
    pub v1: Vec<f64>,
    pub v2: Vec<f64>,
    pub weight: f64,
    pub charge: f64,
    pub mass: f64,
}

impl ParticleSet {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn charge_to_mass(&self) -> f64 {
        self.charge / self.mass
    }

    /// `q * w`, the charge carried by one particle.
    pub fn particle_charge(&self) -> f64 {
        self.charge * self.weight
    }
}

/// Initial distributions of the three benchmarks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum InitialCase {
    /// Anisotropic Maxwellian, `B_3 = beta cos(kx)`.
    Weibel {
        sigma1: f64,
        sigma2: f64,
        k: f64,
        alpha: f64,
        beta: f64,
    },
    /// Two counter-streaming beams in `v_2`, `B_3 = beta sin(kx)`.
    StreamingWeibel {
        sigma: f64,
        k: f64,
        beta: f64,
        v01: f64,
        v02: f64,
        delta: f64,
    },
    /// Isotropic Maxwellian with a cosine density perturbation.
    Landau { sigma: f64, k: f64, alpha: f64 },
}

impl InitialCase {
    pub fn weibel() -> Self {
        let sigma1 = 0.02 / 2f64.sqrt();
        InitialCase::Weibel {
            sigma1,
            sigma2: 12f64.sqrt() * sigma1,
            k: 1.25,
            alpha: 0.0,
            beta: -1e-4,
        }
    }

    pub fn streaming_weibel() -> Self {
        InitialCase::StreamingWeibel {
            sigma: 0.1 / 2f64.sqrt(),
            k: 0.2,
            beta: -1e-3,
            v01: 0.5,
            v02: -0.1,
            delta: 1.0 / 6.0,
        }
    }

    pub fn landau() -> Self {
        InitialCase::Landau {
            sigma: 1.0,
            k: 0.5,
            alpha: 0.5,
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "weibel" => Ok(Self::weibel()),
            "streaming_weibel" => Ok(Self::streaming_weibel()),
            "landau" => Ok(Self::landau()),
            _ => Err(Error::Unknown {
                kind: "case",
                name: name.to_string(),
            }),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            InitialCase::Weibel { .. } => "weibel",
            InitialCase::StreamingWeibel { .. } => "streaming_weibel",
            InitialCase::Landau { .. } => "landau",
        }
    }

    pub fn wavenumber(&self) -> f64 {
        match *self {
            InitialCase::Weibel { k, .. }
            | InitialCase::StreamingWeibel { k, .. }
            | InitialCase::Landau { k, .. } => k,
        }
    }

    /// One wavelength of the perturbation, `2 pi / k`.
    pub fn domain_length(&self) -> f64 {
        2.0 * PI / self.wavenumber()
    }

    fn density_perturbation(&self) -> f64 {
        match *self {
            InitialCase::Weibel { alpha, .. } | InitialCase::Landau { alpha, .. } => alpha,
            InitialCase::StreamingWeibel { .. } => 0.0,
        }
    }

    fn sobol_dimension(&self) -> usize {
        match self {
            InitialCase::StreamingWeibel { .. } => 4,
            _ => 3,
        }
    }

    /// Initial `B_3` profile.
    pub fn magnetic_field(&self, x: f64) -> f64 {
        match *self {
            InitialCase::Weibel { k, beta, .. } => beta * (k * x).cos(),
            InitialCase::StreamingWeibel { k, beta, .. } => beta * (k * x).sin(),
            InitialCase::Landau { .. } => 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            InitialCase::Weibel {
                sigma1,
                sigma2,
                k,
                alpha,
                ..
            } => sigma1 > 0.0 && sigma2 > 0.0 && k > 0.0 && alpha.abs() < 1.0,
            InitialCase::StreamingWeibel {
                sigma, k, delta, ..
            } => sigma > 0.0 && k > 0.0 && (0.0..=1.0).contains(&delta),
            InitialCase::Landau { sigma, k, alpha } => {
                sigma > 0.0 && k > 0.0 && alpha.abs() < 1.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Config(format!("invalid parameters for case {self:?}")))
        }
    }
}

/// Inverts `F(x) = (x + (alpha/k) sin(kx)) / L`, the CDF of the spatial
/// density `(1 + alpha cos(kx)) / L` on one period.
fn sample_position(u: f64, alpha: f64, k: f64, length: f64) -> f64 {
    let target = u * length;
    if alpha == 0.0 {
        return target;
    }
    let (mut lo, mut hi) = (0.0, length);
    let mut x = target;
    for _ in 0..100 {
        let g = x + alpha / k * (k * x).sin() - target;
        if g > 0.0 {
            hi = x;
        } else {
            lo = x;
        }
        let dg = 1.0 + alpha * (k * x).cos();
        let mut next = x - g / dg;
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        if (next - x).abs() <= 1e-15 * length {
            return next;
        }
        x = next;
    }
    x
}

/// Loads particles with Sobol points and builds the matching initial fields.
///
/// Positions come from the first Sobol coordinate through the inverse CDF of
/// the spatial density (uniform when the case has no density perturbation);
/// velocities come from the next coordinates through the inverse normal CDF.
/// For the streaming case a further coordinate picks the beam: the first one
/// when it is below `delta`. With `antithetic`, every draw `(x, v)` is followed
/// by its mirror `(L - x, 2 mu - v)` around the mean `mu` of the drawn
/// Gaussian. Fields: `b` is the L2 projection of the initial `B_3`, `e = 0`,
/// and `d` solves Poisson's equation for the electrons plus a uniform
/// neutralizing background.
pub fn sample_initial(
    case: &InitialCase,
    n_particles: usize,
    antithetic: bool,
    sobol_skip: u64,
    complex: &DeRhamComplex1d,
) -> Result<(ParticleSet, FieldCoeffs)> {
    case.validate()?;
    if n_particles == 0 {
        return Err(Error::ParticleCount("at least one particle is required".into()));
    }
    if antithetic && !n_particles.is_multiple_of(2) {
        return Err(Error::ParticleCount(format!(
            "antithetic sampling needs an even count, got {n_particles}"
        )));
    }
    let length = complex.domain_length();
    if (length - case.domain_length()).abs() > 1e-12 * length {
        return Err(Error::Config(format!(
            "grid length {length} does not match the case period {}",
            case.domain_length()
        )));
    }

    let draws = if antithetic { n_particles / 2 } else { n_particles };
    let mut sobol = Sobol::new(case.sobol_dimension(), sobol_skip)?;
    let mut u = [0.0; 4];
    let mut x = Vec::with_capacity(n_particles);
    let mut v1 = Vec::with_capacity(n_particles);
    let mut v2 = Vec::with_capacity(n_particles);
    let alpha = case.density_perturbation();
    let k = case.wavenumber();

    for _ in 0..draws {
        sobol.next_into(&mut u[..case.sobol_dimension()]);
        let xa = sample_position(u[0], alpha, k, length);
        let (mu1, s1, mu2, s2) = match *case {
            InitialCase::Weibel { sigma1, sigma2, .. } => (0.0, sigma1, 0.0, sigma2),
            InitialCase::Landau { sigma, .. } => (0.0, sigma, 0.0, sigma),
            InitialCase::StreamingWeibel {
                sigma,
                v01,
                v02,
                delta,
                ..
            } => {
                let mu2 = if u[3] < delta { v01 } else { v02 };
                (0.0, sigma, mu2, sigma)
            }
        };
        let g1 = s1 * inverse_normal_cdf(u[1]);
        let g2 = s2 * inverse_normal_cdf(u[2]);
        x.push(xa);
        v1.push(mu1 + g1);
        v2.push(mu2 + g2);
        if antithetic {
            x.push(complex.v0().wrap(length - xa));
            v1.push(mu1 - g1);
            v2.push(mu2 - g2);
        }
    }

    let particles = ParticleSet {
        x,
        v1,
        v2,
        weight: length / n_particles as f64,
        charge: -1.0,
        mass: 1.0,
    };

    let n = complex.n_cells();
    let mut fields = FieldCoeffs::zeros(n);
    fields.b = complex.l2_project(SpaceId::V1, |x| case.magnetic_field(x));
    let rho = deposit_charge(&particles, complex);
    fields.d = complex.poisson_solve_initial_field(&rho)?;
    Ok((particles, fields))
}

/// V0 load vector of the total charge: `sum_a q w N_j(x_a)` plus the uniform
/// background `-q w N_p / L` tested against each basis function.
pub fn deposit_charge(particles: &ParticleSet, complex: &DeRhamComplex1d) -> Vec<f64> {
    let space = complex.v0();
    let n = space.n_cells();
    let qw = particles.particle_charge();
    let mut rho = vec![0.0; n];
    for &x in &particles.x {
        space.eval_basis(x).scatter(qw, &mut rho);
    }
    let background = -qw * particles.len() as f64 / complex.domain_length() * complex.cell_width();
    for r in &mut rho {
        *r += background;
    }
    rho
}

/// `sum_a q w int_{x_a}^{x_a + dt v1_a} N_j^{p-1}(s) ds`, the time integral of
/// the V1 current along straight particle paths.
pub fn deposit_current_line_integral(
    particles: &ParticleSet,
    dt: f64,
    complex: &DeRhamComplex1d,
) -> Vec<f64> {
    let space = complex.v1();
    let qw = particles.particle_charge();
    let mut j = vec![0.0; space.n_cells()];
    for (&x, &v) in particles.x.iter().zip(&particles.v1) {
        space.for_each_segment_integral(x, x + dt * v, |i, val| j[i] += qw * val);
    }
    j
}
