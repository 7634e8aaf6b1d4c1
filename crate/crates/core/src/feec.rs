//! The one-dimensional discrete deRham complex.
//!
//! `V0` holds splines of degree `p` (the potential-like fields, here `E_2`),
//! `V1` holds splines of degree `p - 1` (`E_1` and `B_3`). The derivative
//! maps V0 coefficients to V1 coefficients through
//! `(G e)_i = (e_i - e_{i-1}) / dx`, so that `d/dx sum e_j N_j^p` equals
//! `sum (G e)_i N_i^{p-1}` pointwise.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Circulant, SpdSolver};
use crate::splines::SplineSpace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceId {
    V0,
    V1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MassId {
    M0,
    M1,
}

/// Field coefficients: `d` for `E_1` (V1), `e` for `E_2` (V0), `b` for `B_3` (V1).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldCoeffs {
    pub d: Vec<f64>,
    pub e: Vec<f64>,
    pub b: Vec<f64>,
}

impl FieldCoeffs {
    pub fn zeros(n: usize) -> Self {
        Self {
            d: vec![0.0; n],
            e: vec![0.0; n],
            b: vec![0.0; n],
        }
    }
}

#[derive(Debug, Clone)]
pub struct DeRhamComplex1d {
    v0: SplineSpace,
    v1: SplineSpace,
    m0: Circulant,
    m1: Circulant,
    m01: Circulant,
    m0_solver: SpdSolver,
    m1_solver: SpdSolver,
    poisson: SpdSolver,
}

impl DeRhamComplex1d {
    /// Assembles both spaces, all mass matrices and the factorizations.
    ///
    /// Mass entries are integrated cell by cell with `degree_p + 1`
    /// Gauss-Legendre points, which is exact for the products involved.
    pub fn new(degree_p: usize, n_cells: usize, domain_length: f64) -> Result<Self> {
        if degree_p == 0 {
            return Err(Error::InvalidSpace(
                "the V0 degree must be at least 1".to_string(),
            ));
        }
        if n_cells <= degree_p {
            return Err(Error::InvalidSpace(format!(
                "{n_cells} cells are too few for the degree-{degree_p} stencil"
            )));
        }
        let v0 = SplineSpace::new(degree_p, n_cells, domain_length)?;
        let v1 = SplineSpace::new(degree_p - 1, n_cells, domain_length)?;

        let m0 = assemble_mass(&v0, &v0, degree_p + 1);
        let m1 = assemble_mass(&v1, &v1, degree_p + 1);
        let m01 = assemble_mass(&v0, &v1, degree_p + 1);

        let m0_solver = SpdSolver::new(m0.to_dense(), "V0 mass matrix")?;
        let m1_solver = SpdSolver::new(m1.to_dense(), "V1 mass matrix")?;

        // G^T M1 G is singular on constants; adding a multiple of 1 1^T picks
        // the zero-mean potential for any neutral right-hand side.
        let g = deriv_dense(n_cells, v0.cell_width());
        let mut stiffness = g.transpose() * m1.to_dense() * &g;
        let shift = stiffness[(0, 0)] / n_cells as f64;
        stiffness.add_scalar_mut(shift);
        let poisson = SpdSolver::new(stiffness, "gauged Poisson matrix")?;

        Ok(Self {
            v0,
            v1,
            m0,
            m1,
            m01,
            m0_solver,
            m1_solver,
            poisson,
        })
    }

    pub fn v0(&self) -> &SplineSpace {
        &self.v0
    }

    pub fn v1(&self) -> &SplineSpace {
        &self.v1
    }

    pub fn space(&self, id: SpaceId) -> &SplineSpace {
        match id {
            SpaceId::V0 => &self.v0,
            SpaceId::V1 => &self.v1,
        }
    }

    pub fn n_cells(&self) -> usize {
        self.v0.n_cells()
    }

    pub fn cell_width(&self) -> f64 {
        self.v0.cell_width()
    }

    pub fn domain_length(&self) -> f64 {
        self.v0.domain_length()
    }

    pub fn mass(&self, id: MassId) -> &Circulant {
        match id {
            MassId::M0 => &self.m0,
            MassId::M1 => &self.m1,
        }
    }

    /// `int N_i^p N_j^{p-1} dx`, rows indexed by V0.
    pub fn mixed_mass(&self) -> &Circulant {
        &self.m01
    }

    /// `G x` for a V0 coefficient vector.
    pub fn apply_deriv(&self, x: &[f64]) -> Vec<f64> {
        let n = x.len();
        let inv = 1.0 / self.cell_width();
        (0..n)
            .map(|i| (x[i] - x[(i + n - 1) % n]) * inv)
            .collect()
    }

    /// `G^T y` for a V1 coefficient vector.
    pub fn apply_deriv_transpose(&self, y: &[f64]) -> Vec<f64> {
        let n = y.len();
        let inv = 1.0 / self.cell_width();
        (0..n)
            .map(|j| (y[j] - y[(j + 1) % n]) * inv)
            .collect()
    }

    /// The derivative matrix as a dense `n x n` matrix.
    pub fn deriv_matrix(&self) -> DMatrix<f64> {
        deriv_dense(self.n_cells(), self.cell_width())
    }

    pub fn solve_mass(&self, id: MassId, rhs: &[f64]) -> Result<Vec<f64>> {
        self.v0.check_len(rhs)?;
        Ok(match id {
            MassId::M0 => self.m0_solver.solve(rhs),
            MassId::M1 => self.m1_solver.solve(rhs),
        })
    }

    /// Electric field `d = -G phi` from a neutral V0 charge load vector,
    /// where `G^T M1 G phi = rho_dofs` and `sum phi = 0`.
    ///
    /// The load vector must sum to zero up to `1e-10` relative to
    /// `max(|rho|_1, L)`; the remaining round-off mean is projected out so the
    /// result satisfies `G^T M1 d = -rho_dofs` to solver precision.
    pub fn poisson_solve_initial_field(&self, rho_dofs: &[f64]) -> Result<Vec<f64>> {
        self.v0.check_len(rho_dofs)?;
        let total: f64 = rho_dofs.iter().sum();
        let scale = rho_dofs
            .iter()
            .map(|r| r.abs())
            .sum::<f64>()
            .max(self.domain_length());
        let tolerance = 1e-10 * scale;
        if total.abs() > tolerance {
            return Err(Error::IncompatibleCharge { total, tolerance });
        }
        let mean = total / rho_dofs.len() as f64;
        let rhs: Vec<f64> = rho_dofs.iter().map(|r| r - mean).collect();
        let phi = self.poisson.solve(&rhs);
        Ok(self.apply_deriv(&phi).into_iter().map(|v| -v).collect())
    }

    /// `int F_h dx = dx * sum coeffs`: every periodic basis function has
    /// integral `dx`.
    pub fn field_integral(&self, _id: SpaceId, coeffs: &[f64]) -> f64 {
        self.cell_width() * coeffs.iter().sum::<f64>()
    }

    /// `int E_h B_h dx` for `e` in V0 and `b` in V1.
    pub fn mixed_inner(&self, e: &[f64], b: &[f64]) -> f64 {
        self.m01.bilinear(e, b)
    }

    /// `int f N_j dx` for every basis function of the space, using a
    /// 10-point rule per cell.
    pub fn load_vector(&self, id: SpaceId, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let space = self.space(id);
        let n = space.n_cells();
        let dx = space.cell_width();
        let (nodes, weights) = crate::quadrature::gauss_legendre(10).unit_interval();
        let mut out = vec![0.0; n];
        for c in 0..n {
            for (t, w) in nodes.iter().zip(&weights) {
                let x = (c as f64 + t) * dx;
                let basis = space.eval_basis(x);
                basis.scatter(w * dx * f(x), &mut out);
            }
        }
        out
    }

    /// L2 projection of `f` onto the space.
    pub fn l2_project(&self, id: SpaceId, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let load = self.load_vector(id, f);
        match id {
            SpaceId::V0 => self.m0_solver.solve(&load),
            SpaceId::V1 => self.m1_solver.solve(&load),
        }
    }
}

fn deriv_dense(n: usize, dx: f64) -> DMatrix<f64> {
    let mut g = DMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] += 1.0 / dx;
        g[(i, (i + n - 1) % n)] -= 1.0 / dx;
    }
    g
}

/// `A[i][j] = int N_i^a N_j^b dx` on the periodic grid.
fn assemble_mass(a: &SplineSpace, b: &SplineSpace, points: usize) -> Circulant {
    let n = a.n_cells();
    let dx = a.cell_width();
    let (nodes, weights) = crate::quadrature::gauss_legendre(points).unit_interval();
    let mut dense = vec![0.0; n * n];
    for c in 0..n {
        for (t, w) in nodes.iter().zip(&weights) {
            let x = (c as f64 + t) * dx;
            let ba = a.eval_basis(x);
            let bb = b.eval_basis(x);
            for (i, va) in ba.iter() {
                for (j, vb) in bb.iter() {
                    dense[i * n + j] += w * dx * va * vb;
                }
            }
        }
    }
    Circulant::from_first_row(&dense[..n])
}
