//! Circulant storage for periodic finite element matrices and a dense SPD
//! factorization for the (small) mass and stiffness systems.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};

use crate::error::{Error, Result};

/// An `n x n` circulant matrix stored by the nonzero entries of its first row:
/// `A[i][(i + offset) % n] = value`.
#[derive(Debug, Clone, PartialEq)]
pub struct Circulant {
    n: usize,
    stencil: Vec<(usize, f64)>,
}

impl Circulant {
    pub fn from_first_row(row: &[f64]) -> Self {
        let stencil = row
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(o, v)| (o, *v))
            .collect();
        Self {
            n: row.len(),
            stencil,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Nonzero `(offset, value)` pairs of the first row.
    pub fn stencil(&self) -> &[(usize, f64)] {
        &self.stencil
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let off = (j + self.n - i % self.n) % self.n;
        self.stencil
            .iter()
            .find(|(o, _)| *o == off)
            .map_or(0.0, |(_, v)| *v)
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.apply_into(x, &mut y);
        y
    }

    pub fn apply_into(&self, x: &[f64], y: &mut [f64]) {
        let n = self.n;
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = 0.0;
            for &(o, v) in &self.stencil {
                let j = i + o;
                acc += v * x[if j >= n { j - n } else { j }];
            }
            *yi = acc;
        }
    }

    pub fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = vec![0.0; n];
        for (i, &xi) in x.iter().enumerate() {
            for &(o, v) in &self.stencil {
                y[(i + o) % n] += v * xi;
            }
        }
        y
    }

    /// `x^T A y`.
    pub fn bilinear(&self, x: &[f64], y: &[f64]) -> f64 {
        let n = self.n;
        let mut acc = 0.0;
        for (i, &xi) in x.iter().enumerate() {
            let mut row = 0.0;
            for &(o, v) in &self.stencil {
                let j = i + o;
                row += v * y[if j >= n { j - n } else { j }];
            }
            acc += xi * row;
        }
        acc
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.entry(i, j))
    }
}

/// Cholesky factorization computed once and reused for every solve.
#[derive(Debug, Clone)]
pub struct SpdSolver {
    factor: Cholesky<f64, Dyn>,
}

impl SpdSolver {
    pub fn new(matrix: DMatrix<f64>, name: &'static str) -> Result<Self> {
        Cholesky::new(matrix)
            .map(|factor| Self { factor })
            .ok_or(Error::NotPositiveDefinite(name))
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let mut v = DVector::from_column_slice(rhs);
        self.factor.solve_mut(&mut v);
        v.data.into()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circulant_matches_dense_products() {
        let c = Circulant::from_first_row(&[2.0, 0.5, 0.0, 0.0, -0.25]);
        let dense = c.to_dense();
        let x = [1.0, -2.0, 3.0, 0.5, 4.0];
        let y = c.apply(&x);
        let yd = &dense * DVector::from_column_slice(&x);
        let yt = c.apply_transpose(&x);
        let ytd = dense.transpose() * DVector::from_column_slice(&x);
        for i in 0..5 {
            assert!((y[i] - yd[i]).abs() < 1e-15);
            assert!((yt[i] - ytd[i]).abs() < 1e-15);
        }
        let z = [0.3, 0.1, -1.0, 2.0, 0.0];
        let direct: f64 = z.iter().zip(&y).map(|(a, b)| a * b).sum();
        assert!((c.bilinear(&z, &x) - direct).abs() < 1e-14);
        assert_eq!(c.entry(4, 0), 0.5);
        assert_eq!(c.entry(0, 4), -0.25);
    }

    #[test]
    fn solver_rejects_indefinite() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert!(SpdSolver::new(m, "test").is_err());
    }
}
