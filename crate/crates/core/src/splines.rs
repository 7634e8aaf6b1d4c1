//! Uniform periodic B-spline bases on a 1D interval.
//!
//! The spline `N_j^p` of degree `p` has support `[x_j, x_{j+p+1}]` with
//! equidistant knots `x_j = j * dx`; indices are taken modulo the number of
//! cells, so a space on `n_cells` cells has exactly `n_cells` basis functions.
//! Cells are half-open: a point on a knot belongs to the cell on its right.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;

/// Highest supported spline degree.
pub const MAX_DEGREE: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplineSpace {
    degree: usize,
    n_cells: usize,
    domain_length: f64,
    cell_width: f64,
    inv_cell_width: f64,
}

/// The `degree + 1` basis functions that are active at a point.
///
/// `values()[k]` belongs to the basis function with index
/// `(first_index + k) % n_cells`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisValues {
    pub first_index: usize,
    n_cells: usize,
    len: usize,
    values: [f64; MAX_DEGREE + 1],
}

impl BasisValues {
    pub fn values(&self) -> &[f64] {
        &self.values[..self.len]
    }

    /// `(global index, value)` pairs with the periodic wrap applied.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.values()
            .iter()
            .enumerate()
            .map(move |(k, &v)| ((self.first_index + k) % self.n_cells, v))
    }

    /// `sum_k coeffs[index_k] * value_k`.
    #[inline]
    pub fn dot(&self, coeffs: &[f64]) -> f64 {
        let mut acc = 0.0;
        let mut j = self.first_index;
        for &v in self.values() {
            acc += coeffs[j] * v;
            j += 1;
            if j == self.n_cells {
                j = 0;
            }
        }
        acc
    }

    /// `target[index_k] += scale * value_k`.
    #[inline]
    pub fn scatter(&self, scale: f64, target: &mut [f64]) {
        let mut j = self.first_index;
        for &v in self.values() {
            target[j] += scale * v;
            j += 1;
            if j == self.n_cells {
                j = 0;
            }
        }
    }
}

impl SplineSpace {
    pub fn new(degree: usize, n_cells: usize, domain_length: f64) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::InvalidSpace(format!(
                "degree {degree} exceeds the maximum of {MAX_DEGREE}"
            )));
        }
        if n_cells < degree + 1 {
            return Err(Error::InvalidSpace(format!(
                "{n_cells} cells cannot hold a periodic spline of degree {degree}"
            )));
        }
        if !(domain_length.is_finite() && domain_length > 0.0) {
            return Err(Error::InvalidSpace(format!(
                "domain length must be positive and finite, got {domain_length}"
            )));
        }
        let cell_width = domain_length / n_cells as f64;
        Ok(Self {
            degree,
            n_cells,
            domain_length,
            cell_width,
            inv_cell_width: n_cells as f64 / domain_length,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of cells, which is also the dimension of the space.
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    pub fn domain_length(&self) -> f64 {
        self.domain_length
    }

    pub fn cell_width(&self) -> f64 {
        self.cell_width
    }

    /// Maps `x` into `[0, L)`.
    #[inline]
    pub fn wrap(&self, x: f64) -> f64 {
        let l = self.domain_length;
        if (0.0..l).contains(&x) {
            return x;
        }
        let y = x - l * (x / l).floor();
        if y >= l || y < 0.0 {
            0.0
        } else {
            y
        }
    }

    /// Cell index and local coordinate `t` in `[0, 1)` of a (wrapped) point.
    #[inline]
    pub fn locate(&self, x: f64) -> (usize, f64) {
        let s = self.wrap(x) * self.inv_cell_width;
        let c = s.floor();
        let cell = c as usize;
        if cell >= self.n_cells {
            (0, 0.0)
        } else {
            (cell, s - c)
        }
    }

    /// Values of the `degree + 1` splines that are active in a cell, at local
    /// coordinate `t`. Entry `k` belongs to the spline starting at knot
    /// `cell - degree + k`.
    #[inline]
    pub fn eval_local(&self, t: f64) -> [f64; MAX_DEGREE + 1] {
        eval_uniform(self.degree, t)
    }

    pub fn eval_basis(&self, x: f64) -> BasisValues {
        let (cell, t) = self.locate(x);
        self.values_at(cell, eval_uniform(self.degree, t))
    }

    /// Derivatives of the active splines, from
    /// `d/dx N_j^p = (N_j^{p-1} - N_{j+1}^{p-1}) / dx`.
    pub fn eval_basis_derivative(&self, x: f64) -> Result<BasisValues> {
        if self.degree == 0 {
            return Err(Error::DegreeZeroDerivative);
        }
        let (cell, t) = self.locate(x);
        let lower = eval_uniform(self.degree - 1, t);
        let mut out = [0.0; MAX_DEGREE + 1];
        for (k, slot) in out.iter_mut().enumerate().take(self.degree + 1) {
            let left = if k == 0 { 0.0 } else { lower[k - 1] };
            let right = if k < self.degree { lower[k] } else { 0.0 };
            *slot = (left - right) * self.inv_cell_width;
        }
        Ok(self.values_at(cell, out))
    }

    /// Active basis functions at local coordinate `t` of `cell`, as returned
    /// by [`locate`](Self::locate). Lets spaces on the same grid share one
    /// point location.
    #[inline]
    pub fn basis_in_cell(&self, cell: usize, t: f64) -> BasisValues {
        self.values_at(cell, eval_uniform(self.degree, t))
    }

    /// Active splines of degree `p - 1` and `p` at the same point, from one
    /// recursion. The first entry matches `basis_in_cell` of the space one
    /// degree lower on the same grid.
    #[inline]
    pub fn basis_pair_in_cell(&self, cell: usize, t: f64) -> (BasisValues, BasisValues) {
        debug_assert!(self.degree >= 1);
        let (lower, upper) = eval_pair(self.degree, t);
        let n = self.n_cells;
        let low = BasisValues {
            first_index: wrap_index(cell + n - (self.degree - 1), n),
            n_cells: n,
            len: self.degree,
            values: lower,
        };
        (low, self.values_at(cell, upper))
    }

    #[inline]
    fn values_at(&self, cell: usize, values: [f64; MAX_DEGREE + 1]) -> BasisValues {
        BasisValues {
            first_index: wrap_index(cell + self.n_cells - self.degree, self.n_cells),
            n_cells: self.n_cells,
            len: self.degree + 1,
            values,
        }
    }

    /// `sum_j coeffs_j N_j(x)`.
    pub fn eval_field(&self, coeffs: &[f64], x: f64) -> Result<f64> {
        self.check_len(coeffs)?;
        Ok(self.eval_basis(x).dot(coeffs))
    }

    pub(crate) fn check_len(&self, coeffs: &[f64]) -> Result<()> {
        if coeffs.len() != self.n_cells {
            return Err(Error::LengthMismatch {
                expected: self.n_cells,
                got: coeffs.len(),
            });
        }
        Ok(())
    }

    /// `int_{x0}^{x1} N_j(s) ds` for every basis function touched by the
    /// segment, on the periodically extended line (`x1` may lie outside
    /// `[0, L)`). The integral is signed: it changes sign when `x1 < x0`.
    pub fn integrate_basis_along_segment(&self, x0: f64, x1: f64) -> BTreeMap<usize, f64> {
        let mut out = BTreeMap::new();
        self.for_each_segment_integral(x0, x1, |j, v| *out.entry(j).or_insert(0.0) += v);
        out
    }

    /// Visitor form of [`integrate_basis_along_segment`](Self::integrate_basis_along_segment).
    ///
    /// Uses the antiderivative `int_{-inf}^x N_j^p = dx sum_{i >= j} N_i^{p+1}(x)`
    /// on the unbounded line, so each integral is a difference of two sums of
    /// higher-degree splines. Indices are reported in increasing order of the
    /// unwrapped knot and may repeat when the segment is longer than the period.
    #[inline]
    pub fn for_each_segment_integral(&self, x0: f64, x1: f64, mut f: impl FnMut(usize, f64)) {
        if x0 == x1 {
            return;
        }
        if self.degree >= MAX_DEGREE {
            return self.segment_integral_quadrature(x0, x1, f);
        }
        let d = self.degree as i64;
        let n = self.n_cells as i64;
        let (s0, s1) = (x0 * self.inv_cell_width, x1 * self.inv_cell_width);
        let (c0, c1) = (s0.floor(), s1.floor());
        let tail0 = suffix_sums(self.degree + 1, s0 - c0);
        let tail1 = suffix_sums(self.degree + 1, s1 - c1);
        let (c0, c1) = (c0 as i64, c1 as i64);
        // S_j(x) = tail[j - (c - d - 1)], 1 to the left of the window, 0 to the right
        let cum = |tail: &[f64; MAX_DEGREE + 2], c: i64, j: i64| -> f64 {
            let k = j - (c - d - 1);
            if k < 0 {
                1.0
            } else if k > d + 1 {
                0.0
            } else {
                tail[k as usize]
            }
        };
        let lo = c0.min(c1) - d;
        let hi = c0.max(c1);
        let mut i = lo;
        while i < 0 {
            i += n;
        }
        while i >= n {
            i -= n;
        }
        let mut idx = i as usize;
        for j in lo..=hi {
            let v = self.cell_width * (cum(&tail1, c1, j) - cum(&tail0, c0, j));
            f(idx, v);
            idx += 1;
            if idx == self.n_cells {
                idx = 0;
            }
        }
    }

    /// Same integrals by Gauss-Legendre quadrature on each cell the segment
    /// crosses. Fallback for the highest degree, whose antiderivative is out of
    /// range.
    fn segment_integral_quadrature(&self, x0: f64, x1: f64, mut f: impl FnMut(usize, f64)) {
        let (lo, hi, sign) = if x0 < x1 { (x0, x1, 1.0) } else { (x1, x0, -1.0) };
        let rule = gauss_legendre(self.degree / 2 + 1);
        let p = self.degree;
        let n = self.n_cells as i64;
        let s_lo = lo * self.inv_cell_width;
        let s_hi = hi * self.inv_cell_width;
        let c_first = s_lo.floor() as i64;
        let c_last = s_hi.ceil() as i64;
        for c in c_first..c_last {
            let cf = c as f64;
            let a = s_lo.max(cf) - cf;
            let b = s_hi.min(cf + 1.0) - cf;
            let len = b - a;
            if len <= 0.0 {
                continue;
            }
            let mut acc = [0.0; MAX_DEGREE + 1];
            for (xi, w) in rule.nodes.iter().zip(&rule.weights) {
                let t = a + 0.5 * len * (xi + 1.0);
                let vals = eval_uniform(p, t);
                for k in 0..=p {
                    acc[k] += w * vals[k];
                }
            }
            let scale = sign * 0.5 * len * self.cell_width;
            let first = (c - p as i64).rem_euclid(n) as usize;
            for (k, a) in acc.iter().enumerate().take(p + 1) {
                f((first + k) % self.n_cells, a * scale);
            }
        }
    }
}

/// `i mod n` for `i < 2n`, without an integer division.
#[inline(always)]
fn wrap_index(i: usize, n: usize) -> usize {
    if i >= n {
        i - n
    } else {
        i
    }
}

/// `tail[k] = sum_{k' >= k} N_{k'}(t)` over the `degree + 1` active splines,
/// with `tail[degree + 1] = 0`.
#[inline]
fn suffix_sums(degree: usize, t: f64) -> [f64; MAX_DEGREE + 2] {
    let vals = eval_uniform(degree, t);
    let mut tail = [0.0; MAX_DEGREE + 2];
    for k in (0..=degree).rev() {
        tail[k] = tail[k + 1] + vals[k];
    }
    tail
}

/// Cox-de Boor recursion specialised to integer knots.
#[inline]
fn eval_uniform(degree: usize, t: f64) -> [f64; MAX_DEGREE + 1] {
    // dispatch to fixed degrees so the recursion unrolls
    match degree {
        0 => eval_fixed::<0>(t),
        1 => eval_fixed::<1>(t),
        2 => eval_fixed::<2>(t),
        3 => eval_fixed::<3>(t),
        4 => eval_fixed::<4>(t),
        5 => eval_fixed::<5>(t),
        6 => eval_fixed::<6>(t),
        _ => eval_fixed::<7>(t),
    }
}

/// Values of degree `degree - 1` and `degree` at `t`.
#[inline]
fn eval_pair(degree: usize, t: f64) -> ([f64; MAX_DEGREE + 1], [f64; MAX_DEGREE + 1]) {
    match degree {
        1 => pair_fixed::<1>(t),
        2 => pair_fixed::<2>(t),
        3 => pair_cubic(t),
        4 => pair_fixed::<4>(t),
        5 => pair_fixed::<5>(t),
        6 => pair_fixed::<6>(t),
        _ => pair_fixed::<7>(t),
    }
}

#[inline(always)]
fn pair_fixed<const P: usize>(t: f64) -> ([f64; MAX_DEGREE + 1], [f64; MAX_DEGREE + 1]) {
    let mut b = [0.0; MAX_DEGREE + 1];
    b[0] = 1.0;
    let mut lower = b;
    for r in 1..P + 1 {
        lower = b;
        raise(&mut b, r, t);
    }
    (lower, b)
}

/// Closed form of the quadratic and cubic pieces, the default pair.
#[inline(always)]
fn pair_cubic(t: f64) -> ([f64; MAX_DEGREE + 1], [f64; MAX_DEGREE + 1]) {
    let s = 1.0 - t;
    let t2 = t * t;
    let t3 = t2 * t;
    let mut lower = [0.0; MAX_DEGREE + 1];
    let mut upper = [0.0; MAX_DEGREE + 1];
    lower[0] = 0.5 * s * s;
    lower[1] = 0.5 + t - t2;
    lower[2] = 0.5 * t2;
    upper[0] = s * s * s / 6.0;
    upper[1] = (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0;
    upper[2] = (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0;
    upper[3] = t3 / 6.0;
    (lower, upper)
}

/// One step of the recursion, from degree `r - 1` to `r`, in place.
#[inline(always)]
fn raise(b: &mut [f64; MAX_DEGREE + 1], r: usize, t: f64) {
    const INV: [f64; MAX_DEGREE + 1] = [0.0, 1.0, 0.5, 1.0 / 3.0, 0.25, 0.2, 1.0 / 6.0, 1.0 / 7.0];
    let rf = r as f64;
    let inv = INV[r];
    // new[k] = ((t + r - k) old[k-1] + (k + 1 - t) old[k]) / r, in place from the top
    b[r] = t * b[r - 1] * inv;
    for i in 0..r - 1 {
        let k = r - 1 - i;
        let kf = k as f64;
        b[k] = ((t + rf - kf) * b[k - 1] + (kf + 1.0 - t) * b[k]) * inv;
    }
    b[0] *= (1.0 - t) * inv;
}

#[inline(always)]
fn eval_fixed<const P: usize>(t: f64) -> [f64; MAX_DEGREE + 1] {
    let mut b = [0.0; MAX_DEGREE + 1];
    b[0] = 1.0;
    for r in 1..P + 1 {
        raise(&mut b, r, t);
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(p: usize) -> SplineSpace {
        SplineSpace::new(p, 8, 2.0).unwrap()
    }

    #[test]
    fn rejects_bad_construction() {
        assert!(SplineSpace::new(3, 3, 1.0).is_err());
        assert!(SplineSpace::new(MAX_DEGREE + 1, 20, 1.0).is_err());
        assert!(SplineSpace::new(2, 8, 0.0).is_err());
        assert!(SplineSpace::new(2, 8, f64::NAN).is_err());
    }

    #[test]
    fn degree_zero_is_the_cell_indicator() {
        let s = space(0);
        let b = s.eval_basis(0.6);
        assert_eq!(b.first_index, 2);
        assert_eq!(b.values(), &[1.0]);
    }

    #[test]
    fn hat_at_midpoint() {
        let s = space(1);
        let b = s.eval_basis(1.5 * s.cell_width());
        assert_eq!(b.first_index, 0);
        assert!((b.values()[0] - 0.5).abs() < 1e-15);
        assert!((b.values()[1] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn cubic_at_knot() {
        let s = space(3);
        let b = s.eval_basis(5.0 * s.cell_width());
        assert_eq!(b.first_index, 2);
        let want = [1.0 / 6.0, 4.0 / 6.0, 1.0 / 6.0, 0.0];
        for (v, w) in b.values().iter().zip(want) {
            assert!((v - w).abs() < 1e-15);
        }
    }

    #[test]
    fn knot_belongs_to_the_right_cell() {
        let s = space(0);
        assert_eq!(s.eval_basis(2.0 * s.cell_width()).first_index, 2);
        assert_eq!(s.eval_basis(s.domain_length()).first_index, 0);
        assert_eq!(s.eval_basis(-1e-300).first_index, 0);
    }

    #[test]
    fn derivative_of_hat() {
        let s = space(1);
        let dx = s.cell_width();
        let d = s.eval_basis_derivative(3.3 * dx).unwrap();
        assert_eq!(d.first_index, 2);
        // N_2 is on its falling edge, N_3 on its rising edge
        assert!((d.values()[0] + 1.0 / dx).abs() < 1e-12);
        assert!((d.values()[1] - 1.0 / dx).abs() < 1e-12);
    }

    #[test]
    fn derivative_of_cubic_at_knot() {
        let s = space(3);
        let dx = s.cell_width();
        let d = s.eval_basis_derivative(4.0 * dx).unwrap();
        let want = [-0.5 / dx, 0.0, 0.5 / dx, 0.0];
        for (v, w) in d.values().iter().zip(want) {
            assert!((v - w).abs() < 1e-13, "{v} vs {w}");
        }
    }

    #[test]
    fn derivative_rejects_degree_zero() {
        assert!(matches!(
            space(0).eval_basis_derivative(0.1),
            Err(Error::DegreeZeroDerivative)
        ));
    }

    #[test]
    fn field_length_is_checked() {
        assert!(matches!(
            space(2).eval_field(&[1.0; 5], 0.3),
            Err(Error::LengthMismatch { expected: 8, got: 5 })
        ));
    }

    #[test]
    fn constant_field_and_local_support() {
        let s = space(3);
        assert!((s.eval_field(&[2.5; 8], 1.234).unwrap() - 2.5).abs() < 1e-14);
        let mut unit = vec![0.0; 8];
        unit[0] = 1.0;
        // N_0 lives on cells 0..=3
        assert_eq!(s.eval_field(&unit, 4.5 * s.cell_width()).unwrap(), 0.0);
    }

    #[test]
    fn zero_length_segment_is_empty() {
        assert!(space(2).integrate_basis_along_segment(0.7, 0.7).is_empty());
    }

    #[test]
    fn full_period_integrates_to_cell_width() {
        for p in 0..=5 {
            let s = SplineSpace::new(p, 9, 3.0).unwrap();
            let m = s.integrate_basis_along_segment(0.0, s.domain_length());
            assert_eq!(m.len(), 9);
            for v in m.values() {
                assert!((v - s.cell_width()).abs() < 1e-14, "p={p}: {v}");
            }
            // shifted start and reversed direction
            let m = s.integrate_basis_along_segment(2.1, 2.1 - s.domain_length());
            for v in m.values() {
                assert!((v + s.cell_width()).abs() < 1e-14);
            }
        }
    }
}
