//! Reference implementations shared by the integration tests. Nothing here
//! calls into the library.
#![allow(dead_code)]

/// Cardinal B-spline of degree `p` on knots `i, i+1, ..., i+p+1`.
pub fn cox_de_boor(i: i64, p: usize, s: f64) -> f64 {
    let i_f = i as f64;
    if p == 0 {
        return if i_f <= s && s < i_f + 1.0 { 1.0 } else { 0.0 };
    }
    let pf = p as f64;
    (s - i_f) / pf * cox_de_boor(i, p - 1, s) + (i_f + pf + 1.0 - s) / pf * cox_de_boor(i + 1, p - 1, s)
}

/// Periodic basis function `j` of degree `p` on `n` unit cells.
pub fn periodic(j: usize, p: usize, n: usize, s: f64) -> f64 {
    let s = s.rem_euclid(n as f64);
    (-1..=1).map(|m| cox_de_boor(j as i64, p, s + (m * n as i64) as f64)).sum()
}

pub fn periodic_derivative(j: usize, p: usize, n: usize, s: f64) -> f64 {
    periodic(j, p - 1, n, s) - periodic((j + 1) % n, p - 1, n, s)
}

/// `sum c_j N_j^p(x / dx)`.
pub fn field(coeffs: &[f64], p: usize, dx: f64, x: f64) -> f64 {
    let n = coeffs.len();
    coeffs.iter().enumerate().map(|(j, c)| c * periodic(j, p, n, x / dx)).sum()
}

/// Three-point Gauss rule on 64 sub-intervals of every unit span between
/// `a` and `b`; the integrand is piecewise polynomial on integer knots.
pub fn composite(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (lo, hi, sign) = if a <= b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut breaks = vec![lo];
    let mut k = lo.floor() + 1.0;
    while k < hi {
        breaks.push(k);
        k += 1.0;
    }
    breaks.push(hi);
    let r = (0.6f64).sqrt();
    let nodes = [-r, 0.0, r];
    let weights = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let h = (w[1] - w[0]) / 64.0;
        for m in 0..64 {
            let c = w[0] + (m as f64 + 0.5) * h;
            for (x, wt) in nodes.iter().zip(&weights) {
                total += 0.5 * h * wt * f(c + 0.5 * h * x);
            }
        }
    }
    sign * total
}

/// `int_0^L f dx` on a grid of `n` cells of width `dx`.
pub fn over_domain(f: impl Fn(f64) -> f64, n: usize, dx: f64) -> f64 {
    dx * composite(|s| f(s * dx), 0.0, n as f64)
}
