//! Gauss-Legendre rules on the reference interval [-1, 1].

use std::sync::OnceLock;

/// Largest tabulated rule.
pub const MAX_POINTS: usize = 10;

#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Maps the rule onto [0, 1]; the returned weights sum to 1.
    pub fn unit_interval(&self) -> (Vec<f64>, Vec<f64>) {
        let nodes = self.nodes.iter().map(|x| 0.5 * (x + 1.0)).collect();
        let weights = self.weights.iter().map(|w| 0.5 * w).collect();
        (nodes, weights)
    }
}

static TABLE: OnceLock<Vec<GaussLegendre>> = OnceLock::new();

/// The `n`-point rule, exact for polynomials of degree `2n - 1`.
///
/// Panics if `n` is zero or larger than [`MAX_POINTS`].
pub fn gauss_legendre(n: usize) -> &'static GaussLegendre {
    assert!(
        (1..=MAX_POINTS).contains(&n),
        "gauss-legendre rule with {n} points is not tabulated"
    );
    &TABLE.get_or_init(|| (1..=MAX_POINTS).map(compute_rule).collect())[n - 1]
}

/// Newton iteration on P_n from the Chebyshev-like initial guesses.
fn compute_rule(n: usize) -> GaussLegendre {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussLegendre { nodes, weights }
}

/// Value and derivative of the Legendre polynomial P_n at x.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
