//! Sobol loading of the three benchmark distributions.
//!
//! cargo run --example quasi_random_loading -- [particles]

use feec_pic::particles::sample_initial;
use feec_pic::{DeRhamComplex1d, InitialCase, Result};

fn main() -> Result<()> {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(20_000);
    for case in [InitialCase::weibel(), InitialCase::streaming_weibel(), InitialCase::landau()] {
        let c = DeRhamComplex1d::new(3, 32, case.domain_length())?;
        let (ps, fields) = sample_initial(&case, count, true, 1, &c)?;
        let n = ps.len() as f64;
        let mean = |v: &[f64]| v.iter().sum::<f64>() / n;
        let var = |v: &[f64], m: f64| v.iter().map(|a| (a - m).powi(2)).sum::<f64>() / n;
        let (m1, m2) = (mean(&ps.v1), mean(&ps.v2));
        let k = case.wavenumber();
        let mode = ps.x.iter().map(|x| (k * x).cos()).sum::<f64>() / n;
        println!(
            "{:<17} <v1> = {m1:+.2e}  var v1 = {:.4e}  <v2> = {m2:+.2e}  var v2 = {:.4e}  <cos kx> = {mode:+.4}  max|d| = {:.2e}",
            case.name(),
            var(&ps.v1, m1),
            var(&ps.v2, m2),
            fields.d.iter().fold(0.0f64, |a, b| a.max(b.abs())),
        );
    }
    Ok(())
}
