//! Backward error analysis of the Lie splitting: the energy error falls
//! linearly with dt, the error of the modified energy quadratically.
//!
//! cargo run --release --example modified_energy -- [particles] [t_end]

use feec_pic::diagnostics::least_squares_slope;
use feec_pic::{run_simulation, PropagatorId, Result, SimConfig};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let t_end = args.next().and_then(|s| s.parse().ok()).unwrap_or(20.0);
    let dts = [0.01, 0.02, 0.05];
    let (mut h, mut m) = (vec![], vec![]);
    for dt in dts {
        let mut cfg = SimConfig::weibel();
        cfg.particles.count = count;
        cfg.time.propagator = PropagatorId::Lie;
        cfg.time.dt = dt;
        cfg.time.t_end = t_end;
        cfg.output.fit_window = None;
        let s = run_simulation(&cfg)?.summary;
        println!("dt = {dt:<5} max dH = {:.3e}  max dH~ = {:.3e}", s.max_energy_error, s.max_modified_error);
        h.push(s.max_energy_error.ln());
        m.push(s.max_modified_error.ln());
    }
    let pts = |y: &[f64]| -> Vec<(f64, f64)> { dts.iter().map(|d| d.ln()).zip(y.iter().copied()).collect() };
    println!("slope H  = {:.3}", least_squares_slope(&pts(&h)));
    println!("slope H~ = {:.3}", least_squares_slope(&pts(&m)));
    Ok(())
}
