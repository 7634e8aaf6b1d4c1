//! Boris-Yee against the Strang splitting: Gauss' law is only kept by the
//! splitting.
//!
//! cargo run --release --example boris_vs_splitting -- [particles] [t_end]

use feec_pic::{run_simulation, PropagatorId, Result, SimConfig};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(20_000);
    let t_end = args.next().and_then(|s| s.parse().ok()).unwrap_or(100.0);
    for prop in [PropagatorId::Strang, PropagatorId::Boris] {
        let mut cfg = SimConfig::weibel();
        cfg.particles.count = count;
        cfg.time.t_end = t_end;
        cfg.time.propagator = prop;
        cfg.output.fit_window = None;
        cfg.output.stride = 100;
        let out = run_simulation(&cfg)?;
        println!("{prop}:");
        for r in &out.records {
            println!("    t = {:>6.1}  gauss residual {:.3e}  dH {:+.3e}", r.time, r.gauss_residual, r.total_energy - out.records[0].total_energy);
        }
    }
    Ok(())
}
