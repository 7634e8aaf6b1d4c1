//! Energy error of every splitting on the Weibel case.
//!
//! cargo run --release --example energy_hierarchy -- [particles] [t_end]

use feec_pic::{run_simulation, PropagatorId, Result, SimConfig};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let count = args.next().and_then(|s| s.parse().ok()).unwrap_or(10_000);
    let t_end = args.next().and_then(|s| s.parse().ok()).unwrap_or(50.0);
    println!("{:<16} {:>12} {:>12} {:>8}", "propagator", "max dH", "max gauss", "seconds");
    for prop in PropagatorId::SPLITTINGS.into_iter().chain([PropagatorId::Boris]) {
        let mut cfg = SimConfig::weibel();
        cfg.particles.count = count;
        cfg.time.t_end = t_end;
        cfg.time.propagator = prop;
        cfg.output.fit_window = None;
        let s = run_simulation(&cfg)?.summary;
        println!(
            "{:<16} {:>12.3e} {:>12.3e} {:>8.1}",
            prop.name(),
            s.max_energy_error,
            s.max_gauss_residual,
            s.elapsed.as_secs_f64()
        );
    }
    Ok(())
}
