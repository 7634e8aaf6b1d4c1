//! Weibel instability with the Strang splitting; fits the growth rate of
//! the magnetic energy.
//!
//! cargo run --release --example weibel_growth -- [particles] [t_end]

use feec_pic::config::{FitField, FitMethod};
use feec_pic::{run_simulation, Result, SimConfig};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let mut cfg = SimConfig::weibel();
    if let Some(n) = args.next().and_then(|s| s.parse().ok()) {
        cfg.particles.count = n;
    }
    cfg.time.t_end = args.next().and_then(|s| s.parse().ok()).unwrap_or(400.0);
    cfg.output.stride = 20;
    let out = run_simulation(&cfg)?;
    let [a, b] = cfg.output.fit_window.expect("preset has a window");
    let rate = out.fit(FitField::B, (a, b), FitMethod::LeastSquares)?;
    for r in out.records.iter().step_by(25) {
        println!("t = {:>6.1}  B energy = {:.4e}", r.time, r.b_energy);
    }
    println!("growth rate over [{a}, {b}]: {rate:.5}  (reference 0.02784)");
    println!("max energy error {:.2e}, max gauss residual {:.2e}", out.summary.max_energy_error, out.summary.max_gauss_residual);
    Ok(())
}
