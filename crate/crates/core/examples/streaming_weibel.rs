//! Streaming Weibel instability at reduced particle count; growth of the E2
//! energy and the momentum bookkeeping.
//!
//! cargo run --release --example streaming_weibel -- [particles] [t_end]

use feec_pic::config::{FitField, FitMethod};
use feec_pic::{run_simulation, Result, SimConfig};

fn main() -> Result<()> {
    let mut args = std::env::args().skip(1);
    let mut cfg = SimConfig::streaming_weibel();
    if let Some(n) = args.next().and_then(|s| s.parse().ok()) {
        cfg.particles.count = n;
    }
    if let Some(t) = args.next().and_then(|s| s.parse().ok()) {
        cfg.time.t_end = t;
    }
    let out = run_simulation(&cfg)?;
    let [a, b] = cfg.output.fit_window.expect("preset has a window");
    if cfg.time.t_end >= b {
        let rate = out.fit(FitField::E2, (a, b), FitMethod::LeastSquares)?;
        println!("E2 growth over [{a}, {b}]: {rate:.4}  (reference 0.03)");
    }
    let s = &out.summary;
    println!("max gauss residual {:.2e}", s.max_gauss_residual);
    println!("max |P2 - P2_ref|  {:.2e}", s.max_momentum2_deviation);
    Ok(())
}
