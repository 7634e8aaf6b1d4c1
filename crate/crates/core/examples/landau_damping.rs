//! Strong Landau damping: damping and regrowth rates of the E1 energy from
//! its local maxima.
//!
//! cargo run --release --example landau_damping -- [particles]

use feec_pic::config::{FitField, FitMethod};
use feec_pic::{run_simulation, Result, SimConfig};

fn main() -> Result<()> {
    let mut cfg = SimConfig::landau();
    if let Some(n) = std::env::args().nth(1).and_then(|s| s.parse().ok()) {
        cfg.particles.count = n;
    }
    let out = run_simulation(&cfg)?;
    let damping = out.fit(FitField::E1, (0.0, 12.0), FitMethod::LocalMaxima)?;
    let growth = out.fit(FitField::E1, (20.0, 40.0), FitMethod::LocalMaxima)?;
    println!("gamma1 = {damping:+.4}  (reference -0.286)");
    println!("gamma2 = {growth:+.4}  (reference +0.087)");
    Ok(())
}
