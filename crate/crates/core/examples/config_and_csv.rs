//! Runs a hand-written TOML configuration and writes the diagnostics CSV.
//!
//! cargo run --release --example config_and_csv -- [out.csv]

use feec_pic::{run_simulation, Result, SimConfig};

const CONFIG: &str = r#"
[case]
name = "landau"
sigma = 1.0
k = 0.5
alpha = 0.5

[grid]
degree = 3
cells = 32

[time]
propagator = "order4_3strang"
dt = 0.1
t_end = 10.0

[particles]
count = 10000

[output]
stride = 5
"#;

fn main() -> Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| "landau_3strang.csv".into());
    let cfg = SimConfig::from_toml_str(CONFIG)?;
    let out = run_simulation(&cfg)?;
    out.write_csv(path.as_ref())?;
    println!("{} rows written to {path}", out.records.len());
    println!("{}", cfg.to_toml_string()?);
    Ok(())
}
