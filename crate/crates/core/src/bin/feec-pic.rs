use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use feec_pic::config::{FitField, FitMethod};
use feec_pic::{run_simulation, Error, PropagatorId, SimConfig};

/// Geometric particle-in-cell runs of the 1d2v Vlasov-Maxwell benchmarks.
#[derive(Debug, Parser)]
#[command(version, about, allow_negative_numbers = true)]
struct Args {
    /// TOML configuration file.
    #[arg(long, conflicts_with = "case")]
    config: Option<PathBuf>,
    /// Built-in preset: weibel, streaming_weibel or landau.
    #[arg(long)]
    case: Option<String>,
    /// lie, strang, order2_4lie, order4_3strang, order4_10lie or boris.
    #[arg(long)]
    propagator: Option<String>,
    #[arg(long)]
    dt: Option<f64>,
    #[arg(long)]
    t_end: Option<f64>,
    /// Number of steps; overrides --t-end with steps * dt.
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    cells: Option<usize>,
    #[arg(long)]
    particles: Option<usize>,
    #[arg(long)]
    degree: Option<usize>,
    /// Write a diagnostics row every N steps.
    #[arg(long)]
    stride: Option<usize>,
    /// Leading Sobol points to skip.
    #[arg(long)]
    seed_skip: Option<u64>,
    #[arg(long, action = clap::ArgAction::Set)]
    antithetic: Option<bool>,
    /// Diagnostics CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    fit_window: Option<Vec<f64>>,
    /// e1, e2 or b.
    #[arg(long)]
    fit_field: Option<String>,
    /// least_squares or local_maxima.
    #[arg(long)]
    fit_method: Option<String>,
    /// Print the resolved configuration as TOML and exit.
    #[arg(long)]
    print_config: bool,
}

fn resolve(args: &Args) -> Result<SimConfig, Error> {
    let mut cfg = match (&args.config, &args.case) {
        (Some(path), _) => SimConfig::load(path)?,
        (None, Some(name)) => SimConfig::preset(name)?,
        (None, None) => return Err(Error::Config("pass --config PATH or --case NAME".into())),
    };
    if let Some(p) = &args.propagator {
        cfg.time.propagator = p.parse::<PropagatorId>()?;
    }
    if let Some(dt) = args.dt {
        cfg.time.dt = dt;
    }
    if let Some(t) = args.t_end {
        cfg.time.t_end = t;
    }
    if let Some(n) = args.steps {
        cfg.time.t_end = n as f64 * cfg.time.dt;
    }
    if let Some(n) = args.cells {
        cfg.grid.cells = n;
    }
    if let Some(n) = args.particles {
        cfg.particles.count = n;
    }
    if let Some(p) = args.degree {
        cfg.grid.degree = p;
    }
    if let Some(s) = args.stride {
        cfg.output.stride = s;
    }
    if let Some(s) = args.seed_skip {
        cfg.particles.sobol_skip = s;
    }
    if let Some(a) = args.antithetic {
        cfg.particles.antithetic = a;
    }
    if let Some(p) = &args.out {
        cfg.output.path = Some(p.clone());
    }
    if let Some(w) = &args.fit_window {
        cfg.output.fit_window = Some([w[0], w[1]]);
    }
    if let Some(f) = &args.fit_field {
        cfg.output.fit_field = f.parse::<FitField>()?;
    }
    if let Some(m) = &args.fit_method {
        cfg.output.fit_method = m.parse::<FitMethod>()?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let cfg = match resolve(&args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if args.print_config {
        match cfg.to_toml_string() {
            Ok(s) => {
                print!("{s}");
                return ExitCode::SUCCESS;
            }
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        }
    }

    let out = match run_simulation(&cfg) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(path) = &cfg.output.path {
        if let Err(e) = out.write_csv(path) {
            eprintln!("error: writing {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }

    let s = &out.summary;
    println!("case               {}", cfg.case.name());
    println!("propagator         {}", cfg.time.propagator);
    println!("steps              {} (dt = {})", s.steps, cfg.time.dt);
    println!("max energy error   {:.3e}", s.max_energy_error);
    if cfg.time.propagator == PropagatorId::Lie {
        println!("max modified error {:.3e}", s.max_modified_error);
    }
    println!("max gauss residual {:.3e}", s.max_gauss_residual);
    println!("max |P2 - P2_ref|  {:.3e}", s.max_momentum2_deviation);
    if let (Some(g), Some([a, b])) = (s.growth_rate, cfg.output.fit_window) {
        println!("growth rate ({}, [{a}, {b}]) {g:.5}", cfg.output.fit_field);
    }
    if let Some(why) = &s.fit_failure {
        println!("growth rate        unavailable: {why}");
    }
    println!("elapsed            {:.1?}", s.elapsed);
    ExitCode::SUCCESS
}
