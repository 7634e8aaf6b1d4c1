//! Run loop over a [`SimConfig`], diagnostics collection and CSV output.

use std::io::Write;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::borisyee::BorisYee;
use crate::config::{FitField, FitMethod, SimConfig};
use crate::diagnostics::{
    bracket_sum, energy_report, fit_growth_rate, fit_growth_rate_maxima, gauss_residual, momentum_report,
    DiagnosticsRecord, EnergyReport, MomentumReference,
};
use crate::error::Result;
use crate::feec::DeRhamComplex1d;
use crate::hamsplit::{HamiltonianSplitting, PropagatorId, SimState};
use crate::particles::sample_initial;

/// Diagnostics time series and summary of a finished run.
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub records: Vec<DiagnosticsRecord>,
    pub summary: RunSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub steps: usize,
    /// `max |H(t) - H(0)|` over the recorded rows.
    pub max_energy_error: f64,
    pub max_modified_error: f64,
    pub max_gauss_residual: f64,
    /// `max |P2 - P2_ref|`.
    pub max_momentum2_deviation: f64,
    pub growth_rate: Option<f64>,
    /// Why the configured fit produced no rate, e.g. too few samples.
    pub fit_failure: Option<String>,
    pub elapsed: Duration,
}

impl RunOutput {
    pub fn times(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.time).collect()
    }

    pub fn series(&self, field: FitField) -> Vec<f64> {
        self.records
            .iter()
            .map(|r| match field {
                FitField::E1 => r.e1_energy,
                FitField::E2 => r.e2_energy,
                FitField::B => r.b_energy,
            })
            .collect()
    }

    /// Growth rate of a field energy over `window`.
    pub fn fit(&self, field: FitField, window: (f64, f64), method: FitMethod) -> Result<f64> {
        let (t, v) = (self.times(), self.series(field));
        match method {
            FitMethod::LeastSquares => fit_growth_rate(&t, &v, window, true),
            FitMethod::LocalMaxima => fit_growth_rate_maxima(&t, &v, window, true),
        }
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        let file = std::fs::File::create(path)?;
        write_csv(std::io::BufWriter::new(file), &self.records)
    }
}

#[derive(Serialize)]
struct CsvRow {
    time: f64,
    kinetic: f64,
    e1_energy: f64,
    e2_energy: f64,
    b_energy: f64,
    total: f64,
    total_err: f64,
    modified_err: f64,
    gauss_residual: f64,
    p1: f64,
    p2: f64,
    p1_ref: f64,
    p2_ref: f64,
}

pub const CSV_COLUMNS: [&str; 13] = [
    "time",
    "kinetic",
    "e1_energy",
    "e2_energy",
    "b_energy",
    "total",
    "total_err",
    "modified_err",
    "gauss_residual",
    "p1",
    "p2",
    "p1_ref",
    "p2_ref",
];

/// Writes the records with the fixed column set; errors are relative to the
/// first row.
pub fn write_csv<W: Write>(out: W, records: &[DiagnosticsRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let first = records.first().copied().unwrap_or_default();
    if records.is_empty() {
        w.write_record(CSV_COLUMNS).map_err(csv_err)?;
    }
    for r in records {
        w.serialize(CsvRow {
            time: r.time,
            kinetic: r.kinetic_energy,
            e1_energy: r.e1_energy,
            e2_energy: r.e2_energy,
            b_energy: r.b_energy,
            total: r.total_energy,
            total_err: r.total_energy - first.total_energy,
            modified_err: r.modified_energy - first.modified_energy,
            gauss_residual: r.gauss_residual,
            p1: r.momentum_p1,
            p2: r.momentum_p2,
            p1_ref: r.momentum_ref_p1,
            p2_ref: r.momentum_ref_p2,
        })
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> crate::error::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => io.into(),
        other => crate::error::Error::Config(format!("csv: {other:?}")),
    }
}

fn record(
    state: &SimState,
    energy: EnergyReport,
    modified: f64,
    complex: &DeRhamComplex1d,
    reference: &MomentumReference,
) -> Result<DiagnosticsRecord> {
    let (p1, p2) = momentum_report(&state.particles, &state.fields, complex);
    Ok(DiagnosticsRecord {
        time: state.time,
        kinetic_energy: energy.kinetic,
        e1_energy: energy.e1,
        e2_energy: energy.e2,
        b_energy: energy.b,
        total_energy: energy.total(),
        modified_energy: modified,
        gauss_residual: gauss_residual(state, complex)?,
        momentum_p1: p1,
        momentum_p2: p2,
        momentum_ref_p1: reference.p1,
        momentum_ref_p2: reference.p2,
    })
}

/// Samples the initial state and integrates it to `t_end`, calling
/// `on_record` for each diagnostics row as it is produced.
///
/// For the splitting propagators the modified energy is the first-order one
/// of the Lie map; it is only meaningful for `lie`. For Boris-Yee the rows
/// after the first describe `t^n` with electric energies averaged over the
/// neighbouring half steps, and the Gauss residual is taken at `t^{n+1/2}`.
pub fn run_simulation_with(cfg: &SimConfig, mut on_record: impl FnMut(&DiagnosticsRecord)) -> Result<RunOutput> {
    cfg.validate()?;
    let start = Instant::now();
    let complex = DeRhamComplex1d::new(cfg.grid.degree, cfg.grid.cells, cfg.case.domain_length())?;
    let (particles, fields) = sample_initial(
        &cfg.case,
        cfg.particles.count,
        cfg.particles.antithetic,
        cfg.particles.sobol_skip,
        &complex,
    )?;
    let mut state = SimState {
        particles,
        fields,
        time: 0.0,
    };
    let dt = cfg.time.dt;
    let steps = cfg.steps();
    let stride = cfg.output.stride;
    let keep = |n: usize| n.is_multiple_of(stride) || n == steps;

    let (p1, p2) = momentum_report(&state.particles, &state.fields, &complex);
    let mut reference = MomentumReference::new(p1, p2);
    let mut records = Vec::with_capacity(steps / stride + 2);
    let mut push = |r: DiagnosticsRecord, records: &mut Vec<DiagnosticsRecord>| {
        on_record(&r);
        records.push(r);
    };

    let modified = |s: &SimState, e: &EnergyReport| e.total() - 0.5 * dt * bracket_sum(&s.particles, &s.fields, &complex);
    let e0 = energy_report(&state.particles, &state.fields, &complex);
    let first = record(&state, e0, modified(&state, &e0), &complex, &reference)?;
    push(first, &mut records);

    if cfg.time.propagator == PropagatorId::Boris {
        let mut by = BorisYee::new(&complex);
        let mut st = by.init(state, dt);
        for n in 1..=steps {
            let (d_old, e_old) = (st.d.clone(), st.e.clone());
            by.step(&mut st, dt);
            reference.update_parts(&d_old, &e_old, &st.d, &st.e, dt, &complex);
            if keep(n) {
                let view = st.half_step_view();
                let energy = st.energy(&complex);
                push(record(&view, energy, f64::NAN, &complex, &reference)?, &mut records);
            }
        }
    } else {
        let mut hs = HamiltonianSplitting::with_alpha(&complex, cfg.time.lie_alpha);
        for n in 1..=steps {
            let before = state.fields.clone();
            hs.compose(cfg.time.propagator, &mut state, dt)?;
            // accumulate time without drift over long runs
            state.time = n as f64 * dt;
            reference.update(&before, &state.fields, dt, &complex);
            if keep(n) {
                let energy = energy_report(&state.particles, &state.fields, &complex);
                let m = modified(&state, &energy);
                push(record(&state, energy, m, &complex, &reference)?, &mut records);
            }
        }
    }

    let e0 = records[0].total_energy;
    let m0 = records[0].modified_energy;
    let max = |f: &dyn Fn(&DiagnosticsRecord) -> f64| records.iter().map(f).fold(0.0, f64::max);
    let mut out = RunOutput {
        summary: RunSummary {
            steps,
            max_energy_error: max(&|r| (r.total_energy - e0).abs()),
            max_modified_error: max(&|r| (r.modified_energy - m0).abs()),
            max_gauss_residual: max(&|r| r.gauss_residual),
            max_momentum2_deviation: max(&|r| (r.momentum_p2 - r.momentum_ref_p2).abs()),
            growth_rate: None,
            fit_failure: None,
            elapsed: Duration::ZERO,
        },
        records,
    };
    if let Some([a, b]) = cfg.output.fit_window {
        // a run too short for its fit window is still a valid run
        match out.fit(cfg.output.fit_field, (a, b), cfg.output.fit_method) {
            Ok(g) => out.summary.growth_rate = Some(g),
            Err(e) => out.summary.fit_failure = Some(e.to_string()),
        }
    }
    out.summary.elapsed = start.elapsed();
    Ok(out)
}

pub fn run_simulation(cfg: &SimConfig) -> Result<RunOutput> {
    run_simulation_with(cfg, |_| {})
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(prop: PropagatorId) -> SimConfig {
        let mut cfg = SimConfig::weibel();
        cfg.grid.cells = 8;
        cfg.particles.count = 400;
        cfg.time.propagator = prop;
        cfg.time.t_end = 0.5;
        cfg.output.fit_window = None;
        cfg
    }

    #[test]
    fn zero_steps_give_one_row() {
        let mut cfg = tiny(PropagatorId::Strang);
        cfg.time.t_end = 0.0;
        let out = run_simulation(&cfg).unwrap();
        assert_eq!(out.records.len(), 1);
        let mut buf = Vec::new();
        write_csv(&mut buf, &out.records).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_COLUMNS.join(","));
    }

    #[test]
    fn stride_keeps_the_last_step() {
        let mut cfg = tiny(PropagatorId::Lie);
        cfg.output.stride = 3;
        let out = run_simulation(&cfg).unwrap();
        let t: Vec<f64> = out.times();
        assert_eq!(t.len(), 5);
        assert!((t[4] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn boris_runs() {
        let out = run_simulation(&tiny(PropagatorId::Boris)).unwrap();
        assert_eq!(out.records.len(), 11);
        assert!(out.summary.max_energy_error.is_finite());
    }

    #[test]
    fn csv_of_nothing_is_a_header() {
        let mut buf = Vec::new();
        write_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap().trim_end(), CSV_COLUMNS.join(","));
    }
}
