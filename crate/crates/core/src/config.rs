//! Run configuration: TOML layout, presets for the benchmark cases and
//! validation.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hamsplit::{PropagatorId, DEFAULT_LIE_ALPHA};
use crate::particles::InitialCase;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimConfig {
    pub case: InitialCase,
    pub grid: GridConfig,
    pub time: TimeConfig,
    pub particles: ParticleConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// Degree `p` of the V0 splines; V1 uses `p - 1`.
    pub degree: usize,
    pub cells: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub propagator: PropagatorId,
    pub dt: f64,
    pub t_end: f64,
    /// Parameter of `order2_4lie`.
    #[serde(default = "default_alpha")]
    pub lie_alpha: f64,
}

fn default_alpha() -> f64 {
    DEFAULT_LIE_ALPHA
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParticleConfig {
    pub count: usize,
    #[serde(default = "yes")]
    pub antithetic: bool,
    /// Leading Sobol points to drop; the first point of the sequence is the
    /// origin.
    #[serde(default = "one")]
    pub sobol_skip: u64,
}

fn yes() -> bool {
    true
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default)]
    pub path: Option<PathBuf>,
    /// Write a diagnostics row every `stride` steps (and always the last).
    #[serde(default = "one_usize")]
    pub stride: usize,
    #[serde(default)]
    pub fit_window: Option<[f64; 2]>,
    #[serde(default)]
    pub fit_field: FitField,
    #[serde(default)]
    pub fit_method: FitMethod,
}

fn one_usize() -> usize {
    1
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            path: None,
            stride: 1,
            fit_window: None,
            fit_field: FitField::default(),
            fit_method: FitMethod::default(),
        }
    }
}

/// Field energy used for growth-rate fits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitField {
    E1,
    E2,
    #[default]
    B,
}

impl FromStr for FitField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e1" => Ok(FitField::E1),
            "e2" => Ok(FitField::E2),
            "b" => Ok(FitField::B),
            _ => Err(Error::Unknown {
                kind: "fit field",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for FitField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitField::E1 => "e1",
            FitField::E2 => "e2",
            FitField::B => "b",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FitMethod {
    /// Least squares on every sample in the window.
    #[default]
    LeastSquares,
    /// Least squares on the local maxima in the window.
    LocalMaxima,
}

impl FromStr for FitMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "least_squares" => Ok(FitMethod::LeastSquares),
            "local_maxima" => Ok(FitMethod::LocalMaxima),
            _ => Err(Error::Unknown {
                kind: "fit method",
                name: s.to_string(),
            }),
        }
    }
}

impl SimConfig {
    /// Built-in setup of a benchmark case by name.
    pub fn preset(name: &str) -> Result<Self> {
        let case = InitialCase::from_name(name)?;
        Ok(match case {
            InitialCase::Weibel { .. } => Self::weibel(),
            InitialCase::StreamingWeibel { .. } => Self::streaming_weibel(),
            InitialCase::Landau { .. } => Self::landau(),
        })
    }

    /// Weibel instability: cubic splines on 32 cells, 100k particles,
    /// Strang with `dt = 0.05` to `t = 500`.
    pub fn weibel() -> Self {
        Self {
            case: InitialCase::weibel(),
            grid: GridConfig { degree: 3, cells: 32 },
            time: TimeConfig {
                propagator: PropagatorId::Strang,
                dt: 0.05,
                t_end: 500.0,
                lie_alpha: DEFAULT_LIE_ALPHA,
            },
            particles: ParticleConfig {
                count: 100_000,
                antithetic: true,
                sobol_skip: 1,
            },
            output: OutputConfig {
                fit_window: Some([50.0, 200.0]),
                fit_field: FitField::B,
                ..OutputConfig::default()
            },
        }
    }

    /// Streaming Weibel at reduced resolution: 128 cells, 200k particles,
    /// `dt = 0.01` to `t = 150`.
    pub fn streaming_weibel() -> Self {
        Self {
            case: InitialCase::streaming_weibel(),
            grid: GridConfig { degree: 3, cells: 128 },
            time: TimeConfig {
                propagator: PropagatorId::Strang,
                dt: 0.01,
                t_end: 150.0,
                lie_alpha: DEFAULT_LIE_ALPHA,
            },
            particles: ParticleConfig {
                count: 200_000,
                antithetic: true,
                sobol_skip: 1,
            },
            output: OutputConfig {
                stride: 10,
                fit_window: Some([20.0, 50.0]),
                fit_field: FitField::E2,
                ..OutputConfig::default()
            },
        }
    }

    /// Strong Landau damping: 32 cells, 100k particles, `dt = 0.05`.
    pub fn landau() -> Self {
        Self {
            case: InitialCase::landau(),
            grid: GridConfig { degree: 3, cells: 32 },
            time: TimeConfig {
                propagator: PropagatorId::Strang,
                dt: 0.05,
                t_end: 50.0,
                lie_alpha: DEFAULT_LIE_ALPHA,
            },
            particles: ParticleConfig {
                count: 100_000,
                antithetic: true,
                sobol_skip: 1,
            },
            output: OutputConfig {
                fit_window: Some([0.0, 12.0]),
                fit_field: FitField::E1,
                fit_method: FitMethod::LocalMaxima,
                ..OutputConfig::default()
            },
        }
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    /// Number of steps, `round(t_end / dt)`.
    pub fn steps(&self) -> usize {
        (self.time.t_end / self.time.dt).round() as usize
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.time.dt > 0.0 && self.time.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.time.dt));
        }
        if !(self.time.t_end >= 0.0 && self.time.t_end.is_finite()) {
            return bad(format!("t_end must be nonnegative, got {}", self.time.t_end));
        }
        if self.particles.count == 0 {
            return bad("at least one particle is required".into());
        }
        if self.grid.degree < 2 {
            return bad(format!("spline degree must be at least 2, got {}", self.grid.degree));
        }
        if self.grid.cells <= self.grid.degree {
            return bad(format!(
                "{} cells are too few for degree {}",
                self.grid.cells, self.grid.degree
            ));
        }
        if self.output.stride == 0 {
            return bad("stride must be at least 1".into());
        }
        if let Some([a, b]) = self.output.fit_window {
            if !(a < b) {
                return bad(format!("fit window [{a}, {b}] is empty"));
            }
        }
        Ok(())
    }
}
