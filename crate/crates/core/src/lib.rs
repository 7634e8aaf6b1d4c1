//! Geometric particle-in-cell solver for the 1d2v Vlasov-Maxwell system.
//!
//! Fields live in a discrete de Rham complex of periodic B-splines
//! ([`feec`]); particles are markers with positions and two velocity
//! components ([`particles`]). Time stepping is done either by composing the
//! exact flows of a Hamiltonian splitting ([`hamsplit`]) or with the classical
//! Boris-Yee scheme ([`borisyee`]).

pub mod borisyee;
pub mod config;
pub mod diagnostics;
pub mod error;
pub mod feec;
pub mod hamsplit;
pub mod linalg;
pub mod normal;
pub mod particles;
pub mod quadrature;
pub mod simulation;
pub mod sobol;
pub mod splines;

pub use config::SimConfig;
pub use error::{Error, Result};
pub use feec::{DeRhamComplex1d, FieldCoeffs, MassId, SpaceId};
pub use hamsplit::{HamiltonianSplitting, PropagatorId, SimState, SubFlow};
pub use particles::{InitialCase, ParticleSet};
pub use splines::SplineSpace;
pub use simulation::{run_simulation, RunOutput, RunSummary};
