//! Orthogonally initialized particle swarm optimization with archive-guided
//! learning and elite mutation (OPSO-m), a baseline PSO, an emulated
//! CEC-2017-style benchmark suite and a reproducible experiment harness.

pub mod archives;
pub mod error;
pub mod harness;
pub mod learning;
pub mod mutation;
pub mod objective;
pub mod optimizer;
pub mod ortho_init;
pub mod swarm;

pub use archives::{ArchiveEntry, ArchiveSet};
pub use error::{Error, Result};
pub use harness::{AlgorithmVariant, ExperimentConfig, SummaryStats};
pub use learning::{Scheme, SchemeChoice};
pub use mutation::MutationDraw;
pub use objective::{
    error_of, make_suite, BaseFunction, Category, EvaluationCounter, ObjectiveSpec, SearchBounds,
};
pub use optimizer::{Ablations, Algorithm, OptimizerConfig, RunRecord};
pub use ortho_init::OrthogonalArray;
pub use swarm::{Particle, PsoParams, SwarmState};
