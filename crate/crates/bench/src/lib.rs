//! Shared fixtures for the criterion benchmarks.

use opsom_core::{make_suite, ObjectiveSpec, OptimizerConfig};

/// The emulated suite at `dimension` with suite seed 0.
pub fn suite(dimension: usize) -> Vec<ObjectiveSpec> {
    make_suite(0, dimension).expect("suite dimension is at least 2")
}

/// Default optimizer settings with a fixed budget so a bench iteration stays short.
pub fn short_run(budget: u64) -> OptimizerConfig {
    OptimizerConfig {
        budget: Some(budget),
        seed: 1,
        ..OptimizerConfig::default()
    }
}
