//! Shared inputs for the benchmarks.

use movlab::{generate, GeneratorConfig, Model, Tournament};

/// A fixed uniform-model tournament of size `n`.
pub fn uniform(n: usize, seed: u64) -> Tournament {
    generate(&GeneratorConfig::new(Model::Uniform, n, seed)).expect("valid generator config")
}
