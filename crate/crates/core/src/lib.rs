//! Tournament solutions and their margins of victory.

pub mod bits;
pub mod codec;
pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod flow;
pub mod generators;
pub mod mov;
pub mod rng;
pub mod solutions;
pub mod tournament;
pub mod verification;

pub use bits::{AltSet, MAX_ALTERNATIVES};
pub use error::{Error, Result};
pub use fixtures::{build_fixture, Fixture};
pub use flow::{mincut_bounded, CutMode, CutResult};
pub use generators::{generate, GeneratorConfig, Model};
pub use mov::{mov, mov_profile, MovProfile, MovResult, MovValue};
pub use solutions::{winners, SolutionId, WinnerSet};
pub use tournament::{AlternativeId, CondorcetStatus, Edge, ReversalSet, Tournament};
