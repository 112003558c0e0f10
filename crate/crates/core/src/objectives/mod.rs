//! Built-in objectives.

mod coverage;
mod function;
mod revenue;

pub use coverage::SumCoverageObjective;
pub use function::FnObjective;
pub use revenue::{AlphaMatrix, RevenueObjective};
