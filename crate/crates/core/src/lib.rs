//! Solvers and tooling for the k-submodular cover problem.
//!
//! Given a monotone k-submodular function `f` over k-sets of a ground set
//! `V` and a threshold `T`, find a k-set `x` with `f(x) >= T` whose support
//! is as small as possible.
//!
//! - [`kset`]: the k-set type and its lattice operations.
//! - [`oracle`]: query-counted evaluation, truncation at `T/2`.
//! - [`objectives`]: revenue, sum-of-coverage and closure-based objectives.
//! - [`algorithms`]: `sgopt`, `fastsg`, greedy and brute force.
//! - [`verify`]: empirical property checkers.
//! - [`data`]: Erdős–Rényi generation, edge-list ingestion, instance dumps.
//! - [`experiment`]: threshold sweeps with CSV output.
//!
//! ```
//! use ksubcover::algorithms::{fastsg, Instance};
//! use ksubcover::objectives::SumCoverageObjective;
//! use ksubcover::oracle::CountingOracle;
//! use ksubcover::rng::RngStream;
//!
//! let oracle = CountingOracle::new(SumCoverageObjective::modular(6, 2).unwrap());
//! let inst = Instance::new(&oracle, 4.0).unwrap();
//! let run = fastsg(&inst, 0.25, 0.25, &mut RngStream::new(7)).unwrap();
//! assert!(run.threshold_reached);
//! ```

pub mod algorithms;
pub mod data;
pub mod error;
pub mod experiment;
pub mod kset;
pub mod objectives;
pub mod oracle;
pub mod rng;
pub mod verify;

pub use error::{Error, Result};
pub use kset::KSet;
