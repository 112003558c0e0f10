//! Solvers for k-submodular cover.
//!
//! Given a monotone k-submodular `f`, a threshold `T`, find a k-set with
//! `f(x) >= T` and small support. [`sgopt`] is stochastic greedy with a
//! guessed optimum size, [`fastsg`] sweeps a geometric grid of guesses,
//! [`greedy_cover`] is the classic greedy baseline and [`brute_force_opt`]
//! enumerates the whole lattice for small instances.

mod brute;
mod fastsg;
mod greedy;
mod sgopt;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::kset::KSet;
use crate::oracle::ValueOracle;

pub use brute::{brute_force_opt, BruteForce, DEFAULT_BRUTE_LIMIT};
pub use fastsg::{fastsg, fastsg_with, guess_grid, FastSgOptions, FastSgRun, Selection};
pub use greedy::{greedy_by_budget, greedy_cover, greedy_cover_traced};
pub use sgopt::{
    iteration_count, sample_size, sgopt, sgopt_with, IterationTrace, Sampling, SgoptOptions,
    SgoptRun,
};

/// A k-submodular cover instance `(V, f, T)`; `V` and `k` come from the oracle.
#[derive(Clone, Copy)]
pub struct Instance<'a> {
    pub oracle: &'a dyn ValueOracle,
    pub threshold: f64,
}

impl<'a> Instance<'a> {
    pub fn new(oracle: &'a dyn ValueOracle, threshold: f64) -> Result<Self> {
        if !(threshold >= 0.0) || !threshold.is_finite() {
            return Err(Error::param(
                "threshold",
                format!("must be finite and non-negative, got {threshold}"),
            ));
        }
        if oracle.ground_size() == 0 {
            return Err(Error::param("n", "ground set must be non-empty"));
        }
        Ok(Instance { oracle, threshold })
    }

    pub fn n(&self) -> usize {
        self.oracle.ground_size()
    }

    pub fn k(&self) -> usize {
        self.oracle.positions()
    }

    /// The truncation cap `T/2`.
    pub fn cap(&self) -> f64 {
        self.threshold / 2.0
    }
}

impl fmt::Debug for Instance<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Instance")
            .field("n", &self.n())
            .field("k", &self.k())
            .field("threshold", &self.threshold)
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    FastSg,
    SgOpt,
    Greedy,
}

impl Algorithm {
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::FastSg => "fastsg",
            Algorithm::SgOpt => "sgopt",
            Algorithm::Greedy => "greedy",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Params {
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub v: Option<usize>,
}

/// Outcome of one solver run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub solution: KSet,
    /// Untruncated `f(solution)`.
    pub f_value: f64,
    /// `min{f(solution), T/2}`, the value the solver optimizes.
    pub truncated_value: f64,
    pub support_size: usize,
    pub queries: u64,
    pub wall_ms: f64,
    pub seed: u64,
    pub params: Params,
    /// False when the solver's own feasibility target was missed.
    pub threshold_reached: bool,
}

pub(crate) fn check_unit_interval(name: &'static str, value: f64, upper: f64) -> Result<()> {
    if value > 0.0 && value < upper {
        Ok(())
    } else {
        Err(Error::param(name, format!("{value} not in (0, {upper})")))
    }
}

/// `a >= b` up to accumulated rounding in running sums of gains.
pub(crate) fn reaches(a: f64, b: f64) -> bool {
    a >= b - 1e-12 * b.abs().max(1.0)
}
