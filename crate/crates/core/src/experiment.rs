//! Experiment harness: threshold sweeps, calibration, property checks and
//! brute-force reference solutions, with CSV output.
//!
//! A sweep runs every `(threshold, algorithm, trial)` cell of an
//! [`ExperimentConfig`] and emits one [`CsvRow`] per cell, in canonical order
//! regardless of which worker finished first.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithms::{
    brute_force_opt, fastsg_with, greedy_by_budget, greedy_cover, sgopt_with, Algorithm,
    BruteForce, FastSgOptions, Instance, RunRecord, Selection, SgoptOptions,
};
use crate::data::{build_dataset, gen_alphas, gen_er, Dataset, DatasetSpec, WeightDist};
use crate::error::{Error, Result};
use crate::objectives::{FnObjective, RevenueObjective, SumCoverageObjective};
use crate::oracle::{truncate, CountingOracle, Objective, ValueOracle};
use crate::rng::{derive_seed, RngStream};
use crate::verify::{self, Mode, Property, PropertyReport};

pub const CSV_HEADER: &str =
    "algorithm,dataset,n,k,T,epsilon,delta,trial,seed,f_value,support_size,queries,wall_ms,flags";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Thresholds {
    /// Explicit `T` values.
    Absolute(Vec<f64>),
    /// `T = fraction × (greedy value at reference_budget)`.
    Fractions {
        reference_budget: usize,
        values: Vec<f64>,
    },
}

impl Thresholds {
    fn len(&self) -> usize {
        match self {
            Thresholds::Absolute(v) => v.len(),
            Thresholds::Fractions { values, .. } => values.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectRule {
    #[default]
    Prose,
    Pseudocode,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunFlags {
    pub stop_at_cap: bool,
    pub select: SelectRule,
    /// Guess `v` used when `sgopt` runs on its own.
    pub sgopt_v: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub dataset: DatasetSpec,
    pub algorithms: Vec<Algorithm>,
    pub thresholds: Thresholds,
    #[serde(default = "default_param")]
    pub epsilon: f64,
    #[serde(default = "default_param")]
    pub delta: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub flags: RunFlags,
}

fn default_param() -> f64 {
    0.1
}

fn default_trials() -> usize {
    1
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.dataset.validate("dataset")?;
        if self.algorithms.is_empty() {
            return Err(Error::config("algorithms", "algorithms non-empty"));
        }
        if self.thresholds.len() == 0 {
            return Err(Error::config("thresholds", "thresholds non-empty"));
        }
        match &self.thresholds {
            Thresholds::Absolute(ts) => {
                if let Some(bad) = ts.iter().position(|&t| !(t > 0.0 && t.is_finite())) {
                    return Err(Error::config(format!("thresholds.absolute[{bad}]"), "must be positive"));
                }
            }
            Thresholds::Fractions { values, .. } => {
                if let Some(bad) = values.iter().position(|&t| !(t > 0.0 && t.is_finite())) {
                    return Err(Error::config(
                        format!("thresholds.fractions.values[{bad}]"),
                        "must be positive",
                    ));
                }
            }
        }
        if !(self.epsilon > 0.0 && self.epsilon < 0.5) {
            return Err(Error::config("epsilon", "must be in (0, 1/2)"));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::config("delta", "must be in (0, 1)"));
        }
        if self.trials < 1 {
            return Err(Error::config("trials", "must be >= 1"));
        }
        if self.algorithms.contains(&Algorithm::SgOpt) && self.flags.sgopt_v.is_none() {
            return Err(Error::config("flags.sgopt_v", "required when running sgopt"));
        }
        Ok(())
    }

    /// Seed of trial `trial`, shared by every threshold and algorithm.
    pub fn trial_seed(&self, trial: usize) -> u64 {
        derive_seed(self.seed, &format!("trial={trial}"))
    }
}

/// One CSV row; field order is the file's column order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CsvRow {
    pub algorithm: Algorithm,
    pub dataset: String,
    pub n: usize,
    pub k: usize,
    #[serde(rename = "T")]
    pub threshold: f64,
    pub epsilon: Option<f64>,
    pub delta: Option<f64>,
    pub trial: usize,
    pub seed: u64,
    pub f_value: f64,
    pub support_size: usize,
    pub queries: u64,
    pub wall_ms: f64,
    pub flags: String,
}

#[derive(Debug, Clone)]
pub struct SweepOutput {
    pub thresholds: Vec<f64>,
    pub rows: Vec<CsvRow>,
}

impl SweepOutput {
    /// True when some run missed its threshold; the CLI exits non-zero then.
    pub fn any_threshold_missed(&self) -> bool {
        self.rows.iter().any(|r| r.flags.contains("threshold_not_reached"))
    }

    pub fn write_csv(&self, out: impl Write) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in &self.rows {
            w.serialize(row)?;
        }
        w.flush().map_err(csv::Error::from)?;
        Ok(())
    }

    /// Median f / support / queries per (T, algorithm).
    pub fn summary(&self) -> String {
        let mut groups: BTreeMap<(usize, Algorithm), Vec<&CsvRow>> = BTreeMap::new();
        for row in &self.rows {
            let t_idx = self
                .thresholds
                .iter()
                .position(|&t| t == row.threshold)
                .unwrap_or(usize::MAX);
            groups.entry((t_idx, row.algorithm)).or_default().push(row);
        }
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:>12} {:>8} {:>12} {:>8} {:>12} {:>7}",
            "T", "alg", "median_f", "med_supp", "med_queries", "missed"
        );
        for ((_, alg), rows) in groups {
            let f = median(rows.iter().map(|r| r.f_value).collect());
            let s = median(rows.iter().map(|r| r.support_size as f64).collect());
            let q = median(rows.iter().map(|r| r.queries as f64).collect());
            let missed = rows.iter().filter(|r| r.flags.contains("threshold_not_reached")).count();
            let _ = writeln!(
                out,
                "{:>12.4} {:>8} {:>12.4} {:>8} {:>12} {:>7}",
                rows[0].threshold, alg, f, s, q, missed
            );
        }
        out
    }
}

pub fn median(mut values: Vec<f64>) -> f64 {
    if values.is_empty() {
        return f64::NAN;
    }
    values.sort_by(f64::total_cmp);
    let m = values.len() / 2;
    if values.len() % 2 == 1 {
        values[m]
    } else {
        (values[m - 1] + values[m]) / 2.0
    }
}

/// Resolves the configured thresholds to absolute values.
pub fn resolve_thresholds(thresholds: &Thresholds, oracle: &dyn ValueOracle) -> Vec<f64> {
    match thresholds {
        Thresholds::Absolute(ts) => ts.clone(),
        Thresholds::Fractions {
            reference_budget,
            values,
        } => {
            let reference = greedy_by_budget(oracle, &[*reference_budget])[0];
            values.iter().map(|f| f * reference).collect()
        }
    }
}

/// Runs the full `(T, algorithm, trial)` sweep.
pub fn run(config: &ExperimentConfig) -> Result<SweepOutput> {
    config.validate()?;
    let dataset = build_dataset(&config.dataset)?;
    run_on(config, &dataset)
}

/// Like [`run`], on an already built dataset.
pub fn run_on(config: &ExperimentConfig, dataset: &Dataset) -> Result<SweepOutput> {
    config.validate()?;
    let oracle = CountingOracle::new(dataset.objective.clone());
    let thresholds = resolve_thresholds(&config.thresholds, &oracle);
    if let Some(bad) = thresholds.iter().position(|&t| !(t > 0.0)) {
        return Err(Error::config(
            format!("thresholds[{bad}]"),
            "resolved threshold is not positive",
        ));
    }
    let mut cells = Vec::new();
    for (t_idx, &t) in thresholds.iter().enumerate() {
        for (a_idx, &alg) in config.algorithms.iter().enumerate() {
            for trial in 0..config.trials {
                cells.push((t_idx, a_idx, t, alg, trial));
            }
        }
    }
    let mut rows: Vec<((usize, usize, usize), CsvRow)> = cells
        .par_iter()
        .map(|&(t_idx, a_idx, t, alg, trial)| {
            let record = run_cell(config, &oracle, t, alg, trial)?;
            Ok(((t_idx, a_idx, trial), to_row(config, dataset, t, trial, &record)))
        })
        .collect::<Result<_>>()?;
    rows.sort_by_key(|(key, _)| *key);
    Ok(SweepOutput {
        thresholds,
        rows: rows.into_iter().map(|(_, r)| r).collect(),
    })
}

fn run_cell(
    config: &ExperimentConfig,
    oracle: &dyn ValueOracle,
    threshold: f64,
    alg: Algorithm,
    trial: usize,
) -> Result<RunRecord> {
    let inst = Instance::new(oracle, threshold)?;
    let seed = config.trial_seed(trial);
    let mut rng = RngStream::new(seed);
    let sgopt_opts = SgoptOptions {
        stop_at_cap: config.flags.stop_at_cap,
        ..Default::default()
    };
    let mut record = match alg {
        Algorithm::FastSg => {
            let opts = FastSgOptions {
                selection: match config.flags.select {
                    SelectRule::Prose => Selection::MinSupport,
                    SelectRule::Pseudocode => Selection::Pseudocode,
                },
                sgopt: sgopt_opts,
                parallel: false,
            };
            fastsg_with(&inst, config.epsilon, config.delta, &mut rng, &opts)?.record
        }
        Algorithm::SgOpt => {
            let v = config.flags.sgopt_v.expect("validated").min(inst.n());
            sgopt_with(&inst, v, config.epsilon, config.delta, &mut rng, &sgopt_opts)?.record
        }
        Algorithm::Greedy => greedy_cover(&inst)?,
    };
    record.seed = seed;
    Ok(record)
}

fn to_row(config: &ExperimentConfig, dataset: &Dataset, threshold: f64, trial: usize, r: &RunRecord) -> CsvRow {
    let mut flags = Vec::new();
    if !r.threshold_reached {
        flags.push("threshold_not_reached".to_string());
    }
    if r.algorithm != Algorithm::Greedy {
        if let Some(v) = r.params.v {
            flags.push(format!("v={v}"));
        }
        if config.flags.stop_at_cap {
            flags.push("stop_at_cap".into());
        }
    }
    if r.algorithm == Algorithm::FastSg && config.flags.select == SelectRule::Pseudocode {
        flags.push("select=pseudocode".into());
    }
    CsvRow {
        algorithm: r.algorithm,
        dataset: dataset.label.clone(),
        n: dataset.n(),
        k: config.dataset.k,
        threshold,
        epsilon: r.params.epsilon,
        delta: r.params.delta,
        trial,
        seed: r.seed,
        f_value: r.f_value,
        support_size: r.support_size,
        queries: r.queries,
        wall_ms: r.wall_ms,
        flags: flags.join(";"),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CalibrationRow {
    pub budget: usize,
    /// The budget actually used, `min(budget, n)`.
    pub used: usize,
    pub f_value: f64,
}

/// Untruncated greedy values at each budget, to pick meaningful absolute thresholds.
pub fn calibrate(oracle: &dyn ValueOracle, budgets: &[usize]) -> Vec<CalibrationRow> {
    let n = oracle.ground_size();
    greedy_by_budget(oracle, budgets)
        .into_iter()
        .zip(budgets)
        .map(|(f_value, &budget)| CalibrationRow {
            budget,
            used: budget.min(n),
            f_value,
        })
        .collect()
}

/// Built-in objectives selectable by name from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleChoice {
    /// Revenue on a random `G(n, 0.5)` graph with uniform weights, exponents in `[0.3, 0.9]`.
    Revenue,
    /// Random per-coordinate weighted coverage.
    Coverage,
    /// `f(x) = |supp(x)|`.
    Modular,
    /// `f(x) = |supp(x)|²`, which is not k-submodular.
    Broken,
}

impl OracleChoice {
    pub fn build(self, n: usize, k: usize, seed: u64) -> Result<Box<dyn Objective>> {
        Ok(match self {
            OracleChoice::Revenue => {
                let weights = WeightDist::Uniform { low: 0.0, high: 1.0 };
                let graph = gen_er(n, 0.5, weights, derive_seed(seed, "graph"))?;
                let alpha = gen_alphas(n, k, 0.3, 0.9, derive_seed(seed, "alpha"))?;
                Box::new(RevenueObjective::new(graph, alpha)?)
            }
            OracleChoice::Coverage => {
                let mut rng = RngStream::new(seed).child("coverage");
                Box::new(SumCoverageObjective::random(n, k, 2 * n, 0.3, &mut rng)?)
            }
            OracleChoice::Modular => Box::new(SumCoverageObjective::modular(n, k)?),
            OracleChoice::Broken => Box::new(FnObjective::support_squared(n, k)),
        })
    }
}

/// Runs every property checker on `oracle`, optionally truncated at `T/2`.
pub fn verify_all(
    oracle: &dyn ValueOracle,
    mode: Mode,
    seed: u64,
    truncate_at: Option<f64>,
) -> Result<Vec<PropertyReport>> {
    let truncated;
    let target: &dyn ValueOracle = match truncate_at {
        Some(t) => {
            truncated = truncate(oracle, t)?;
            &truncated
        }
        None => oracle,
    };
    let rng = RngStream::new(seed);
    Property::ALL
        .iter()
        .map(|&p| verify::check(p, target, mode, &mut rng.child(p.label())))
        .collect()
}

/// Brute-force optimum for `T` with the default size guard.
pub fn brute(oracle: &dyn ValueOracle, threshold: f64, limit_n: usize) -> Result<BruteForce> {
    brute_force_opt(&Instance::new(oracle, threshold)?, limit_n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        ExperimentConfig::from_json(
            r#"{
                "dataset": {"source": {"kind": "er", "n": 100, "p": 0.05}, "k": 3, "seed": 1},
                "algorithms": ["fastsg", "greedy"],
                "thresholds": {"absolute": [10, 20]},
                "epsilon": 0.1, "delta": 0.1, "seed": 42, "trials": 3
            }"#,
        )
        .unwrap()
    }

    #[test]
    fn sweep_has_cartesian_rows() {
        let out = run(&small_config()).unwrap();
        assert_eq!(out.rows.len(), 12);
        let mut buf = Vec::new();
        out.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().next().unwrap(), CSV_HEADER);
        assert_eq!(text.lines().count(), 13);
    }

    #[test]
    fn empty_thresholds_rejected() {
        let mut cfg = small_config();
        cfg.thresholds = Thresholds::Absolute(vec![]);
        match cfg.validate() {
            Err(Error::Config { field, message }) => {
                assert_eq!(field, "thresholds");
                assert_eq!(message, "thresholds non-empty");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn other_validation_paths() {
        let mut cfg = small_config();
        cfg.epsilon = 0.5;
        assert!(matches!(cfg.validate(), Err(Error::Config { field, .. }) if field == "epsilon"));
        let mut cfg = small_config();
        cfg.trials = 0;
        assert!(matches!(cfg.validate(), Err(Error::Config { field, .. }) if field == "trials"));
        let mut cfg = small_config();
        cfg.algorithms.push(Algorithm::SgOpt);
        assert!(matches!(cfg.validate(), Err(Error::Config { field, .. }) if field == "flags.sgopt_v"));
    }

    #[test]
    fn calibrate_modular() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(3, 2).unwrap());
        let rows = calibrate(&oracle, &[0, 1, 2, 3, 5]);
        let f: Vec<f64> = rows.iter().map(|r| r.f_value).collect();
        assert_eq!(f, vec![0.0, 1.0, 2.0, 3.0, 3.0]);
        assert_eq!(rows[4].used, 3);
    }

    #[test]
    fn brute_wrapper() {
        let oracle = CountingOracle::new(OracleChoice::Modular.build(2, 2, 0).unwrap());
        assert_eq!(brute(&oracle, 2.0, 10).unwrap().opt(), Some(2));
        assert_eq!(brute(&oracle, 0.0, 10).unwrap().opt(), Some(0));
        let big = CountingOracle::new(OracleChoice::Modular.build(30, 2, 0).unwrap());
        assert!(matches!(brute(&big, 1.0, 10), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn median_even_and_odd() {
        assert_eq!(median(vec![3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(vec![4.0, 1.0, 2.0, 3.0]), 2.5);
    }
}
