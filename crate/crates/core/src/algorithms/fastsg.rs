use std::cmp::Ordering;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::sgopt::{sgopt_with, SgoptOptions};
use super::{check_unit_interval, reaches, Algorithm, Instance, Params, RunRecord};

/// Rule for picking the returned candidate among the per-guess runs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Selection {
    /// Smallest support among candidates with `f(s_v) >= (1−δ)T/2`
    /// (ties: larger f, then smaller v); if none qualifies, the largest f
    /// (ties: smaller support, then smaller v).
    #[default]
    MinSupport,
    /// Largest f among candidates with `|supp(s_v)| <= ⌈v ln(1/ε)⌉`
    /// (ties: smaller support, then smaller v), falling back to
    /// [`Selection::MinSupport`] when no candidate passes the size filter.
    Pseudocode,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FastSgOptions {
    pub selection: Selection,
    pub sgopt: SgoptOptions,
    /// Run the per-guess solvers on the rayon pool. Results are identical either way.
    pub parallel: bool,
}

#[derive(Debug, Clone)]
pub struct FastSgRun {
    pub record: RunRecord,
    /// One record per guess, in grid order.
    pub children: Vec<RunRecord>,
}

/// Guesses `v` for the optimum size: the distinct values `min(n, ⌈(1+ε)^i⌉)`
/// for `i = 0, 1, ...` while `(1+ε)^i <= n`, plus `n`, ascending.
pub fn guess_grid(n: usize, epsilon: f64) -> Result<Vec<usize>> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::param("epsilon", format!("{epsilon} must be positive")));
    }
    if n == 0 {
        return Err(Error::param("n", "ground set is empty"));
    }
    let mut grid = Vec::new();
    let mut i = 0;
    loop {
        let g = (1.0 + epsilon).powi(i);
        if g > n as f64 {
            break;
        }
        let v = (g.ceil() as usize).min(n);
        if grid.last() != Some(&v) {
            grid.push(v);
        }
        i += 1;
    }
    if grid.last() != Some(&n) {
        grid.push(n);
    }
    Ok(grid)
}

pub fn fastsg(inst: &Instance<'_>, epsilon: f64, delta: f64, rng: &mut RngStream) -> Result<RunRecord> {
    fastsg_with(inst, epsilon, delta, rng, &FastSgOptions::default()).map(|run| run.record)
}

/// Runs sgopt once per guess with a child stream labelled `v=<v>` and selects a candidate.
pub fn fastsg_with(
    inst: &Instance<'_>,
    epsilon: f64,
    delta: f64,
    rng: &mut RngStream,
    opts: &FastSgOptions,
) -> Result<FastSgRun> {
    check_unit_interval("epsilon", epsilon, 0.5)?;
    check_unit_interval("delta", delta, 1.0)?;
    let start = Instant::now();
    let grid = guess_grid(inst.n(), epsilon)?;
    let master = rng.clone();
    let run_one = |v: usize| -> Result<RunRecord> {
        let mut child = master.child(&format!("v={v}"));
        sgopt_with(inst, v, epsilon, delta, &mut child, &opts.sgopt).map(|r| r.record)
    };
    let children: Vec<RunRecord> = if opts.parallel {
        grid.par_iter().map(|&v| run_one(v)).collect::<Result<_>>()?
    } else {
        grid.iter().map(|&v| run_one(v)).collect::<Result<_>>()?
    };

    let target = (1.0 - delta) * inst.cap();
    let chosen = match opts.selection {
        Selection::MinSupport => select_min_support(&children, target),
        Selection::Pseudocode => select_pseudocode(&children, epsilon)
            .unwrap_or_else(|| select_min_support(&children, target)),
    };
    let best = &children[chosen];
    let record = RunRecord {
        algorithm: Algorithm::FastSg,
        solution: best.solution.clone(),
        f_value: best.f_value,
        truncated_value: best.truncated_value,
        support_size: best.support_size,
        queries: children.iter().map(|c| c.queries).sum(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: rng.seed(),
        params: Params {
            epsilon: Some(epsilon),
            delta: Some(delta),
            v: best.params.v,
        },
        threshold_reached: reaches(best.truncated_value, target),
    };
    Ok(FastSgRun { record, children })
}

fn guess(r: &RunRecord) -> usize {
    r.params.v.unwrap_or(usize::MAX)
}

fn by_value_desc(a: &RunRecord, b: &RunRecord) -> Ordering {
    b.truncated_value.total_cmp(&a.truncated_value)
}

fn select_min_support(children: &[RunRecord], target: f64) -> usize {
    let feasible = children
        .iter()
        .enumerate()
        .filter(|(_, c)| reaches(c.truncated_value, target))
        .min_by(|(_, a), (_, b)| {
            a.support_size
                .cmp(&b.support_size)
                .then_with(|| by_value_desc(a, b))
                .then_with(|| guess(a).cmp(&guess(b)))
        });
    match feasible {
        Some((idx, _)) => idx,
        None => best_value(children.iter().enumerate()).expect("grid is never empty"),
    }
}

fn select_pseudocode(children: &[RunRecord], epsilon: f64) -> Option<usize> {
    let ln = (1.0 / epsilon).ln();
    best_value(
        children
            .iter()
            .enumerate()
            .filter(|(_, c)| c.support_size as f64 <= (guess(c) as f64 * ln).ceil()),
    )
}

fn best_value<'a>(candidates: impl Iterator<Item = (usize, &'a RunRecord)>) -> Option<usize> {
    candidates
        .min_by(|(_, a), (_, b)| {
            by_value_desc(a, b)
                .then_with(|| a.support_size.cmp(&b.support_size))
                .then_with(|| guess(a).cmp(&guess(b)))
        })
        .map(|(idx, _)| idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::SumCoverageObjective;
    use crate::oracle::{CountingOracle, ValueOracle};

    #[test]
    fn grid_examples() {
        assert_eq!(guess_grid(10, 0.5).unwrap(), vec![1, 2, 3, 4, 6, 8, 10]);
        assert_eq!(guess_grid(1, 0.1).unwrap(), vec![1]);
        assert!(guess_grid(10, 0.0).is_err());
        assert!(guess_grid(0, 0.1).is_err());
    }

    #[test]
    fn singleton_ground_set_runs_once() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(1, 2).unwrap());
        let inst = Instance::new(&oracle, 2.0).unwrap();
        let run = fastsg_with(&inst, 0.1, 0.1, &mut RngStream::new(3), &Default::default()).unwrap();
        assert_eq!(run.children.len(), 1);
        assert_eq!(run.record.support_size, 1);
    }

    #[test]
    fn total_queries_are_sum_of_children() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(12, 3).unwrap());
        let inst = Instance::new(&oracle, 8.0).unwrap();
        let run = fastsg_with(&inst, 0.25, 0.25, &mut RngStream::new(9), &Default::default()).unwrap();
        let sum: u64 = run.children.iter().map(|c| c.queries).sum();
        assert_eq!(run.record.queries, sum);
        assert_eq!(oracle.query_count(), sum);
    }

    #[test]
    fn parallel_matches_sequential() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(30, 2).unwrap());
        let inst = Instance::new(&oracle, 12.0).unwrap();
        let seq = fastsg_with(&inst, 0.2, 0.2, &mut RngStream::new(4), &Default::default()).unwrap();
        let par_opts = FastSgOptions {
            parallel: true,
            ..Default::default()
        };
        let par = fastsg_with(&inst, 0.2, 0.2, &mut RngStream::new(4), &par_opts).unwrap();
        assert_eq!(seq.record.solution, par.record.solution);
        assert_eq!(seq.record.queries, par.record.queries);
    }

    #[test]
    fn infeasible_threshold_is_flagged_not_fatal() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(4, 2).unwrap());
        let inst = Instance::new(&oracle, 100.0).unwrap();
        let run = fastsg(&inst, 0.25, 0.25, &mut RngStream::new(1)).unwrap();
        assert!(!run.threshold_reached);
        assert_eq!(run.f_value, 4.0);
    }
}
