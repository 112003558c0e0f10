use std::time::Instant;

use crate::error::Result;
use crate::kset::{ElementId, Position};
use crate::oracle::{truncate, ValueOracle};

use super::sgopt::best_pair;
use super::{reaches, Algorithm, Instance, Params, RunRecord};

pub fn greedy_cover(inst: &Instance<'_>) -> Result<RunRecord> {
    greedy_cover_traced(inst).map(|(record, _)| record)
}

/// Greedy on the truncated objective: insert the global best pair until the
/// value reaches `T/2`, no pair has positive gain, or every element is used.
/// Each step costs `k · |V \ supp(s)|` queries.
pub fn greedy_cover_traced(inst: &Instance<'_>) -> Result<(RunRecord, Vec<(ElementId, Position)>)> {
    let start = Instant::now();
    let truncated = truncate(inst.oracle, inst.threshold)?;
    let cap = truncated.cap();
    let mut cursor = truncated.cursor();
    let mut remaining: Vec<ElementId> = (0..inst.n()).collect();
    let mut picks = Vec::new();
    while !remaining.is_empty() && cursor.value() < cap {
        let (e, i, gain) = best_pair(&cursor, &remaining, inst.k());
        if !(gain > 0.0) {
            break;
        }
        cursor.insert(e, i)?;
        picks.push((e, i));
        let at = remaining.binary_search(&e).expect("chosen element was remaining");
        remaining.remove(at);
    }
    let truncated_value = cursor.value();
    let record = RunRecord {
        algorithm: Algorithm::Greedy,
        solution: cursor.solution().clone(),
        f_value: cursor.raw_value(),
        truncated_value,
        support_size: cursor.solution().support_size(),
        queries: cursor.queries(),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        seed: 0,
        params: Params::default(),
        threshold_reached: reaches(truncated_value, cap),
    };
    Ok((record, picks))
}

/// Untruncated greedy maximization: the value after `b` insertions for each
/// budget `b`. Budgets above `n` are clamped to `n`.
pub fn greedy_by_budget(oracle: &dyn ValueOracle, budgets: &[usize]) -> Vec<f64> {
    let n = oracle.ground_size();
    let k = oracle.positions();
    let horizon = budgets.iter().copied().max().unwrap_or(0).min(n);
    let mut cursor = oracle.cursor();
    let mut remaining: Vec<ElementId> = (0..n).collect();
    let mut values = vec![cursor.value()];
    for _ in 0..horizon {
        let (e, i, _) = best_pair(&cursor, &remaining, k);
        cursor.insert(e, i).expect("remaining element is unassigned");
        let at = remaining.binary_search(&e).expect("chosen element was remaining");
        remaining.remove(at);
        values.push(cursor.value());
    }
    budgets.iter().map(|&b| values[b.min(n)]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::objectives::{FnObjective, SumCoverageObjective};
    use crate::oracle::CountingOracle;

    #[test]
    fn modular_two_elements_hand_trace() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(2, 2).unwrap());
        let inst = Instance::new(&oracle, 2.0).unwrap();
        let (rec, picks) = greedy_cover_traced(&inst).unwrap();
        assert_eq!(picks, vec![(0, 1)]);
        assert_eq!(rec.support_size, 1);
        assert_eq!(rec.queries, 4);
        assert!(rec.threshold_reached);
    }

    #[test]
    fn infeasible_threshold_stops_on_exhaustion() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(3, 2).unwrap());
        let inst = Instance::new(&oracle, 10.0).unwrap();
        let rec = greedy_cover(&inst).unwrap();
        assert_eq!(rec.support_size, 3);
        assert!(!rec.threshold_reached);
    }

    #[test]
    fn stops_on_zero_gain() {
        // only element 0 has any value
        let oracle = CountingOracle::new(FnObjective::new(3, 2, |x| {
            if x.contains(0) {
                1.0
            } else {
                0.0
            }
        }));
        let inst = Instance::new(&oracle, 10.0).unwrap();
        let rec = greedy_cover(&inst).unwrap();
        assert_eq!(rec.support_size, 1);
        assert!(!rec.threshold_reached);
    }

    #[test]
    fn budgets_on_modular() {
        let oracle = CountingOracle::new(SumCoverageObjective::modular(3, 2).unwrap());
        assert_eq!(greedy_by_budget(&oracle, &[1, 2, 3]), vec![1.0, 2.0, 3.0]);
        assert_eq!(greedy_by_budget(&oracle, &[0]), vec![0.0]);
        assert_eq!(greedy_by_budget(&oracle, &[7]), vec![3.0]);
    }
}
