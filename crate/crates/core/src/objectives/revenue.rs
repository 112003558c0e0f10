//! Extended product revenue on a weighted social graph.
//!
//! For a k-set `s = (S_1, ..., S_k)`:
//!
//! ```text
//! f(s) = Σ_{u ∈ V} Σ_{i=1..k} ( Σ_{v ∈ S_i} w_uv )^{α_{u,i}}
//! ```
//!
//! with `0^α = 0`, so the empty k-set has value 0. Each `α_{u,i} ∈ (0, 1)` is
//! the sensitivity of customer `u` to product `i`. The function is monotone
//! and k-submodular.

use std::sync::Arc;

use crate::data::WeightedGraph;
use crate::error::{Error, Result};
use crate::kset::{ElementId, KSet, Position};
use crate::oracle::{GainTracker, Objective};

/// Row-major `n × k` matrix of exponents `α_{u,i}`, addressed with `i ∈ 1..=k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaMatrix {
    n: usize,
    k: usize,
    values: Vec<f64>,
}

impl AlphaMatrix {
    pub fn new(n: usize, k: usize, values: Vec<f64>) -> Result<Self> {
        if values.len() != n * k {
            return Err(Error::param(
                "alpha",
                format!("expected {} entries, got {}", n * k, values.len()),
            ));
        }
        if let Some(bad) = values.iter().find(|&&a| !(a > 0.0 && a < 1.0)) {
            return Err(Error::param("alpha", format!("{bad} not in (0, 1)")));
        }
        Ok(AlphaMatrix { n, k, values })
    }

    pub fn constant(n: usize, k: usize, alpha: f64) -> Result<Self> {
        AlphaMatrix::new(n, k, vec![alpha; n * k])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, u: ElementId, i: Position) -> f64 {
        self.values[u * self.k + (i - 1)]
    }

    pub fn row(&self, u: ElementId) -> &[f64] {
        &self.values[u * self.k..(u + 1) * self.k]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

#[derive(Debug, Clone)]
pub struct RevenueObjective {
    graph: Arc<WeightedGraph>,
    alpha: AlphaMatrix,
}

impl RevenueObjective {
    pub fn new(graph: impl Into<Arc<WeightedGraph>>, alpha: AlphaMatrix) -> Result<Self> {
        let graph = graph.into();
        if alpha.n() != graph.n() {
            return Err(Error::param(
                "alpha",
                format!("{} rows for a graph with {} nodes", alpha.n(), graph.n()),
            ));
        }
        if alpha.k() < 2 {
            return Err(Error::param("k", format!("need k >= 2, got {}", alpha.k())));
        }
        Ok(RevenueObjective { graph, alpha })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn alpha(&self) -> &AlphaMatrix {
        &self.alpha
    }

    /// Per-(customer, product) in-weight sums `Σ_{v ∈ S_i} w_uv`.
    fn accumulate(&self, x: &KSet) -> Vec<f64> {
        let k = self.alpha.k();
        let mut acc = vec![0.0; self.graph.n() * k];
        for (v, i) in x.pairs() {
            for &(u, w) in self.graph.neighbors(v) {
                acc[u * k + i - 1] += w;
            }
        }
        acc
    }

    fn total(&self, acc: &[f64]) -> f64 {
        acc.iter()
            .zip(self.alpha.as_slice())
            .map(|(&s, &a)| power(s, a))
            .sum()
    }
}

fn power(sum: f64, alpha: f64) -> f64 {
    if sum > 0.0 {
        sum.powf(alpha)
    } else {
        0.0
    }
}

impl Objective for RevenueObjective {
    fn ground_size(&self) -> usize {
        self.graph.n()
    }

    fn positions(&self) -> usize {
        self.alpha.k()
    }

    fn value(&self, x: &KSet) -> f64 {
        self.total(&self.accumulate(x))
    }

    fn tracker(&self) -> Box<dyn GainTracker + '_> {
        let solution = KSet::empty(self.graph.n(), self.alpha.k()).expect("validated shape");
        Box::new(RevenueTracker {
            objective: self,
            acc: vec![0.0; self.graph.n() * self.alpha.k()],
            solution,
            value: 0.0,
        })
    }
}

/// Keeps the in-weight sums of the current solution so a gain only touches
/// the neighbours of the candidate element.
struct RevenueTracker<'a> {
    objective: &'a RevenueObjective,
    acc: Vec<f64>,
    solution: KSet,
    value: f64,
}

impl GainTracker for RevenueTracker<'_> {
    fn solution(&self) -> &KSet {
        &self.solution
    }

    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, e: ElementId, i: Position) -> f64 {
        let k = self.objective.alpha.k();
        self.objective
            .graph
            .neighbors(e)
            .iter()
            .map(|&(u, w)| {
                let idx = u * k + i - 1;
                let a = self.objective.alpha.values[idx];
                let s = self.acc[idx];
                power(s + w, a) - power(s, a)
            })
            .sum()
    }

    fn insert(&mut self, e: ElementId, i: Position) -> Result<()> {
        self.solution.check_insert(e, i)?;
        let g = self.gain(e, i);
        let k = self.objective.alpha.k();
        for &(u, w) in self.objective.graph.neighbors(e) {
            self.acc[u * k + i - 1] += w;
        }
        self.solution.insert_mut(e, i)?;
        self.value += g;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{marginal_gain, CountingOracle, ValueOracle};

    fn triangle() -> RevenueObjective {
        // V = {1, 2, 3} mapped to ids 0, 1, 2.
        let g = WeightedGraph::from_edges(3, [(0, 1, 1.0), (0, 2, 2.0), (1, 2, 1.0)]).unwrap();
        RevenueObjective::new(g, AlphaMatrix::constant(3, 2, 0.5).unwrap()).unwrap()
    }

    #[test]
    fn gain_of_element_two_on_triangle() {
        let oracle = CountingOracle::new(triangle());
        let empty = KSet::empty(3, 2).unwrap();
        let g = marginal_gain(&oracle, &empty, 0.0, 1, 1).unwrap();
        assert!((g - 2.0).abs() < 1e-12);
        assert_eq!(oracle.query_count(), 1);
    }

    #[test]
    fn two_node_hand_value() {
        let g = WeightedGraph::from_edges(2, [(0, 1, 4.0)]).unwrap();
        let f = RevenueObjective::new(g, AlphaMatrix::constant(2, 2, 0.5).unwrap()).unwrap();
        let x = KSet::from_pairs(2, 2, &[(1, 1)]).unwrap();
        assert!((f.value(&x) - 2.0).abs() < 1e-12);
        assert_eq!(f.value(&KSet::empty(2, 2).unwrap()), 0.0);
    }

    #[test]
    fn tracker_matches_naive_value() {
        let f = triangle();
        let mut t = f.tracker();
        for (e, i) in [(2, 2), (0, 1), (1, 2)] {
            let before = t.value();
            let g = t.gain(e, i);
            t.insert(e, i).unwrap();
            assert!((t.value() - before - g).abs() < 1e-12);
            assert!((t.value() - f.value(t.solution())).abs() < 1e-12);
        }
        assert!(t.insert(0, 2).is_err());
    }

    #[test]
    fn rejects_bad_alpha() {
        assert!(AlphaMatrix::new(1, 2, vec![0.5, 1.0]).is_err());
        assert!(AlphaMatrix::new(1, 2, vec![0.5]).is_err());
        let g = WeightedGraph::from_edges(3, []).unwrap();
        assert!(RevenueObjective::new(g, AlphaMatrix::constant(2, 2, 0.5).unwrap()).is_err());
    }
}
