use rand::Rng;

use crate::error::{Error, Result};
use crate::kset::{ElementId, KSet, Position};
use crate::oracle::{GainTracker, Objective};

/// One weighted coverage function per coordinate: `f(x) = Σ_i wc_i(X_i)`.
///
/// `wc_i(S)` is the total weight of universe items covered by the sets of
/// the elements in `S`. Each `wc_i` is monotone submodular, so the sum is
/// monotone k-submodular.
#[derive(Debug, Clone)]
pub struct SumCoverageObjective {
    n: usize,
    k: usize,
    /// `weights[i - 1][item]`
    weights: Vec<Vec<f64>>,
    /// `covers[i - 1][e]` lists the items element `e` covers in coordinate `i`.
    covers: Vec<Vec<Vec<usize>>>,
}

impl SumCoverageObjective {
    pub fn new(n: usize, weights: Vec<Vec<f64>>, covers: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let k = weights.len();
        if k < 2 {
            return Err(Error::param("k", format!("need k >= 2, got {k}")));
        }
        if covers.len() != k {
            return Err(Error::param("covers", "one cover family per coordinate"));
        }
        for (w, c) in weights.iter().zip(&covers) {
            if c.len() != n {
                return Err(Error::param("covers", format!("expected {n} sets per coordinate")));
            }
            if w.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
                return Err(Error::param("weights", "must be finite and non-negative"));
            }
            if c.iter().flatten().any(|&item| item >= w.len()) {
                return Err(Error::param("covers", "item index outside the universe"));
            }
        }
        Ok(SumCoverageObjective {
            n,
            k,
            weights,
            covers,
        })
    }

    /// Every element covers its own unit-weight item in every coordinate: `f(x) = Σ_i |X_i|`.
    pub fn modular(n: usize, k: usize) -> Result<Self> {
        let weights = vec![vec![1.0; n]; k];
        let covers = vec![(0..n).map(|e| vec![e]).collect(); k];
        SumCoverageObjective::new(n, weights, covers)
    }

    /// Random instance: each (element, item) incidence present with probability `density`,
    /// item weights uniform in `[0.5, 1.5)`.
    pub fn random(n: usize, k: usize, universe: usize, density: f64, rng: &mut impl Rng) -> Result<Self> {
        if !(density > 0.0 && density <= 1.0) {
            return Err(Error::param("density", format!("{density} not in (0, 1]")));
        }
        let mut weights = Vec::with_capacity(k);
        let mut covers = Vec::with_capacity(k);
        for _ in 0..k {
            weights.push((0..universe).map(|_| rng.gen_range(0.5..1.5)).collect());
            covers.push(
                (0..n)
                    .map(|_| (0..universe).filter(|_| rng.gen_bool(density)).collect())
                    .collect(),
            );
        }
        SumCoverageObjective::new(n, weights, covers)
    }
}

impl Objective for SumCoverageObjective {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn positions(&self) -> usize {
        self.k
    }

    fn value(&self, x: &KSet) -> f64 {
        let mut total = 0.0;
        for i in 1..=self.k {
            let w = &self.weights[i - 1];
            let mut covered = vec![false; w.len()];
            for e in x.coordinate(i) {
                for &item in &self.covers[i - 1][e] {
                    covered[item] = true;
                }
            }
            total += covered
                .iter()
                .zip(w)
                .filter(|(&c, _)| c)
                .map(|(_, &wt)| wt)
                .sum::<f64>();
        }
        total
    }

    fn tracker(&self) -> Box<dyn GainTracker + '_> {
        Box::new(CoverageTracker {
            objective: self,
            covered: self.weights.iter().map(|w| vec![false; w.len()]).collect(),
            solution: KSet::empty(self.n, self.k).expect("validated shape"),
            value: 0.0,
        })
    }
}

struct CoverageTracker<'a> {
    objective: &'a SumCoverageObjective,
    covered: Vec<Vec<bool>>,
    solution: KSet,
    value: f64,
}

impl GainTracker for CoverageTracker<'_> {
    fn solution(&self) -> &KSet {
        &self.solution
    }

    fn value(&self) -> f64 {
        self.value
    }

    fn gain(&self, e: ElementId, i: Position) -> f64 {
        let covered = &self.covered[i - 1];
        let w = &self.objective.weights[i - 1];
        let mut items: Vec<usize> = self.objective.covers[i - 1][e]
            .iter()
            .copied()
            .filter(|&item| !covered[item])
            .collect();
        items.sort_unstable();
        items.dedup();
        items.into_iter().map(|item| w[item]).sum()
    }

    fn insert(&mut self, e: ElementId, i: Position) -> Result<()> {
        self.solution.check_insert(e, i)?;
        let g = self.gain(e, i);
        for &item in &self.objective.covers[i - 1][e] {
            self.covered[i - 1][item] = true;
        }
        self.solution.insert_mut(e, i)?;
        self.value += g;
        Ok(())
    }
}
