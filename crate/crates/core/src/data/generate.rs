use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::objectives::AlphaMatrix;
use crate::rng::RngStream;

use super::WeightedGraph;

/// Distribution of edge weights.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum WeightDist {
    Unit,
    Uniform { low: f64, high: f64 },
}

impl WeightDist {
    pub fn validate(&self) -> Result<()> {
        match *self {
            WeightDist::Unit => Ok(()),
            WeightDist::Uniform { low, high } => {
                if low >= 0.0 && low <= high && high.is_finite() {
                    Ok(())
                } else {
                    Err(Error::param("weights", format!("need 0 <= low <= high, got [{low}, {high}]")))
                }
            }
        }
    }

    pub fn draw(&self, rng: &mut impl Rng) -> f64 {
        match *self {
            WeightDist::Unit => 1.0,
            WeightDist::Uniform { low, high } if low == high => low,
            WeightDist::Uniform { low, high } => rng.gen_range(low..=high),
        }
    }
}

impl fmt::Display for WeightDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightDist::Unit => f.write_str("unit"),
            WeightDist::Uniform { low, high } => write!(f, "uniform[{low},{high}]"),
        }
    }
}

/// Erdős–Rényi `G(n, p)`: every unordered pair `{u, v}`, `u ≠ v`, is an edge
/// independently with probability `p`. Weights are drawn as edges are accepted,
/// scanning pairs in `(u, v)` order.
pub fn gen_er(n: usize, p: f64, weights: WeightDist, seed: u64) -> Result<WeightedGraph> {
    if n < 1 {
        return Err(Error::param("n", "need at least one node"));
    }
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::param("p", format!("{p} not in (0, 1]")));
    }
    weights.validate()?;
    let mut rng = RngStream::new(seed).child("er");
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v, weights.draw(&mut rng)));
            }
        }
    }
    WeightedGraph::from_edges(n, edges)
}

/// `n × k` exponents drawn i.i.d. uniform on `[low, high]`, `0 < low < high < 1`.
pub fn gen_alphas(n: usize, k: usize, low: f64, high: f64, seed: u64) -> Result<AlphaMatrix> {
    if !(low > 0.0 && low < high && high < 1.0) {
        return Err(Error::param("alpha", format!("need 0 < low < high < 1, got [{low}, {high}]")));
    }
    let mut rng = RngStream::new(seed).child("alpha");
    let values = (0..n * k).map(|_| rng.gen_range(low..=high)).collect();
    AlphaMatrix::new(n, k, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_at_p_one() {
        let g = gen_er(5, 1.0, WeightDist::Unit, 1).unwrap();
        assert_eq!(g.edge_count(), 10);
    }

    #[test]
    fn tiny_p_gives_empty_graph() {
        let g = gen_er(5, 1e-12, WeightDist::Unit, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn rejects_bad_p() {
        assert!(gen_er(5, 0.0, WeightDist::Unit, 1).is_err());
        assert!(gen_er(5, 1.5, WeightDist::Unit, 1).is_err());
    }

    #[test]
    fn er_is_deterministic_in_seed() {
        let w = WeightDist::Uniform { low: 0.0, high: 1.0 };
        assert_eq!(gen_er(60, 0.1, w, 8).unwrap(), gen_er(60, 0.1, w, 8).unwrap());
        assert_ne!(gen_er(60, 0.1, w, 8).unwrap(), gen_er(60, 0.1, w, 9).unwrap());
    }

    #[test]
    fn alphas_in_range_and_deterministic() {
        let a = gen_alphas(50, 3, 0.3, 0.9, 4).unwrap();
        assert!(a.as_slice().iter().all(|&x| (0.3..=0.9).contains(&x)));
        assert_eq!(a, gen_alphas(50, 3, 0.3, 0.9, 4).unwrap());
        let narrow = gen_alphas(10, 2, 0.5 - 1e-9, 0.5, 4).unwrap();
        assert!(narrow.as_slice().iter().all(|&x| (x - 0.5).abs() < 1e-8));
        assert!(gen_alphas(10, 2, 0.0, 0.5, 4).is_err());
        assert!(gen_alphas(10, 2, 0.6, 0.5, 4).is_err());
        assert!(gen_alphas(10, 2, 0.2, 1.0, 4).is_err());
    }
}
