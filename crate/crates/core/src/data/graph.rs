use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kset::ElementId;

/// Undirected graph with symmetric non-negative edge weights.
///
/// Absent edges have weight 0. Self-loops are allowed and appear once in
/// their node's adjacency list.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<(ElementId, f64)>>,
    labels: Vec<u64>,
    edges: usize,
}

impl WeightedGraph {
    /// Builds a graph from `(u, v, w)` triples. A repeated pair keeps its last weight.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut merged = BTreeMap::new();
        for (u, v, w) in edges {
            if u >= n || v >= n {
                return Err(Error::ElementOutOfRange {
                    element: u.max(v),
                    n,
                });
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::param("weight", format!("edge ({u}, {v}) has weight {w}")));
            }
            merged.insert((u.min(v), u.max(v)), w);
        }
        let mut adjacency = vec![Vec::new(); n];
        for (&(u, v), &w) in &merged {
            adjacency[u].push((v, w));
            if u != v {
                adjacency[v].push((u, w));
            }
        }
        for list in &mut adjacency {
            list.sort_by_key(|&(v, _)| v);
        }
        Ok(WeightedGraph {
            adjacency,
            labels: (0..n as u64).collect(),
            edges: merged.len(),
        })
    }

    /// Replaces the id → original label map. `labels[id]` is the source label of node `id`.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::param(
                "labels",
                format!("expected {} labels, got {}", self.n(), labels.len()),
            ));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of undirected edges, self-loops included.
    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn neighbors(&self, u: ElementId) -> &[(ElementId, f64)] {
        &self.adjacency[u]
    }

    /// `w_uv`, 0 when there is no edge.
    pub fn weight(&self, u: ElementId, v: ElementId) -> f64 {
        let list = &self.adjacency[u];
        match list.binary_search_by_key(&v, |&(x, _)| x) {
            Ok(idx) => list[idx].1,
            Err(_) => 0.0,
        }
    }

    pub fn label(&self, u: ElementId) -> u64 {
        self.labels[u]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Each undirected edge once, as `(u, v, w)` with `u <= v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (ElementId, ElementId, f64)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .filter(move |&&(v, _)| v >= u)
                .map(move |&(v, w)| (u, v, w))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_lookup() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1.0), (2, 0, 2.0), (1, 1, 0.5)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.weight(0, 2), 2.0);
        assert_eq!(g.weight(2, 0), 2.0);
        assert_eq!(g.weight(1, 2), 0.0);
        assert_eq!(g.weight(1, 1), 0.5);
        assert_eq!(g.neighbors(1), &[(0, 1.0), (1, 0.5)]);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1, 1.0), (0, 2, 2.0), (1, 1, 0.5)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(WeightedGraph::from_edges(2, [(0, 2, 1.0)]).is_err());
        assert!(WeightedGraph::from_edges(2, [(0, 1, -1.0)]).is_err());
        assert!(WeightedGraph::from_edges(2, [(0, 1, f64::NAN)]).is_err());
    }
}
