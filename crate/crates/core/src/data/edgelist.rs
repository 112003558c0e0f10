//! SNAP-style edge lists: one `u v` pair per line, `#` comments.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use crate::error::{Error, Result};
use crate::rng::RngStream;

use super::{WeightDist, WeightedGraph};

/// Reads an edge list as an undirected simple graph.
///
/// Reversed and repeated pairs are merged, self-loops are dropped (their
/// endpoints still count as nodes). Labels are re-indexed densely in
/// ascending label order. Weights are drawn per edge in `(u, v)` order.
pub fn load_edge_list(path: impl AsRef<Path>, weights: WeightDist, seed: u64) -> Result<WeightedGraph> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_edge_list(BufReader::new(file), path, weights, seed)
}

pub fn parse_edge_list(
    reader: impl BufRead,
    path: &Path,
    weights: WeightDist,
    seed: u64,
) -> Result<WeightedGraph> {
    weights.validate()?;
    let mut nodes = BTreeSet::new();
    let mut pairs = BTreeSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut tokens = line.split_whitespace();
        let mut next = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                path: path.to_path_buf(),
                line: lineno,
                message: "expected two node ids".into(),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                path: path.to_path_buf(),
                line: lineno,
                message: format!("`{tok}` is not a non-negative integer node id"),
            })
        };
        let (u, v) = (next()?, next()?);
        nodes.insert(u);
        nodes.insert(v);
        if u != v {
            pairs.insert((u.min(v), u.max(v)));
        }
    }
    let ids: BTreeMap<u64, usize> = nodes.iter().enumerate().map(|(id, &l)| (l, id)).collect();
    let mut rng = RngStream::new(seed).child("edge-weights");
    let edges: Vec<(usize, usize, f64)> = pairs
        .iter()
        .map(|(u, v)| (ids[u], ids[v], weights.draw(&mut rng)))
        .collect();
    WeightedGraph::from_edges(ids.len(), edges)?.with_labels(nodes.into_iter().collect())
}
