//! Build a revenue objective on a small graph and inspect values and gains.

use ksubcover::data::WeightedGraph;
use ksubcover::objectives::{AlphaMatrix, RevenueObjective};
use ksubcover::oracle::{CountingOracle, Objective, ValueOracle};
use ksubcover::KSet;

fn main() -> ksubcover::Result<()> {
    // triangle 0-1-2 plus a pendant node 3
    let graph = WeightedGraph::from_edges(4, [(0, 1, 1.0), (0, 2, 2.0), (1, 2, 1.0), (2, 3, 0.5)])?;
    let alpha = AlphaMatrix::new(4, 2, vec![0.5, 0.8, 0.5, 0.8, 0.3, 0.9, 0.6, 0.6])?;
    let objective = RevenueObjective::new(graph, alpha)?;

    let x = KSet::from_pairs(4, 2, &[(1, 1), (3, 2)])?;
    println!("f({x}) = {:.4}", objective.value(&x));

    let oracle = CountingOracle::new(objective);
    let mut cursor = oracle.cursor();
    for (e, i) in [(0, 1), (2, 2)] {
        println!("gain of ({e}:{i}) at {} = {:.4}", cursor.solution(), cursor.gain(e, i));
        cursor.insert(e, i)?;
    }
    println!("final {} with f = {:.4}", cursor.solution(), cursor.value());
    println!("queries charged: {}", oracle.query_count());
    Ok(())
}
