//! Generate, load and round-trip datasets.

use std::io::BufReader;
use std::path::Path;

use ksubcover::data::{build_dataset, parse_edge_list, read_instance, write_instance, DatasetSpec, WeightDist};

fn main() -> ksubcover::Result<()> {
    let dataset = build_dataset(&DatasetSpec::er(200, 0.03, 4, 42))?;
    let graph = dataset.objective.graph();
    println!("{}: {} nodes, {} edges", dataset.label, graph.n(), graph.edge_count());

    let mut buf = Vec::new();
    write_instance(&dataset.to_dump(), &mut buf).expect("write to memory");
    let back = read_instance(BufReader::new(buf.as_slice()), Path::new("memory"))?;
    println!("dump is {} bytes, round trip exact: {}", buf.len(), back == dataset.to_dump());

    let text = "# a tiny network\n10 20\n20 30\n30 10\n30 40 7\n40 40\n";
    let g = parse_edge_list(text.as_bytes(), Path::new("tiny.txt"), WeightDist::Unit, 0)?;
    println!("edge list: {} nodes {} edges, labels {:?}", g.n(), g.edge_count(), g.labels());
    for (u, v, w) in g.edges() {
        println!("  {} - {} ({w})", g.label(u), g.label(v));
    }
    Ok(())
}
