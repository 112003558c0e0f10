//! Instance construction: graphs, exponents and the revenue objective built on them.

mod dataset;
mod dump;
mod edgelist;
mod generate;
mod graph;

pub use dataset::{build_dataset, AlphaDist, Dataset, DatasetSpec, Source};
pub use dump::{read_instance, write_instance, InstanceDump};
pub use edgelist::{load_edge_list, parse_edge_list};
pub use generate::{gen_alphas, gen_er, WeightDist};
pub use graph::WeightedGraph;
