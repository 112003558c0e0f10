//! Self-contained textual instance files.
//!
//! ```text
//! # ksubcover instance v1
//! n 4
//! k 2
//! seed 7
//! source er(n=4;p=0.5;w=unit;alpha=[0.3,0.9];seed=7)
//! weights unit                 | weights uniform <low> <high>
//! alpha_dist 0.3 0.9
//! labels 0 1 2 3
//! edges 2
//! 0 1 1
//! 2 3 1
//! alpha
//! 0.41 0.77
//! ...                          (n rows of k exponents)
//! ```
//!
//! Floats are written with Rust's shortest round-trip formatting, so reading
//! a dump reproduces the instance bit for bit.

use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::objectives::AlphaMatrix;

use super::{AlphaDist, WeightDist, WeightedGraph};

const MAGIC: &str = "# ksubcover instance v1";

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceDump {
    pub source: String,
    pub seed: u64,
    pub weights: WeightDist,
    pub alpha_dist: AlphaDist,
    pub graph: WeightedGraph,
    pub alpha: AlphaMatrix,
}

pub fn write_instance(dump: &InstanceDump, mut out: impl Write) -> std::io::Result<()> {
    let g = &dump.graph;
    writeln!(out, "{MAGIC}")?;
    writeln!(out, "n {}", g.n())?;
    writeln!(out, "k {}", dump.alpha.k())?;
    writeln!(out, "seed {}", dump.seed)?;
    writeln!(out, "source {}", dump.source)?;
    match dump.weights {
        WeightDist::Unit => writeln!(out, "weights unit")?,
        WeightDist::Uniform { low, high } => writeln!(out, "weights uniform {low} {high}")?,
    }
    writeln!(out, "alpha_dist {} {}", dump.alpha_dist.low, dump.alpha_dist.high)?;
    let labels: Vec<String> = g.labels().iter().map(u64::to_string).collect();
    writeln!(out, "labels {}", labels.join(" "))?;
    writeln!(out, "edges {}", g.edge_count())?;
    for (u, v, w) in g.edges() {
        writeln!(out, "{u} {v} {w}")?;
    }
    writeln!(out, "alpha")?;
    for u in 0..g.n() {
        let row: Vec<String> = dump.alpha.row(u).iter().map(f64::to_string).collect();
        writeln!(out, "{}", row.join(" "))?;
    }
    Ok(())
}

struct Lines<'p, R> {
    inner: std::iter::Enumerate<std::io::Lines<R>>,
    path: &'p Path,
    line: usize,
}

impl<R: BufRead> Lines<'_, R> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.to_path_buf(),
            line: self.line,
            message: message.into(),
        }
    }

    fn next_line(&mut self) -> Result<String> {
        match self.inner.next() {
            Some((idx, line)) => {
                self.line = idx + 1;
                line.map_err(|source| Error::Io {
                    path: self.path.to_path_buf(),
                    source,
                })
            }
            None => Err(self.err("unexpected end of file")),
        }
    }

    /// Next line, which must start with `key`; returns the rest.
    fn field(&mut self, key: &str) -> Result<String> {
        let line = self.next_line()?;
        match line.strip_prefix(key) {
            Some(rest) if rest.is_empty() || rest.starts_with(' ') => Ok(rest.trim_start().to_string()),
            _ => Err(self.err(format!("expected `{key}`"))),
        }
    }

    fn parse<T: std::str::FromStr>(&self, tok: &str) -> Result<T> {
        tok.parse().map_err(|_| self.err(format!("cannot parse `{tok}`")))
    }

    fn parse_all<T: std::str::FromStr>(&self, s: &str) -> Result<Vec<T>> {
        s.split_whitespace().map(|t| self.parse(t)).collect()
    }
}

pub fn read_instance(reader: impl BufRead, path: &Path) -> Result<InstanceDump> {
    let mut lines = Lines {
        inner: reader.lines().enumerate(),
        path,
        line: 0,
    };
    if lines.next_line()? != MAGIC {
        return Err(lines.err("missing instance header"));
    }
    let n: usize = {
        let s = lines.field("n")?;
        lines.parse(&s)?
    };
    let k: usize = {
        let s = lines.field("k")?;
        lines.parse(&s)?
    };
    let seed: u64 = {
        let s = lines.field("seed")?;
        lines.parse(&s)?
    };
    let source = lines.field("source")?;
    let weights = {
        let s = lines.field("weights")?;
        let toks: Vec<&str> = s.split_whitespace().collect();
        match toks.as_slice() {
            ["unit"] => WeightDist::Unit,
            ["uniform", low, high] => WeightDist::Uniform {
                low: lines.parse(low)?,
                high: lines.parse(high)?,
            },
            _ => return Err(lines.err("unknown weight distribution")),
        }
    };
    let alpha_dist = {
        let s = lines.field("alpha_dist")?;
        match lines.parse_all::<f64>(&s)?.as_slice() {
            [low, high] => AlphaDist { low: *low, high: *high },
            _ => return Err(lines.err("alpha_dist needs two values")),
        }
    };
    let labels: Vec<u64> = {
        let s = lines.field("labels")?;
        lines.parse_all(&s)?
    };
    let m: usize = {
        let s = lines.field("edges")?;
        lines.parse(&s)?
    };
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let line = lines.next_line()?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [u, v, w] => edges.push((lines.parse(u)?, lines.parse(v)?, lines.parse(w)?)),
            _ => return Err(lines.err("edge line needs `u v w`")),
        }
    }
    lines.field("alpha")?;
    let mut values = Vec::with_capacity(n * k);
    for _ in 0..n {
        let line = lines.next_line()?;
        let row: Vec<f64> = lines.parse_all(&line)?;
        if row.len() != k {
            return Err(lines.err(format!("alpha row needs {k} values")));
        }
        values.extend(row);
    }
    let graph = WeightedGraph::from_edges(n, edges)?.with_labels(labels)?;
    let alpha = AlphaMatrix::new(n, k, values)?;
    Ok(InstanceDump {
        source,
        seed,
        weights,
        alpha_dist,
        graph,
        alpha,
    })
}
