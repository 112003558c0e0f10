//! A small threshold sweep driven by a JSON config, written as CSV to stdout.

use ksubcover::experiment::{run, ExperimentConfig};

const CONFIG: &str = r#"{
    "dataset": {"source": {"kind": "er", "n": 150, "p": 0.04}, "k": 3, "seed": 3},
    "algorithms": ["fastsg", "sgopt", "greedy"],
    "thresholds": {"fractions": {"reference_budget": 20, "values": [0.25, 0.5, 1.0]}},
    "epsilon": 0.1,
    "delta": 0.1,
    "seed": 7,
    "trials": 2,
    "flags": {"sgopt_v": 10, "stop_at_cap": true}
}"#;

fn main() -> ksubcover::Result<()> {
    let config = ExperimentConfig::from_json(CONFIG)?;
    let out = run(&config)?;
    out.write_csv(std::io::stdout().lock())?;
    eprint!("{}", out.summary());
    Ok(())
}
