use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use ksubcover::algorithms::BruteForce;
use ksubcover::data::{build_dataset, write_instance, DatasetSpec};
use ksubcover::experiment::{self, ExperimentConfig, OracleChoice, SelectRule};
use ksubcover::oracle::{CountingOracle, Objective};
use ksubcover::verify::Mode;
use ksubcover::{Error, Result};

#[derive(Parser)]
#[command(name = "ksc", version, about = "k-submodular cover solvers and experiment harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a threshold sweep and write one CSV row per (T, algorithm, trial).
    Run(RunArgs),
    /// Report untruncated greedy values at the given budgets.
    Calibrate(CalibrateArgs),
    /// Check k-submodularity and monotonicity of a built-in objective.
    Verify(VerifyArgs),
    /// Exhaustive minimum-support solution for a small instance.
    Brute(BruteArgs),
    /// Build a dataset and write it as an instance file.
    GenData(GenDataArgs),
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    stop_at_cap: bool,
    #[arg(long, value_enum)]
    select: Option<Select>,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Select {
    Prose,
    Pseudocode,
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_delimiter = ',', required = true)]
    budgets: Vec<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Revenue,
    Coverage,
    Modular,
    Broken,
}

impl From<OracleArg> for OracleChoice {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::Revenue => OracleChoice::Revenue,
            OracleArg::Coverage => OracleChoice::Coverage,
            OracleArg::Modular => OracleChoice::Modular,
            OracleArg::Broken => OracleChoice::Broken,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Randomized,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    oracle: OracleArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    mode: ModeArg,
    /// Random cases per property in randomized mode.
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check `min(f, T/2)` instead of `f`.
    #[arg(long, value_name = "T")]
    truncate: Option<f64>,
    #[arg(long)]
    override_guard: bool,
    /// Print one JSON object per property instead of the table.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true).args(["config", "oracle"])))]
struct BruteArgs {
    /// Use the dataset of an experiment config.
    #[arg(long, conflicts_with = "oracle")]
    config: Option<PathBuf>,
    #[arg(long, value_enum, requires_all = ["n", "k"])]
    oracle: Option<OracleArg>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    threshold: f64,
    #[arg(long, default_value_t = ksubcover::algorithms::DEFAULT_BRUTE_LIMIT)]
    limit: usize,
}

#[derive(Args)]
struct GenDataArgs {
    /// Experiment config or bare dataset spec (JSON).
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run(args) => run(args),
        Command::Calibrate(args) => calibrate(args),
        Command::Verify(args) => verify(args),
        Command::Brute(args) => brute(args),
        Command::GenData(args) => gen_data(args),
    }
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_config(path: &Path) -> Result<ExperimentConfig> {
    ExperimentConfig::from_json(&read_to_string(path)?)
}

/// Accepts either a full experiment config or a bare dataset spec.
fn load_dataset_spec(path: &Path) -> Result<DatasetSpec> {
    let text = read_to_string(path)?;
    match ExperimentConfig::from_json(&text) {
        Ok(cfg) => Ok(cfg.dataset),
        Err(_) => Ok(serde_json::from_str(&text)?),
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path).map(BufWriter::new).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn run(args: RunArgs) -> Result<ExitCode> {
    let mut config = load_config(&args.config)?;
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(trials) = args.trials {
        config.trials = trials;
    }
    if args.stop_at_cap {
        config.flags.stop_at_cap = true;
    }
    if let Some(select) = args.select {
        config.flags.select = match select {
            Select::Prose => SelectRule::Prose,
            Select::Pseudocode => SelectRule::Pseudocode,
        };
    }
    let out = experiment::run(&config)?;
    match &args.out {
        Some(path) => {
            let mut w = create(path)?;
            out.write_csv(&mut w)?;
            w.flush().map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?;
            print!("{}", out.summary());
        }
        None => {
            out.write_csv(io::stdout().lock())?;
            eprint!("{}", out.summary());
        }
    }
    Ok(if out.any_threshold_missed() {
        eprintln!("some runs did not reach their threshold");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}

fn calibrate(args: CalibrateArgs) -> Result<ExitCode> {
    let config = load_config(&args.config)?;
    let dataset = build_dataset(&config.dataset)?;
    let oracle = CountingOracle::new(dataset.objective);
    println!("{:>8} {:>14}", "budget", "f");
    for row in experiment::calibrate(&oracle, &args.budgets) {
        if row.used != row.budget {
            eprintln!("warning: budget {} exceeds n, clamped to {}", row.budget, row.used);
        }
        println!("{:>8} {:>14.6}", row.used, row.f_value);
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> Result<ExitCode> {
    let objective = OracleChoice::from(args.oracle).build(args.n, args.k, args.seed)?;
    let oracle = CountingOracle::new(objective);
    let mode = match args.mode {
        ModeArg::Exhaustive => Mode::Exhaustive {
            override_guard: args.override_guard,
        },
        ModeArg::Randomized => Mode::randomized(args.samples),
    };
    let reports = match experiment::verify_all(&oracle, mode, args.seed, args.truncate) {
        Err(Error::SizeGuard(msg)) => {
            eprintln!("refusing: {msg}");
            eprintln!("use --mode randomized --samples N, or --override-guard");
            return Ok(ExitCode::from(2));
        }
        other => other?,
    };
    let mut failed = false;
    for report in &reports {
        failed |= !report.holds();
        if args.json {
            println!("{}", serde_json::to_string(report)?);
        } else {
            println!("{report}");
            for w in &report.violations {
                println!("  witness {}: lhs={} rhs={}", w.case, w.lhs, w.rhs);
            }
        }
    }
    Ok(if failed { ExitCode::FAILURE } else { ExitCode::SUCCESS })
}

fn brute(args: BruteArgs) -> Result<ExitCode> {
    let objective: Box<dyn Objective> = match (&args.config, args.oracle) {
        (Some(path), _) => Box::new(build_dataset(&load_dataset_spec(path)?)?.objective),
        (None, choice) => {
            let choice = choice.expect("clap requires --config or --oracle");
            OracleChoice::from(choice).build(args.n.unwrap_or(0), args.k.unwrap_or(0), args.seed)?
        }
    };
    let oracle = CountingOracle::new(objective);
    match experiment::brute(&oracle, args.threshold, args.limit) {
        Ok(BruteForce::Optimal { solution, opt, value }) => {
            println!("opt={opt}");
            println!("f={value} solution={solution}");
            Ok(ExitCode::SUCCESS)
        }
        Ok(BruteForce::Infeasible) => {
            println!("infeasible: no k-set reaches T");
            Ok(ExitCode::FAILURE)
        }
        Err(Error::SizeGuard(msg)) => {
            eprintln!("refusing: {msg}");
            Ok(ExitCode::from(2))
        }
        Err(e) => Err(e),
    }
}

fn gen_data(args: GenDataArgs) -> Result<ExitCode> {
    let dataset = build_dataset(&load_dataset_spec(&args.config)?)?;
    let dump = dataset.to_dump();
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| Error::Io { path, source }
    };
    match &args.out {
        Some(path) => {
            let mut w = create(path)?;
            write_instance(&dump, &mut w).map_err(io_err(path))?;
            w.flush().map_err(io_err(path))?;
            eprintln!("wrote {} (n={}, m={})", path.display(), dataset.n(), dump.graph.edge_count());
        }
        None => write_instance(&dump, io::stdout().lock()).map_err(io_err(Path::new("<stdout>")))?,
    }
    Ok(ExitCode::SUCCESS)
}
