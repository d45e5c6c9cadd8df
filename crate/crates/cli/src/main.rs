mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cocircuit::verify::{Policy, DEFAULT_EXHAUSTIVE_CAP, DEFAULT_SAMPLES};
use cocircuit::Budget;

/// Check, generate and explore cocircuit systems of oriented matroids.
#[derive(Parser)]
#[command(name = "cocircuit", version)]
struct Cli {
    #[command(flatten)]
    options: GlobalOptions,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct GlobalOptions {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Largest number of covectors the closure may produce.
    #[arg(long, global = true, default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_covectors: u64,
    /// Wall-clock limit for the closure, in seconds.
    #[arg(long, global = true, value_name = "SECONDS", value_parser = positive_seconds)]
    time_limit: Option<Duration>,
    /// Condition (ii) enumerates every subset of cocircuits up to this many cocircuits.
    #[arg(long, global = true, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
    exhaustive_cap: usize,
    /// Random subsets sampled for condition (ii) above the exhaustive cap.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; output does not depend on this.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
}

fn positive_seconds(s: &str) -> Result<Duration, String> {
    let secs: f64 = s.parse().map_err(|_| format!("invalid number of seconds {s:?}"))?;
    if secs.is_finite() && secs > 0.0 {
        Ok(Duration::from_secs_f64(secs))
    } else {
        Err("the time limit must be positive".into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
pub struct InputArgs {
    /// Sign-system file; `-` reads standard input.
    input: Option<PathBuf>,
    /// Generate the input instead: u2n:N, cyclic:R:N, random:N:PAIRS, matrix:PATH or
    /// mutate:KIND:PATH.
    #[arg(long = "gen", value_name = "SPEC", conflicts_with = "input")]
    generator: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphChoice {
    Cocircuit,
    Tope,
}

#[derive(Subcommand)]
enum Command {
    /// Check the cocircuit axioms (C0)-(C3).
    Check(InputArgs),
    /// Emit the cocircuit graph or the tope graph.
    Graph {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = GraphChoice::Cocircuit)]
        kind: GraphChoice,
    },
    /// Compare the axioms with the two graph conditions.
    VerifyTheorem {
        #[command(flatten)]
        input: InputArgs,
        /// Include every evaluated hull in the report.
        #[arg(long)]
        hulls: bool,
    },
    /// Count the work of both recognition routes over a generated family, e.g. `u2n 4..12` or
    /// `cyclic 3 6..9`.
    Bench {
        family: String,
        #[arg(num_args = 1..)]
        args: Vec<String>,
        /// Add wall-clock columns; these differ between runs.
        #[arg(long)]
        timings: bool,
    },
    /// Print a generated system: `u2n N`, `cyclic R N`, `random N PAIRS`, `matrix PATH` or
    /// `mutate KIND PATH`.
    Gen { family: String, args: Vec<String> },
    /// Contract a set of elements.
    Contract {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated labels or indices.
        #[arg(long)]
        elements: String,
    },
    /// Close under composition and print the face lattice.
    Closure(InputArgs),
    /// Emit the crabbed hull of some cocircuits.
    Hull {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated sign strings.
        #[arg(long, value_delimiter = ',', required = true)]
        vertices: Vec<String>,
    },
}

/// Resolved options shared by every command.
pub struct RunConfig {
    pub format: Format,
    pub budget: Budget,
    pub policy: Policy,
    pub seed: u64,
}

pub enum CliError {
    Core(cocircuit::Error),
    Input(String),
}

impl From<cocircuit::Error> for CliError {
    fn from(e: cocircuit::Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Core(e) if e.is_resource() => 3,
            CliError::Core(e) if e.is_hypothesis() => 4,
            CliError::Core(cocircuit::Error::NotGraded) => 1,
            CliError::Core(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(cocircuit::Error::Hypothesis(v)) => format!("hypothesis (C0)-(C2) not met: {v}"),
            CliError::Core(e) => e.to_string(),
            CliError::Input(m) => m.clone(),
        }
    }
}

/// What a command prints on standard output and the exit status it ends with.
pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let o = &cli.options;
    if let Some(jobs) = o.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
            .expect("thread pool is configured once");
    }
    let config = RunConfig {
        format: o.format,
        budget: Budget {
            max_covectors: usize::try_from(o.max_covectors).unwrap_or(usize::MAX),
            time_limit: o.time_limit,
        },
        policy: Policy { exhaustive_cap: o.exhaustive_cap, samples: o.samples, seed: o.seed },
        seed: o.seed,
    };
    let result = match &cli.command {
        Command::Check(input) => commands::check(input, &config),
        Command::Graph { input, kind } => commands::graph(input, *kind, &config),
        Command::VerifyTheorem { input, hulls } => commands::verify_theorem(input, *hulls, &config),
        Command::Bench { family, args, timings } => commands::bench(family, args, *timings, &config),
        Command::Gen { family, args } => commands::gen(family, args, &config),
        Command::Contract { input, elements } => commands::contract(input, elements, &config),
        Command::Closure(input) => commands::closure(input, &config),
        Command::Hull { input, vertices } => commands::hull(input, vertices, &config),
    };
    match result {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(outcome.stdout.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
