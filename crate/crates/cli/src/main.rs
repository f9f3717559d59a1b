//! `forcing`: compute invariants, apply reductions, run lemma checks and
//! query Latin squares from the command line.

mod commands;
mod input;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "forcing", version, about = "Exact forcing numbers of small graphs")]
struct Cli {
    /// Input format; the default depends on what the command reads.
    #[arg(long, global = true, value_enum)]
    format: Option<InputFormat>,

    /// Output format; `reduce` defaults to the plain instance, everything else to JSON.
    #[arg(long, global = true, value_enum)]
    output_format: Option<OutputFormat>,

    /// Search node budget per query (per instance for `verify`).
    #[arg(long, global = true, env = "FORCING_BUDGET", default_value_t = 100_000_000,
          value_parser = clap::value_parser!(u64).range(10_000..))]
    budget: u64,

    /// Worker threads for `verify`.
    #[arg(long, global = true, env = "FORCING_WORKERS", default_value_t = 1,
          value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,

    /// Seed for the random samples drawn by `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Add wall-clock times to the output. Off by default so that output is
    /// reproducible byte for byte.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute an invariant of each input graph.
    Compute {
        #[arg(value_enum)]
        invariant: Invariant,
        file: Option<PathBuf>,
    },
    /// Apply a reduction and print the resulting instance.
    Reduce {
        #[arg(value_enum)]
        name: Reduction,
        file: Option<PathBuf>,
        /// Number of pendant pairs for `pendant-pairs`.
        #[arg(long)]
        m: Option<usize>,
        /// Second formula for `cnf-and`.
        #[arg(long = "with")]
        with: Option<PathBuf>,
    },
    /// Check registered lemmas and print one JSON report per lemma.
    Verify {
        /// Lemma ids, or `all`.
        #[arg(default_value = "all")]
        ids: Vec<String>,
        /// Override every lemma's default instance size.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Latin square queries.
    Latin {
        #[command(subcommand)]
        action: LatinAction,
    },
}

#[derive(Subcommand)]
enum LatinAction {
    /// Number of completions of a partial square.
    Count { file: Option<PathBuf> },
    /// Whether a partial square has a unique completion, and whether it is
    /// minimal with that property. Exits 1 when the completion is not unique.
    Critical { file: Option<PathBuf> },
    /// The partial coloring of the rook graph matching a partial square.
    ToColoring { file: Option<PathBuf> },
    /// Smallest uniquely completable partial square of order `n` (n <= 4).
    ForcingSize { n: usize },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Graph6,
    Dimacs,
    Json,
    /// Whitespace grid, Latin squares only.
    Text,
}

impl InputFormat {
    pub fn name(self) -> &'static str {
        match self {
            InputFormat::Graph6 => "graph6",
            InputFormat::Dimacs => "dimacs",
            InputFormat::Json => "json",
            InputFormat::Text => "text",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Invariant {
    Chi,
    Theta,
    Fchi,
    Ffchi,
    Fomega,
    Fgamma,
    Ftau,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Reduction {
    AddIsolatedVertex,
    PendantPairs,
    TimesK3,
    F2Transform,
    #[value(name = "sat-to-3sat")]
    SatTo3sat,
    ImplicantGraph,
    U3satToUoOmega,
    Complement,
    ReductionA,
    ReductionB,
    OmegaPlusOne,
    GammaPlusOne,
    CnfAnd,
}

/// Everything that ends a command early, with its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    Core(forcing_core::Error),
}

impl From<forcing_core::Error> for Failure {
    fn from(e: forcing_core::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_budget() => 3,
            _ => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Io(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

/// Settings shared by every command.
pub struct RunConfig {
    pub format: Option<InputFormat>,
    pub output_format: Option<OutputFormat>,
    pub budget: u64,
    pub workers: usize,
    pub seed: u64,
    pub timing: bool,
}

/// Command output and the exit code it asks for.
pub struct Output {
    pub text: String,
    pub code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = RunConfig {
        format: cli.format,
        output_format: cli.output_format,
        budget: cli.budget,
        workers: cli.workers as usize,
        seed: cli.seed,
        timing: cli.timing,
    };
    let result = match cli.command {
        Command::Compute { invariant, file } => commands::compute(&cfg, invariant, file.as_deref()),
        Command::Reduce { name, file, m, with } => {
            commands::reduce(&cfg, name, file.as_deref(), m, with.as_deref())
        }
        Command::Verify { ids, max_n } => commands::verify(&cfg, &ids, max_n),
        Command::Latin { action } => match action {
            LatinAction::Count { file } => commands::latin_count(&cfg, file.as_deref()),
            LatinAction::Critical { file } => commands::latin_critical(&cfg, file.as_deref()),
            LatinAction::ToColoring { file } => commands::latin_to_coloring(&cfg, file.as_deref()),
            LatinAction::ForcingSize { n } => commands::latin_forcing_size(&cfg, n),
        },
    };
    match result {
        Ok(out) => {
            let written = match &cli.output {
                Some(p) => fs::write(p, &out.text).map_err(|e| format!("{}: {e}", p.display())),
                None => std::io::stdout()
                    .write_all(out.text.as_bytes())
                    .map_err(|e| format!("stdout: {e}")),
            };
            match written {
                Ok(()) => ExitCode::from(out.code),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
