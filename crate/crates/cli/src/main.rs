use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod error;

use error::CliError;
use possdt::criteria::Embedding;
use possdt::dtree::PayloadKind;
use possdt::solver::MethodChoice;
use possdt::{Criterion, CriterionId};

/// Exact evaluation and optimization of possibilistic decision trees.
#[derive(Debug, Parser)]
#[command(name = "possdt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args, Clone)]
struct CriterionArgs {
    /// upes, uopt, pu, ln, lpi, chn, chpi or omeu.
    #[arg(long, short)]
    criterion: CriterionId,
    /// Read scalar utilities as binary ones under PU.
    #[arg(long)]
    embedding: Option<Embedding>,
}

impl CriterionArgs {
    fn criterion(&self) -> Criterion {
        Criterion {
            id: self.criterion,
            embedding: self.embedding,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a tree document; prints one violation per line.
    Check {
        tree: PathBuf,
        /// Also check that the tree's leaves suit this criterion.
        #[arg(long)]
        criterion: Option<CriterionId>,
        #[arg(long)]
        embedding: Option<Embedding>,
    },
    /// Reduce a strategy to a simple lottery and evaluate it.
    Evaluate {
        tree: PathBuf,
        strategy: PathBuf,
        #[command(flatten)]
        criterion: CriterionArgs,
    },
    /// Find an optimal strategy.
    Optimize {
        tree: PathBuf,
        #[command(flatten)]
        criterion: CriterionArgs,
        /// auto, dp or exhaustive.
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
        /// Allow backward induction under Ch_N and Ch_Π.
        #[arg(long)]
        unsafe_dp: bool,
        /// Maximum number of strategies exhaustive search may enumerate.
        #[arg(long)]
        budget: Option<u64>,
        /// Write the strategy document here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized weak-monotonicity check.
    Fuzz {
        #[arg(long, short, required_unless_present = "replay")]
        criterion: Option<CriterionId>,
        #[arg(long)]
        embedding: Option<Embedding>,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also flag strict reversals when L ≥ L' fails.
        #[arg(long)]
        symmetric: bool,
        /// Where to write the first violation [default: witness-<criterion>.json].
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Re-check a witness file instead of fuzzing.
        #[arg(long, conflicts_with_all = ["criterion", "witness_out"])]
        replay: Option<PathBuf>,
    },
    /// Classify every criterion by fuzzing, oracle comparison and gap search.
    Dichotomy {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        fuzz_trials: u64,
        /// Random trees per weakly monotone criterion.
        #[arg(long, default_value_t = 200)]
        trees: u64,
        /// Random trees searched for a backward-induction gap.
        #[arg(long, default_value_t = 2_000)]
        gap_trials: u64,
    },
    /// Search random trees for one where backward induction under a Choquet
    /// criterion is suboptimal.
    Gap {
        #[arg(long, short, default_value = "chn")]
        criterion: CriterionId,
        #[arg(long, default_value_t = 2_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip trees with more strategies than this.
        #[arg(long, default_value_t = 5_000)]
        max_strategies: u64,
        /// Write the witness tree document here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random tree document.
    Gen {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 2)]
        branching: usize,
        /// possibilistic or kappa.
        #[arg(long, default_value = "possibilistic")]
        mode: String,
        /// Binary utility leaves instead of scalar ones (possibilistic only).
        #[arg(long)]
        binary: bool,
        #[arg(long)]
        max_decisions: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Scaling of backward induction and exhaustive search on comb trees.
    Bench {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_decisions: usize,
        #[arg(long, default_value_t = 2)]
        branching: usize,
        /// Run exhaustive search only up to this many strategies.
        #[arg(long, default_value_t = 5_000)]
        budget: u64,
        #[arg(long, short, default_value = "upes")]
        criterion: CriterionId,
        /// One JSON object per row.
        #[arg(long)]
        json: bool,
    },
}

fn payload(mode: &str, binary: bool) -> Result<PayloadKind, CliError> {
    match (mode, binary) {
        ("possibilistic", false) => Ok(PayloadKind::Utility),
        ("possibilistic", true) => Ok(PayloadKind::Binary),
        ("kappa", false) => Ok(PayloadKind::Mu),
        ("kappa", true) => Err(CliError::Usage(
            "--binary needs --mode possibilistic".into(),
        )),
        (other, _) => Err(CliError::Usage(format!(
            "unknown mode `{other}` (expected possibilistic or kappa)"
        ))),
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Check {
            tree,
            criterion,
            embedding,
        } => commands::check(&tree, criterion.map(|id| Criterion { id, embedding })),
        Command::Evaluate {
            tree,
            strategy,
            criterion,
        } => commands::evaluate(&tree, &strategy, &criterion.criterion()),
        Command::Optimize {
            tree,
            criterion,
            method,
            unsafe_dp,
            budget,
            out,
        } => commands::optimize(
            &tree,
            &criterion.criterion(),
            method,
            unsafe_dp,
            budget,
            out.as_deref(),
        ),
        Command::Fuzz {
            replay: Some(path), ..
        } => commands::replay(&path),
        Command::Fuzz {
            criterion,
            embedding,
            trials,
            seed,
            symmetric,
            witness_out,
            replay: None,
        } => {
            let id = criterion.expect("clap requires a criterion without --replay");
            let c = Criterion { id, embedding };
            let out =
                witness_out.unwrap_or_else(|| PathBuf::from(format!("witness-{}.json", id.name())));
            commands::fuzz(c, trials, seed, symmetric, &out)
        }
        Command::Dichotomy {
            seed,
            fuzz_trials,
            trees,
            gap_trials,
        } => commands::dichotomy(&possdt::propcheck::DichotomyOptions {
            seed,
            fuzz_trials,
            trees,
            gap_trials,
        }),
        Command::Gap {
            criterion,
            trials,
            seed,
            max_strategies,
            out,
        } => commands::gap(criterion, trials, seed, max_strategies, out.as_deref()),
        Command::Gen {
            seed,
            depth,
            branching,
            mode,
            binary,
            max_decisions,
            out,
        } => commands::generate(
            seed,
            depth,
            branching,
            payload(&mode, binary)?,
            max_decisions,
            out.as_deref(),
        ),
        Command::Bench {
            seed,
            max_decisions,
            branching,
            budget,
            criterion,
            json,
        } => commands::bench(
            seed,
            max_decisions,
            branching,
            budget,
            &Criterion::new(criterion),
            json,
        ),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
