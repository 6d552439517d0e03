use std::path::Path;
use std::process::ExitCode;

use possdt::criteria::{self, CriterionValue};
use possdt::dtree::{
    check_criterion, random_tree, strategy_lottery, validate_tree, DecisionTree, PayloadKind,
    Strategy, TreeProfile,
};
use possdt::format::{self, write_strategy, write_tree};
use possdt::propcheck::{self, DichotomyOptions, FuzzGrid};
use possdt::solver::{self, MethodChoice, SolveOptions, SolverError};
use possdt::{Criterion, CriterionId};

use crate::error::{CliError, DOMAIN};

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_tree(path: &Path) -> Result<DecisionTree, CliError> {
    format::parse_tree(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn load_strategy(path: &Path) -> Result<Strategy, CliError> {
    format::parse_strategy(&read(path)?).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(DOMAIN)
    }
}

fn value_line(criterion: &Criterion, value: &CriterionValue) -> String {
    format!("{}: {value}", criterion)
}

pub fn check(path: &Path, criterion: Option<Criterion>) -> Result<ExitCode, CliError> {
    let tree = load_tree(path)?;
    let report = validate_tree(&tree);
    print!("{report}");
    let mut ok = report.is_valid();
    if let (true, Some(c)) = (ok, criterion) {
        c.check()?;
        for v in check_criterion(&tree, &c) {
            println!("{v}");
            ok = false;
        }
    }
    if ok {
        println!("ok: {} nodes, {} edges", tree.len(), tree.edge_count());
    }
    Ok(status(ok))
}

pub fn evaluate(tree: &Path, strategy: &Path, criterion: &Criterion) -> Result<ExitCode, CliError> {
    let tree = load_tree(tree)?;
    let strategy = load_strategy(strategy)?;
    criterion.check()?;
    let lottery = strategy_lottery(&tree, &strategy)?;
    let misfit = check_criterion(&tree, criterion);
    if !misfit.is_empty() {
        return Err(SolverError::CriterionFit(misfit).into());
    }
    let value = criteria::evaluate(criterion, &lottery)?;
    println!("reduced lottery: {lottery}");
    println!("{}", value_line(criterion, &value));
    Ok(ExitCode::SUCCESS)
}

pub fn optimize(
    tree: &Path,
    criterion: &Criterion,
    method: MethodChoice,
    unsafe_dp: bool,
    budget: Option<u64>,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let tree = load_tree(tree)?;
    let result = solver::optimize(
        &tree,
        criterion,
        method,
        &SolveOptions { unsafe_dp, budget },
    )?;
    emit(out, &write_strategy(&result.strategy, Some(&tree)))?;
    eprintln!("method: {}", result.method);
    eprintln!("strategy: {}", result.strategy);
    eprintln!("reduced lottery: {}", result.reduced);
    eprintln!("{}", value_line(criterion, &result.value));
    eprintln!("{}", result.stats);
    Ok(ExitCode::SUCCESS)
}

pub fn fuzz(
    criterion: Criterion,
    trials: u64,
    seed: u64,
    symmetric: bool,
    witness_out: &Path,
) -> Result<ExitCode, CliError> {
    let report =
        propcheck::fuzz_monotonicity(criterion, trials, seed, &FuzzGrid::default(), symmetric)?;
    println!("criterion: {criterion}");
    println!(
        "random trials: {} (seed {seed}), {} violations",
        report.trials, report.violations
    );
    for p in &report.pinned {
        println!(
            "pinned {}: {}",
            p.name,
            if p.violation.is_some() {
                "violation"
            } else {
                "no violation"
            }
        );
    }
    println!("{} violations", report.total_violations());
    let expected = if criterion.id.is_weakly_monotone() {
        "weakly monotone"
    } else {
        "not weakly monotone"
    };
    let verdict = if report.matches_classification() {
        "matches"
    } else {
        "contradicts"
    };
    println!("classification: {expected}, {verdict}");
    if let Some(v) = report.witness() {
        println!("{v}");
        write(witness_out, &v.to_witness())?;
        println!("witness written to {}", witness_out.display());
    }
    Ok(status(report.matches_classification()))
}

pub fn replay(path: &Path) -> Result<ExitCode, CliError> {
    let text = read(path)?;
    let violation = propcheck::replay_witness(&text)?;
    println!("{violation}");
    if violation.to_witness() == text {
        println!("reproduced");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("reproduced, but the file is not in canonical form");
        Ok(ExitCode::from(DOMAIN))
    }
}

pub fn dichotomy(options: &DichotomyOptions) -> Result<ExitCode, CliError> {
    println!(
        "{:<18} {:>10} {:>8} {:>10} {:<8} {:<8}",
        "criterion", "violations", "trees", "dp beaten", "expected", "observed"
    );
    let mut all = true;
    for (c, payload) in propcheck::dichotomy_configurations() {
        let row = propcheck::dichotomy_row(c, payload, options)?;
        let (expected, observed) = (row.expected(), row.observed());
        all &= expected == observed;
        println!(
            "{:<18} {:>10} {:>8} {:>10} {:<8} {:<8}",
            c.to_string(),
            row.fuzz.total_violations(),
            row.trees,
            row.dp_beaten,
            expected.to_string(),
            observed.to_string()
        );
    }
    Ok(status(all))
}

pub fn gap(
    criterion: CriterionId,
    trials: u64,
    seed: u64,
    max_strategies: u64,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let report = propcheck::find_dp_gap(
        criterion,
        trials,
        seed,
        &propcheck::gap_profile(),
        max_strategies,
    )?;
    println!("criterion: {criterion}");
    println!(
        "trees tried: {}, skipped for size: {}",
        report.trials, report.skipped
    );
    let Some(w) = report.witness else {
        println!("no gap found");
        return Ok(ExitCode::from(DOMAIN));
    };
    println!("tree seed: {}", w.seed);
    println!(
        "dp strategy: {}  value {}",
        w.dp_strategy,
        CriterionValue::Scalar(w.dp_value.clone())
    );
    println!(
        "exhaustive strategy: {}  value {}",
        w.exhaustive_strategy,
        CriterionValue::Scalar(w.exhaustive_value.clone())
    );
    println!("gap: {}", CriterionValue::Scalar(w.gap()));
    if let Some(path) = out {
        write(path, &write_tree(&w.tree))?;
        println!("tree written to {}", path.display());
    }
    Ok(ExitCode::SUCCESS)
}

pub fn generate(
    seed: u64,
    depth: usize,
    branching: usize,
    payload: PayloadKind,
    max_decisions: Option<usize>,
    out: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let profile = TreeProfile {
        depth,
        branching,
        max_decision_nodes: max_decisions,
        ..TreeProfile::default()
    }
    .with_payload(payload);
    let tree = random_tree(seed, &profile).map_err(|e| CliError::Usage(e.to_string()))?;
    emit(out, &write_tree(&tree))?;
    Ok(ExitCode::SUCCESS)
}

pub fn bench(
    seed: u64,
    max_decisions: usize,
    branching: usize,
    budget: u64,
    criterion: &Criterion,
    json: bool,
) -> Result<ExitCode, CliError> {
    let rows = solver::scaling_report(seed, max_decisions, branching, budget, criterion)?;
    if !json {
        println!(
            "{:>9} {:>6} {:>11} {:>12} {:>12} {:>12} {:>10}",
            "decisions", "edges", "dp edges", "strategies", "b^n", "enumerated", "consistent"
        );
    }
    let mut ok = true;
    for row in &rows {
        ok &= row.consistent();
        if json {
            println!("{}", serde_json::to_string(row).expect("row serializes"));
        } else {
            let enumerated = row
                .exhaustive_examined
                .map_or("-".to_string(), |n| n.to_string());
            println!(
                "{:>9} {:>6} {:>11} {:>12} {:>12} {:>12} {:>10}",
                row.decision_nodes,
                row.edges,
                row.dp_edges_visited,
                row.strategies.to_string(),
                row.closed_form.to_string(),
                enumerated,
                if row.consistent() { "yes" } else { "NO" }
            );
        }
        let ex = row.exhaustive_time.map_or("-".to_string(), |t| {
            format!("{:.3} ms", t.as_secs_f64() * 1e3)
        });
        eprintln!(
            "n = {}: dp {:.3} ms, exhaustive {ex}",
            row.decision_nodes,
            row.dp_time.as_secs_f64() * 1e3
        );
    }
    Ok(status(ok))
}
