use std::path::PathBuf;

use possdt::criteria::CriterionError;
use possdt::dtree::TreeError;
use possdt::format::FormatError;
use possdt::propcheck::PropError;
use possdt::solver::SolverError;
use thiserror::Error;

pub const DOMAIN: u8 = 1;
pub const PARSE: u8 = 2;
pub const BUDGET: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: FormatError },
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Criterion(#[from] CriterionError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Prop(#[from] PropError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Parse { .. } | CliError::Usage(_) => PARSE,
            CliError::Prop(PropError::Format(_)) => PARSE,
            CliError::Solver(SolverError::BudgetExceeded { .. }) => BUDGET,
            _ => DOMAIN,
        }
    }
}
