use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Search statistics carried out of a search that hit its node limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialStats {
    pub nodes_visited: u64,
    pub partial_count: BigUint,
}

impl fmt::Display for PartialStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} nodes visited, {} solutions found so far",
            self.nodes_visited, self.partial_count
        )
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("empty order")]
    EmptyOrder,

    #[error("matching not A-perfect")]
    NotAPerfect,

    #[error("matching belongs to a different hypergraph")]
    ForeignMatching,

    #[error("edge not incident")]
    EdgeNotIncident,

    #[error("instance too large: {what} is {value}, limit is {limit}")]
    TooLarge {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("budget exhausted after {0}")]
    BudgetExhausted(PartialStats),

    #[error("infeasible: no A-perfect matching exists")]
    Infeasible,

    #[error("log of zero")]
    LogOfZero,

    #[error("non-positive argument: {0}")]
    NonPositive(&'static str),

    #[error("B too small to saturate A (rho = {rho} < k = {k})")]
    RhoBelowK { rho: f64, k: usize },

    #[error("quadrature did not reach tolerance {tol:e} (estimate {estimate:e})")]
    Quadrature { tol: f64, estimate: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            line,
            reason: reason.into(),
        }
    }
}
