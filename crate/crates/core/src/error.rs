use std::fmt;

use thiserror::Error;

use crate::partition::Partition;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A (λ, ρ) cell of a multiplicity table or a (ν, λ, k) cell of an Ext table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Cell {
    Mult(Partition, Partition),
    Ext(Partition, Partition, usize),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Mult(lambda, rho) => write!(f, "mult[{} ; {}]", lambda, rho),
            Cell::Ext(nu, lambda, k) => write!(f, "ext^{}[{} ; {}]", k, nu, lambda),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {0:?}: parts must be positive and weakly decreasing")]
    InvalidPartition(Vec<usize>),

    #[error("cannot parse {what} from {text:?}")]
    Parse { what: &'static str, text: String },

    #[error("the empty partition has no removable cell")]
    EmptyPartition,

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(usize, usize),

    #[error("multiplicity of {partition} is {value}, not an integer")]
    NonIntegral { partition: Partition, value: String },

    #[error("{source_name}:{line}: {msg}")]
    Load {
        source_name: String,
        line: usize,
        msg: String,
    },

    #[error("conflicting values for {cell}: {first} from {first_source}, {second} from {second_source}")]
    Conflict {
        cell: Cell,
        first: u64,
        first_source: String,
        second: u64,
        second_source: String,
    },

    #[error("invariant violated at {cell}: {msg}")]
    Invariant { cell: Cell, msg: String },

    #[error("unknown cell {0}")]
    UnknownCell(Cell),

    #[error("{0} depends on a contradicted cell")]
    Blocked(Cell),

    #[error("{}", .0.headline())]
    Contradiction(Box<crate::extengine::ContradictionReport>),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("negative value {value} forced at {cell}")]
    Negative { cell: Cell, value: String },

    #[error("arithmetic overflow at {0}")]
    Overflow(Cell),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short machine-readable category used as the CLI diagnostic prefix.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPartition(_) | Error::Parse { .. } | Error::EmptyPartition => "input",
            Error::LevelMismatch(_, _) | Error::NonIntegral { .. } => "repring",
            Error::Load { .. } | Error::Io { .. } => "load",
            Error::Conflict { .. } | Error::Invariant { .. } => "data",
            Error::UnknownCell(_) => "coverage",
            Error::Blocked(_) | Error::Contradiction(_) => "contradiction",
            Error::Precondition(_) => "precondition",
            Error::Negative { .. } | Error::Overflow(_) => "arith",
        }
    }

    pub(crate) fn parse(what: &'static str, text: &str) -> Self {
        Error::Parse {
            what,
            text: text.to_string(),
        }
    }
}
