use thiserror::Error;

use crate::loops::LoopPropertyReport;
use crate::report::AxiomReport;
use crate::scalar::Field;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mixed fields: {0} and {1}")]
    MixedFields(Field, Field),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid prime modulus {0}")]
    InvalidModulus(u64),

    #[error("invalid field descriptor {0:?}")]
    InvalidFieldDescriptor(String),

    #[error("non-canonical scalar {0:?}")]
    NonCanonicalScalar(String),

    #[error("shape mismatch in {context}: {left:?} vs {right:?}")]
    ShapeMismatch {
        context: String,
        left: Vec<usize>,
        right: Vec<usize>,
    },

    #[error("dimension 0 is not allowed")]
    ZeroDimension,

    #[error("entry ({row}, {col}) out of range for a {rows}x{cols} map")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("duplicate entry ({0}, {1})")]
    DuplicateEntry(usize, usize),

    #[error("unknown condition {0:?}")]
    UnknownCondition(String),

    #[error(transparent)]
    Loop(#[from] LoopError),

    #[error("input is not a group: ({0}, {1}, {2}) is not associative")]
    NotAGroup(usize, usize, usize),

    #[error("loop does not have the inverse property")]
    NotIpLoop(Box<LoopPropertyReport>),

    #[error("factor mismatch: {0}")]
    FactorMismatch(String),

    #[error("action does not satisfy the quasimodule axioms")]
    QuasimoduleAxiomFailure(Box<AxiomReport>),
}

/// Reasons a square table fails to be a loop with identity 0.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoopError {
    #[error("empty table")]
    Empty,

    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },

    #[error("value {value} at ({row}, {col}) out of range")]
    ValueOutOfRange { row: usize, col: usize, value: usize },

    #[error("not a Latin square: {line} {index} repeats value {value}")]
    NotLatinSquare { line: Line, index: usize, value: usize },

    #[error("element 0 is not a two-sided identity at index {0}")]
    IdentityNotZero(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row,
    Column,
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Line::Row => "row",
            Line::Column => "column",
        })
    }
}
