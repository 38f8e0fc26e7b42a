use std::fmt;

use thiserror::Error;

use crate::pi::PiViolation;
use crate::sperm::SpermViolation;
use crate::sudoku::SudokuViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported order n={0} (supported: 1..={max})", max = crate::MAX_ORDER)]
    UnsupportedOrder(usize),

    #[error("shape error: {0}")]
    Shape(String),

    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("value {value} out of range 1..={max} at ({row},{col})")]
    Range {
        row: usize,
        col: usize,
        value: u64,
        max: usize,
    },

    #[error("malformed permutation: {0}")]
    Permutation(String),

    #[error("not a pair matrix: {}", Joined(.0))]
    InvalidPi(Vec<PiViolation>),

    #[error("not an S-permutation matrix: {}", Joined(.0))]
    InvalidSperm(Vec<SpermViolation>),

    #[error("not a Sudoku matrix: {}", Joined(.0))]
    InvalidSudoku(Vec<SudokuViolation>),

    #[error("expected {expected} parts, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("parts {first} and {second} both have a 1 at ({row},{col})")]
    Collision {
        first: usize,
        second: usize,
        row: usize,
        col: usize,
    },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0}")]
    Contract(String),

    #[error("search budget exhausted after {restarts} restart(s) and {backtracks} backtrack(s)")]
    BudgetExhausted { restarts: u32, backtracks: u64 },

    #[error("search space exhausted without a complete tuple")]
    NoSolution,

    #[error("refusing to enumerate: {0}")]
    Refused(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}

struct Joined<'a, T>(&'a [T]);

impl<T: fmt::Display> fmt::Display for Joined<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, item) in self.0.iter().enumerate() {
            if idx > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{item}")?;
        }
        Ok(())
    }
}
