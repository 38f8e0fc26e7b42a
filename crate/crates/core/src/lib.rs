//! Sudoku matrices built from tuples of mutually disjoint pair matrices.
//!
//! An `n×n` matrix of ordered pairs `⟨a,b⟩ ∈ [n]×[n]` whose rows carry
//! permutations in the first component and whose columns carry permutations
//! in the second component ([`PiMatrix`]) corresponds one to one with an
//! `n²×n²` S-permutation matrix ([`SPermMatrix`]). A Sudoku matrix of order
//! `n` is exactly a weighted sum `1·A₁ + … + n²·A_{n²}` of pairwise disjoint
//! S-permutation matrices, so generating Sudoku matrices reduces to
//! generating `n²`-tuples of pairwise disjoint pair matrices.
//!
//! Modules:
//!
//! - [`pi`]: pair matrices, permutation tuples, disjointness, `|Πₙ| = (n!)^{2n}`
//! - [`sperm`]: S-permutation matrices and the bijection [`theta`] / [`theta_inv`]
//! - [`generator`]: candidate-set propagation with an undo trail, random and
//!   exhaustive search over disjoint tuples
//! - [`sudoku`]: composition and decomposition of Sudoku matrices
//! - [`enumerator`]: exact counting with [`CountReport`]s
//! - [`text`]: the line-oriented text formats for all three representations
//!
//! Indices are 0-based in the API. Everything a user reads (reports, error
//! messages, the text formats) is 1-based.

pub mod enumerator;
pub mod error;
pub mod generator;
pub mod pi;
pub mod sperm;
pub mod sudoku;
pub mod text;

use std::fmt;

pub use enumerator::{count_pi_enumerated, count_sudoku, CountOptions, CountReport, Quantity};
pub use error::{Error, Result};
pub use generator::{
    enumerate_tuples, generate_tuple, CandidateGrid, CandidateOrder, ChoiceStrategy,
    EnumerateOptions, GenerationBudget, GenerationStats,
};
pub use pi::{
    are_disjoint, count_pi, equal_components, from_permutations, to_permutations, validate_pi,
    Pair, Permutation, PermutationTuple, PiMatrix, PiViolation,
};
pub use sperm::{sperm_disjoint, theta, theta_inv, validate_sperm, SPermMatrix, SpermViolation};
pub use sudoku::{compose, decompose, validate_sudoku, SudokuMatrix, SudokuViolation};

/// Largest supported block order. Candidate sets over `[n]×[n]` are `u64` bitsets.
pub const MAX_ORDER: usize = 8;

/// Reference value for the number of 9×9 Sudoku matrices. Not reproducible
/// by enumeration here; kept for documentation and reports.
pub const THETA_3: u128 = 6_670_903_752_021_072_936_960;

/// Number of 4×4 Sudoku matrices.
pub const THETA_2: u64 = 288;

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        Err(Error::UnsupportedOrder(n))
    } else {
        Ok(())
    }
}

/// A cell position, stored 0-based and displayed 1-based as `(row,col)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    pub row: usize,
    pub col: usize,
}

impl Position {
    pub const fn new(row: usize, col: usize) -> Self {
        Position { row, col }
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row + 1, self.col + 1)
    }
}

/// Outcome of a structural check: empty means valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport<V> {
    violations: Vec<V>,
}

impl<V> ValidityReport<V> {
    pub(crate) fn new(violations: Vec<V>) -> Self {
        ValidityReport { violations }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[V] {
        &self.violations
    }

    pub fn into_violations(self) -> Vec<V> {
        self.violations
    }

    pub(crate) fn into_result(self, wrap: impl FnOnce(Vec<V>) -> Error) -> Result<()> {
        if self.violations.is_empty() {
            Ok(())
        } else {
            Err(wrap(self.violations))
        }
    }
}

impl<V: fmt::Display> fmt::Display for ValidityReport<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("ok");
        }
        for (idx, v) in self.violations.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// True when `values` is a permutation of `1..=n`.
pub(crate) fn is_permutation_of<I>(values: I, n: usize) -> bool
where
    I: IntoIterator<Item = usize>,
{
    let mut seen = vec![false; n];
    let mut count = 0;
    for v in values {
        if v == 0 || v > n || seen[v - 1] {
            return false;
        }
        seen[v - 1] = true;
        count += 1;
    }
    count == n
}
