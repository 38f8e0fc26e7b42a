//! Sudoku matrices and their decomposition `M = 1·A₁ + 2·A₂ + … + n²·A_{n²}`
//! into pairwise disjoint S-permutation matrices.

use std::fmt;

use crate::error::{Error, Result};
use crate::sperm::SPermMatrix;
use crate::{check_order, Position, ValidityReport};

pub use crate::text::{parse_grid, write_grid};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SudokuViolation {
    Row { row: usize, repeated: Vec<u32> },
    Column { col: usize, repeated: Vec<u32> },
    Block { block: Position, repeated: Vec<u32> },
}

impl fmt::Display for SudokuViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (what, repeated) = match self {
            SudokuViolation::Row { row, repeated } => (format!("row {}", row + 1), repeated),
            SudokuViolation::Column { col, repeated } => (format!("column {}", col + 1), repeated),
            SudokuViolation::Block { block, repeated } => (format!("block {block}"), repeated),
        };
        let digits: Vec<String> = repeated.iter().map(u32::to_string).collect();
        write!(f, "{what} repeats {}", digits.join(", "))
    }
}

/// Values occurring more than once, ascending. Empty iff the (in-range,
/// `size`-long) sequence is a permutation of `1..=size`.
fn repeated(values: impl Iterator<Item = u32>, size: usize) -> Vec<u32> {
    let mut seen = vec![0u32; size + 1];
    for v in values {
        seen[v as usize] += 1;
    }
    (1..=size as u32)
        .filter(|&v| seen[v as usize] > 1)
        .collect()
}

/// Checks the row, column and block permutation constraints.
pub fn validate_sudoku(grid: &[Vec<u32>], n: usize) -> Result<ValidityReport<SudokuViolation>> {
    check_order(n)?;
    let size = n * n;
    if grid.len() != size || grid.iter().any(|r| r.len() != size) {
        return Err(Error::Shape(format!(
            "expected a {size}×{size} grid for n={n}"
        )));
    }
    for (i, row) in grid.iter().enumerate() {
        if let Some(j) = row.iter().position(|&v| v == 0 || v as usize > size) {
            return Err(Error::Range {
                row: i + 1,
                col: j + 1,
                value: u64::from(row[j]),
                max: size,
            });
        }
    }

    let mut violations = Vec::new();
    for (row, r) in grid.iter().enumerate() {
        let rep = repeated(r.iter().copied(), size);
        if !rep.is_empty() {
            violations.push(SudokuViolation::Row { row, repeated: rep });
        }
    }
    for col in 0..size {
        let rep = repeated(grid.iter().map(|r| r[col]), size);
        if !rep.is_empty() {
            violations.push(SudokuViolation::Column { col, repeated: rep });
        }
    }
    for br in 0..n {
        for bc in 0..n {
            let cells = (0..size).map(|t| grid[br * n + t / n][bc * n + t % n]);
            let rep = repeated(cells, size);
            if !rep.is_empty() {
                violations.push(SudokuViolation::Block {
                    block: Position::new(br, bc),
                    repeated: rep,
                });
            }
        }
    }
    Ok(ValidityReport::new(violations))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SudokuMatrix {
    n: usize,
    cells: Vec<u8>,
}

impl SudokuMatrix {
    pub fn from_rows(rows: &[Vec<u32>], n: usize) -> Result<Self> {
        validate_sudoku(rows, n)?.into_result(Error::InvalidSudoku)?;
        Ok(SudokuMatrix {
            n,
            cells: rows.iter().flatten().map(|&v| v as u8).collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.n * self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u32 {
        u32::from(self.cells[row * self.size() + col])
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.cells
            .chunks(self.size())
            .map(|r| r.iter().map(|&v| u32::from(v)).collect())
            .collect()
    }
}

/// `Σ k·A_k`: cell `(i,j)` gets `k` where part `k` (1-based) has its 1.
/// Parts are checked for collisions here, not trusted.
pub fn compose(parts: &[SPermMatrix]) -> Result<SudokuMatrix> {
    let Some(first) = parts.first() else {
        return Err(Error::Arity {
            expected: 1,
            got: 0,
        });
    };
    let n = first.order();
    let size = n * n;
    if parts.len() != size {
        return Err(Error::Arity {
            expected: size,
            got: parts.len(),
        });
    }
    if let Some(p) = parts.iter().find(|p| p.order() != n) {
        return Err(Error::OrderMismatch {
            left: n,
            right: p.order(),
        });
    }

    let mut cells = vec![0u8; size * size];
    for (k, part) in parts.iter().enumerate() {
        for pos in part.ones() {
            let cell = &mut cells[pos.row * size + pos.col];
            if *cell != 0 {
                return Err(Error::Collision {
                    first: *cell as usize,
                    second: k + 1,
                    row: pos.row + 1,
                    col: pos.col + 1,
                });
            }
            *cell = (k + 1) as u8;
        }
    }
    // n² parts with n² ones each and no collision fill every cell
    Ok(SudokuMatrix { n, cells })
}

/// Part `k` is the indicator matrix of the cells holding `k`.
pub fn decompose(m: &SudokuMatrix) -> Vec<SPermMatrix> {
    let n = m.n;
    let size = n * n;
    let mut ones = vec![vec![Position::new(0, 0); size]; size];
    for row in 0..size {
        for col in 0..size {
            let digit = m.get(row, col) as usize;
            ones[digit - 1][(row / n) * n + col / n] = Position::new(row, col);
        }
    }
    ones.into_iter()
        .map(|o| SPermMatrix::from_ones_unchecked(n, o))
        .collect()
}
