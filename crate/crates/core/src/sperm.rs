//! S-permutation matrices: `n²×n²` binary matrices with exactly one 1 in
//! every row, every column and every `n×n` block.
//!
//! Stored sparsely as the position of the single 1 in each block. The dense
//! grid only appears when parsing or printing.

use std::fmt;

use crate::error::{Error, Result};
use crate::pi::{Pair, PiMatrix};
use crate::{check_order, Position, ValidityReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpermViolation {
    Row {
        row: usize,
        ones: usize,
    },
    Column {
        col: usize,
        ones: usize,
    },
    /// `block` holds the block's (row, col) among the `n×n` blocks.
    Block {
        block: Position,
        ones: usize,
    },
}

impl fmt::Display for SpermViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpermViolation::Row { row, ones } => {
                write!(f, "row {} has {ones} ones, expected 1", row + 1)
            }
            SpermViolation::Column { col, ones } => {
                write!(f, "column {} has {ones} ones, expected 1", col + 1)
            }
            SpermViolation::Block { block, ones } => {
                write!(f, "block {block} has {ones} ones, expected 1")
            }
        }
    }
}

/// Checks the three "exactly one 1" families on a dense `n²×n²` grid.
pub fn validate_sperm(grid: &[Vec<u8>], n: usize) -> Result<ValidityReport<SpermViolation>> {
    check_order(n)?;
    let size = n * n;
    if grid.len() != size {
        return Err(Error::Shape(format!(
            "expected {size} rows for n={n}, got {}",
            grid.len()
        )));
    }
    for (i, row) in grid.iter().enumerate() {
        if row.len() != size {
            return Err(Error::Shape(format!(
                "row {} has {} entries, expected {size}",
                i + 1,
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|&v| v > 1) {
            return Err(Error::Shape(format!(
                "entry {} at ({},{}) is not binary",
                row[j],
                i + 1,
                j + 1
            )));
        }
    }

    let mut row_ones = vec![0usize; size];
    let mut col_ones = vec![0usize; size];
    let mut block_ones = vec![0usize; size];
    for (i, row) in grid.iter().enumerate() {
        for (j, _) in row.iter().enumerate().filter(|(_, &v)| v == 1) {
            row_ones[i] += 1;
            col_ones[j] += 1;
            block_ones[(i / n) * n + j / n] += 1;
        }
    }

    let mut violations = Vec::new();
    for (row, &ones) in row_ones.iter().enumerate().filter(|(_, &c)| c != 1) {
        violations.push(SpermViolation::Row { row, ones });
    }
    for (col, &ones) in col_ones.iter().enumerate().filter(|(_, &c)| c != 1) {
        violations.push(SpermViolation::Column { col, ones });
    }
    for (b, &ones) in block_ones.iter().enumerate().filter(|(_, &c)| c != 1) {
        violations.push(SpermViolation::Block {
            block: Position::new(b / n, b % n),
            ones,
        });
    }
    Ok(ValidityReport::new(violations))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SPermMatrix {
    n: usize,
    /// Global position of the 1 in block `k·n + l`.
    ones: Vec<Position>,
}

impl SPermMatrix {
    pub fn from_dense(grid: &[Vec<u8>], n: usize) -> Result<Self> {
        validate_sperm(grid, n)?.into_result(Error::InvalidSperm)?;
        let mut ones = vec![Position::new(0, 0); n * n];
        for (i, row) in grid.iter().enumerate() {
            for (j, _) in row.iter().enumerate().filter(|(_, &v)| v == 1) {
                ones[(i / n) * n + j / n] = Position::new(i, j);
            }
        }
        Ok(SPermMatrix { n, ones })
    }

    /// `ones[b]` must be the position of the single 1 in block `b`.
    pub(crate) fn from_ones_unchecked(n: usize, ones: Vec<Position>) -> Self {
        debug_assert_eq!(ones.len(), n * n);
        SPermMatrix { n, ones }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Side length `n²`.
    pub fn size(&self) -> usize {
        self.n * self.n
    }

    /// Positions of all ones, one per block, blocks in row-major order.
    pub fn ones(&self) -> &[Position] {
        &self.ones
    }

    pub fn one_in_block(&self, block_row: usize, block_col: usize) -> Position {
        self.ones[block_row * self.n + block_col]
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        let n = self.n;
        self.one_in_block(row / n, col / n) == Position::new(row, col)
    }

    pub fn to_dense(&self) -> Vec<Vec<u8>> {
        let size = self.size();
        let mut grid = vec![vec![0u8; size]; size];
        for p in &self.ones {
            grid[p.row][p.col] = 1;
        }
        grid
    }
}

/// Maps cell `(k,l) = ⟨a,b⟩` to a 1 at `((k−1)n + a, (l−1)n + b)` (1-based).
pub fn theta(m: &PiMatrix) -> SPermMatrix {
    let n = m.order();
    let ones = m
        .cells()
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let (k, l) = (idx / n, idx % n);
            Position::new(k * n + p.a as usize - 1, l * n + p.b as usize - 1)
        })
        .collect();
    SPermMatrix { n, ones }
}

/// Reads each block's single 1 back as a within-block coordinate pair.
pub fn theta_inv(s: &SPermMatrix) -> PiMatrix {
    let n = s.n;
    let cells = s
        .ones
        .iter()
        .enumerate()
        .map(|(idx, p)| {
            let (k, l) = (idx / n, idx % n);
            Pair::new((p.row - k * n + 1) as u8, (p.col - l * n + 1) as u8)
        })
        .collect();
    PiMatrix::from_cells_unchecked(n, cells)
}

/// True when the two matrices share no 1-position.
pub fn sperm_disjoint(x: &SPermMatrix, y: &SPermMatrix) -> Result<bool> {
    if x.n != y.n {
        return Err(Error::OrderMismatch {
            left: x.n,
            right: y.n,
        });
    }
    // each block holds a single 1 in both, so blockwise comparison suffices
    Ok(x.ones.iter().zip(&y.ones).all(|(p, q)| p != q))
}
