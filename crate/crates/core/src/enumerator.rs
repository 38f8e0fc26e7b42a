//! Exact desk-scale counts.

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use crate::check_order;
use crate::error::{Error, Result};
use crate::generator::{count_tuples, EnumerateOptions};
use crate::pi::{from_permutations, validate_pi, Permutation, PermutationTuple, PiMatrix};

pub type CountOptions = EnumerateOptions;

/// Orders from which enumerating every permutation tuple needs the opt-in
/// (`24⁸ ≈ 1.1·10¹¹` tuples at n=4).
pub const LARGE_PI_ORDER: usize = 4;

/// Up to this many tuples, distinctness of the constructed matrices is
/// checked with a hash set.
const DISTINCT_CHECK_LIMIT: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantity {
    PiMatrices,
    SudokuMatrices,
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::PiMatrices => "pi",
            Quantity::SudokuMatrices => "sudoku",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub n: usize,
    pub quantity: Quantity,
    pub value: BigUint,
    pub elapsed: Duration,
    pub nodes: u64,
    pub backtracks: u64,
    /// False when a node limit stopped the run early; `value` is then a lower bound.
    pub complete: bool,
}

impl CountReport {
    pub fn summary(&self) -> String {
        let what = match self.quantity {
            Quantity::PiMatrices => format!("{n}×{n} pair matrices", n = self.n),
            Quantity::SudokuMatrices => {
                format!("{s}×{s} Sudoku matrices", s = self.n * self.n)
            }
        };
        let qualifier = if self.complete { "" } else { "at least " };
        format!(
            "{qualifier}{} {what} ({} nodes, {} backtracks, {:.3}s)",
            self.value,
            self.nodes,
            self.backtracks,
            self.elapsed.as_secs_f64()
        )
    }
}

/// Single-line `key=value` record.
impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quantity={} n={} value={} complete={} nodes={} backtracks={} elapsed_ms={}",
            self.quantity,
            self.n,
            self.value,
            self.complete,
            self.nodes,
            self.backtracks,
            self.elapsed.as_millis()
        )
    }
}

/// Counts pair matrices by building one from every tuple of `2n`
/// permutations and checking it independently.
pub fn count_pi_enumerated(n: usize, opts: &CountOptions) -> Result<CountReport> {
    check_order(n)?;
    if n >= LARGE_PI_ORDER && !opts.allow_large {
        return Err(Error::Refused(format!(
            "enumerating all (n!)^(2n) permutation tuples for n={n} is beyond desk scale; \
             pass the large-enumeration opt-in to run it anyway"
        )));
    }
    let start = Instant::now();
    let perms = Permutation::all(n);
    let slots = 2 * n;
    let mut digits = vec![0usize; slots];
    let mut seen: HashSet<PiMatrix> = HashSet::new();
    let mut visited: u64 = 0;
    let mut valid: u64 = 0;
    let mut complete = true;

    loop {
        if opts.max_nodes.is_some_and(|max| visited >= max) {
            complete = false;
            break;
        }
        let pick = |range: std::ops::Range<usize>| {
            digits[range].iter().map(|&d| perms[d].clone()).collect()
        };
        let tuple = PermutationTuple::new(pick(0..n), pick(n..slots))?;
        let m = from_permutations(&tuple);
        visited += 1;
        if validate_pi(&m.to_rows())?.is_ok() {
            if visited <= DISTINCT_CHECK_LIMIT {
                if seen.insert(m) {
                    valid += 1;
                }
            } else {
                valid += 1;
            }
        }

        // odometer over the 2n permutation indices
        let mut slot = 0;
        loop {
            if slot == slots {
                break;
            }
            digits[slot] += 1;
            if digits[slot] < perms.len() {
                break;
            }
            digits[slot] = 0;
            slot += 1;
        }
        if slot == slots {
            break;
        }
    }

    Ok(CountReport {
        n,
        quantity: Quantity::PiMatrices,
        value: BigUint::from(valid),
        elapsed: start.elapsed(),
        nodes: visited,
        backtracks: 0,
        complete,
    })
}

/// Counts `n²×n²` Sudoku matrices as complete tuples of pairwise disjoint
/// pair matrices.
pub fn count_sudoku(n: usize, opts: &CountOptions) -> Result<CountReport> {
    let start = Instant::now();
    let e = count_tuples(n, opts)?;
    Ok(CountReport {
        n,
        quantity: Quantity::SudokuMatrices,
        value: e.count,
        elapsed: start.elapsed(),
        nodes: e.nodes,
        backtracks: e.backtracks,
        complete: e.complete,
    })
}
