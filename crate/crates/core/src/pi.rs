//! Pair matrices (`Πₙ`): `n×n` grids of ordered pairs `⟨a,b⟩` where the
//! first components of every row and the second components of every column
//! are permutations of `[n]`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::{check_order, is_permutation_of, Position, ValidityReport};

/// Ordered pair `⟨a,b⟩` with 1-based components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub a: u8,
    pub b: u8,
}

impl Pair {
    pub const fn new(a: u8, b: u8) -> Self {
        Pair { a, b }
    }

    /// Canonical bit index `(a−1)·n + (b−1)`.
    #[inline]
    pub fn index(self, n: usize) -> usize {
        (self.a as usize - 1) * n + (self.b as usize - 1)
    }

    #[inline]
    pub fn from_index(index: usize, n: usize) -> Self {
        Pair {
            a: (index / n + 1) as u8,
            b: (index % n + 1) as u8,
        }
    }

    pub fn in_range(self, n: usize) -> bool {
        (1..=n).contains(&(self.a as usize)) && (1..=n).contains(&(self.b as usize))
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PiViolation {
    /// Condition i: a component lies outside `[n]`.
    ComponentRange { at: Position, pair: Pair },
    /// Condition ii: first components of a row are not a permutation.
    Row { row: usize, firsts: Vec<u8> },
    /// Condition iii: second components of a column are not a permutation.
    Column { col: usize, seconds: Vec<u8> },
}

impl fmt::Display for PiViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PiViolation::ComponentRange { at, pair } => {
                write!(
                    f,
                    "condition i: pair {pair} at {at} has a component outside [n]"
                )
            }
            PiViolation::Row { row, firsts } => write!(
                f,
                "condition ii: row {} first components {} are not a permutation",
                row + 1,
                spaced(firsts)
            ),
            PiViolation::Column { col, seconds } => write!(
                f,
                "condition iii: column {} second components {} are not a permutation",
                col + 1,
                spaced(seconds)
            ),
        }
    }
}

fn spaced(values: &[u8]) -> String {
    values
        .iter()
        .map(u8::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Checks conditions i–iii on a raw grid, reporting every violation.
pub fn validate_pi(rows: &[Vec<Pair>]) -> Result<ValidityReport<PiViolation>> {
    let n = rows.len();
    check_order(n)?;
    if let Some((idx, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::Shape(format!(
            "row {} has {} cells, expected {n}",
            idx + 1,
            row.len()
        )));
    }

    let mut violations = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        for (j, &pair) in row.iter().enumerate() {
            if !pair.in_range(n) {
                violations.push(PiViolation::ComponentRange {
                    at: Position::new(i, j),
                    pair,
                });
            }
        }
    }
    for (i, row) in rows.iter().enumerate() {
        let firsts: Vec<u8> = row.iter().map(|p| p.a).collect();
        if !is_permutation_of(firsts.iter().map(|&a| a as usize), n) {
            violations.push(PiViolation::Row { row: i, firsts });
        }
    }
    for j in 0..n {
        let seconds: Vec<u8> = rows.iter().map(|r| r[j].b).collect();
        if !is_permutation_of(seconds.iter().map(|&b| b as usize), n) {
            violations.push(PiViolation::Column { col: j, seconds });
        }
    }
    Ok(ValidityReport::new(violations))
}

/// A validated pair matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PiMatrix {
    n: usize,
    cells: Vec<Pair>,
}

impl PiMatrix {
    pub fn new(rows: Vec<Vec<Pair>>) -> Result<Self> {
        validate_pi(&rows)?.into_result(Error::InvalidPi)?;
        let n = rows.len();
        Ok(PiMatrix {
            n,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    /// Row-major cells; the caller guarantees validity.
    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<Pair>) -> Self {
        debug_assert_eq!(cells.len(), n * n);
        PiMatrix { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Pair {
        self.cells[row * self.n + col]
    }

    pub fn cells(&self) -> &[Pair] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Pair]> {
        self.cells.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<Pair>> {
        self.rows().map(<[Pair]>::to_vec).collect()
    }
}

impl fmt::Display for PiMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(Pair::to_string).collect();
            f.write_str(&line.join(" "))?;
        }
        Ok(())
    }
}

/// A permutation of `[n]` in one-line notation, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn new(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        if !is_permutation_of(images.iter().map(|&v| v as usize), n) {
            return Err(Error::Permutation(format!(
                "{} is not a permutation of 1..={n}",
                spaced(&images)
            )));
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of `i`, both 1-based.
    pub fn apply(&self, i: usize) -> u8 {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    /// All `n!` permutations in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut current: Vec<u8> = (1..=n as u8).collect();
        let mut out = vec![Permutation(current.clone())];
        while next_permutation(&mut current) {
            out.push(Permutation(current.clone()));
        }
        out
    }
}

fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(pivot) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let succ = (pivot + 1..v.len())
        .rev()
        .find(|&i| v[i] > v[pivot])
        .unwrap();
    v.swap(pivot, succ);
    v[pivot + 1..].reverse();
    true
}

/// `2n` permutations: `rho[i]` reads row `i`'s first components, `sigma[j]`
/// reads column `j`'s second components. Repeats are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PermutationTuple {
    rho: Vec<Permutation>,
    sigma: Vec<Permutation>,
}

impl PermutationTuple {
    pub fn new(rho: Vec<Permutation>, sigma: Vec<Permutation>) -> Result<Self> {
        let n = rho.len();
        check_order(n)?;
        if sigma.len() != n {
            return Err(Error::Permutation(format!(
                "{n} row permutations but {} column permutations",
                sigma.len()
            )));
        }
        if let Some(p) = rho.iter().chain(&sigma).find(|p| p.len() != n) {
            return Err(Error::Permutation(format!(
                "permutation {} has length {}, expected {n}",
                spaced(p.as_slice()),
                p.len()
            )));
        }
        Ok(PermutationTuple { rho, sigma })
    }

    pub fn order(&self) -> usize {
        self.rho.len()
    }

    pub fn rho(&self) -> &[Permutation] {
        &self.rho
    }

    pub fn sigma(&self) -> &[Permutation] {
        &self.sigma
    }
}

/// Cell `(i,j)` becomes `⟨ρᵢ(j), σⱼ(i)⟩`.
pub fn from_permutations(t: &PermutationTuple) -> PiMatrix {
    let n = t.order();
    let mut cells = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            cells.push(Pair::new(t.rho[i].0[j], t.sigma[j].0[i]));
        }
    }
    PiMatrix::from_cells_unchecked(n, cells)
}

pub fn to_permutations(m: &PiMatrix) -> PermutationTuple {
    let n = m.order();
    let rho = (0..n)
        .map(|i| Permutation((0..n).map(|j| m.get(i, j).a).collect()))
        .collect();
    let sigma = (0..n)
        .map(|j| Permutation((0..n).map(|i| m.get(i, j).b).collect()))
        .collect();
    PermutationTuple { rho, sigma }
}

fn same_order(x: &PiMatrix, y: &PiMatrix) -> Result<()> {
    if x.n == y.n {
        Ok(())
    } else {
        Err(Error::OrderMismatch {
            left: x.n,
            right: y.n,
        })
    }
}

/// True when no position holds the same pair in both matrices.
pub fn are_disjoint(x: &PiMatrix, y: &PiMatrix) -> Result<bool> {
    same_order(x, y)?;
    Ok(x.cells.iter().zip(&y.cells).all(|(p, q)| p != q))
}

/// Positions holding component-wise equal elements, in row-major order.
pub fn equal_components(x: &PiMatrix, y: &PiMatrix) -> Result<Vec<Position>> {
    same_order(x, y)?;
    let n = x.n;
    Ok(x.cells
        .iter()
        .zip(&y.cells)
        .enumerate()
        .filter(|(_, (p, q))| p == q)
        .map(|(idx, _)| Position::new(idx / n, idx % n))
        .collect())
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `|Πₙ| = (n!)^{2n}`, exact.
pub fn count_pi(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::UnsupportedOrder(0));
    }
    let exponent = u32::try_from(2 * n).map_err(|_| Error::UnsupportedOrder(n))?;
    Ok(factorial(n).pow(exponent))
}
