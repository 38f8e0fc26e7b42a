#![allow(dead_code)]

use std::collections::HashSet;

use proptest::prelude::*;
use sudoku_pi_core::{from_permutations, Pair, Permutation, PermutationTuple, PiMatrix};

pub fn grid(rows: &[&[(u8, u8)]]) -> Vec<Vec<Pair>> {
    rows.iter()
        .map(|r| r.iter().map(|&(a, b)| Pair::new(a, b)).collect())
        .collect()
}

pub fn pi_prime() -> PiMatrix {
    PiMatrix::new(grid(&[
        &[(3, 1), (2, 1), (1, 2)],
        &[(2, 3), (3, 2), (1, 1)],
        &[(3, 2), (1, 3), (2, 3)],
    ]))
    .unwrap()
}

pub fn pi_double_prime() -> PiMatrix {
    PiMatrix::new(grid(&[
        &[(3, 2), (1, 3), (2, 1)],
        &[(3, 3), (1, 1), (2, 2)],
        &[(2, 1), (1, 2), (3, 3)],
    ]))
    .unwrap()
}

pub fn pi_triple_prime() -> PiMatrix {
    PiMatrix::new(grid(&[
        &[(3, 1), (1, 3), (2, 2)],
        &[(2, 2), (3, 1), (1, 1)],
        &[(2, 3), (1, 2), (3, 3)],
    ]))
    .unwrap()
}

/// All Π_n matrices by brute force over every n×n grid of pairs, filtered by
/// the row/column permutation conditions checked directly.
pub fn brute_force_pi(n: usize) -> Vec<Vec<Pair>> {
    let pairs: Vec<Pair> = (1..=n as u8)
        .flat_map(|a| (1..=n as u8).map(move |b| Pair::new(a, b)))
        .collect();
    let cells = n * n;
    let total = pairs.len().pow(cells as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut flat = Vec::with_capacity(cells);
        for _ in 0..cells {
            flat.push(pairs[code % pairs.len()]);
            code /= pairs.len();
        }
        if oracle_is_pi(&flat, n) {
            out.push(flat);
        }
    }
    out
}

/// Independent check of the pair-matrix conditions on a row-major slice.
pub fn oracle_is_pi(flat: &[Pair], n: usize) -> bool {
    let rows_ok = (0..n).all(|i| {
        let set: HashSet<u8> = (0..n).map(|j| flat[i * n + j].a).collect();
        set.len() == n && set.iter().all(|&a| (1..=n as u8).contains(&a))
    });
    let cols_ok = (0..n).all(|j| {
        let set: HashSet<u8> = (0..n).map(|i| flat[i * n + j].b).collect();
        set.len() == n && set.iter().all(|&b| (1..=n as u8).contains(&b))
    });
    rows_ok && cols_ok
}

/// Independent check that a tuple is pairwise disjoint and each member valid.
pub fn oracle_tuple_ok(tuple: &[PiMatrix]) -> bool {
    let n = tuple[0].order();
    tuple.len() == n * n
        && tuple.iter().all(|m| oracle_is_pi(m.cells(), n))
        && (0..n * n).all(|cell| {
            let set: HashSet<Pair> = tuple.iter().map(|m| m.cells()[cell]).collect();
            set.len() == tuple.len()
        })
}

/// Independent check of the Sudoku conditions.
pub fn oracle_is_sudoku(rows: &[Vec<u32>], n: usize) -> bool {
    let size = n * n;
    let full: HashSet<u32> = (1..=size as u32).collect();
    let rows_ok = rows
        .iter()
        .all(|r| r.iter().copied().collect::<HashSet<_>>() == full);
    let cols_ok = (0..size).all(|c| rows.iter().map(|r| r[c]).collect::<HashSet<_>>() == full);
    let blocks_ok = (0..size).all(|b| {
        let (br, bc) = (b / n, b % n);
        (0..size)
            .map(|t| rows[br * n + t / n][bc * n + t % n])
            .collect::<HashSet<_>>()
            == full
    });
    rows.len() == size && rows_ok && cols_ok && blocks_ok
}

pub fn permutation_strategy(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::new(v).unwrap())
}

pub fn tuple_strategy(n: usize) -> impl Strategy<Value = PermutationTuple> {
    (
        prop::collection::vec(permutation_strategy(n), n),
        prop::collection::vec(permutation_strategy(n), n),
    )
        .prop_map(|(rho, sigma)| PermutationTuple::new(rho, sigma).unwrap())
}

pub fn pi_strategy(n: usize) -> impl Strategy<Value = PiMatrix> {
    tuple_strategy(n).prop_map(|t| from_permutations(&t))
}
