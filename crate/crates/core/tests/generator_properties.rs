mod common;

use std::collections::HashSet;

use common::*;
use num_bigint::BigUint;
use proptest::prelude::*;
use sudoku_pi_core::text::{join_documents, write_grid, write_pi};
use sudoku_pi_core::{
    compose, enumerate_tuples, generate_tuple, sperm_disjoint, theta, CandidateGrid,
    CandidateOrder, ChoiceStrategy, EnumerateOptions, GenerationBudget, Pair, SPermMatrix,
};

/// Plain cell-by-cell backtracking over 4×4 grids, no shared code with the
/// library.
fn brute_force_sudoku_4x4() -> Vec<Vec<Vec<u32>>> {
    fn fits(g: &[u32; 16], cell: usize, v: u32) -> bool {
        let (r, c) = (cell / 4, cell % 4);
        (0..4).all(|t| g[r * 4 + t] != v && g[t * 4 + c] != v)
            && (0..4).all(|t| g[(r / 2 * 2 + t / 2) * 4 + c / 2 * 2 + t % 2] != v)
    }
    fn go(g: &mut [u32; 16], cell: usize, out: &mut Vec<Vec<Vec<u32>>>) {
        if cell == 16 {
            out.push(g.chunks(4).map(<[u32]>::to_vec).collect());
            return;
        }
        for v in 1..=4 {
            if fits(g, cell, v) {
                g[cell] = v;
                go(g, cell + 1, out);
                g[cell] = 0;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut [0; 16], 0, &mut out);
    out
}

#[test]
fn brute_force_oracle_finds_288() {
    assert_eq!(brute_force_sudoku_4x4().len(), 288);
}

#[test]
fn exhaustive_enumeration_at_order_two() {
    let brute: HashSet<Vec<Vec<u32>>> = brute_force_sudoku_4x4().into_iter().collect();
    for order in [CandidateOrder::RowMajor, CandidateOrder::ColumnMajor] {
        let opts = EnumerateOptions {
            order,
            ..Default::default()
        };
        let mut canonical = HashSet::new();
        let mut grids = HashSet::new();
        let mut bad = 0;
        let e = enumerate_tuples(2, &opts, |tuple| {
            if !oracle_tuple_ok(tuple) {
                bad += 1;
            }
            canonical.insert(join_documents(tuple.iter().map(write_pi)));
            let parts: Vec<SPermMatrix> = tuple.iter().map(theta).collect();
            grids.insert(compose(&parts).unwrap().to_rows());
        })
        .unwrap();
        assert_eq!(e.count, BigUint::from(288u32));
        assert!(e.complete);
        assert_eq!(bad, 0);
        assert_eq!(canonical.len(), 288);
        assert_eq!(grids, brute);
    }
}

#[test]
fn generated_tuples_are_sound() {
    let budget = GenerationBudget::default();
    for n in 1..=4 {
        for seed in 0..60 {
            let (tuple, _) = generate_tuple(n, ChoiceStrategy::Random { seed }, budget).unwrap();
            assert!(oracle_tuple_ok(&tuple), "n={n} seed={seed}");
            let parts: Vec<_> = tuple.iter().map(theta).collect();
            for x in 0..parts.len() {
                for y in x + 1..parts.len() {
                    assert!(sperm_disjoint(&parts[x], &parts[y]).unwrap());
                }
            }
            let grid = compose(&parts).unwrap();
            assert!(oracle_is_sudoku(&grid.to_rows(), n));
        }
    }
}

#[test]
fn deterministic_strategies() {
    let budget = GenerationBudget::default();
    for n in 2..=4 {
        let a = generate_tuple(n, ChoiceStrategy::First, budget).unwrap();
        let b = generate_tuple(n, ChoiceStrategy::First, budget).unwrap();
        assert_eq!(a, b);
        assert!(oracle_tuple_ok(&a.0));
        let ex = generate_tuple(
            n,
            ChoiceStrategy::Exhaustive {
                order: CandidateOrder::RowMajor,
            },
            budget,
        )
        .unwrap();
        assert_eq!(ex.0, a.0);
    }
    let grids: HashSet<String> = (0..20)
        .map(|seed| {
            let (t, _) = generate_tuple(3, ChoiceStrategy::Random { seed }, budget).unwrap();
            let parts: Vec<_> = t.iter().map(theta).collect();
            write_grid(&compose(&parts).unwrap())
        })
        .collect();
    assert!(
        grids.len() > 1,
        "different seeds should give different grids"
    );
}

#[test]
fn first_strategy_takes_smallest_pair_first() {
    let (tuple, _) = generate_tuple(3, ChoiceStrategy::First, GenerationBudget::default()).unwrap();
    assert_eq!(tuple[0].get(0, 0), Pair::new(1, 1));
}

#[derive(Debug, Clone)]
enum Op {
    Decide(usize),
    Mark,
    Undo(usize),
}

fn op_strategy() -> impl Strategy<Value = Op> {
    prop_oneof![
        6 => any::<usize>().prop_map(Op::Decide),
        2 => Just(Op::Mark),
        2 => any::<usize>().prop_map(Op::Undo),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn trail_restores_and_sets_only_shrink(
        n in 2usize..=3,
        ops in prop::collection::vec(op_strategy(), 1..60),
    ) {
        let mut grid = CandidateGrid::new(n).unwrap();
        let fresh = grid.clone();
        let mut marks = vec![(grid.mark(), grid.clone())];
        for op in ops {
            match op {
                Op::Decide(pick) => {
                    let Some((k, i, j)) = grid.cursor() else { continue };
                    let cands = grid.candidate_pairs(k, i, j);
                    if cands.is_empty() {
                        continue;
                    }
                    let before = grid.raw_cells().to_vec();
                    let cursor_cell = (k * n + i) * n + j;
                    grid.propagate(k, i, j, cands[pick % cands.len()]).unwrap();
                    for (idx, (&now, &was)) in grid.raw_cells().iter().zip(&before).enumerate() {
                        prop_assert_eq!(now & !was, 0, "cell {} grew", idx);
                        if idx < cursor_cell {
                            prop_assert_eq!(now, was, "decided cell {} changed", idx);
                        }
                    }
                }
                Op::Mark => marks.push((grid.mark(), grid.clone())),
                Op::Undo(pick) => {
                    let keep = pick % marks.len();
                    marks.truncate(keep + 1);
                    let (mark, snapshot) = marks[keep].clone();
                    // every undecided cell only shrank since the mark
                    for (&now, &was) in grid.raw_cells().iter().zip(snapshot.raw_cells()) {
                        prop_assert_eq!(now & !was, 0);
                    }
                    grid.undo(mark).unwrap();
                    prop_assert_eq!(&grid, &snapshot);
                }
            }
        }
        grid.undo(marks[0].0).unwrap();
        prop_assert_eq!(grid, fresh);
    }

    #[test]
    fn random_generation_is_reproducible(n in 1usize..=4, seed in any::<u64>()) {
        let budget = GenerationBudget::default();
        let a = generate_tuple(n, ChoiceStrategy::Random { seed }, budget).unwrap();
        let b = generate_tuple(n, ChoiceStrategy::Random { seed }, budget).unwrap();
        prop_assert!(oracle_tuple_ok(&a.0));
        prop_assert_eq!(a, b);
    }
}
