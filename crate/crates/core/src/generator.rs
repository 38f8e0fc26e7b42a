//! Search for `n²`-tuples of pairwise disjoint pair matrices.
//!
//! The working state is a [`CandidateGrid`]: for each of the `n²` layers
//! (one per target matrix) and each of its `n×n` cells, the set of pairs
//! still consistent with every decision so far. Cells are decided in the
//! fixed order layer `k`, then row `i`, then column `j`. Deciding `⟨a,b⟩` at
//! `(k,i,j)`:
//!
//! 1. collapses the cell to `{⟨a,b⟩}`;
//! 2. removes `⟨a,b⟩` from cell `(i,j)` of every later layer (disjointness);
//! 3. removes every `⟨a,·⟩` from the later cells of row `i` in layer `k`;
//! 4. removes every `⟨·,b⟩` from the later cells of column `j` in layer `k`.
//!
//! Every removal is logged on a trail so that a decision can be undone
//! exactly. A cell emptied by a removal is reported immediately and the
//! search backtracks chronologically.

use std::ops::ControlFlow;
use std::thread;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::check_order;
use crate::error::{Error, Result};
use crate::pi::{Pair, PiMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Removal {
    cell: u32,
    bits: u64,
}

/// A position on the trail, issued by [`CandidateGrid::mark`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrailMark {
    len: usize,
    cursor: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    Consistent,
    /// Some undecided cell ran out of candidates.
    Wipeout,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateGrid {
    n: usize,
    /// Indexed `(k·n + i)·n + j`, which is also the visiting order.
    cells: Vec<u64>,
    trail: Vec<Removal>,
    cursor: usize,
    row_masks: Vec<u64>,
    col_masks: Vec<u64>,
}

impl CandidateGrid {
    pub fn new(n: usize) -> Result<Self> {
        check_order(n)?;
        let nn = n * n;
        let full = if nn == 64 { u64::MAX } else { (1u64 << nn) - 1 };
        let row_masks = (0..n).map(|a| ((1u64 << n) - 1) << (a * n)).collect();
        let col_masks = (0..n)
            .map(|b| (0..n).fold(0u64, |m, a| m | 1u64 << (a * n + b)))
            .collect();
        Ok(CandidateGrid {
            n,
            cells: vec![full; nn * nn],
            trail: Vec::new(),
            cursor: 0,
            row_masks,
            col_masks,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> usize {
        self.n * self.n
    }

    #[inline]
    fn cell_index(&self, k: usize, i: usize, j: usize) -> usize {
        (k * self.n + i) * self.n + j
    }

    /// Candidate bitset of cell `(i,j)` in layer `k`, bit `(a−1)·n + (b−1)`.
    pub fn candidates(&self, k: usize, i: usize, j: usize) -> u64 {
        self.cells[self.cell_index(k, i, j)]
    }

    pub fn candidate_pairs(&self, k: usize, i: usize, j: usize) -> Vec<Pair> {
        bits(self.candidates(k, i, j))
            .map(|idx| Pair::from_index(idx, self.n))
            .collect()
    }

    pub fn raw_cells(&self) -> &[u64] {
        &self.cells
    }

    /// The next cell to decide as `(k,i,j)`, or `None` once every cell is decided.
    pub fn cursor(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        (!self.is_complete()).then(|| {
            let c = self.cursor;
            (c / (n * n), (c / n) % n, c % n)
        })
    }

    pub fn is_complete(&self) -> bool {
        self.cursor == self.cells.len()
    }

    pub fn trail_len(&self) -> usize {
        self.trail.len()
    }

    pub fn mark(&self) -> TrailMark {
        TrailMark {
            len: self.trail.len(),
            cursor: self.cursor,
        }
    }

    /// Decides `p` at the cursor cell `(k,i,j)`.
    pub fn propagate(&mut self, k: usize, i: usize, j: usize, p: Pair) -> Result<Propagation> {
        let n = self.n;
        if k >= n * n || i >= n || j >= n || self.cell_index(k, i, j) != self.cursor {
            return Err(Error::Contract(format!(
                "cell ({},{},{}) is not the cursor cell {:?}",
                k + 1,
                i + 1,
                j + 1,
                self.cursor().map(|(k, i, j)| (k + 1, i + 1, j + 1))
            )));
        }
        if !p.in_range(n) || self.cells[self.cursor] & (1u64 << p.index(n)) == 0 {
            return Err(Error::Contract(format!(
                "pair {p} is not a candidate at ({},{},{})",
                k + 1,
                i + 1,
                j + 1
            )));
        }
        Ok(self.assign(p.index(n)))
    }

    /// Decides candidate bit `bit` at the cursor. The bit must be a candidate.
    fn assign(&mut self, bit: usize) -> Propagation {
        let n = self.n;
        let nn = n * n;
        let cell = self.cursor;
        let k = cell / nn;
        let (i, j) = ((cell / n) % n, cell % n);
        let chosen = 1u64 << bit;
        debug_assert!(self.cells[cell] & chosen != 0);

        self.remove(cell, !chosen);
        self.cursor += 1;

        let mut consistent = true;
        for t in k + 1..nn {
            consistent &= self.remove(self.cell_index(t, i, j), chosen);
        }
        let row_mask = self.row_masks[bit / n];
        for t in j + 1..n {
            consistent &= self.remove(self.cell_index(k, i, t), row_mask);
        }
        let col_mask = self.col_masks[bit % n];
        for t in i + 1..n {
            consistent &= self.remove(self.cell_index(k, t, j), col_mask);
        }
        if consistent {
            Propagation::Consistent
        } else {
            Propagation::Wipeout
        }
    }

    /// Returns false when the cell is left empty.
    #[inline]
    fn remove(&mut self, cell: usize, mask: u64) -> bool {
        let removed = self.cells[cell] & mask;
        if removed != 0 {
            self.cells[cell] &= !mask;
            self.trail.push(Removal {
                cell: cell as u32,
                bits: removed,
            });
        }
        self.cells[cell] != 0
    }

    pub fn undo(&mut self, mark: TrailMark) -> Result<()> {
        if mark.len > self.trail.len() || mark.cursor > self.cursor {
            return Err(Error::Contract(format!(
                "stale trail mark {mark:?} (trail length {}, cursor {})",
                self.trail.len(),
                self.cursor
            )));
        }
        self.rewind(mark);
        Ok(())
    }

    #[inline]
    fn rewind(&mut self, mark: TrailMark) {
        while self.trail.len() > mark.len {
            let r = self.trail.pop().unwrap();
            self.cells[r.cell as usize] |= r.bits;
        }
        self.cursor = mark.cursor;
    }

    /// The decided layer `k` as a pair matrix, once all its cells are decided.
    pub fn layer(&self, k: usize) -> Option<PiMatrix> {
        let n = self.n;
        let start = k * n * n;
        if k >= n * n || self.cursor < start + n * n {
            return None;
        }
        let cells = self.cells[start..start + n * n]
            .iter()
            .map(|&c| Pair::from_index(c.trailing_zeros() as usize, n))
            .collect();
        Some(PiMatrix::from_cells_unchecked(n, cells))
    }

    pub fn decided_tuple(&self) -> Option<Vec<PiMatrix>> {
        (0..self.layers()).map(|k| self.layer(k)).collect()
    }
}

fn bits(mut set: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (set != 0).then(|| {
            let idx = set.trailing_zeros() as usize;
            set &= set - 1;
            idx
        })
    })
}

/// Iteration order over a cell's candidate pairs.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum CandidateOrder {
    /// By first component, then second.
    #[default]
    RowMajor,
    /// By second component, then first.
    ColumnMajor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChoiceStrategy {
    /// Lexicographically smallest candidate.
    First,
    /// Uniform among remaining candidates, reproducible from the seed.
    Random { seed: u64 },
    /// Every candidate in the given order.
    Exhaustive { order: CandidateOrder },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenerationBudget {
    max_backtracks: u64,
    max_restarts: u32,
}

impl GenerationBudget {
    pub fn new(max_backtracks: u64, max_restarts: u32) -> Result<Self> {
        if max_backtracks == 0 || max_restarts == 0 {
            return Err(Error::Contract(
                "budget limits must be positive".to_string(),
            ));
        }
        Ok(GenerationBudget {
            max_backtracks,
            max_restarts,
        })
    }

    pub fn max_backtracks(&self) -> u64 {
        self.max_backtracks
    }

    pub fn max_restarts(&self) -> u32 {
        self.max_restarts
    }
}

impl Default for GenerationBudget {
    fn default() -> Self {
        GenerationBudget {
            max_backtracks: 20_000,
            max_restarts: 1_000,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GenerationStats {
    pub restarts: u32,
    pub nodes: u64,
    pub backtracks: u64,
}

enum Picker {
    Ordered(CandidateOrder),
    Random(Box<ChaCha8Rng>),
}

impl Picker {
    fn pick(&mut self, untried: u64, n: usize) -> usize {
        debug_assert!(untried != 0);
        match self {
            Picker::Ordered(CandidateOrder::RowMajor) => untried.trailing_zeros() as usize,
            Picker::Ordered(CandidateOrder::ColumnMajor) => (0..n)
                .flat_map(|b| (0..n).map(move |a| a * n + b))
                .find(|&idx| untried & (1u64 << idx) != 0)
                .unwrap(),
            Picker::Random(rng) => {
                let skip = rng.random_range(0..untried.count_ones());
                bits(untried).nth(skip as usize).unwrap()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SearchOutcome {
    Stopped,
    Exhausted,
    LimitReached,
}

#[derive(Debug, Clone, Copy)]
struct Limits {
    backtracks: Option<u64>,
    nodes: Option<u64>,
}

struct Frame {
    mark: TrailMark,
    untried: u64,
}

/// Depth-first search below the grid's current state. Never undoes
/// decisions made before the call.
fn search<F>(
    grid: &mut CandidateGrid,
    picker: &mut Picker,
    limits: Limits,
    stats: &mut GenerationStats,
    mut on_complete: F,
) -> SearchOutcome
where
    F: FnMut(&CandidateGrid) -> ControlFlow<()>,
{
    let n = grid.n;
    if grid.is_complete() {
        return match on_complete(grid) {
            ControlFlow::Break(()) => SearchOutcome::Stopped,
            ControlFlow::Continue(()) => SearchOutcome::Exhausted,
        };
    }
    let (start_nodes, start_backtracks) = (stats.nodes, stats.backtracks);
    let mut stack = vec![Frame {
        mark: grid.mark(),
        untried: grid.cells[grid.cursor],
    }];
    while let Some(top) = stack.last_mut() {
        grid.rewind(top.mark);
        if top.untried == 0 {
            stack.pop();
            stats.backtracks += 1;
            if limits
                .backtracks
                .is_some_and(|max| stats.backtracks - start_backtracks >= max)
            {
                return SearchOutcome::LimitReached;
            }
            continue;
        }
        if limits
            .nodes
            .is_some_and(|max| stats.nodes - start_nodes >= max)
        {
            return SearchOutcome::LimitReached;
        }
        let bit = picker.pick(top.untried, n);
        top.untried &= !(1u64 << bit);
        stats.nodes += 1;
        if grid.assign(bit) == Propagation::Wipeout {
            continue;
        }
        if grid.is_complete() {
            if on_complete(grid).is_break() {
                return SearchOutcome::Stopped;
            }
        } else {
            stack.push(Frame {
                mark: grid.mark(),
                untried: grid.cells[grid.cursor],
            });
        }
    }
    SearchOutcome::Exhausted
}

/// Produces `n²` pairwise disjoint pair matrices.
///
/// Under [`ChoiceStrategy::Random`] the search restarts after
/// `max_backtracks` backtracks, with restart `r` drawing from stream `r` of
/// the seeded generator, up to `max_restarts` restarts. The deterministic
/// strategies make a single attempt with the whole budget
/// (`max_backtracks · (max_restarts + 1)` backtracks).
pub fn generate_tuple(
    n: usize,
    strategy: ChoiceStrategy,
    budget: GenerationBudget,
) -> Result<(Vec<PiMatrix>, GenerationStats)> {
    let mut grid = CandidateGrid::new(n)?;
    let mut stats = GenerationStats::default();
    let first_found = |_: &CandidateGrid| ControlFlow::Break(());

    let seed = match strategy {
        ChoiceStrategy::Random { seed } => seed,
        ChoiceStrategy::First | ChoiceStrategy::Exhaustive { .. } => {
            let order = match strategy {
                ChoiceStrategy::Exhaustive { order } => order,
                _ => CandidateOrder::RowMajor,
            };
            let limits = Limits {
                backtracks: Some(
                    budget
                        .max_backtracks
                        .saturating_mul(u64::from(budget.max_restarts) + 1),
                ),
                nodes: None,
            };
            let mut picker = Picker::Ordered(order);
            return match search(&mut grid, &mut picker, limits, &mut stats, first_found) {
                SearchOutcome::Stopped => Ok((grid.decided_tuple().unwrap(), stats)),
                SearchOutcome::Exhausted => Err(Error::NoSolution),
                SearchOutcome::LimitReached => Err(Error::BudgetExhausted {
                    restarts: 0,
                    backtracks: stats.backtracks,
                }),
            };
        }
    };

    let limits = Limits {
        backtracks: Some(budget.max_backtracks),
        nodes: None,
    };
    for restart in 0..=budget.max_restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(u64::from(restart));
        let mut picker = Picker::Random(Box::new(rng));
        grid.rewind(TrailMark { len: 0, cursor: 0 });
        stats.restarts = restart;
        match search(&mut grid, &mut picker, limits, &mut stats, first_found) {
            SearchOutcome::Stopped => return Ok((grid.decided_tuple().unwrap(), stats)),
            SearchOutcome::Exhausted => return Err(Error::NoSolution),
            SearchOutcome::LimitReached => {}
        }
    }
    Err(Error::BudgetExhausted {
        restarts: budget.max_restarts,
        backtracks: stats.backtracks,
    })
}

/// Orders from which full enumeration is refused unless explicitly allowed.
pub const LARGE_ENUMERATION_ORDER: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerateOptions {
    pub order: CandidateOrder,
    /// Required for `n ≥ 3`.
    pub allow_large: bool,
    /// Stop after this many decisions; the result is then partial.
    pub max_nodes: Option<u64>,
    /// Worker threads for [`count_tuples`]; `1` runs serially.
    pub jobs: usize,
}

impl Default for EnumerateOptions {
    fn default() -> Self {
        EnumerateOptions {
            order: CandidateOrder::RowMajor,
            allow_large: false,
            max_nodes: None,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration {
    pub count: BigUint,
    pub nodes: u64,
    pub backtracks: u64,
    /// False when `max_nodes` cut the search short.
    pub complete: bool,
}

fn enumeration_guard(n: usize, opts: &EnumerateOptions) -> Result<()> {
    check_order(n)?;
    if n >= LARGE_ENUMERATION_ORDER && !opts.allow_large {
        return Err(Error::Refused(format!(
            "the tuple search for n={n} is far beyond desk scale \
             (there are 6670903752021072936960 tuples already at n=3); \
             pass the large-enumeration opt-in to explore it anyway"
        )));
    }
    Ok(())
}

/// Visits every `n²`-tuple of pairwise disjoint pair matrices exactly once,
/// in depth-first order.
pub fn enumerate_tuples<F>(n: usize, opts: &EnumerateOptions, mut visitor: F) -> Result<Enumeration>
where
    F: FnMut(&[PiMatrix]),
{
    enumeration_guard(n, opts)?;
    let mut grid = CandidateGrid::new(n)?;
    let mut stats = GenerationStats::default();
    let mut count: u128 = 0;
    let limits = Limits {
        backtracks: None,
        nodes: opts.max_nodes,
    };
    let outcome = search(
        &mut grid,
        &mut Picker::Ordered(opts.order),
        limits,
        &mut stats,
        |g| {
            count += 1;
            visitor(&g.decided_tuple().unwrap());
            ControlFlow::Continue(())
        },
    );
    Ok(Enumeration {
        count: BigUint::from(count),
        nodes: stats.nodes,
        backtracks: stats.backtracks,
        complete: outcome == SearchOutcome::Exhausted,
    })
}

/// Counts the tuples without materializing them. With `jobs > 1` (and no
/// node limit) the first cell's candidates are split across worker threads,
/// each owning its own grid; totals are identical to the serial count.
pub fn count_tuples(n: usize, opts: &EnumerateOptions) -> Result<Enumeration> {
    enumeration_guard(n, opts)?;
    let limits = Limits {
        backtracks: None,
        nodes: opts.max_nodes,
    };

    let count_below = |grid: &mut CandidateGrid, stats: &mut GenerationStats| {
        let mut count: u128 = 0;
        let outcome = search(
            grid,
            &mut Picker::Ordered(opts.order),
            limits,
            stats,
            |_| {
                count += 1;
                ControlFlow::Continue(())
            },
        );
        (count, outcome)
    };

    if opts.jobs <= 1 || opts.max_nodes.is_some() {
        let mut grid = CandidateGrid::new(n)?;
        let mut stats = GenerationStats::default();
        let (count, outcome) = count_below(&mut grid, &mut stats);
        return Ok(Enumeration {
            count: BigUint::from(count),
            nodes: stats.nodes,
            backtracks: stats.backtracks,
            complete: outcome == SearchOutcome::Exhausted,
        });
    }

    let root = CandidateGrid::new(n)?;
    let branches: Vec<usize> = bits(root.cells[0]).collect();
    let jobs = opts.jobs.min(branches.len());
    let results: Vec<(u128, GenerationStats)> = thread::scope(|scope| {
        let handles: Vec<_> = (0..jobs)
            .map(|worker| {
                let branches = &branches;
                let root = &root;
                let count_below = &count_below;
                scope.spawn(move || {
                    let mut total = 0u128;
                    let mut stats = GenerationStats::default();
                    for &bit in branches.iter().skip(worker).step_by(jobs) {
                        let mut grid = root.clone();
                        stats.nodes += 1;
                        if grid.assign(bit) == Propagation::Wipeout {
                            continue;
                        }
                        total += count_below(&mut grid, &mut stats).0;
                    }
                    (total, stats)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let mut count = 0u128;
    let mut nodes = 0;
    let mut backtracks = 0;
    for (c, s) in results {
        count += c;
        nodes += s.nodes;
        backtracks += s.backtracks;
    }
    Ok(Enumeration {
        count: BigUint::from(count),
        nodes,
        backtracks,
        complete: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pi::{are_disjoint, validate_pi};

    fn p(a: u8, b: u8) -> Pair {
        Pair::new(a, b)
    }

    #[test]
    fn fresh_grid_is_full() {
        let g = CandidateGrid::new(2).unwrap();
        assert_eq!(g.layers(), 4);
        assert!(g.raw_cells().iter().all(|&c| c == 0b1111));
        assert_eq!(g.cursor(), Some((0, 0, 0)));
        let g = CandidateGrid::new(8).unwrap();
        assert!(g.raw_cells().iter().all(|&c| c == u64::MAX));
        assert!(CandidateGrid::new(0).is_err());
        assert!(CandidateGrid::new(9).is_err());
    }

    #[test]
    fn first_decision_removals() {
        let mut g = CandidateGrid::new(2).unwrap();
        let out = g.propagate(0, 0, 0, p(1, 1)).unwrap();
        assert_eq!(out, Propagation::Consistent);
        assert_eq!(g.candidate_pairs(0, 0, 0), vec![p(1, 1)]);
        assert_eq!(g.candidate_pairs(0, 0, 1), vec![p(2, 1), p(2, 2)]);
        assert_eq!(g.candidate_pairs(0, 1, 0), vec![p(1, 2), p(2, 2)]);
        assert_eq!(g.candidate_pairs(0, 1, 1).len(), 4);
        for k in 1..4 {
            assert_eq!(g.candidate_pairs(k, 0, 0), vec![p(1, 2), p(2, 1), p(2, 2)]);
            assert_eq!(g.candidate_pairs(k, 0, 1).len(), 4);
        }
        assert_eq!(g.cursor(), Some((0, 0, 1)));
    }

    #[test]
    fn order_one_has_no_cross_layer_removal() {
        let mut g = CandidateGrid::new(1).unwrap();
        assert_eq!(
            g.propagate(0, 0, 0, p(1, 1)).unwrap(),
            Propagation::Consistent
        );
        assert!(g.is_complete());
        assert_eq!(g.trail_len(), 0);
        assert_eq!(g.decided_tuple().unwrap()[0].to_rows(), vec![vec![p(1, 1)]]);
    }

    #[test]
    fn propagate_then_undo_is_identity() {
        let mut g = CandidateGrid::new(3).unwrap();
        let before = g.clone();
        let m = g.mark();
        g.propagate(0, 0, 0, p(2, 3)).unwrap();
        g.propagate(0, 0, 1, p(1, 1)).unwrap();
        g.undo(m).unwrap();
        assert_eq!(g, before);
    }

    #[test]
    fn contract_violations() {
        let mut g = CandidateGrid::new(2).unwrap();
        assert!(matches!(
            g.propagate(0, 0, 1, p(1, 1)),
            Err(Error::Contract(_))
        ));
        g.propagate(0, 0, 0, p(1, 1)).unwrap();
        assert!(matches!(
            g.propagate(0, 0, 1, p(1, 2)),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            g.propagate(0, 0, 1, p(3, 1)),
            Err(Error::Contract(_))
        ));
        let late = g.mark();
        g.undo(TrailMark { len: 0, cursor: 0 }).unwrap();
        assert!(matches!(g.undo(late), Err(Error::Contract(_))));
    }

    #[test]
    fn forced_last_cell_completes_layer() {
        let mut g = CandidateGrid::new(2).unwrap();
        g.propagate(0, 0, 0, p(1, 1)).unwrap();
        g.propagate(0, 0, 1, p(2, 1)).unwrap();
        // column 1 of layer 1 now needs a second component ≠ 1
        assert_eq!(g.candidate_pairs(0, 1, 0), vec![p(1, 2), p(2, 2)]);
        // column 2 of layer 1 needs second component 2 as well
        g.propagate(0, 1, 0, p(1, 2)).unwrap();
        assert_eq!(g.candidate_pairs(0, 1, 1), vec![p(2, 2)]);
        assert_eq!(
            g.propagate(0, 1, 1, p(2, 2)).unwrap(),
            Propagation::Consistent
        );
        let layer = g.layer(0).unwrap();
        assert!(validate_pi(&layer.to_rows()).unwrap().is_ok());
    }

    #[test]
    fn wipeout_is_detected_eagerly() {
        let mut g = CandidateGrid::new(2).unwrap();
        for (i, j, pair) in [
            (0, 0, p(1, 1)),
            (0, 1, p(2, 1)),
            (1, 0, p(1, 2)),
            (1, 1, p(2, 2)),
        ] {
            assert_eq!(g.propagate(0, i, j, pair).unwrap(), Propagation::Consistent);
        }
        assert_eq!(
            g.propagate(1, 0, 0, p(2, 2)).unwrap(),
            Propagation::Consistent
        );
        assert_eq!(
            g.propagate(1, 0, 1, p(1, 1)).unwrap(),
            Propagation::Consistent
        );
        // forces layer 2 cell (2,2) to ⟨2,2⟩, already taken by layer 1
        let before = g.mark();
        assert_eq!(g.propagate(1, 1, 0, p(1, 1)).unwrap(), Propagation::Wipeout);
        assert_eq!(g.candidates(1, 1, 1), 0);
        g.undo(before).unwrap();
        assert_eq!(g.candidate_pairs(1, 1, 1), vec![p(1, 2)]);
    }

    #[test]
    fn first_strategy_n2() {
        let (tuple, _) =
            generate_tuple(2, ChoiceStrategy::First, GenerationBudget::default()).unwrap();
        assert_eq!(tuple.len(), 4);
        for m in &tuple {
            assert!(validate_pi(&m.to_rows()).unwrap().is_ok());
        }
        for x in 0..4 {
            for y in x + 1..4 {
                assert!(are_disjoint(&tuple[x], &tuple[y]).unwrap());
            }
        }
    }

    #[test]
    fn order_one_tuple() {
        let (tuple, _) = generate_tuple(
            1,
            ChoiceStrategy::Random { seed: 9 },
            GenerationBudget::default(),
        )
        .unwrap();
        assert_eq!(tuple.len(), 1);
        assert_eq!(tuple[0].to_rows(), vec![vec![p(1, 1)]]);
    }

    #[test]
    fn random_is_reproducible() {
        let budget = GenerationBudget::default();
        let a = generate_tuple(3, ChoiceStrategy::Random { seed: 42 }, budget).unwrap();
        let b = generate_tuple(3, ChoiceStrategy::Random { seed: 42 }, budget).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tight_budget_fails_cleanly() {
        let budget = GenerationBudget::new(1, 1).unwrap();
        let seeds_failing = (0..50)
            .map(|seed| generate_tuple(4, ChoiceStrategy::Random { seed }, budget))
            .filter(|r| matches!(r, Err(Error::BudgetExhausted { restarts: 1, .. })))
            .count();
        assert!(seeds_failing > 0);
        assert!(GenerationBudget::new(0, 5).is_err());
        assert!(GenerationBudget::new(5, 0).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let e = enumerate_tuples(1, &EnumerateOptions::default(), |_| {}).unwrap();
        assert_eq!(e.count, BigUint::from(1u32));
        assert!(e.complete);
        let e = enumerate_tuples(2, &EnumerateOptions::default(), |_| {}).unwrap();
        assert_eq!(e.count, BigUint::from(288u32));
    }

    #[test]
    fn parallel_count_matches_serial() {
        let serial = count_tuples(2, &EnumerateOptions::default()).unwrap();
        let parallel = count_tuples(
            2,
            &EnumerateOptions {
                jobs: 4,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(serial.count, parallel.count);
        assert_eq!(serial.count, BigUint::from(288u32));
    }

    #[test]
    fn large_orders_need_opt_in() {
        let r = enumerate_tuples(3, &EnumerateOptions::default(), |_| {});
        assert!(matches!(r, Err(Error::Refused(_))));
        let partial = count_tuples(
            3,
            &EnumerateOptions {
                allow_large: true,
                max_nodes: Some(5_000),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!partial.complete);
        assert_eq!(partial.nodes, 5_000);
    }
}
