//! Enumeration of feasible `(2k+1) × (2k+1)` windows over a piece bag and the
//! candidate neighborhoods they induce.
//!
//! Full enumeration grows windows from the top-left cell `(-k, k)`: first the
//! top row rightwards, each cell looked up by the one color it must match on
//! its left; then the left column downwards, matched on its top color; then the
//! interior row by row, where every cell has both a left and a top neighbor and
//! is looked up by that color pair. Candidate neighborhoods are computed per
//! center instead, growing the window outwards from the center the same way,
//! which lets a piece's search stop once two neighborhoods are known.

use alloc::vec::Vec;

use crate::constraint::WindowCoord;
use crate::grid::{Color, Direction, PieceBag, PieceId};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum WindowError {
    #[error("window enumeration gave up after {budget} partial assemblies")]
    BudgetExceeded { budget: u64 },
    #[error("window radius must be at least 1")]
    ZeroRadius,
}

/// The six unordered side pairs of a piece, each in a fixed order.
pub const SIDE_PAIRS: [(Direction, Direction); 6] = [
    (Direction::Right, Direction::Up),
    (Direction::Right, Direction::Left),
    (Direction::Right, Direction::Down),
    (Direction::Up, Direction::Left),
    (Direction::Up, Direction::Down),
    (Direction::Left, Direction::Down),
];

fn side_pair_slot(a: Direction, b: Direction) -> Option<(usize, bool)> {
    SIDE_PAIRS.iter().enumerate().find_map(|(i, &(x, y))| {
        if (x, y) == (a, b) {
            Some((i, false))
        } else if (x, y) == (b, a) {
            Some((i, true))
        } else {
            None
        }
    })
}

#[derive(Debug, Clone, Default)]
struct PairTable {
    // sorted by (key, id)
    keys: Vec<u64>,
    ids: Vec<PieceId>,
}

impl PairTable {
    fn lookup(&self, key: u64) -> &[PieceId] {
        let lo = self.keys.partition_point(|&k| k < key);
        let hi = self.keys.partition_point(|&k| k <= key);
        &self.ids[lo..hi]
    }
}

/// Lookup tables from colors to the pieces showing them.
#[derive(Debug, Clone)]
pub struct ColorIndexes {
    q: u32,
    // side[dir * (q + 1) + color], ids ascending
    side: Vec<Vec<PieceId>>,
    pairs: [PairTable; 6],
}

impl ColorIndexes {
    pub fn build(bag: &PieceBag) -> Self {
        let q = bag.q();
        let stride = q as usize + 1;
        let mut side = alloc::vec![Vec::new(); 4 * stride];
        let mut entries: [Vec<(u64, PieceId)>; 6] = Default::default();
        for id in bag.ids() {
            let piece = bag[id];
            for dir in Direction::ALL {
                side[dir.index() * stride + piece[dir] as usize].push(id);
            }
            for (slot, &(a, b)) in SIDE_PAIRS.iter().enumerate() {
                entries[slot].push((Self::key(q, piece[a], piece[b]), id));
            }
        }
        let pairs = entries.map(|mut e| {
            e.sort_unstable();
            PairTable { keys: e.iter().map(|&(k, _)| k).collect(), ids: e.iter().map(|&(_, id)| id).collect() }
        });
        Self { q, side, pairs }
    }

    fn key(q: u32, a: Color, b: Color) -> u64 {
        a as u64 * (q as u64 + 1) + b as u64
    }

    /// Pieces with color `color` on side `dir`, ascending.
    pub fn with_side(&self, dir: Direction, color: Color) -> &[PieceId] {
        if color == 0 || color > self.q {
            return &[];
        }
        &self.side[dir.index() * (self.q as usize + 1) + color as usize]
    }

    /// Pieces with `color_a` on side `a` and `color_b` on side `b`, ascending.
    pub fn with_pair(&self, a: Direction, color_a: Color, b: Direction, color_b: Color) -> &[PieceId] {
        let Some((slot, swapped)) = side_pair_slot(a, b) else {
            // same side twice
            return if color_a == color_b { self.with_side(a, color_a) } else { &[] };
        };
        if color_a == 0 || color_a > self.q || color_b == 0 || color_b > self.q {
            return &[];
        }
        let key = if swapped { Self::key(self.q, color_b, color_a) } else { Self::key(self.q, color_a, color_b) };
        self.pairs[slot].lookup(key)
    }

    /// Total number of pair-index entries; six per piece.
    pub fn pair_entries(&self) -> usize {
        self.pairs.iter().map(|t| t.ids.len()).sum()
    }
}

pub fn build_indexes(bag: &PieceBag) -> ColorIndexes {
    ColorIndexes::build(bag)
}

/// A feasible injective assembly of the window `[-k,k]²`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WindowAssembly {
    k: i32,
    // row-major from the top row: index (k - y) * s + (x + k)
    placement: Vec<PieceId>,
}

impl WindowAssembly {
    pub fn new(k: i32, placement: Vec<PieceId>) -> Self {
        let s = (2 * k + 1) as usize;
        assert_eq!(placement.len(), s * s, "window placement has the wrong size");
        Self { k, placement }
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn placement(&self) -> &[PieceId] {
        &self.placement
    }

    pub fn at(&self, w: WindowCoord) -> PieceId {
        self.placement[window_slot(self.k, w)]
    }

    pub fn center(&self) -> PieceId {
        self.at(WindowCoord::new(0, 0))
    }

    pub fn neighborhood(&self) -> CandidateNeighborhood {
        CandidateNeighborhood::from_slice(self.k, &self.placement)
    }

    /// True iff the placement is injective and every window-internal edge
    /// matches.
    pub fn is_feasible_in(&self, bag: &PieceBag) -> bool {
        let mut ids = self.placement.clone();
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        WindowCoord::square(self.k).all(|w| {
            [Direction::Right, Direction::Up].iter().all(|&d| {
                let nb = w.step(d);
                nb.x.abs() > self.k || nb.y.abs() > self.k || bag[self.at(w)][d] == bag[self.at(nb)][d.opposite()]
            })
        })
    }
}

pub(crate) fn window_slot(k: i32, w: WindowCoord) -> usize {
    let s = 2 * k + 1;
    ((k - w.y) * s + (w.x + k)) as usize
}

/// The four pieces around the center of a window, keyed by direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateNeighborhood {
    neighbors: [PieceId; 4],
}

impl CandidateNeighborhood {
    pub fn new(right: PieceId, up: PieceId, left: PieceId, down: PieceId) -> Self {
        Self { neighbors: [right, up, left, down] }
    }

    fn from_slice(k: i32, placement: &[PieceId]) -> Self {
        let mut neighbors = [PieceId(0); 4];
        for d in Direction::ALL {
            neighbors[d.index()] = placement[window_slot(k, WindowCoord::new(0, 0).step(d))];
        }
        Self { neighbors }
    }

    pub fn get(&self, dir: Direction) -> PieceId {
        self.neighbors[dir.index()]
    }

    pub fn ids(&self) -> [PieceId; 4] {
        self.neighbors
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateStatus {
    None,
    Unique(CandidateNeighborhood),
    /// Two different neighborhoods seen for the same center.
    Multiple(CandidateNeighborhood, CandidateNeighborhood),
}

impl CandidateStatus {
    fn record(&mut self, nb: CandidateNeighborhood) {
        *self = match *self {
            CandidateStatus::None => CandidateStatus::Unique(nb),
            CandidateStatus::Unique(old) if old == nb => return,
            CandidateStatus::Unique(old) => CandidateStatus::Multiple(old, nb),
            CandidateStatus::Multiple(..) => return,
        };
    }

    pub fn unique(&self) -> Option<&CandidateNeighborhood> {
        match self {
            CandidateStatus::Unique(nb) => Some(nb),
            _ => None,
        }
    }
}

/// Counters of one enumeration run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EnumStats {
    /// Partial assemblies (placed cells) explored.
    pub explored: u64,
    /// Feasible windows found.
    pub windows: u64,
}

/// How a cell is filled: either from the whole bag, or looked up by the
/// colors of one or two placed neighbors. `(d, slot)` means the new piece's
/// side `d` faces the piece at `slot`.
#[derive(Clone, Copy)]
enum CellRule {
    Seed,
    One((Direction, usize)),
    Two((Direction, usize), (Direction, usize)),
}

/// Top-left seeded order: top row, left column, then the interior row by row.
fn fill_order(k: i32) -> Vec<(usize, CellRule)> {
    let slot = |x, y| window_slot(k, WindowCoord::new(x, y));
    let mut order = alloc::vec![(slot(-k, k), CellRule::Seed)];
    for x in -k + 1..=k {
        order.push((slot(x, k), CellRule::One((Direction::Left, slot(x - 1, k)))));
    }
    for y in (-k..k).rev() {
        order.push((slot(-k, y), CellRule::One((Direction::Up, slot(-k, y + 1)))));
    }
    for y in (-k..k).rev() {
        for x in -k + 1..=k {
            order.push((slot(x, y), CellRule::Two((Direction::Left, slot(x - 1, y)), (Direction::Up, slot(x, y + 1)))));
        }
    }
    order
}

/// Center seeded order: the middle row outwards from the center, then each
/// further row starting above (or below) the center and growing sideways.
fn centered_fill_order(k: i32) -> Vec<(usize, CellRule)> {
    let slot = |x, y| window_slot(k, WindowCoord::new(x, y));
    let mut order = alloc::vec![(slot(0, 0), CellRule::Seed)];
    for x in 1..=k {
        order.push((slot(x, 0), CellRule::One((Direction::Left, slot(x - 1, 0)))));
        order.push((slot(-x, 0), CellRule::One((Direction::Right, slot(-x + 1, 0)))));
    }
    for (toward, dy) in [(Direction::Down, 1), (Direction::Up, -1)] {
        for r in 1..=k {
            let (y, prev) = (dy * r, dy * (r - 1));
            order.push((slot(0, y), CellRule::One((toward, slot(0, prev)))));
            for x in 1..=k {
                order.push((slot(x, y), CellRule::Two((Direction::Left, slot(x - 1, y)), (toward, slot(x, prev)))));
                order.push((slot(-x, y), CellRule::Two((Direction::Right, slot(-x + 1, y)), (toward, slot(-x, prev)))));
            }
        }
    }
    order
}

struct Search<'a, F> {
    bag: &'a PieceBag,
    idx: &'a ColorIndexes,
    order: Vec<(usize, CellRule)>,
    seeds: Vec<PieceId>,
    budget: u64,
    used: Vec<bool>,
    placement: Vec<PieceId>,
    stats: EnumStats,
    visit: F,
    stopped: bool,
}

impl<F: FnMut(&[PieceId]) -> bool> Search<'_, F> {
    fn extend(&mut self, depth: usize) -> Result<(), WindowError> {
        if depth == self.order.len() {
            self.stats.windows += 1;
            self.stopped = !(self.visit)(&self.placement);
            return Ok(());
        }
        let (slot, rule) = self.order[depth];
        let (bag, idx) = (self.bag, self.idx);
        let color = |placement: &[PieceId], (d, at): (Direction, usize)| bag[placement[at]][d.opposite()];
        let candidates: &[PieceId] = match rule {
            CellRule::Seed => {
                for i in 0..self.seeds.len() {
                    self.place(depth, slot, self.seeds[i])?;
                }
                return Ok(());
            }
            CellRule::One(a) => idx.with_side(a.0, color(&self.placement, a)),
            CellRule::Two(a, b) => idx.with_pair(a.0, color(&self.placement, a), b.0, color(&self.placement, b)),
        };
        for &id in candidates {
            self.place(depth, slot, id)?;
        }
        Ok(())
    }

    fn place(&mut self, depth: usize, slot: usize, id: PieceId) -> Result<(), WindowError> {
        if self.used[id.index()] || self.stopped {
            return Ok(());
        }
        self.stats.explored += 1;
        if self.stats.explored > self.budget {
            return Err(WindowError::BudgetExceeded { budget: self.budget });
        }
        self.used[id.index()] = true;
        self.placement[slot] = id;
        let res = self.extend(depth + 1);
        self.used[id.index()] = false;
        res
    }
}

fn run_search(
    bag: &PieceBag,
    idx: &ColorIndexes,
    k: i32,
    order: Vec<(usize, CellRule)>,
    seeds: Vec<PieceId>,
    budget: u64,
    visit: impl FnMut(&[PieceId]) -> bool,
) -> Result<EnumStats, WindowError> {
    if k < 1 {
        return Err(WindowError::ZeroRadius);
    }
    let s = (2 * k + 1) as usize;
    let mut search = Search {
        bag,
        idx,
        order,
        seeds,
        budget,
        used: alloc::vec![false; bag.len()],
        placement: alloc::vec![PieceId(0); s * s],
        stats: EnumStats::default(),
        visit,
        stopped: false,
    };
    search.extend(0)?;
    Ok(search.stats)
}

/// Calls `visit` with the placement of every feasible window, in a fixed
/// order. The placement slice is indexed row-major from the top row.
pub fn for_each_window(
    bag: &PieceBag,
    idx: &ColorIndexes,
    k: i32,
    budget: u64,
    mut visit: impl FnMut(&[PieceId]),
) -> Result<EnumStats, WindowError> {
    run_search(bag, idx, k, fill_order(k), bag.ids().collect(), budget, |p| {
        visit(p);
        true
    })
}

/// Like [`for_each_window`] restricted to windows centered on `center`;
/// enumeration stops as soon as `visit` returns false.
pub fn for_each_window_centered(
    bag: &PieceBag,
    idx: &ColorIndexes,
    center: PieceId,
    k: i32,
    budget: u64,
    visit: impl FnMut(&[PieceId]) -> bool,
) -> Result<EnumStats, WindowError> {
    run_search(bag, idx, k, centered_fill_order(k), alloc::vec![center], budget, visit)
}

/// Every feasible window assembly, each exactly once.
pub fn enumerate_windows(bag: &PieceBag, k: i32, budget: u64) -> Result<Vec<WindowAssembly>, WindowError> {
    let idx = build_indexes(bag);
    let mut out = Vec::new();
    for_each_window(bag, &idx, k, budget, |p| out.push(WindowAssembly::new(k, p.to_vec())))?;
    Ok(out)
}

/// Candidate neighborhood status of every piece, indexed by [`PieceId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateMap {
    pub statuses: Vec<CandidateStatus>,
    pub stats: EnumStats,
}

impl CandidateMap {
    pub fn status(&self, id: PieceId) -> &CandidateStatus {
        &self.statuses[id.index()]
    }

    pub fn multiple_count(&self) -> usize {
        self.statuses.iter().filter(|s| matches!(s, CandidateStatus::Multiple(..))).count()
    }

    pub fn unique_count(&self) -> usize {
        self.statuses.iter().filter(|s| matches!(s, CandidateStatus::Unique(_))).count()
    }

    pub fn none_count(&self) -> usize {
        self.statuses.iter().filter(|s| matches!(s, CandidateStatus::None)).count()
    }
}

pub fn candidate_neighborhoods(bag: &PieceBag, k: i32, budget: u64) -> Result<CandidateMap, WindowError> {
    candidate_neighborhoods_with(bag, &build_indexes(bag), k, budget)
}

/// Candidate neighborhoods of every piece. Each piece's windows are enumerated
/// separately and only until a second distinct neighborhood shows up; the
/// budget is shared by all pieces.
pub fn candidate_neighborhoods_with(
    bag: &PieceBag,
    idx: &ColorIndexes,
    k: i32,
    budget: u64,
) -> Result<CandidateMap, WindowError> {
    let mut statuses = Vec::with_capacity(bag.len());
    let mut stats = EnumStats::default();
    for center in bag.ids() {
        let (status, used) = candidate_status(bag, idx, center, k, budget - stats.explored).map_err(|e| match e {
            WindowError::BudgetExceeded { .. } => WindowError::BudgetExceeded { budget },
            other => other,
        })?;
        stats.explored += used.explored;
        stats.windows += used.windows;
        statuses.push(status);
    }
    Ok(CandidateMap { statuses, stats })
}

/// Candidate neighborhood status of one piece.
pub fn candidate_status(
    bag: &PieceBag,
    idx: &ColorIndexes,
    center: PieceId,
    k: i32,
    budget: u64,
) -> Result<(CandidateStatus, EnumStats), WindowError> {
    let mut status = CandidateStatus::None;
    let stats = for_each_window_centered(bag, idx, center, k, budget, |p| {
        status.record(CandidateNeighborhood::from_slice(k, p));
        !matches!(status, CandidateStatus::Multiple(..))
    })?;
    Ok((status, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, RngSeed};
    use crate::grid::{disassemble, GridCoord, Puzzle};

    #[test]
    fn single_color_indexes_list_everything() {
        let (bag, _) = Puzzle::monochromatic(3, 1, 1).unwrap().ordered_bag();
        let idx = build_indexes(&bag);
        for &(a, b) in &SIDE_PAIRS {
            assert_eq!(idx.with_pair(a, 1, b, 1).len(), 9);
            assert_eq!(idx.with_pair(b, 1, a, 1).len(), 9);
        }
        assert_eq!(idx.with_side(Direction::Up, 1).len(), 9);
        assert!(idx.with_side(Direction::Up, 2).is_empty());
    }

    #[test]
    fn six_pair_entries_per_piece() {
        let (bag, _) = disassemble(&generate(5, 4, RngSeed(1)).unwrap(), RngSeed(2));
        assert_eq!(build_indexes(&bag).pair_entries(), 6 * 25);
    }

    #[test]
    fn indexes_agree_with_scan() {
        for s in 0..100 {
            let (bag, _) = disassemble(&generate(4, 3, RngSeed(s)).unwrap(), RngSeed(s + 1));
            let idx = build_indexes(&bag);
            for a in Direction::ALL {
                for ca in 1..=3 {
                    let scan: Vec<PieceId> = bag.ids().filter(|&id| bag[id][a] == ca).collect();
                    assert_eq!(idx.with_side(a, ca), &scan[..]);
                    for b in Direction::ALL {
                        for cb in 1..=3 {
                            let scan: Vec<PieceId> =
                                bag.ids().filter(|&id| bag[id][a] == ca && bag[id][b] == cb).collect();
                            assert_eq!(idx.with_pair(a, ca, b, cb), &scan[..], "{a:?}={ca} {b:?}={cb}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fill_order_covers_window_once() {
        for k in 1..4 {
            for order in [fill_order(k), centered_fill_order(k)] {
                let mut slots: Vec<usize> = order.iter().map(|&(s, _)| s).collect();
                slots.sort_unstable();
                assert_eq!(slots, (0..((2 * k + 1) * (2 * k + 1)) as usize).collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn monochromatic_bag_exhausts_budget() {
        let (bag, _) = Puzzle::monochromatic(4, 1, 1).unwrap().ordered_bag();
        assert_eq!(enumerate_windows(&bag, 1, 1000), Err(WindowError::BudgetExceeded { budget: 1000 }));
        assert_eq!(enumerate_windows(&bag, 0, 1000), Err(WindowError::ZeroRadius));
    }

    #[test]
    fn small_monochromatic_has_multiple_candidates() {
        let (bag, _) = Puzzle::monochromatic(3, 1, 1).unwrap().ordered_bag();
        // every injective placement of the 9 pieces is a window
        assert_eq!(enumerate_windows(&bag, 1, DEFAULT_BUDGET).unwrap().len(), 362_880);
        let cands = candidate_neighborhoods(&bag, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(cands.multiple_count(), 9);
        // each center stops once its bottom neighbor changes
        assert_eq!(cands.stats.windows, 27);
        let (bag, _) = Puzzle::monochromatic(6, 1, 1).unwrap().ordered_bag();
        assert_eq!(candidate_neighborhoods(&bag, 1, 1_000_000).unwrap().multiple_count(), 36);
    }

    #[test]
    fn centered_enumeration_agrees_with_full() {
        for s in 0..10 {
            let (bag, _) = disassemble(&generate(5, 5, RngSeed(s)).unwrap(), RngSeed(s + 1));
            let idx = build_indexes(&bag);
            let mut full = enumerate_windows(&bag, 1, DEFAULT_BUDGET).unwrap();
            full.sort();
            let mut centered = Vec::new();
            for c in bag.ids() {
                for_each_window_centered(&bag, &idx, c, 1, DEFAULT_BUDGET, |p| {
                    centered.push(WindowAssembly::new(1, p.to_vec()));
                    true
                })
                .unwrap();
            }
            centered.sort();
            assert_eq!(full, centered);
            let cands = candidate_neighborhoods(&bag, 1, DEFAULT_BUDGET).unwrap();
            for c in bag.ids() {
                let mut nbs: Vec<CandidateNeighborhood> = full.iter().filter(|w| w.center() == c).map(|w| w.neighborhood()).collect();
                nbs.sort();
                nbs.dedup();
                match (nbs.len(), cands.status(c)) {
                    (0, CandidateStatus::None) => {}
                    (1, CandidateStatus::Unique(nb)) => assert_eq!(nb, &nbs[0]),
                    (m, CandidateStatus::Multiple(..)) if m >= 2 => {}
                    (m, st) => panic!("{m} neighborhoods but status {st:?}"),
                }
            }
        }
    }

    #[test]
    fn windows_are_feasible_and_deterministic() {
        let (bag, _) = disassemble(&generate(5, 3, RngSeed(8)).unwrap(), RngSeed(9));
        let a = enumerate_windows(&bag, 1, DEFAULT_BUDGET).unwrap();
        let b = enumerate_windows(&bag, 1, DEFAULT_BUDGET).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        assert!(a.iter().all(|w| w.is_feasible_in(&bag)));
        let mut sorted = a.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), a.len());
    }

    #[test]
    fn planted_windows_are_found_and_neighborhoods_realized() {
        let n = 12;
        let puzzle = generate(n, 60, RngSeed(4)).unwrap();
        let (bag, planted) = disassemble(&puzzle, RngSeed(5));
        let windows = enumerate_windows(&bag, 1, DEFAULT_BUDGET).unwrap();
        for v in GridCoord::all(n) {
            if (2..n as i32).contains(&v.col) && (2..n as i32).contains(&v.row) {
                let mut p = alloc::vec![PieceId(0); 9];
                for w in WindowCoord::square(1) {
                    p[window_slot(1, w)] = planted.at(v.offset(w.x, w.y)).unwrap();
                }
                assert!(windows.contains(&WindowAssembly::new(1, p)), "missing planted window at {v}");
            }
        }
        let cands = candidate_neighborhoods(&bag, 1, DEFAULT_BUDGET).unwrap();
        for (i, st) in cands.statuses.iter().enumerate() {
            let id = PieceId(i as u32);
            let realized = |nb: &CandidateNeighborhood| windows.iter().any(|w| w.center() == id && w.neighborhood() == *nb);
            match st {
                CandidateStatus::None => assert!(windows.iter().all(|w| w.center() != id)),
                CandidateStatus::Unique(nb) => assert!(realized(nb)),
                CandidateStatus::Multiple(a, b) => assert!(a != b && realized(a) && realized(b)),
            }
        }
    }
}
