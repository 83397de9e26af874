//! Reassembly from candidate neighborhoods.
//!
//! Pieces that name each other as neighbors are glued into rigid components.
//! The largest component must contain an `(n-2k) × (n-2k)` square, which is
//! taken as the core; every admissible placement of that square is tried in
//! turn. From a core guess the periphery is rebuilt shell by shell: each side
//! is seeded from a free edge whose color occurs on exactly one unplaced jig,
//! the rest of the side is filled from the two colors every open cell must
//! match, and the four corners come last. The first guess that yields a
//! properly colored assembly wins.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::grid::{is_feasible, Assembly, Color, Direction, GridCoord, PieceBag, PieceId};
use crate::window::{candidate_neighborhoods_with, build_indexes, CandidateMap, CandidateStatus, ColorIndexes, EnumStats, WindowError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("need 1 <= k < n/2 and 2(n-2k)^2 >= n^2, got n = {n}, k = {k}")]
    InvalidParameters { n: usize, k: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum JoinError {
    #[error("piece {0} has several candidate neighborhoods")]
    MultipleCandidates(PieceId),
    #[error("two derivations of the position of piece {0} disagree")]
    OffsetConflict(PieceId),
}

/// A rigid placement of pieces on the lattice, in component-relative
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PartialAssembly {
    cells: BTreeMap<GridCoord, PieceId>,
}

impl PartialAssembly {
    pub fn from_cells(cells: impl IntoIterator<Item = (GridCoord, PieceId)>) -> Self {
        Self { cells: cells.into_iter().collect() }
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn at(&self, v: GridCoord) -> Option<PieceId> {
        self.cells.get(&v).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GridCoord, PieceId)> + '_ {
        self.cells.iter().map(|(&v, &id)| (v, id))
    }

    pub fn min_piece(&self) -> Option<PieceId> {
        self.cells.values().min().copied()
    }

    /// `(min corner, max corner)` of the occupied cells.
    pub fn bounding_box(&self) -> Option<(GridCoord, GridCoord)> {
        let mut it = self.cells.keys();
        let first = *it.next()?;
        Some(it.fold((first, first), |(lo, hi), &v| {
            (GridCoord::new(lo.col.min(v.col), lo.row.min(v.row)), GridCoord::new(hi.col.max(v.col), hi.row.max(v.row)))
        }))
    }
}

/// Components of the mutual-neighbor relation, realized as rigid placements.
/// Sorted by decreasing size, then by smallest piece id.
pub fn join_neighbors(statuses: &[CandidateStatus]) -> Result<Vec<PartialAssembly>, JoinError> {
    if let Some(i) = statuses.iter().position(|s| matches!(s, CandidateStatus::Multiple(..))) {
        return Err(JoinError::MultipleCandidates(PieceId(i as u32)));
    }
    let mutual = |p: PieceId, d: Direction| -> Option<PieceId> {
        let other = statuses[p.index()].unique()?.get(d);
        (statuses[other.index()].unique()?.get(d.opposite()) == p).then_some(other)
    };
    let mut pos: Vec<Option<GridCoord>> = alloc::vec![None; statuses.len()];
    let mut comps = Vec::new();
    for start in 0..statuses.len() {
        if pos[start].is_some() {
            continue;
        }
        let origin = GridCoord::new(0, 0);
        pos[start] = Some(origin);
        let mut cells = BTreeMap::from([(origin, PieceId(start as u32))]);
        let mut queue = VecDeque::from([PieceId(start as u32)]);
        while let Some(p) = queue.pop_front() {
            let here = pos[p.index()].expect("queued pieces are placed");
            for d in Direction::ALL {
                let Some(other) = mutual(p, d) else { continue };
                let target = here.step(d);
                match pos[other.index()] {
                    Some(at) if at == target => {}
                    Some(_) => return Err(JoinError::OffsetConflict(other)),
                    None => {
                        if cells.insert(target, other).is_some() {
                            return Err(JoinError::OffsetConflict(other));
                        }
                        pos[other.index()] = Some(target);
                        queue.push_back(other);
                    }
                }
            }
        }
        comps.push(PartialAssembly { cells });
    }
    comps.sort_by(|a, b| b.len().cmp(&a.len()).then(a.min_piece().cmp(&b.min_piece())));
    Ok(comps)
}

/// Placement of a component on the grid: grid coordinate = component
/// coordinate + `translation`, putting a fully occupied square on the core
/// `[k+1..n-k]²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoreGuess {
    pub translation: (i32, i32),
}

impl CoreGuess {
    /// The component's pieces falling on the core.
    pub fn core_cells(&self, comp: &PartialAssembly, n: usize, k: usize) -> Vec<(GridCoord, PieceId)> {
        let (lo, hi) = ((k + 1) as i32, (n - k) as i32);
        comp.iter()
            .map(|(v, id)| (v.offset(self.translation.0, self.translation.1), id))
            .filter(|(v, _)| (lo..=hi).contains(&v.col) && (lo..=hi).contains(&v.row))
            .collect()
    }
}

/// Every placement of `comp` that puts a fully occupied `(n-2k)²` square on
/// the core while keeping the whole component inside `[1..n]²`. Ordered by
/// the square's bottom row, then its left column.
pub fn core_guesses(comp: &PartialAssembly, n: usize, k: usize) -> Vec<CoreGuess> {
    let Some((lo, hi)) = comp.bounding_box() else { return Vec::new() };
    if 2 * k >= n {
        return Vec::new();
    }
    let m = (n - 2 * k) as i32;
    let core_lo = (k + 1) as i32;
    let mut guesses = Vec::new();
    for y0 in lo.row..=hi.row - m + 1 {
        for x0 in lo.col..=hi.col - m + 1 {
            let (dx, dy) = (core_lo - x0, core_lo - y0);
            let fits = lo.col + dx >= 1 && lo.row + dy >= 1 && hi.col + dx <= n as i32 && hi.row + dy <= n as i32;
            if fits && (0..m).all(|j| (0..m).all(|i| comp.at(GridCoord::new(x0 + i, y0 + j)).is_some())) {
                guesses.push(CoreGuess { translation: (dx, dy) });
            }
        }
    }
    guesses
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    pub const SCAN_ORDER: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    fn outward(self) -> Direction {
        match self {
            Side::Bottom => Direction::Down,
            Side::Right => Direction::Right,
            Side::Top => Direction::Up,
            Side::Left => Direction::Left,
        }
    }

    /// Cell `t` along this side of the square `[lo..hi]²`.
    fn cell(self, lo: i32, hi: i32, t: i32) -> GridCoord {
        match self {
            Side::Bottom => GridCoord::new(t, lo),
            Side::Right => GridCoord::new(hi, t),
            Side::Top => GridCoord::new(t, hi),
            Side::Left => GridCoord::new(lo, t),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StuckReason {
    /// The core does not exactly fill `[k+1..n-k]²`.
    InvalidCore,
    /// No free edge of the side has a color occurring once among unplaced jigs.
    NoUniqueEdge,
    /// The only jig with the seed color sits on the wrong side of its piece.
    WrongOrientation,
    NoMatch,
    AmbiguousMatch,
    /// Pieces remain after the last shell.
    Leftover,
    Infeasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("stuck on shell {shell} ({side:?}): {reason:?}")]
pub struct Stuck {
    pub shell: usize,
    pub side: Option<Side>,
    pub reason: StuckReason,
}

struct ShellBuilder<'a> {
    bag: &'a PieceBag,
    idx: &'a ColorIndexes,
    n: usize,
    grid: Vec<Option<PieceId>>,
    remaining: Vec<bool>,
    jig_count: Vec<u32>,
}

impl ShellBuilder<'_> {
    fn placed(&self, v: GridCoord) -> Option<PieceId> {
        if v.in_grid(self.n) {
            self.grid[v.index(self.n)]
        } else {
            None
        }
    }

    fn place(&mut self, v: GridCoord, id: PieceId) {
        self.grid[v.index(self.n)] = Some(id);
        self.remaining[id.index()] = false;
        for c in self.bag[id].colors() {
            self.jig_count[c as usize] -= 1;
        }
    }

    /// The unique unplaced piece matching every placed neighbor of `v`, which
    /// must have at least two.
    fn unique_fit(&self, v: GridCoord) -> Result<PieceId, StuckReason> {
        let constraints: Vec<(Direction, Color)> = Direction::ALL
            .iter()
            .filter_map(|&d| self.placed(v.step(d)).map(|nb| (d, self.bag[nb][d.opposite()])))
            .collect();
        if constraints.len() < 2 {
            return Err(StuckReason::NoMatch);
        }
        let (a, b) = (constraints[0], constraints[1]);
        let mut fits = self.idx.with_pair(a.0, a.1, b.0, b.1).iter().copied().filter(|&id| {
            self.remaining[id.index()] && constraints[2..].iter().all(|&(d, c)| self.bag[id][d] == c)
        });
        match (fits.next(), fits.next()) {
            (Some(id), None) => Ok(id),
            (None, _) => Err(StuckReason::NoMatch),
            (Some(_), Some(_)) => Err(StuckReason::AmbiguousMatch),
        }
    }

    fn seed_side(&mut self, side: Side, lo: i32, hi: i32) -> Result<i32, StuckReason> {
        let out = side.outward();
        let t = (lo..=hi)
            .find(|&t| {
                let inner = self.placed(side.cell(lo, hi, t)).expect("previous shell is complete");
                self.jig_count[self.bag[inner][out] as usize] == 1
            })
            .ok_or(StuckReason::NoUniqueEdge)?;
        let cell = side.cell(lo, hi, t);
        let color = self.bag[self.placed(cell).expect("placed")][out];
        let mut fits = self.idx.with_side(out.opposite(), color).iter().copied().filter(|&id| self.remaining[id.index()]);
        let id = fits.next().ok_or(StuckReason::WrongOrientation)?;
        debug_assert!(fits.next().is_none());
        self.place(cell.step(out), id);
        Ok(t)
    }

    fn fill_side(&mut self, side: Side, lo: i32, hi: i32, seed: i32) -> Result<(), StuckReason> {
        let out = side.outward();
        for t in (seed + 1..=hi).chain((lo..seed).rev()) {
            let v = side.cell(lo, hi, t).step(out);
            let id = self.unique_fit(v)?;
            self.place(v, id);
        }
        Ok(())
    }
}

/// Rebuilds shells `1..=k` around a core occupying exactly `[k+1..n-k]²`.
pub fn assemble_shells(
    bag: &PieceBag,
    idx: &ColorIndexes,
    core: &[(GridCoord, PieceId)],
    n: usize,
    k: usize,
) -> Result<Assembly, Stuck> {
    let invalid = Stuck { shell: 0, side: None, reason: StuckReason::InvalidCore };
    if 2 * k >= n && k > 0 || bag.n() != n {
        return Err(invalid);
    }
    let m = n - 2 * k;
    let mut b = ShellBuilder {
        bag,
        idx,
        n,
        grid: alloc::vec![None; n * n],
        remaining: alloc::vec![true; bag.len()],
        jig_count: alloc::vec![0; bag.q() as usize + 1],
    };
    for piece in bag.pieces() {
        for c in piece.colors() {
            b.jig_count[c as usize] += 1;
        }
    }
    let (core_lo, core_hi) = ((k + 1) as i32, (n - k) as i32);
    for &(v, id) in core {
        let in_core = (core_lo..=core_hi).contains(&v.col) && (core_lo..=core_hi).contains(&v.row);
        if !in_core || b.placed(v).is_some() || !b.remaining[id.index()] {
            return Err(invalid);
        }
        b.place(v, id);
    }
    if core.len() != m * m {
        return Err(invalid);
    }

    for i in 0..k {
        let shell = i + 1;
        let (lo, hi) = (core_lo - i as i32, core_hi + i as i32);
        let stuck = |side, reason| Stuck { shell, side, reason };
        let mut seeds = [0; 4];
        for (slot, side) in Side::SCAN_ORDER.into_iter().enumerate() {
            seeds[slot] = b.seed_side(side, lo, hi).map_err(|r| stuck(Some(side), r))?;
        }
        for (slot, side) in Side::SCAN_ORDER.into_iter().enumerate() {
            b.fill_side(side, lo, hi, seeds[slot]).map_err(|r| stuck(Some(side), r))?;
        }
        let corners = [(lo - 1, lo - 1), (hi + 1, lo - 1), (hi + 1, hi + 1), (lo - 1, hi + 1)];
        for (col, row) in corners {
            let v = GridCoord::new(col, row);
            let id = b.unique_fit(v).map_err(|r| stuck(None, r))?;
            b.place(v, id);
        }
    }

    if b.remaining.iter().any(|&r| r) {
        return Err(Stuck { shell: k, side: None, reason: StuckReason::Leftover });
    }
    let placement: Vec<PieceId> = b.grid.iter().map(|c| c.expect("every cell filled")).collect();
    let assembly = Assembly::new(n, placement).map_err(|_| Stuck { shell: k, side: None, reason: StuckReason::Leftover })?;
    match is_feasible(bag, &assembly) {
        Ok(true) => Ok(assembly),
        _ => Err(Stuck { shell: k, side: None, reason: StuckReason::Infeasible }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailReason {
    MultipleCandidates,
    /// Neighbor relations that cannot be realized rigidly.
    OffsetConflict,
    NoCoreSquare,
    AllGuessesStuck,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Solved(Assembly),
    Failed(FailReason),
}

impl SolveOutcome {
    pub fn assembly(&self) -> Option<&Assembly> {
        match self {
            SolveOutcome::Solved(a) => Some(a),
            SolveOutcome::Failed(_) => None,
        }
    }

    pub fn is_solved(&self) -> bool {
        matches!(self, SolveOutcome::Solved(_))
    }
}

/// A solve outcome with the work done to reach it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub outcome: SolveOutcome,
    pub enum_stats: EnumStats,
    pub multiple_candidates: usize,
    pub largest_component: usize,
    /// Every core guess tried, with the reason it was abandoned (`None` for the
    /// guess that succeeded).
    pub attempts: Vec<(CoreGuess, Option<Stuck>)>,
}

pub fn check_parameters(n: usize, k: usize) -> Result<(), SolveError> {
    let m = n as i64 - 2 * k as i64;
    if k < 1 || m < 1 || 2 * m * m < (n * n) as i64 {
        return Err(SolveError::InvalidParameters { n, k });
    }
    Ok(())
}

pub fn solve(bag: &PieceBag, k: usize, budget: u64) -> Result<SolveOutcome, SolveError> {
    solve_detailed(bag, k, budget).map(|r| r.outcome)
}

pub fn solve_detailed(bag: &PieceBag, k: usize, budget: u64) -> Result<SolveReport, SolveError> {
    check_parameters(bag.n(), k)?;
    let idx = build_indexes(bag);
    let cands = candidate_neighborhoods_with(bag, &idx, k as i32, budget);
    solve_from_candidates(bag, &idx, cands, k)
}

/// Steps 2–5, given the outcome of the window enumeration.
pub fn solve_from_candidates(
    bag: &PieceBag,
    idx: &ColorIndexes,
    cands: Result<CandidateMap, WindowError>,
    k: usize,
) -> Result<SolveReport, SolveError> {
    let n = bag.n();
    check_parameters(n, k)?;
    let mut report = SolveReport {
        outcome: SolveOutcome::Failed(FailReason::BudgetExceeded),
        enum_stats: EnumStats::default(),
        multiple_candidates: 0,
        largest_component: 0,
        attempts: Vec::new(),
    };
    let cands = match cands {
        Ok(c) => c,
        Err(_) => return Ok(report),
    };
    report.enum_stats = cands.stats;
    report.multiple_candidates = cands.multiple_count();
    let comps = match join_neighbors(&cands.statuses) {
        Ok(c) => c,
        Err(JoinError::MultipleCandidates(_)) => {
            report.outcome = SolveOutcome::Failed(FailReason::MultipleCandidates);
            return Ok(report);
        }
        Err(JoinError::OffsetConflict(_)) => {
            report.outcome = SolveOutcome::Failed(FailReason::OffsetConflict);
            return Ok(report);
        }
    };
    let largest = &comps[0];
    report.largest_component = largest.len();
    let guesses = core_guesses(largest, n, k);
    if guesses.is_empty() {
        report.outcome = SolveOutcome::Failed(FailReason::NoCoreSquare);
        return Ok(report);
    }
    for guess in guesses {
        let core = guess.core_cells(largest, n, k);
        match assemble_shells(bag, idx, &core, n, k) {
            Ok(assembly) => {
                report.attempts.push((guess, None));
                report.outcome = SolveOutcome::Solved(assembly);
                return Ok(report);
            }
            Err(stuck) => report.attempts.push((guess, Some(stuck))),
        }
    }
    report.outcome = SolveOutcome::Failed(FailReason::AllGuessesStuck);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, RngSeed};
    use crate::grid::{disassemble, Puzzle};
    use crate::window::{CandidateNeighborhood, DEFAULT_BUDGET};

    fn rect(w: i32, h: i32) -> PartialAssembly {
        PartialAssembly::from_cells((0..h).flat_map(|y| (0..w).map(move |x| (GridCoord::new(x, y), PieceId((y * w + x) as u32)))))
    }

    #[test]
    fn parameter_checks() {
        assert!(check_parameters(30, 1).is_ok());
        assert!(check_parameters(30, 4).is_ok());
        // 2 * 20^2 = 800 < 900
        assert_eq!(check_parameters(30, 5), Err(SolveError::InvalidParameters { n: 30, k: 5 }));
        assert!(check_parameters(4, 0).is_err());
        assert!(check_parameters(2, 1).is_err());
    }

    #[test]
    fn all_none_gives_singletons() {
        let comps = join_neighbors(&[CandidateStatus::None; 9]).unwrap();
        assert_eq!(comps.len(), 9);
        assert!(comps.iter().all(|c| c.len() == 1));
        assert_eq!(comps[0].min_piece(), Some(PieceId(0)));
    }

    #[test]
    fn one_sided_claims_do_not_join() {
        let nb = CandidateNeighborhood::new(PieceId(1), PieceId(2), PieceId(3), PieceId(4));
        let mut statuses = alloc::vec![CandidateStatus::None; 5];
        statuses[0] = CandidateStatus::Unique(nb);
        assert_eq!(join_neighbors(&statuses).unwrap().len(), 5);
        statuses[1] = CandidateStatus::Multiple(nb, nb);
        assert_eq!(join_neighbors(&statuses), Err(JoinError::MultipleCandidates(PieceId(1))));
    }

    #[test]
    fn inconsistent_offsets_conflict() {
        // 0 and 1 claim each other as right/left neighbors and also as up/down neighbors
        let mut statuses = alloc::vec![CandidateStatus::None; 6];
        statuses[0] = CandidateStatus::Unique(CandidateNeighborhood::new(PieceId(1), PieceId(1), PieceId(2), PieceId(3)));
        statuses[1] = CandidateStatus::Unique(CandidateNeighborhood::new(PieceId(4), PieceId(5), PieceId(0), PieceId(0)));
        assert_eq!(join_neighbors(&statuses), Err(JoinError::OffsetConflict(PieceId(1))));
    }

    #[test]
    fn guesses_on_squares_and_rectangles() {
        // n = 10, k = 1: core is 8 x 8
        assert_eq!(core_guesses(&rect(8, 8), 10, 1), alloc::vec![CoreGuess { translation: (2, 2) }]);
        assert_eq!(core_guesses(&rect(9, 8), 10, 1).len(), 2);
        assert_eq!(core_guesses(&rect(9, 9), 10, 1).len(), 4);
        assert!(core_guesses(&rect(7, 8), 10, 1).is_empty());
        // a component as large as the grid must sit on it exactly
        assert_eq!(core_guesses(&rect(10, 10), 10, 1).len(), 1);
        for k in 1..=3usize {
            let n = 20;
            for w in (n - 2 * k)..=n {
                for h in (n - 2 * k)..=n {
                    assert!(core_guesses(&rect(w as i32, h as i32), n, k).len() <= 4 * k * k);
                }
            }
        }
    }

    #[test]
    fn k_zero_keeps_core() {
        let puzzle = generate(4, 5, RngSeed(3)).unwrap();
        let (bag, planted) = disassemble(&puzzle, RngSeed(4));
        let idx = build_indexes(&bag);
        let core: Vec<(GridCoord, PieceId)> = GridCoord::all(4).map(|v| (v, planted.at(v).unwrap())).collect();
        assert_eq!(assemble_shells(&bag, &idx, &core, 4, 0), Ok(planted));
    }

    #[test]
    fn invalid_core_is_rejected() {
        let puzzle = generate(6, 50, RngSeed(3)).unwrap();
        let (bag, planted) = disassemble(&puzzle, RngSeed(4));
        let idx = build_indexes(&bag);
        let core: Vec<(GridCoord, PieceId)> =
            GridCoord::all(6).filter(|v| v.col > 1 && v.row > 1).map(|v| (v, planted.at(v).unwrap())).collect();
        assert_eq!(assemble_shells(&bag, &idx, &core, 6, 1).unwrap_err().reason, StuckReason::InvalidCore);
    }

    fn planted_core(planted: &Assembly, n: usize, k: usize) -> Vec<(GridCoord, PieceId)> {
        GridCoord::all(n)
            .filter(|v| (k as i32 + 1..=(n - k) as i32).contains(&v.col) && (k as i32 + 1..=(n - k) as i32).contains(&v.row))
            .map(|v| (v, planted.at(v).unwrap()))
            .collect()
    }

    #[test]
    fn correct_core_rebuilds_planted() {
        let n = 16;
        let mut rebuilt = 0;
        for s in 0..20 {
            let puzzle = generate(n, (n * n) as u32, RngSeed(s)).unwrap();
            let (bag, planted) = disassemble(&puzzle, RngSeed(100 + s));
            let idx = build_indexes(&bag);
            for k in 1..=2 {
                if let Ok(a) = assemble_shells(&bag, &idx, &planted_core(&planted, n, k), n, k) {
                    assert_eq!(a, planted);
                    rebuilt += 1;
                }
            }
        }
        assert!(rebuilt >= 30, "{rebuilt}");
    }

    #[test]
    fn shifted_core_gets_stuck() {
        let n = 16;
        let k = 2;
        let mut stuck = 0;
        for s in 0..20 {
            let puzzle = generate(n, (n * n) as u32, RngSeed(s)).unwrap();
            let (bag, planted) = disassemble(&puzzle, RngSeed(100 + s));
            let idx = build_indexes(&bag);
            // the planted square [k+2..n-k+1]^2 placed on [k+1..n-k]^2
            let core: Vec<(GridCoord, PieceId)> = planted_core(&planted, n, k)
                .into_iter()
                .map(|(v, _)| (v, planted.at(v.offset(1, 1)).unwrap()))
                .collect();
            if assemble_shells(&bag, &idx, &core, n, k).is_err() {
                stuck += 1;
            }
        }
        assert_eq!(stuck, 20);
    }

    #[test]
    fn solves_easy_puzzles() {
        let n = 14;
        for s in 0..10 {
            let puzzle = generate(n, (n * n) as u32, RngSeed(s)).unwrap();
            let (bag, planted) = disassemble(&puzzle, RngSeed(s + 50));
            let report = solve_detailed(&bag, 1, DEFAULT_BUDGET).unwrap();
            if let SolveOutcome::Solved(a) = &report.outcome {
                assert!(is_feasible(&bag, a).unwrap());
                assert_eq!(a, &planted);
            }
            assert!(report.attempts.len() <= 4);
        }
    }

    #[test]
    fn monochromatic_fails() {
        let (bag, _) = Puzzle::monochromatic(8, 1, 1).unwrap().ordered_bag();
        assert_eq!(solve(&bag, 1, DEFAULT_BUDGET).unwrap(), SolveOutcome::Failed(FailReason::MultipleCandidates));
        assert_eq!(solve(&bag, 1, 10).unwrap(), SolveOutcome::Failed(FailReason::BudgetExceeded));
    }
}
