//! The five structural properties under which the solver provably recovers
//! the planted assembly.
//!
//! Pieces planted in `[k+1..n-k]²` are core pieces, the others peripheral. A
//! peripheral edge is any edge, boundary edges included, touching a
//! peripheral piece. Checking needs the planted assembly, so this is harness
//! side ground truth rather than something the solver can use.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::grid::{Assembly, Color, Direction, EdgeId, GridCoord, PieceBag, PieceId, Puzzle};
use crate::window::{candidate_neighborhoods, CandidateMap, CandidateStatus, WindowError, SIDE_PAIRS};

pub fn default_c_prime() -> Ratio<u64> {
    Ratio::new(1, 50)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum TypicalError {
    #[error("need 1 <= k < n/2, got n = {n}, k = {k}")]
    InvalidRadius { n: usize, k: usize },
    #[error(transparent)]
    Window(#[from] WindowError),
}

/// Evidence that a property fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    /// A core piece without a unique candidate neighborhood.
    CorePiece(GridCoord),
    /// A peripheral piece with several candidate neighborhoods or a wrong one.
    PeripheralPiece(GridCoord),
    /// Peripheral edges whose color is shared with another peripheral edge.
    RepeatedEdges { count: usize, limit: usize, first: EdgeId },
    /// Two peripheral pieces with two jigs of matching colors.
    SharedPair { a: GridCoord, b: GridCoord, colors: (Color, Color) },
    /// A color pair carried by too many pieces.
    CrowdedPair { colors: (Color, Color), pieces: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropertyCheck {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyCheck {
    fn from_witness(witness: Option<Witness>) -> Self {
        Self { holds: witness.is_none(), witness }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypicalityReport {
    pub k: usize,
    pub c_prime: Ratio<u64>,
    pub core_unique: PropertyCheck,
    pub peripheral_planted: PropertyCheck,
    pub few_repeated_edges: PropertyCheck,
    pub no_shared_pairs: PropertyCheck,
    pub sparse_pairs: PropertyCheck,
}

impl TypicalityReport {
    pub fn properties(&self) -> [(&'static str, PropertyCheck); 5] {
        [
            ("core pieces have a unique candidate neighborhood", self.core_unique),
            ("peripheral candidates are absent or planted", self.peripheral_planted),
            ("few repeated peripheral edge colors", self.few_repeated_edges),
            ("no two peripheral pieces share a color pair", self.no_shared_pairs),
            ("every color pair is carried by few pieces", self.sparse_pairs),
        ]
    }

    pub fn typical(&self) -> bool {
        self.properties().iter().all(|(_, p)| p.holds)
    }

    /// The first four properties, which are all the correctness argument uses.
    pub fn structural(&self) -> bool {
        self.properties()[..4].iter().all(|(_, p)| p.holds)
    }
}

fn is_core(v: GridCoord, n: usize, k: usize) -> bool {
    let r = (k as i32 + 1)..=((n - k) as i32);
    r.contains(&v.col) && r.contains(&v.row)
}

fn sorted(a: Color, b: Color) -> (Color, Color) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Color pairs over the six jig pairs of a piece, deduplicated.
fn pair_keys(colors: [Color; 4]) -> BTreeSet<(Color, Color)> {
    SIDE_PAIRS.iter().map(|&(a, b)| sorted(colors[a.index()], colors[b.index()])).collect()
}

/// Checks `puzzle` against its identity planting.
pub fn check_typical(puzzle: &Puzzle, k: usize, c_prime: Ratio<u64>, budget: u64) -> Result<TypicalityReport, TypicalError> {
    let n = puzzle.n();
    if k < 1 || 2 * k >= n {
        return Err(TypicalError::InvalidRadius { n, k });
    }
    let (bag, planted) = puzzle.ordered_bag();
    let cands = candidate_neighborhoods(&bag, k as i32, budget)?;
    check_typical_with(puzzle, &bag, &planted, &cands, k, c_prime)
}

/// Checks with candidate neighborhoods already computed for `bag`, whose
/// pieces are planted by `planted`.
pub fn check_typical_with(
    puzzle: &Puzzle,
    bag: &PieceBag,
    planted: &Assembly,
    cands: &CandidateMap,
    k: usize,
    c_prime: Ratio<u64>,
) -> Result<TypicalityReport, TypicalError> {
    let n = puzzle.n();
    if k < 1 || 2 * k >= n {
        return Err(TypicalError::InvalidRadius { n, k });
    }
    let piece_at = |v: GridCoord| planted.at(v).expect("in grid");
    let status = |v: GridCoord| cands.status(piece_at(v));

    let core_unique = PropertyCheck::from_witness(
        GridCoord::all(n)
            .filter(|&v| is_core(v, n, k))
            .find(|&v| !matches!(status(v), CandidateStatus::Unique(_)))
            .map(Witness::CorePiece),
    );

    let planted_nb = |v: GridCoord, id: PieceId, d: Direction| planted.at(v.step(d)) == Some(id);
    let peripheral: Vec<GridCoord> = GridCoord::all(n).filter(|&v| !is_core(v, n, k)).collect();
    let peripheral_planted = PropertyCheck::from_witness(
        peripheral
            .iter()
            .copied()
            .find(|&v| match status(v) {
                CandidateStatus::None => false,
                CandidateStatus::Unique(nb) => !Direction::ALL.iter().all(|&d| planted_nb(v, nb.get(d), d)),
                CandidateStatus::Multiple(..) => true,
            })
            .map(Witness::PeripheralPiece),
    );

    let edges: BTreeSet<EdgeId> =
        peripheral.iter().flat_map(|&v| Direction::ALL.map(|d| EdgeId::toward(v, d))).collect();
    let mut color_count: BTreeMap<Color, usize> = BTreeMap::new();
    for &e in &edges {
        *color_count.entry(puzzle.color(e).expect("in grid")).or_default() += 1;
    }
    let repeated: Vec<EdgeId> = edges.iter().copied().filter(|&e| color_count[&puzzle.color(e).expect("in grid")] > 1).collect();
    let limit = n - 2 * k - 1;
    let few_repeated_edges = PropertyCheck::from_witness(
        (repeated.len() > limit).then(|| Witness::RepeatedEdges { count: repeated.len(), limit, first: repeated[0] }),
    );

    let mut owner: BTreeMap<(Color, Color), GridCoord> = BTreeMap::new();
    let mut shared = None;
    'outer: for &v in &peripheral {
        for key in pair_keys(bag[piece_at(v)].colors()) {
            if let Some(&u) = owner.get(&key) {
                shared = Some(Witness::SharedPair { a: u, b: v, colors: key });
                break 'outer;
            }
            owner.insert(key, v);
        }
    }
    let no_shared_pairs = PropertyCheck::from_witness(shared);

    let mut carriers: BTreeMap<(Color, Color), usize> = BTreeMap::new();
    for piece in bag.pieces() {
        for key in pair_keys(piece.colors()) {
            *carriers.entry(key).or_default() += 1;
        }
    }
    // count <= c' k, compared exactly as count * denom <= numer * k
    let within = |count: usize| (count as u128) * (*c_prime.denom() as u128) <= (*c_prime.numer() as u128) * (k as u128);
    let sparse_pairs = PropertyCheck::from_witness(
        carriers
            .iter()
            .find(|&(_, &count)| !within(count))
            .map(|(&colors, &pieces)| Witness::CrowdedPair { colors, pieces }),
    );

    Ok(TypicalityReport { k, c_prime, core_unique, peripheral_planted, few_repeated_edges, no_shared_pairs, sparse_pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, RngSeed};
    use crate::grid::{disassemble, Piece};
    use crate::window::{build_indexes, candidate_neighborhoods_with, DEFAULT_BUDGET};

    #[test]
    fn monochromatic_fails_core_uniqueness() {
        let puzzle = Puzzle::monochromatic(6, 1, 1).unwrap();
        let r = check_typical(&puzzle, 1, default_c_prime(), DEFAULT_BUDGET).unwrap();
        assert!(!r.core_unique.holds);
        assert!(matches!(r.core_unique.witness, Some(Witness::CorePiece(_))));
        assert!(!r.typical());
        assert!(matches!(check_typical(&puzzle, 1, default_c_prime(), 10), Err(TypicalError::Window(WindowError::BudgetExceeded { .. }))));
    }

    #[test]
    fn rejects_bad_radius() {
        let puzzle = generate(4, 5, RngSeed(0)).unwrap();
        assert_eq!(check_typical(&puzzle, 2, default_c_prime(), 10), Err(TypicalError::InvalidRadius { n: 4, k: 2 }));
        assert_eq!(check_typical(&puzzle, 0, default_c_prime(), 10), Err(TypicalError::InvalidRadius { n: 4, k: 0 }));
    }

    #[test]
    fn pair_keys_are_unordered() {
        let keys = pair_keys(Piece::new(3, 1, 3, 2).colors());
        assert_eq!(keys.into_iter().collect::<Vec<_>>(), alloc::vec![(1, 2), (1, 3), (2, 3), (3, 3)]);
    }

    #[test]
    fn exact_threshold() {
        // with c' = 1 and k = 1 a color pair may be carried by one piece
        let puzzle = generate(12, 100_000, RngSeed(1)).unwrap();
        let r = check_typical(&puzzle, 1, Ratio::new(1, 1), DEFAULT_BUDGET).unwrap();
        assert!(r.sparse_pairs.holds);
        let r = check_typical(&puzzle, 1, default_c_prime(), DEFAULT_BUDGET).unwrap();
        assert!(matches!(r.sparse_pairs.witness, Some(Witness::CrowdedPair { pieces: 1, .. })));
    }

    #[test]
    fn planting_does_not_matter() {
        for s in 0..5 {
            let puzzle = generate(10, 80, RngSeed(s)).unwrap();
            let direct = check_typical(&puzzle, 1, default_c_prime(), DEFAULT_BUDGET).unwrap();
            let (bag, planted) = disassemble(&puzzle, RngSeed(s + 7));
            let cands = candidate_neighborhoods_with(&bag, &build_indexes(&bag), 1, DEFAULT_BUDGET).unwrap();
            let shuffled = check_typical_with(&puzzle, &bag, &planted, &cands, 1, default_c_prime()).unwrap();
            let holds = |r: &TypicalityReport| r.properties().map(|(_, p)| p.holds);
            assert_eq!(holds(&direct), holds(&shuffled));
        }
    }

    #[test]
    fn many_colors_are_structurally_typical() {
        // q far above n^2: coincidences among peripheral colors are rare
        let structural = (0..20)
            .filter(|&s| check_typical(&generate(12, 1_000_000, RngSeed(s)).unwrap(), 1, default_c_prime(), DEFAULT_BUDGET).unwrap().structural())
            .count();
        assert!(structural >= 18, "{structural}");
    }
}
