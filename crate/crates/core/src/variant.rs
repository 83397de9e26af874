//! The rotation model: oriented edges carry jigs, matching jigs are related by
//! an involution, and pieces may be placed in any of four orientations.
//!
//! The jigs of a location `x` are listed counter-clockwise: right, up, left,
//! down. A [`Rotation`] of `r` quarter turns moves the jig on side `d` of a
//! piece to side `d + r` (counter-clockwise), so one quarter turn sends the
//! right jig to the up position.

use alloc::vec::Vec;

use crate::grid::{Color, Direction, EdgeId, GridCoord, Puzzle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VariantError {
    #[error("map is not an involution on [1..{q}]: iota({color}) = {image}")]
    NotInvolution { q: u32, color: Color, image: Color },
    #[error("jig {color} outside [1..{q}]")]
    InvalidColor { color: Color, q: u32 },
    #[error("expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("jigs of the edge leaving {at} to the {dir:?} do not match through the involution")]
    Unmatched { at: GridCoord, dir: Direction },
    #[error("edge map is not a rigid placement of pieces at location {0}")]
    NotRigid(GridCoord),
    #[error("piece {0} is placed twice or out of range")]
    NotBijective(GridCoord),
    #[error("piece (1,1) is rotated; the global orientation must be fixed")]
    OrientationNotFixed,
    #[error("more than {0} feasible assemblies")]
    LimitExceeded(usize),
}

/// Self-inverse map on jig types; `apply(j) = j'` means `j` and `j'` fit together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JigInvolution {
    // image[c - 1] = iota(c)
    image: Vec<Color>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InvolutionKind {
    Identity,
    /// Swaps `(1,2), (3,4), …`; for odd `q` the last color is fixed.
    Pairing,
}

impl JigInvolution {
    pub fn new(image: Vec<Color>) -> Result<Self, VariantError> {
        let q = image.len() as u32;
        for (i, &c) in image.iter().enumerate() {
            let color = i as Color + 1;
            if c == 0 || c > q || image[c as usize - 1] != color {
                return Err(VariantError::NotInvolution { q, color, image: c });
            }
        }
        Ok(Self { image })
    }

    pub fn q(&self) -> u32 {
        self.image.len() as u32
    }

    pub fn apply(&self, c: Color) -> Color {
        self.image[c as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &c)| c == i as Color + 1)
    }

    pub fn fixed_points(&self) -> usize {
        self.image.iter().enumerate().filter(|&(i, &c)| c == i as Color + 1).count()
    }
}

pub fn make_involution(q: u32, kind: InvolutionKind) -> Result<JigInvolution, VariantError> {
    let image = (1..=q)
        .map(|c| match kind {
            InvolutionKind::Identity => c,
            InvolutionKind::Pairing if c % 2 == 1 && c < q => c + 1,
            InvolutionKind::Pairing if c % 2 == 0 => c - 1,
            InvolutionKind::Pairing => c,
        })
        .collect();
    JigInvolution::new(image)
}

/// An element of C4, stored as a number of counter-clockwise quarter turns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rotation(u8);

impl Rotation {
    pub const IDENTITY: Rotation = Rotation(0);
    pub const GENERATOR: Rotation = Rotation(1);
    pub const ALL: [Rotation; 4] = [Rotation(0), Rotation(1), Rotation(2), Rotation(3)];

    pub const fn quarter_turns(turns: u8) -> Self {
        Rotation(turns % 4)
    }

    pub const fn turns(self) -> u8 {
        self.0
    }

    pub const fn compose(self, other: Rotation) -> Self {
        Rotation((self.0 + other.0) % 4)
    }

    pub const fn inverse(self) -> Self {
        Rotation((4 - self.0) % 4)
    }
}

/// Rotates a piece given by its jigs in counter-clockwise side order.
pub fn rotate_piece(jigs: [Color; 4], rotation: Rotation) -> [Color; 4] {
    let mut out = [0; 4];
    for d in Direction::ALL {
        out[d.turned(rotation.turns()).index()] = jigs[d.index()];
    }
    out
}

/// The oriented grid edge `(tail, tail + dir)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrientedEdge {
    pub tail: GridCoord,
    pub dir: Direction,
}

impl OrientedEdge {
    pub const fn new(tail: GridCoord, dir: Direction) -> Self {
        Self { tail, dir }
    }

    pub fn head(self) -> GridCoord {
        self.tail.step(self.dir)
    }

    pub fn reversed(self) -> Self {
        Self::new(self.head(), self.dir.opposite())
    }

    pub fn is_internal(self, n: usize) -> bool {
        self.tail.in_grid(n) && self.head().in_grid(n)
    }
}

/// A jig on every oriented edge whose tail lies in `[1..n]²`, with
/// `jig(e) = iota(jig(ě))` on internal edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VariantPuzzle {
    n: usize,
    q: u32,
    iota: JigInvolution,
    // jigs[x.index(n)][dir]
    jigs: Vec<[Color; 4]>,
}

impl VariantPuzzle {
    /// `jigs` lists the four jigs of each location, row-major.
    pub fn new(n: usize, q: u32, iota: JigInvolution, jigs: Vec<[Color; 4]>) -> Result<Self, VariantError> {
        if jigs.len() != n * n {
            return Err(VariantError::SizeMismatch { expected: n * n, found: jigs.len() });
        }
        if iota.q() != q {
            return Err(VariantError::SizeMismatch { expected: q as usize, found: iota.q() as usize });
        }
        if let Some(&color) = jigs.iter().flatten().find(|&&c| c == 0 || c > q) {
            return Err(VariantError::InvalidColor { color, q });
        }
        let vp = Self { n, q, iota, jigs };
        for x in GridCoord::all(n) {
            for dir in [Direction::Right, Direction::Up] {
                let e = OrientedEdge::new(x, dir);
                if e.is_internal(n) && vp.jig(x, dir) != vp.iota.apply(vp.jig(e.head(), dir.opposite())) {
                    return Err(VariantError::Unmatched { at: x, dir });
                }
            }
        }
        Ok(vp)
    }

    /// The base model seen as the rotation model with the identity involution.
    pub fn from_base(puzzle: &Puzzle) -> Self {
        let iota = make_involution(puzzle.q(), InvolutionKind::Identity).expect("identity");
        let jigs = puzzle.pieces().iter().map(|p| p.colors()).collect();
        Self { n: puzzle.n(), q: puzzle.q(), iota, jigs }
    }

    /// Inverse of [`VariantPuzzle::from_base`]; `None` unless the involution is
    /// the identity.
    pub fn to_base(&self) -> Option<Puzzle> {
        if !self.iota.is_identity() {
            return None;
        }
        let mut puzzle = Puzzle::monochromatic(self.n, self.q, 1).ok()?;
        for x in GridCoord::all(self.n) {
            for dir in Direction::ALL {
                puzzle.set_color(EdgeId::toward(x, dir), self.jig(x, dir)).ok()?;
            }
        }
        Some(puzzle)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn iota(&self) -> &JigInvolution {
        &self.iota
    }

    pub fn jig(&self, x: GridCoord, dir: Direction) -> Color {
        self.jigs[x.index(self.n)][dir.index()]
    }

    pub fn jigs_at(&self, x: GridCoord) -> [Color; 4] {
        self.jigs[x.index(self.n)]
    }

    pub fn all_jigs(&self) -> &[[Color; 4]] {
        &self.jigs
    }
}

/// A placement of every piece (named by its original location) at a location,
/// with a rotation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RotAssembly {
    n: usize,
    // row-major over locations
    cells: Vec<(GridCoord, Rotation)>,
}

impl RotAssembly {
    pub fn new(n: usize, cells: Vec<(GridCoord, Rotation)>) -> Result<Self, VariantError> {
        if cells.len() != n * n {
            return Err(VariantError::SizeMismatch { expected: n * n, found: cells.len() });
        }
        let mut seen = alloc::vec![false; n * n];
        for &(y, _) in &cells {
            if !y.in_grid(n) || core::mem::replace(&mut seen[y.index(n)], true) {
                return Err(VariantError::NotBijective(y));
            }
        }
        Ok(Self { n, cells })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, cells: GridCoord::all(n).map(|y| (y, Rotation::IDENTITY)).collect() }
    }

    /// Recovers a placement from a permutation of oriented edges, checking that
    /// it moves the four edges of each location rigidly onto those of a piece.
    pub fn from_edge_map(n: usize, map: impl Fn(OrientedEdge) -> OrientedEdge) -> Result<Self, VariantError> {
        let mut cells = Vec::with_capacity(n * n);
        for x in GridCoord::all(n) {
            let first = map(OrientedEdge::new(x, Direction::Right));
            let rotation = Rotation::quarter_turns(4 - first.dir.index() as u8);
            for dir in Direction::ALL {
                let image = map(OrientedEdge::new(x, dir));
                if image.tail != first.tail || image.dir != dir.turned(rotation.inverse().turns()) {
                    return Err(VariantError::NotRigid(x));
                }
            }
            cells.push((first.tail, rotation));
        }
        Self::new(n, cells)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[(GridCoord, Rotation)] {
        &self.cells
    }

    pub fn at(&self, x: GridCoord) -> (GridCoord, Rotation) {
        self.cells[x.index(self.n)]
    }

    /// The image `a(e)` of an oriented edge leaving a location.
    pub fn edge_image(&self, e: OrientedEdge) -> OrientedEdge {
        let (piece, rotation) = self.at(e.tail);
        OrientedEdge::new(piece, e.dir.turned(rotation.inverse().turns()))
    }

    /// True iff piece `(1,1)` keeps its orientation.
    pub fn orientation_fixed(&self) -> bool {
        self.cells.iter().all(|&(y, r)| y != GridCoord::new(1, 1) || r == Rotation::IDENTITY)
    }

    /// True iff boundary edges are sent to boundary edges (`a(E_in) = E_in`).
    pub fn preserves_boundary(&self) -> bool {
        GridCoord::all(self.n).all(|x| self.cell_preserves_boundary(x))
    }

    fn cell_preserves_boundary(&self, x: GridCoord) -> bool {
        Direction::ALL.iter().all(|&d| {
            let e = OrientedEdge::new(x, d);
            e.is_internal(self.n) == self.edge_image(e).is_internal(self.n)
        })
    }
}

fn placed_jig(vp: &VariantPuzzle, a: &RotAssembly, x: GridCoord, dir: Direction) -> Color {
    let image = a.edge_image(OrientedEdge::new(x, dir));
    vp.jig(image.tail, image.dir)
}

/// The jig-matching condition alone, without the orientation normalization.
pub fn jigs_match(vp: &VariantPuzzle, a: &RotAssembly) -> bool {
    GridCoord::all(vp.n()).all(|x| {
        [Direction::Right, Direction::Up].iter().all(|&d| {
            let y = x.step(d);
            !y.in_grid(vp.n()) || placed_jig(vp, a, x, d) == vp.iota().apply(placed_jig(vp, a, y, d.opposite()))
        })
    })
}

/// True iff `a` is an assembly (orientation fixed) and every internal
/// oriented edge `e` satisfies `jig(a(e)) = iota(jig(a(ě)))`.
pub fn is_feasible_rot_assembly(vp: &VariantPuzzle, a: &RotAssembly) -> Result<bool, VariantError> {
    if a.n() != vp.n() {
        return Err(VariantError::SizeMismatch { expected: vp.n() * vp.n(), found: a.cells().len() });
    }
    if !a.orientation_fixed() {
        return Err(VariantError::OrientationNotFixed);
    }
    Ok(jigs_match(vp, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariantSolveOptions {
    /// Only keep assemblies with `a(E_in) = E_in`.
    pub boundary_fixed: bool,
    /// When false every piece keeps its orientation.
    pub allow_rotations: bool,
}

impl Default for VariantSolveOptions {
    fn default() -> Self {
        Self { boundary_fixed: false, allow_rotations: true }
    }
}

pub fn brute_force_variant_solve(vp: &VariantPuzzle, limit: usize) -> Result<Vec<RotAssembly>, VariantError> {
    brute_force_variant_solve_with(vp, limit, VariantSolveOptions::default())
}

/// Every feasible assembly, by row-major backtracking over (piece, rotation).
pub fn brute_force_variant_solve_with(
    vp: &VariantPuzzle,
    limit: usize,
    options: VariantSolveOptions,
) -> Result<Vec<RotAssembly>, VariantError> {
    let n = vp.n();
    let mut search = VariantSearch {
        vp,
        limit,
        options,
        used: alloc::vec![false; n * n],
        cells: Vec::with_capacity(n * n),
        found: Vec::new(),
    };
    search.extend()?;
    Ok(search.found)
}

struct VariantSearch<'a> {
    vp: &'a VariantPuzzle,
    limit: usize,
    options: VariantSolveOptions,
    used: Vec<bool>,
    cells: Vec<(GridCoord, Rotation)>,
    found: Vec<RotAssembly>,
}

impl VariantSearch<'_> {
    fn placed(&self, x: GridCoord, dir: Direction) -> Color {
        let (y, r) = self.cells[x.index(self.vp.n())];
        self.vp.jig(y, dir.turned(r.inverse().turns()))
    }

    fn extend(&mut self) -> Result<(), VariantError> {
        let n = self.vp.n();
        let t = self.cells.len();
        if t == n * n {
            if self.found.len() == self.limit {
                return Err(VariantError::LimitExceeded(self.limit));
            }
            self.found.push(RotAssembly { n, cells: self.cells.clone() });
            return Ok(());
        }
        let x = GridCoord::from_index(t, n);
        for y in GridCoord::all(n) {
            if self.used[y.index(n)] {
                continue;
            }
            let rotations: &[Rotation] = if y == GridCoord::new(1, 1) || !self.options.allow_rotations {
                &Rotation::ALL[..1]
            } else {
                &Rotation::ALL
            };
            for &r in rotations {
                self.cells.push((y, r));
                if self.fits(x) {
                    self.used[y.index(n)] = true;
                    let res = self.extend();
                    self.used[y.index(n)] = false;
                    if res.is_err() {
                        self.cells.pop();
                        return res;
                    }
                }
                self.cells.pop();
            }
        }
        Ok(())
    }

    fn fits(&self, x: GridCoord) -> bool {
        let n = self.vp.n();
        let iota = self.vp.iota();
        for d in [Direction::Left, Direction::Down] {
            let w = x.step(d);
            if w.in_grid(n) && self.placed(x, d) != iota.apply(self.placed(w, d.opposite())) {
                return false;
            }
        }
        if self.options.boundary_fixed {
            let (y, r) = self.cells[x.index(n)];
            for d in Direction::ALL {
                let image = OrientedEdge::new(y, d.turned(r.inverse().turns()));
                if OrientedEdge::new(x, d).is_internal(n) != image.is_internal(n) {
                    return false;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, generate_variant, RngSeed};
    use alloc::vec;

    #[test]
    fn involutions() {
        let id = make_involution(5, InvolutionKind::Identity).unwrap();
        assert!(id.is_identity());
        let pair = make_involution(4, InvolutionKind::Pairing).unwrap();
        assert_eq!((1..=4).map(|c| pair.apply(c)).collect::<Vec<_>>(), vec![2, 1, 4, 3]);
        assert_eq!(pair.fixed_points(), 0);
        let odd = make_involution(5, InvolutionKind::Pairing).unwrap();
        assert_eq!(odd.fixed_points(), 1);
        assert_eq!(odd.apply(5), 5);
        for c in 1..=5 {
            assert_eq!(odd.apply(odd.apply(c)), c);
        }
        assert!(matches!(JigInvolution::new(vec![2, 3, 1]), Err(VariantError::NotInvolution { .. })));
        assert!(matches!(JigInvolution::new(vec![1, 4]), Err(VariantError::NotInvolution { .. })));
    }

    #[test]
    fn rotations() {
        let p = [1, 2, 3, 4];
        assert_eq!(rotate_piece(p, Rotation::IDENTITY), p);
        // the right jig moves to the up position
        assert_eq!(rotate_piece(p, Rotation::GENERATOR), [4, 1, 2, 3]);
        let mut q = p;
        for _ in 0..4 {
            q = rotate_piece(q, Rotation::GENERATOR);
        }
        assert_eq!(q, p);
        assert_eq!(Rotation::GENERATOR.compose(Rotation::GENERATOR.inverse()), Rotation::IDENTITY);
    }

    #[test]
    fn identity_is_feasible() {
        let iota = make_involution(7, InvolutionKind::Pairing).unwrap();
        for s in 0..10 {
            let vp = generate_variant(4, 7, &iota, RngSeed(s)).unwrap();
            assert_eq!(is_feasible_rot_assembly(&vp, &RotAssembly::identity(4)), Ok(true));
        }
    }

    fn quarter_turn_of_everything(n: usize) -> RotAssembly {
        // the piece from y lands at (n + 1 - y.row, y.col), turned once
        let mut cells = vec![(GridCoord::default(), Rotation::IDENTITY); n * n];
        for y in GridCoord::all(n) {
            let x = GridCoord::new(n as i32 + 1 - y.row, y.col);
            cells[x.index(n)] = (y, Rotation::GENERATOR);
        }
        RotAssembly::new(n, cells).unwrap()
    }

    #[test]
    fn global_rotation_matches_but_is_not_an_assembly() {
        let iota = make_involution(9, InvolutionKind::Pairing).unwrap();
        let vp = generate_variant(4, 9, &iota, RngSeed(2)).unwrap();
        let turned = quarter_turn_of_everything(4);
        assert!(jigs_match(&vp, &turned));
        assert!(!turned.orientation_fixed());
        assert_eq!(is_feasible_rot_assembly(&vp, &turned), Err(VariantError::OrientationNotFixed));
    }

    #[test]
    fn edge_map_round_trip() {
        let a = quarter_turn_of_everything(3);
        let b = RotAssembly::from_edge_map(3, |e| a.edge_image(e)).unwrap();
        assert_eq!(a, b);
        // tearing one piece apart is rejected
        let torn = RotAssembly::from_edge_map(3, |e| {
            if e.tail == GridCoord::new(2, 2) && e.dir == Direction::Up {
                OrientedEdge::new(GridCoord::new(1, 1), Direction::Up)
            } else {
                a.edge_image(e)
            }
        });
        assert_eq!(torn, Err(VariantError::NotRigid(GridCoord::new(2, 2))));
    }

    #[test]
    fn random_rotated_permutation_is_infeasible() {
        let iota = make_involution(200, InvolutionKind::Pairing).unwrap();
        let mut feasible = 0;
        for s in 0..100u64 {
            let vp = generate_variant(4, 200, &iota, RngSeed(s)).unwrap();
            // deterministic scramble: reverse the locations and rotate every other piece
            let cells = (0..16)
                .map(|i| {
                    let y = GridCoord::from_index(15 - i, 4);
                    let r = if y == GridCoord::new(1, 1) { 0 } else { ((i as u64 + s) % 4) as u8 };
                    (y, Rotation::quarter_turns(r))
                })
                .collect();
            let a = RotAssembly::new(4, cells).unwrap();
            if is_feasible_rot_assembly(&vp, &a).unwrap() {
                feasible += 1;
            }
        }
        assert_eq!(feasible, 0);
    }

    #[test]
    fn brute_force_counts() {
        let iota = make_involution(1, InvolutionKind::Identity).unwrap();
        let one = generate_variant(1, 1, &iota, RngSeed(0)).unwrap();
        assert_eq!(brute_force_variant_solve(&one, 10).unwrap().len(), 1);

        let vp = generate_variant(2, 1, &iota, RngSeed(0)).unwrap();
        let all = brute_force_variant_solve(&vp, 10_000).unwrap();
        assert_eq!(all.len(), 24 * 64);
        assert!(all.contains(&RotAssembly::identity(2)));
        assert_eq!(brute_force_variant_solve(&vp, 100), Err(VariantError::LimitExceeded(100)));
    }

    #[test]
    fn boundary_fixed_restriction() {
        // with one jig type only the boundary condition constrains the search:
        // every location of a 2x2 grid is a corner, so each piece has exactly
        // one admissible rotation per location
        let iota = make_involution(1, InvolutionKind::Identity).unwrap();
        let vp = generate_variant(2, 1, &iota, RngSeed(0)).unwrap();
        let opts = VariantSolveOptions { boundary_fixed: true, allow_rotations: true };
        let all = brute_force_variant_solve_with(&vp, 10_000, opts).unwrap();
        assert!(all.iter().all(|a| a.preserves_boundary() && a.orientation_fixed()));
        // piece (1,1) is pinned to location (1,1); the other three permute freely
        assert_eq!(all.len(), 6);
    }

    #[test]
    fn identity_involution_without_rotations_matches_base_oracle() {
        use crate::oracle::enumerate_feasible_assemblies;
        for s in 0..20 {
            let puzzle = generate(3, 2, RngSeed(s)).unwrap();
            let vp = VariantPuzzle::from_base(&puzzle);
            assert_eq!(vp.to_base().as_ref(), Some(&puzzle));
            let opts = VariantSolveOptions { boundary_fixed: false, allow_rotations: false };
            let mut rot: Vec<Vec<u32>> = brute_force_variant_solve_with(&vp, 1_000_000, opts)
                .unwrap()
                .iter()
                .map(|a| a.cells().iter().map(|&(y, _)| y.index(3) as u32).collect())
                .collect();
            let (bag, _) = puzzle.ordered_bag();
            let mut base: Vec<Vec<u32>> = enumerate_feasible_assemblies(&bag, 1_000_000)
                .unwrap()
                .iter()
                .map(|a| a.placement().iter().map(|id| id.0).collect())
                .collect();
            rot.sort();
            base.sort();
            assert_eq!(rot, base);
        }
    }

    #[test]
    fn rejects_unmatched_jigs() {
        let iota = make_involution(3, InvolutionKind::Pairing).unwrap();
        // (1,1) right = 1 requires (2,1) left = iota(1) = 2
        let jigs = vec![[1, 3, 3, 3], [3, 3, 1, 3]];
        assert!(matches!(VariantPuzzle::new(1, 3, iota.clone(), jigs.clone()), Err(VariantError::SizeMismatch { .. })));
        let bad = vec![[1, 3, 3, 3], [3, 3, 1, 3], [3, 3, 3, 3], [3, 3, 3, 3]];
        assert!(matches!(VariantPuzzle::new(2, 3, iota, bad), Err(VariantError::Unmatched { .. })));
    }
}
