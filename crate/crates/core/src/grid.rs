//! Coordinates, edge identities, puzzles, pieces and assemblies.
//!
//! Grid coordinates are 1-indexed `(col, row)` pairs in `[1..n]²`, with `row`
//! growing upwards. The edge between `(i, j)` and `(i + 1, j)` is the
//! horizontal edge `(i:i+1, j)`; the edge between `(i, j)` and `(i, j + 1)` is
//! the vertical edge `(i, j:j+1)`. Boundary half-edges use anchors `0` and `n`.

use alloc::vec::Vec;
use core::fmt;
use core::ops::Index;

use rand::seq::SliceRandom;

use crate::gen::{rng_for, RngSeed};

/// A jig color. Valid colors are `1..=q`.
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GridError {
    #[error("coordinate {coord} outside [1..{n}]²")]
    OutOfRange { coord: GridCoord, n: usize },
    #[error("edge {edge} does not exist in a grid of side {n}")]
    NoSuchEdge { edge: EdgeId, n: usize },
    #[error("color {color} outside [1..{q}]")]
    InvalidColor { color: Color, q: u32 },
    #[error("expected {expected} entries, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("placement is not a bijection: piece {0} placed twice or out of range")]
    NotBijective(PieceId),
    #[error("side length and color count must be positive")]
    Empty,
}

/// A lattice point. Inside a puzzle both components lie in `[1..n]`, but the
/// solver and the constraint machinery work on the whole integer lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct GridCoord {
    pub col: i32,
    pub row: i32,
}

impl GridCoord {
    pub const fn new(col: i32, row: i32) -> Self {
        Self { col, row }
    }

    pub const fn offset(self, dx: i32, dy: i32) -> Self {
        Self::new(self.col + dx, self.row + dy)
    }

    pub fn step(self, dir: Direction) -> Self {
        let (dx, dy) = dir.delta();
        self.offset(dx, dy)
    }

    pub fn in_grid(self, n: usize) -> bool {
        let n = n as i32;
        (1..=n).contains(&self.col) && (1..=n).contains(&self.row)
    }

    /// Row-major index `(row - 1) * n + (col - 1)`; the caller guarantees
    /// `in_grid(n)`.
    pub fn index(self, n: usize) -> usize {
        (self.row as usize - 1) * n + (self.col as usize - 1)
    }

    pub fn from_index(index: usize, n: usize) -> Self {
        Self::new((index % n) as i32 + 1, (index / n) as i32 + 1)
    }

    /// All coordinates of `[1..n]²` in row-major order.
    pub fn all(n: usize) -> impl Iterator<Item = GridCoord> {
        (0..n * n).map(move |i| Self::from_index(i, n))
    }
}

impl fmt::Display for GridCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.col, self.row)
    }
}

/// The four sides of a piece, in counter-clockwise order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Right = 0,
    Up = 1,
    Left = 2,
    Down = 3,
}

impl Direction {
    pub const ALL: [Direction; 4] = [Direction::Right, Direction::Up, Direction::Left, Direction::Down];

    pub const fn index(self) -> usize {
        self as usize
    }

    pub const fn from_index(i: usize) -> Self {
        Self::ALL[i % 4]
    }

    pub const fn opposite(self) -> Self {
        Self::from_index(self.index() + 2)
    }

    /// Rotate counter-clockwise by `quarter_turns` quarter turns.
    pub const fn turned(self, quarter_turns: u8) -> Self {
        Self::from_index(self.index() + quarter_turns as usize)
    }

    pub const fn delta(self) -> (i32, i32) {
        match self {
            Direction::Right => (1, 0),
            Direction::Up => (0, 1),
            Direction::Left => (-1, 0),
            Direction::Down => (0, -1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeId {
    /// `(i:i+1, j)`, joining `(i, j)` and `(i + 1, j)`.
    Horizontal { i: i32, j: i32 },
    /// `(i, j:j+1)`, joining `(i, j)` and `(i, j + 1)`.
    Vertical { i: i32, j: i32 },
}

impl EdgeId {
    /// The edge leaving `v` in direction `dir`, e.g. `→(i,j) = (i:i+1, j)`.
    pub fn toward(v: GridCoord, dir: Direction) -> Self {
        match dir {
            Direction::Right => EdgeId::Horizontal { i: v.col, j: v.row },
            Direction::Left => EdgeId::Horizontal { i: v.col - 1, j: v.row },
            Direction::Up => EdgeId::Vertical { i: v.col, j: v.row },
            Direction::Down => EdgeId::Vertical { i: v.col, j: v.row - 1 },
        }
    }

    pub fn exists_in(self, n: usize) -> bool {
        let n = n as i32;
        match self {
            EdgeId::Horizontal { i, j } => (0..=n).contains(&i) && (1..=n).contains(&j),
            EdgeId::Vertical { i, j } => (1..=n).contains(&i) && (0..=n).contains(&j),
        }
    }

    pub fn is_boundary(self, n: usize) -> bool {
        let n = n as i32;
        match self {
            EdgeId::Horizontal { i, .. } | EdgeId::Vertical { j: i, .. } => i == 0 || i == n,
        }
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            EdgeId::Horizontal { i, j } => write!(f, "({}:{},{})", i, i + 1, j),
            EdgeId::Vertical { i, j } => write!(f, "({},{}:{})", i, j, j + 1),
        }
    }
}

/// A piece: four jig colors keyed by [`Direction`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Piece {
    colors: [Color; 4],
}

impl Piece {
    pub const fn new(right: Color, up: Color, left: Color, down: Color) -> Self {
        Self { colors: [right, up, left, down] }
    }

    pub const fn from_array(colors: [Color; 4]) -> Self {
        Self { colors }
    }

    pub const fn colors(&self) -> [Color; 4] {
        self.colors
    }

    pub const fn color(&self, dir: Direction) -> Color {
        self.colors[dir.index()]
    }
}

impl Index<Direction> for Piece {
    type Output = Color;

    fn index(&self, dir: Direction) -> &Color {
        &self.colors[dir.index()]
    }
}

/// Position of a piece inside a [`PieceBag`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PieceId(pub u32);

impl PieceId {
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for PieceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// An `n × n` puzzle with a color on every edge, boundary half-edges included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Puzzle {
    n: usize,
    q: u32,
    // (n + 1) × n, index (j - 1) * (n + 1) + i
    hcolors: Vec<Color>,
    // n × (n + 1), index j * n + (i - 1)
    vcolors: Vec<Color>,
}

impl Puzzle {
    /// Builds a puzzle from the two dense color arrays, in the canonical edge
    /// order: horizontal edges for `j = 1..n`, `i = 0..n`; vertical edges for
    /// `j = 0..n`, `i = 1..n`.
    pub fn from_colors(n: usize, q: u32, hcolors: Vec<Color>, vcolors: Vec<Color>) -> Result<Self, GridError> {
        if n == 0 || q == 0 {
            return Err(GridError::Empty);
        }
        let expected = (n + 1) * n;
        for len in [hcolors.len(), vcolors.len()] {
            if len != expected {
                return Err(GridError::SizeMismatch { expected, found: len });
            }
        }
        if let Some(&color) = hcolors.iter().chain(&vcolors).find(|&&c| c == 0 || c > q) {
            return Err(GridError::InvalidColor { color, q });
        }
        Ok(Self { n, q, hcolors, vcolors })
    }

    /// Every edge colored `color`.
    pub fn monochromatic(n: usize, q: u32, color: Color) -> Result<Self, GridError> {
        let len = (n + 1) * n;
        Self::from_colors(n, q, alloc::vec![color; len], alloc::vec![color; len])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn hcolors(&self) -> &[Color] {
        &self.hcolors
    }

    pub fn vcolors(&self) -> &[Color] {
        &self.vcolors
    }

    pub fn color(&self, edge: EdgeId) -> Result<Color, GridError> {
        if !edge.exists_in(self.n) {
            return Err(GridError::NoSuchEdge { edge, n: self.n });
        }
        Ok(match edge {
            EdgeId::Horizontal { i, j } => self.hcolors[(j as usize - 1) * (self.n + 1) + i as usize],
            EdgeId::Vertical { i, j } => self.vcolors[j as usize * self.n + (i as usize - 1)],
        })
    }

    pub fn set_color(&mut self, edge: EdgeId, color: Color) -> Result<(), GridError> {
        if !edge.exists_in(self.n) {
            return Err(GridError::NoSuchEdge { edge, n: self.n });
        }
        if color == 0 || color > self.q {
            return Err(GridError::InvalidColor { color, q: self.q });
        }
        match edge {
            EdgeId::Horizontal { i, j } => self.hcolors[(j as usize - 1) * (self.n + 1) + i as usize] = color,
            EdgeId::Vertical { i, j } => self.vcolors[j as usize * self.n + (i as usize - 1)] = color,
        }
        Ok(())
    }

    /// The piece at `v`: the colors of `→(v)`, `↑(v)`, `←(v)`, `↓(v)`.
    pub fn piece_at(&self, v: GridCoord) -> Result<Piece, GridError> {
        if !v.in_grid(self.n) {
            return Err(GridError::OutOfRange { coord: v, n: self.n });
        }
        let mut colors = [0; 4];
        for dir in Direction::ALL {
            colors[dir.index()] = self.color(EdgeId::toward(v, dir))?;
        }
        Ok(Piece::from_array(colors))
    }

    /// All pieces in row-major order of their positions.
    pub fn pieces(&self) -> Vec<Piece> {
        GridCoord::all(self.n).map(|v| self.piece_at(v).expect("in range")).collect()
    }

    /// The bag holding the pieces in row-major order, with its (identity)
    /// planted assembly.
    pub fn ordered_bag(&self) -> (PieceBag, Assembly) {
        let bag = PieceBag { n: self.n, q: self.q, pieces: self.pieces() };
        (bag, Assembly::identity(self.n))
    }
}

/// The disassembled multiset of pieces, in presentation order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceBag {
    n: usize,
    q: u32,
    pieces: Vec<Piece>,
}

impl PieceBag {
    pub fn new(n: usize, q: u32, pieces: Vec<Piece>) -> Result<Self, GridError> {
        if n == 0 || q == 0 {
            return Err(GridError::Empty);
        }
        if pieces.len() != n * n {
            return Err(GridError::SizeMismatch { expected: n * n, found: pieces.len() });
        }
        if let Some(&color) = pieces.iter().flat_map(|p| p.colors.iter()).find(|&&c| c == 0 || c > q) {
            return Err(GridError::InvalidColor { color, q });
        }
        Ok(Self { n, q, pieces })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece(&self, id: PieceId) -> &Piece {
        &self.pieces[id.index()]
    }

    pub fn ids(&self) -> impl Iterator<Item = PieceId> {
        (0..self.pieces.len() as u32).map(PieceId)
    }

    /// Pairs of distinct pieces with identical colors, in increasing id order.
    pub fn identical_pairs(&self) -> Vec<(PieceId, PieceId)> {
        let mut order: Vec<PieceId> = self.ids().collect();
        order.sort_by_key(|&id| (self.pieces[id.index()], id));
        order
            .windows(2)
            .filter(|w| self.pieces[w[0].index()] == self.pieces[w[1].index()])
            .map(|w| (w[0], w[1]))
            .collect()
    }
}

impl Index<PieceId> for PieceBag {
    type Output = Piece;

    fn index(&self, id: PieceId) -> &Piece {
        &self.pieces[id.index()]
    }
}

/// A bijective placement of bag pieces onto `[1..n]²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assembly {
    n: usize,
    // row-major over [1..n]²
    placement: Vec<PieceId>,
}

impl Assembly {
    /// `placement` lists the piece at each coordinate in row-major order.
    pub fn new(n: usize, placement: Vec<PieceId>) -> Result<Self, GridError> {
        if placement.len() != n * n {
            return Err(GridError::SizeMismatch { expected: n * n, found: placement.len() });
        }
        let mut seen = alloc::vec![false; n * n];
        for &id in &placement {
            match seen.get_mut(id.index()) {
                Some(slot @ false) => *slot = true,
                _ => return Err(GridError::NotBijective(id)),
            }
        }
        Ok(Self { n, placement })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, placement: (0..(n * n) as u32).map(PieceId).collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn placement(&self) -> &[PieceId] {
        &self.placement
    }

    /// The piece at `v`, or `None` outside the grid.
    pub fn at(&self, v: GridCoord) -> Option<PieceId> {
        v.in_grid(self.n).then(|| self.placement[v.index(self.n)])
    }

    /// Inverse map: `positions()[id]` is where piece `id` sits.
    pub fn positions(&self) -> Vec<GridCoord> {
        let mut pos = alloc::vec![GridCoord::default(); self.placement.len()];
        for (i, id) in self.placement.iter().enumerate() {
            pos[id.index()] = GridCoord::from_index(i, self.n);
        }
        pos
    }

    pub fn swapped(&self, a: PieceId, b: PieceId) -> Self {
        let mut out = self.clone();
        for id in out.placement.iter_mut() {
            if *id == a {
                *id = b;
            } else if *id == b {
                *id = a;
            }
        }
        out
    }

    /// True if both assemblies place value-identical pieces everywhere, i.e.
    /// they are equal up to exchanging identical pieces.
    pub fn equivalent_in(&self, other: &Assembly, bag: &PieceBag) -> bool {
        self.n == other.n
            && self.placement.iter().zip(&other.placement).all(|(&a, &b)| bag[a] == bag[b])
    }
}

/// Shuffles the pieces of `puzzle` into a bag. Returns the bag and the planted
/// assembly mapping every coordinate to the id now holding its piece.
pub fn disassemble(puzzle: &Puzzle, seed: RngSeed) -> (PieceBag, Assembly) {
    let n = puzzle.n();
    let mut order: Vec<usize> = (0..n * n).collect();
    order.shuffle(&mut rng_for(seed));
    // bag slot s holds the piece from coordinate order[s]
    let pieces = order.iter().map(|&i| puzzle.piece_at(GridCoord::from_index(i, n)).expect("in range")).collect();
    let mut placement = alloc::vec![PieceId(0); n * n];
    for (slot, &i) in order.iter().enumerate() {
        placement[i] = PieceId(slot as u32);
    }
    let bag = PieceBag { n, q: puzzle.q(), pieces };
    (bag, Assembly { n, placement })
}

/// True iff every internal edge gets the same color from both adjacent pieces.
pub fn is_feasible(bag: &PieceBag, assembly: &Assembly) -> Result<bool, GridError> {
    let n = bag.n();
    if assembly.n() != n {
        return Err(GridError::SizeMismatch { expected: n * n, found: assembly.placement.len() });
    }
    for v in GridCoord::all(n) {
        let here = &bag[assembly.placement[v.index(n)]];
        for dir in [Direction::Right, Direction::Up] {
            if let Some(other) = assembly.at(v.step(dir)) {
                if here[dir] != bag[other][dir.opposite()] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
