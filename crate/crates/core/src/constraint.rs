//! Window maps, their tiles and constraint multigraphs, and the isoperimetric
//! quantities used to bound the number of independent color constraints.
//!
//! A window map `f: W → Z²` (with `W ⊂ [-k,k]²`) forces a color equality
//! between two grid edges every time two window-adjacent cells are not mapped
//! to grid-adjacent pieces in the same relative position. Those equalities form
//! the constraint graph: its vertices are grid edges, its edges are the forced
//! equalities, kept with multiplicity. Every grid edge takes part in at most two
//! equalities (once as the right/up side of its lower-left piece, once as the
//! left/down side of the other), so each component is a path or a cycle, and a
//! doubled equality is a cycle of length 2.
//!
//! With `|V|` vertices and `c` components, `γ = |V| - c` is the number of
//! independent equalities: a random puzzle satisfies all of them with
//! probability exactly `q^-γ`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};

use crate::dsu::Dsu;
use crate::grid::{Direction, EdgeId, GridCoord, GridError, Puzzle};

/// Absolute tolerance for the real-valued partition bound comparisons.
pub const PARTITION_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstraintError {
    #[error("window map has an empty domain")]
    EmptyDomain,
    #[error("window cell ({x},{y}) outside [-{k},{k}]²")]
    OutsideWindow { x: i32, y: i32, k: i32 },
    #[error("window map is not injective: {0} is hit twice")]
    NotInjective(GridCoord),
    #[error("the set is empty")]
    EmptySet,
    #[error("partition parts must be positive and non-increasing")]
    NotDescending,
    #[error("partition sums to {sum}, expected {expected}")]
    WrongSum { sum: u64, expected: u64 },
    #[error(transparent)]
    Grid(#[from] GridError),
}

/// A cell of the window `[-k,k]²`; `(0,0)` is the center.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct WindowCoord {
    pub x: i32,
    pub y: i32,
}

impl WindowCoord {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn step(self, dir: Direction) -> Self {
        let (dx, dy) = dir.delta();
        Self::new(self.x + dx, self.y + dy)
    }

    /// All cells of `[-k,k]²`.
    pub fn square(k: i32) -> impl Iterator<Item = WindowCoord> {
        (-k..=k).flat_map(move |y| (-k..=k).map(move |x| WindowCoord::new(x, y)))
    }
}

/// An injective map from a nonempty `W ⊂ [-k,k]²` to lattice points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowMap {
    k: i32,
    map: BTreeMap<WindowCoord, GridCoord>,
}

impl WindowMap {
    pub fn new(k: i32, pairs: impl IntoIterator<Item = (WindowCoord, GridCoord)>) -> Result<Self, ConstraintError> {
        let mut map = BTreeMap::new();
        let mut image = BTreeSet::new();
        for (w, p) in pairs {
            if w.x.abs() > k || w.y.abs() > k {
                return Err(ConstraintError::OutsideWindow { x: w.x, y: w.y, k });
            }
            if !image.insert(p) || map.insert(w, p).is_some() {
                return Err(ConstraintError::NotInjective(p));
            }
        }
        if map.is_empty() {
            return Err(ConstraintError::EmptyDomain);
        }
        Ok(Self { k, map })
    }

    /// `f(x) = v + x` on the full window.
    pub fn translation(k: i32, v: GridCoord) -> Self {
        Self::new(k, WindowCoord::square(k).map(|w| (w, v.offset(w.x, w.y)))).expect("translation is injective")
    }

    pub fn k(&self) -> i32 {
        self.k
    }

    pub fn get(&self, w: WindowCoord) -> Option<GridCoord> {
        self.map.get(&w).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (WindowCoord, GridCoord)> + '_ {
        self.map.iter().map(|(&w, &p)| (w, p))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Restriction to the cells of `W` accepted by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(WindowCoord) -> bool) -> Result<Self, ConstraintError> {
        Self::new(self.k, self.iter().filter(|&(w, _)| keep(w)))
    }
}

/// Connected components of the image `f(W)` under 4-adjacency, each sorted,
/// listed by their smallest point.
pub fn tiles_of(wm: &WindowMap) -> Vec<Vec<GridCoord>> {
    let points: Vec<GridCoord> = {
        let mut v: Vec<GridCoord> = wm.iter().map(|(_, p)| p).collect();
        v.sort_unstable();
        v
    };
    connected_components(&points)
}

fn connected_components(points: &[GridCoord]) -> Vec<Vec<GridCoord>> {
    let index: BTreeMap<GridCoord, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut dsu = Dsu::new(points.len());
    for (i, p) in points.iter().enumerate() {
        for dir in [Direction::Right, Direction::Up] {
            if let Some(&j) = index.get(&p.step(dir)) {
                dsu.union(i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<GridCoord>> = BTreeMap::new();
    for (i, &p) in points.iter().enumerate() {
        groups.entry(dsu.find(i)).or_default().push(p);
    }
    let mut tiles: Vec<Vec<GridCoord>> = groups.into_values().collect();
    tiles.sort();
    tiles
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentShape {
    Path,
    Cycle,
}

/// One connected component of a constraint graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintComponent {
    pub vertices: Vec<EdgeId>,
    /// Constraints counted with multiplicity.
    pub constraints: usize,
    /// Constraints touching a vertex of degree 1.
    pub unique_constraints: usize,
    pub shape: ComponentShape,
}

impl ConstraintComponent {
    pub fn gamma(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Constraint multigraph on grid edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintGraph {
    vertices: Vec<EdgeId>,
    edges: Vec<(EdgeId, EdgeId)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConstraintStats {
    pub num_vertices: usize,
    pub num_components: usize,
    /// `num_vertices - num_components`.
    pub gamma: usize,
    /// Total number of constraints, with multiplicity.
    pub w: usize,
    /// Constraints containing a vertex that appears in no other constraint.
    pub u: usize,
}

impl ConstraintStats {
    /// `γ ≥ w/2 + u/2`, checked as `2γ ≥ w + u`.
    pub fn satisfies_half_bound(&self) -> bool {
        2 * self.gamma >= self.w + self.u
    }
}

impl ConstraintGraph {
    /// Builds a graph from explicit constraints; vertices are the edges spanned.
    pub fn from_edges(edges: Vec<(EdgeId, EdgeId)>) -> Self {
        let vertices: BTreeSet<EdgeId> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        Self { vertices: vertices.into_iter().collect(), edges }
    }

    /// Grid edges spanned by constraints, sorted.
    pub fn vertices(&self) -> &[EdgeId] {
        &self.vertices
    }

    /// Constraints in generation order, with multiplicity.
    pub fn edges(&self) -> &[(EdgeId, EdgeId)] {
        &self.edges
    }

    pub fn degree(&self, v: EdgeId) -> usize {
        self.edges.iter().map(|&(a, b)| (a == v) as usize + (b == v) as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    fn vertex_index(&self, v: EdgeId) -> usize {
        self.vertices.binary_search(&v).expect("constraint endpoint is a vertex")
    }

    fn degrees(&self) -> Vec<usize> {
        let mut deg = alloc::vec![0; self.vertices.len()];
        for &(a, b) in &self.edges {
            deg[self.vertex_index(a)] += 1;
            deg[self.vertex_index(b)] += 1;
        }
        deg
    }

    pub fn components(&self) -> Vec<ConstraintComponent> {
        let deg = self.degrees();
        let mut dsu = Dsu::new(self.vertices.len());
        for &(a, b) in &self.edges {
            dsu.union(self.vertex_index(a), self.vertex_index(b));
        }
        let mut by_root: BTreeMap<usize, ConstraintComponent> = BTreeMap::new();
        for (i, &v) in self.vertices.iter().enumerate() {
            by_root
                .entry(dsu.find(i))
                .or_insert_with(|| ConstraintComponent {
                    vertices: Vec::new(),
                    constraints: 0,
                    unique_constraints: 0,
                    shape: ComponentShape::Path,
                })
                .vertices
                .push(v);
        }
        for &(a, b) in &self.edges {
            let (ia, ib) = (self.vertex_index(a), self.vertex_index(b));
            let comp = by_root.get_mut(&dsu.find(ia)).expect("component exists");
            comp.constraints += 1;
            if deg[ia] == 1 || deg[ib] == 1 {
                comp.unique_constraints += 1;
            }
        }
        let mut comps: Vec<ConstraintComponent> = by_root.into_values().collect();
        for comp in &mut comps {
            comp.shape = if comp.constraints == comp.vertices.len() { ComponentShape::Cycle } else { ComponentShape::Path };
        }
        comps.sort_by(|a, b| a.vertices.cmp(&b.vertices));
        comps
    }

    /// Statistics summed over components, cross-checked against the whole graph.
    pub fn stats(&self) -> ConstraintStats {
        let comps = self.components();
        let mut stats = ConstraintStats { num_vertices: self.vertices.len(), num_components: comps.len(), ..Default::default() };
        for comp in &comps {
            stats.gamma += comp.gamma();
            stats.w += comp.constraints;
            stats.u += comp.unique_constraints;
        }
        debug_assert_eq!(stats.gamma, stats.num_vertices - stats.num_components);
        debug_assert_eq!(stats.w, self.edges.len());
        stats
    }

    /// True iff both endpoints of every constraint have the same color.
    pub fn is_satisfied(&self, puzzle: &Puzzle) -> Result<bool, GridError> {
        for &(a, b) in &self.edges {
            if puzzle.color(a)? != puzzle.color(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// One constraint per window-adjacent pair `u, u+β` whose images are not
/// offset by `β`, joining `→f(u)` with `←f(u+β)` (or `↑f(u)` with `↓f(u+β)`).
pub fn build_constraint_graph(wm: &WindowMap) -> (ConstraintGraph, ConstraintStats) {
    let mut edges = Vec::new();
    for (u, fu) in wm.iter() {
        for dir in [Direction::Right, Direction::Up] {
            if let Some(fv) = wm.get(u.step(dir)) {
                if fv != fu.step(dir) {
                    edges.push((EdgeId::toward(fu, dir), EdgeId::toward(fv, dir.opposite())));
                }
            }
        }
    }
    let graph = ConstraintGraph::from_edges(edges);
    let stats = graph.stats();
    (graph, stats)
}

/// Direct check that `f|W` is a feasible local assembly of `puzzle`: every
/// window-adjacent pair shows matching colors on its shared side.
pub fn is_window_map_feasible(wm: &WindowMap, puzzle: &Puzzle) -> Result<bool, GridError> {
    for (u, fu) in wm.iter() {
        let here = puzzle.piece_at(fu)?;
        for dir in [Direction::Right, Direction::Up] {
            if let Some(fv) = wm.get(u.step(dir)) {
                if here[dir] != puzzle.piece_at(fv)?[dir.opposite()] {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `q^-γ`, exactly.
pub fn feasibility_probability(stats: &ConstraintStats, q: u32) -> BigRational {
    let denom: BigInt = Pow::pow(BigInt::from(q), stats.gamma);
    BigRational::new(BigInt::one(), denom)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    /// Lattice edges with exactly one endpoint in the set.
    pub edge_len: usize,
    /// Lattice points outside the set adjacent to it.
    pub vertex_boundary: BTreeSet<GridCoord>,
}

pub fn boundary_of(set: &BTreeSet<GridCoord>) -> Result<Boundary, ConstraintError> {
    if set.is_empty() {
        return Err(ConstraintError::EmptySet);
    }
    let mut edge_len = 0;
    let mut vertex_boundary = BTreeSet::new();
    for &p in set {
        for dir in Direction::ALL {
            let nb = p.step(dir);
            if !set.contains(&nb) {
                edge_len += 1;
                vertex_boundary.insert(nb);
            }
        }
    }
    Ok(Boundary { edge_len, vertex_boundary })
}

/// `|∂A|² ≥ 16 |A|`, i.e. `|∂A| ≥ 4 √|A|`, in exact integer arithmetic.
pub fn satisfies_square_isoperimetry(set: &BTreeSet<GridCoord>) -> Result<bool, ConstraintError> {
    let b = boundary_of(set)?;
    Ok(b.edge_len * b.edge_len >= 16 * set.len())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionBound {
    /// `2 Σ √a_i - 2s`.
    pub g: f64,
    /// `2t(1 - 1/s)`, plus 4 when the strong clause applies.
    pub bound: f64,
    /// `a_0 ≥ a_1 ≥ 36`.
    pub strong_bound_applicable: bool,
}

impl PartitionBound {
    pub fn holds(&self) -> bool {
        self.g >= self.bound - PARTITION_TOLERANCE
    }
}

pub fn partition_bound_g(parts: &[u32], s: u32) -> Result<PartitionBound, ConstraintError> {
    if parts.is_empty() || parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(ConstraintError::NotDescending);
    }
    let sum: u64 = parts.iter().map(|&a| a as u64).sum();
    let expected = s as u64 * s as u64;
    if sum != expected {
        return Err(ConstraintError::WrongSum { sum, expected });
    }
    let s_f = s as f64;
    let g = 2.0 * parts.iter().map(|&a| libm::sqrt(a as f64)).sum::<f64>() - 2.0 * s_f;
    let t = (parts.len() - 1) as f64;
    let strong = parts.len() >= 2 && parts[1] >= 36;
    let bound = 2.0 * t * (1.0 - 1.0 / s_f) + if strong { 4.0 } else { 0.0 };
    Ok(PartitionBound { g, bound, strong_bound_applicable: strong })
}

/// Lower bound on `γ(f)` for a full-window map with `tile_count = t + 1`
/// tiles: `t(2 - 2/s)` with `s = 2k + 1`, plus 4 when two tiles hold more than
/// 35 cells each.
pub fn tile_gamma_bound(tile_count: usize, s: u32, two_large_tiles: bool) -> f64 {
    let t = tile_count.saturating_sub(1) as f64;
    t * (2.0 - 2.0 / s as f64) + if two_large_tiles { 4.0 } else { 0.0 }
}
