//! Seeded random puzzle generation.
//!
//! All randomness flows from a single [`RngSeed`] through ChaCha8
//! (`rand_chacha`), which is portable and stable across platforms. Colors are
//! drawn one edge at a time in the canonical edge order: every horizontal edge
//! row by row (`j = 1..n`, `i = 0..n`), then every vertical edge row by row
//! (`j = 0..n`, `i = 1..n`).

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::grid::{Color, Direction, GridCoord, Puzzle};
use crate::variant::{JigInvolution, VariantPuzzle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RngSeed(pub u64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("side length must be at least 1")]
    ZeroSide,
    #[error("color count must be at least 1")]
    ZeroColors,
    #[error("involution acts on {found} colors, expected {expected}")]
    InvolutionSize { expected: u32, found: u32 },
}

pub fn rng_for(seed: RngSeed) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.0)
}

/// SplitMix64 finalizer.
pub const fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngSeed {
    /// Derives an independent stream seed: `splitmix64(splitmix64(self) ^ a) ^ b`,
    /// finalized once more.
    pub const fn mix(self, a: u64, b: u64) -> RngSeed {
        RngSeed(splitmix64(splitmix64(splitmix64(self.0) ^ a) ^ b))
    }
}

fn uniform_color(rng: &mut ChaCha8Rng, q: u32) -> Color {
    rng.random_range(1..=q)
}

/// A uniformly random puzzle: every edge, boundary included, gets an
/// independent uniform color in `[1..q]`.
pub fn generate(n: usize, q: u32, seed: RngSeed) -> Result<Puzzle, GenError> {
    if n == 0 {
        return Err(GenError::ZeroSide);
    }
    if q == 0 {
        return Err(GenError::ZeroColors);
    }
    let mut rng = rng_for(seed);
    let len = (n + 1) * n;
    let hcolors: Vec<Color> = (0..len).map(|_| uniform_color(&mut rng, q)).collect();
    let vcolors: Vec<Color> = (0..len).map(|_| uniform_color(&mut rng, q)).collect();
    Ok(Puzzle::from_colors(n, q, hcolors, vcolors).expect("colors in range"))
}

/// A uniformly random puzzle of the rotation model.
///
/// Internal edges are drawn first, horizontal then vertical in the canonical
/// order above: the oriented edge leaving the lower-left endpoint gets a uniform
/// jig `c` and its reverse gets `iota(c)`. Then every boundary oriented edge
/// gets a free uniform jig, scanning locations row-major and directions
/// counter-clockwise from Right.
pub fn generate_variant(n: usize, q: u32, iota: &JigInvolution, seed: RngSeed) -> Result<VariantPuzzle, GenError> {
    if n == 0 {
        return Err(GenError::ZeroSide);
    }
    if q == 0 {
        return Err(GenError::ZeroColors);
    }
    if iota.q() != q {
        return Err(GenError::InvolutionSize { expected: q, found: iota.q() });
    }
    let mut rng = rng_for(seed);
    let mut jigs = alloc::vec![[0 as Color; 4]; n * n];
    let n_i = n as i32;
    for (dir, cols, rows) in [(Direction::Right, 1..n_i, 1..n_i + 1), (Direction::Up, 1..n_i + 1, 1..n_i)] {
        for row in rows {
            for col in cols.clone() {
                let x = GridCoord::new(col, row);
                let y = x.step(dir);
                let c = uniform_color(&mut rng, q);
                jigs[x.index(n)][dir.index()] = c;
                jigs[y.index(n)][dir.opposite().index()] = iota.apply(c);
            }
        }
    }
    for x in GridCoord::all(n) {
        for dir in Direction::ALL {
            if !x.step(dir).in_grid(n) {
                jigs[x.index(n)][dir.index()] = uniform_color(&mut rng, q);
            }
        }
    }
    Ok(VariantPuzzle::new(n, q, iota.clone(), jigs).expect("generated puzzle satisfies the matching law"))
}
