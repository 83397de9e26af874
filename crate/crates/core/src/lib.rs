//! Random jigsaw puzzles and their reconstruction from a shuffled bag of pieces.
//!
//! An `n × n` puzzle colors every edge of the grid with one of `q` colors; each
//! piece carries the colors of its four sides. Given only the pieces, the
//! [`assembler`] tries to put them back in place using local window
//! enumeration ([`window`]) followed by a core-and-shells reconstruction.
//! [`constraint`] holds the combinatorics behind why local windows are
//! trustworthy, [`oracle`] exhaustive ground truth for tiny grids, and
//! [`variant`] a model with oriented jigs and rotatable pieces.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod assembler;
pub mod constraint;
mod dsu;
pub mod gen;
pub mod grid;
pub mod oracle;
pub mod typical;
pub mod variant;
pub mod window;

pub use assembler::{solve, solve_detailed, FailReason, SolveOutcome, SolveReport};
pub use gen::{generate, RngSeed};
pub use grid::{disassemble, is_feasible, Assembly, Color, Direction, EdgeId, GridCoord, Piece, PieceBag, PieceId, Puzzle};
