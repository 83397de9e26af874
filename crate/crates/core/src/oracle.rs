//! Exhaustive ground truth for tiny puzzles.
//!
//! Everything here is plain backtracking with linear scans over the bag, kept
//! independent of the indexed search in [`crate::window`].

use alloc::vec::Vec;

use crate::constraint::WindowCoord;
use crate::grid::{Assembly, Direction, EdgeId, GridCoord, PieceBag, PieceId, Puzzle};
use crate::window::WindowAssembly;

pub const DEFAULT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("more than {0} feasible assemblies")]
    LimitExceeded(usize),
}

/// All feasible assemblies of `bag`, filling locations row-major from the
/// bottom-left and pruning by the left and lower neighbors.
pub fn enumerate_feasible_assemblies(bag: &PieceBag, limit: usize) -> Result<Vec<Assembly>, OracleError> {
    let n = bag.n();
    let mut placement = alloc::vec![PieceId(0); n * n];
    let mut used = alloc::vec![false; bag.len()];
    let mut out = Vec::new();
    fill(bag, 0, &mut placement, &mut used, &mut out, limit)?;
    Ok(out)
}

fn fill(
    bag: &PieceBag,
    slot: usize,
    placement: &mut [PieceId],
    used: &mut [bool],
    out: &mut Vec<Assembly>,
    limit: usize,
) -> Result<(), OracleError> {
    let n = bag.n();
    if slot == n * n {
        if out.len() == limit {
            return Err(OracleError::LimitExceeded(limit));
        }
        out.push(Assembly::new(n, placement.to_vec()).expect("bijective by construction"));
        return Ok(());
    }
    let v = GridCoord::from_index(slot, n);
    for id in bag.ids() {
        if used[id.index()] {
            continue;
        }
        let fits = [Direction::Left, Direction::Down].iter().all(|&d| {
            let w = v.step(d);
            !w.in_grid(n) || bag[placement[w.index(n)]][d.opposite()] == bag[id][d]
        });
        if fits {
            used[id.index()] = true;
            placement[slot] = id;
            fill(bag, slot + 1, placement, used, out, limit)?;
            used[id.index()] = false;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniquenessReport {
    pub num_feasible: usize,
    pub unique_vertex: bool,
    pub unique_edge: bool,
}

/// Classifies `puzzle` by enumerating every feasible assembly of its pieces.
pub fn uniqueness_report(puzzle: &Puzzle, limit: usize) -> Result<UniquenessReport, OracleError> {
    let n = puzzle.n();
    let (bag, _) = puzzle.ordered_bag();
    let all = enumerate_feasible_assemblies(&bag, limit)?;
    let unique_edge = all.iter().all(|a| {
        GridCoord::all(n).all(|v| {
            [Direction::Right, Direction::Up].iter().all(|&d| {
                let w = v.step(d);
                !w.in_grid(n) || bag[a.at(v).expect("in grid")][d] == puzzle.color(EdgeId::toward(v, d)).expect("in grid")
            })
        })
    });
    Ok(UniquenessReport { num_feasible: all.len(), unique_vertex: all.len() == 1, unique_edge })
}

/// Every feasible injective window of radius `k` centered on `center`.
pub fn brute_force_windows(bag: &PieceBag, center: PieceId, k: i32) -> Vec<WindowAssembly> {
    let s = (2 * k + 1) as usize;
    let mut fill = WindowFill {
        bag,
        k,
        // cells in row-major order from the bottom-left of the window
        cells: (-k..=k).flat_map(|y| (-k..=k).map(move |x| WindowCoord::new(x, y))).collect(),
        chosen: alloc::vec![None; s * s],
        used: alloc::vec![false; bag.len()],
        out: Vec::new(),
    };
    let c = fill.at(WindowCoord::new(0, 0));
    fill.chosen[c] = Some(center);
    fill.used[center.index()] = true;
    fill.run(0);
    let mut out = fill.out;
    out.sort();
    out
}

struct WindowFill<'a> {
    bag: &'a PieceBag,
    k: i32,
    cells: Vec<WindowCoord>,
    chosen: Vec<Option<PieceId>>,
    used: Vec<bool>,
    out: Vec<WindowAssembly>,
}

impl WindowFill<'_> {
    fn at(&self, w: WindowCoord) -> usize {
        let s = (2 * self.k + 1) as usize;
        ((w.y + self.k) as usize) * s + (w.x + self.k) as usize
    }

    fn fits(&self, w: WindowCoord, id: PieceId) -> bool {
        Direction::ALL.iter().all(|&d| {
            let nb = w.step(d);
            if nb.x.abs() > self.k || nb.y.abs() > self.k {
                return true;
            }
            match self.chosen[self.at(nb)] {
                Some(other) => self.bag[id][d] == self.bag[other][d.opposite()],
                None => true,
            }
        })
    }

    fn run(&mut self, i: usize) {
        let Some(&w) = self.cells.get(i) else {
            // convert to the top-row-first layout of WindowAssembly
            let k = self.k;
            let mut placement = Vec::with_capacity(self.cells.len());
            for y in (-k..=k).rev() {
                for x in -k..=k {
                    placement.push(self.chosen[self.at(WindowCoord::new(x, y))].expect("filled"));
                }
            }
            self.out.push(WindowAssembly::new(k, placement));
            return;
        };
        let slot = self.at(w);
        if w == WindowCoord::new(0, 0) {
            if self.fits(w, self.chosen[slot].expect("center is preset")) {
                self.run(i + 1);
            }
            return;
        }
        for id in self.bag.ids() {
            if self.used[id.index()] || !self.fits(w, id) {
                continue;
            }
            self.chosen[slot] = Some(id);
            self.used[id.index()] = true;
            self.run(i + 1);
            self.used[id.index()] = false;
            self.chosen[slot] = None;
        }
    }
}

/// The windows of [`brute_force_windows`] whose four neighbors of the center
/// differ from the planted ones somewhere.
pub fn brute_force_deviant_windows(bag: &PieceBag, center: PieceId, k: i32, planted: &Assembly) -> Vec<WindowAssembly> {
    let home = planted.positions()[center.index()];
    brute_force_windows(bag, center, k)
        .into_iter()
        .filter(|w| {
            let nb = w.neighborhood();
            Direction::ALL.iter().any(|&d| planted.at(home.step(d)) != Some(nb.get(d)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{generate, RngSeed};
    use crate::grid::{disassemble, is_feasible};
    use crate::window::enumerate_windows;

    #[test]
    fn single_piece() {
        let (bag, _) = generate(1, 3, RngSeed(0)).unwrap().ordered_bag();
        assert_eq!(enumerate_feasible_assemblies(&bag, 10).unwrap().len(), 1);
    }

    #[test]
    fn one_color_everything_fits() {
        let puzzle = Puzzle::monochromatic(2, 1, 1).unwrap();
        let (bag, _) = puzzle.ordered_bag();
        assert_eq!(enumerate_feasible_assemblies(&bag, 100).unwrap().len(), 24);
        assert_eq!(enumerate_feasible_assemblies(&bag, 10), Err(OracleError::LimitExceeded(10)));
        let r = uniqueness_report(&puzzle, 100).unwrap();
        assert!(!r.unique_vertex);
        assert!(r.unique_edge);
    }

    #[test]
    fn many_colors_usually_unique() {
        let unique = (0..100)
            .filter(|&s| uniqueness_report(&generate(2, 100, RngSeed(s)).unwrap(), 100).unwrap().unique_vertex)
            .count();
        assert!(unique >= 95, "{unique}");
    }

    #[test]
    fn all_enumerated_are_feasible() {
        for s in 0..20 {
            let (bag, planted) = disassemble(&generate(3, 2, RngSeed(s)).unwrap(), RngSeed(s));
            let all = enumerate_feasible_assemblies(&bag, DEFAULT_LIMIT).unwrap();
            assert!(all.contains(&planted));
            assert!(all.iter().all(|a| is_feasible(&bag, a).unwrap()));
        }
    }

    #[test]
    fn identical_pieces_break_vertex_uniqueness() {
        // some small random puzzles have duplicates yet a forced edge coloring
        let mut found = false;
        for s in 0..400 {
            let puzzle = generate(3, 3, RngSeed(s)).unwrap();
            let (bag, _) = puzzle.ordered_bag();
            if bag.identical_pairs().is_empty() {
                continue;
            }
            let r = uniqueness_report(&puzzle, DEFAULT_LIMIT).unwrap();
            assert!(!r.unique_vertex);
            if r.unique_edge {
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn windows_match_fast_path() {
        for s in 0..10 {
            let (bag, _) = disassemble(&generate(3, 3, RngSeed(s)).unwrap(), RngSeed(s));
            let mut fast = enumerate_windows(&bag, 1, u64::MAX).unwrap();
            fast.sort();
            let mut slow: Vec<WindowAssembly> = bag.ids().flat_map(|c| brute_force_windows(&bag, c, 1)).collect();
            slow.sort();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn planted_window_present_and_not_deviant() {
        let (bag, planted) = disassemble(&generate(4, 16, RngSeed(8)).unwrap(), RngSeed(9));
        let center = planted.at(GridCoord::new(2, 2)).unwrap();
        let windows = brute_force_windows(&bag, center, 1);
        assert!(windows.iter().any(|w| {
            WindowCoord::square(1).all(|c| Some(w.at(c)) == planted.at(GridCoord::new(2 + c.x, 2 + c.y)))
        }));
        let deviant = brute_force_deviant_windows(&bag, center, 1, &planted);
        assert!(deviant.len() < windows.len());
    }
}
