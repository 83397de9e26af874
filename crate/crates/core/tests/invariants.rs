use std::collections::BTreeSet;

use jigsaw_core::constraint::{
    boundary_of, build_constraint_graph, is_window_map_feasible, satisfies_square_isoperimetry, tile_gamma_bound, tiles_of,
    ComponentShape, WindowCoord, WindowMap,
};
use jigsaw_core::variant::{rotate_piece, Rotation};
use jigsaw_core::window::enumerate_windows;
use jigsaw_core::{disassemble, generate, GridCoord, RngSeed};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Injective map from a random nonempty subset of the window into `[1..n]²`.
fn scattered_map(rng: &mut ChaCha8Rng, k: i32, n: i32, full: bool) -> WindowMap {
    let mut cells: Vec<WindowCoord> = WindowCoord::square(k).collect();
    if !full {
        cells.shuffle(rng);
        let keep = rng.random_range(1..=cells.len());
        cells.truncate(keep);
    }
    let mut points: Vec<GridCoord> = GridCoord::all(n as usize).collect();
    points.shuffle(rng);
    WindowMap::new(k, cells.into_iter().zip(points)).unwrap()
}

/// Full-window map cut into up to four rectangles, each translated on its own.
fn blocky_map(rng: &mut ChaCha8Rng, k: i32, n: i32) -> Option<WindowMap> {
    let cx = rng.random_range(-k..=k + 1);
    let cy = rng.random_range(-k..=k + 1);
    let mut offsets = [(0, 0); 4];
    for o in &mut offsets {
        *o = (rng.random_range(1 + k..=n - k), rng.random_range(1 + k..=n - k));
    }
    let pairs = WindowCoord::square(k).map(|w| {
        let block = usize::from(w.x >= cx) + 2 * usize::from(w.y >= cy);
        let (ox, oy) = offsets[block];
        (w, GridCoord::new(ox + w.x, oy + w.y))
    });
    WindowMap::new(k, pairs).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn constraint_graph_shape_and_half_bound(seed in any::<u64>(), k in 1i32..=2, big in any::<bool>(), blocky in any::<bool>()) {
        let n = if big { 10 } else { 6 };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let wm = if blocky { blocky_map(&mut rng, k, n) } else { Some(scattered_map(&mut rng, k, n, false)) };
        prop_assume!(wm.is_some());
        let (graph, stats) = build_constraint_graph(&wm.unwrap());
        prop_assert!(graph.max_degree() <= 2);
        for c in graph.components() {
            let is_cycle = c.constraints == c.vertices.len();
            prop_assert_eq!(c.shape == ComponentShape::Cycle, is_cycle);
            prop_assert!(c.constraints + 1 >= c.vertices.len());
        }
        prop_assert!(stats.satisfies_half_bound(), "{:?}", stats);
    }

    #[test]
    fn satisfaction_matches_direct_check(seed in any::<u64>(), k in 1i32..=2, q in 1u32..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let full = rng.random_bool(0.3);
        let wm = scattered_map(&mut rng, k, 6, full);
        let puzzle = generate(6, q, RngSeed(seed)).unwrap();
        let (graph, _) = build_constraint_graph(&wm);
        prop_assert_eq!(graph.is_satisfied(&puzzle).unwrap(), is_window_map_feasible(&wm, &puzzle).unwrap());
    }

    #[test]
    fn tile_bound_on_full_windows(seed in any::<u64>(), k in 1i32..=3, blocky in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 4 * k + 8;
        let wm = if blocky { blocky_map(&mut rng, k, n) } else { Some(scattered_map(&mut rng, k, n, true)) };
        prop_assume!(wm.is_some());
        let wm = wm.unwrap();
        let tiles = tiles_of(&wm);
        prop_assume!(tiles.len() >= 2);
        let (_, stats) = build_constraint_graph(&wm);
        let bound = tile_gamma_bound(tiles.len(), (2 * k + 1) as u32, false);
        prop_assert!(stats.gamma as f64 >= bound - 1e-9, "gamma {} < {}", stats.gamma, bound);
    }

    #[test]
    fn random_sets_are_isoperimetric(points in prop::collection::btree_set((0i32..8, 0i32..8), 1..40)) {
        let set: BTreeSet<GridCoord> = points.into_iter().map(|(x, y)| GridCoord::new(x, y)).collect();
        prop_assert!(satisfies_square_isoperimetry(&set).unwrap());
        prop_assert!(boundary_of(&set).unwrap().edge_len % 2 == 0);
    }

    #[test]
    fn disassembly_is_a_bijection(seed in any::<u64>(), n in 1usize..12, q in 1u32..20) {
        let puzzle = generate(n, q, RngSeed(seed)).unwrap();
        let (bag, planted) = disassemble(&puzzle, RngSeed(seed ^ 1));
        prop_assert!(jigsaw_core::is_feasible(&bag, &planted).unwrap());
        for v in GridCoord::all(n) {
            prop_assert_eq!(bag[planted.at(v).unwrap()], puzzle.piece_at(v).unwrap());
        }
        let positions = planted.positions();
        prop_assert_eq!(positions.iter().collect::<BTreeSet<_>>().len(), n * n);
    }

    #[test]
    fn rotations_compose(jigs in prop::array::uniform4(1u32..10), a in 0u8..4, b in 0u8..4) {
        let (ra, rb) = (Rotation::quarter_turns(a), Rotation::quarter_turns(b));
        prop_assert_eq!(rotate_piece(rotate_piece(jigs, ra), rb), rotate_piece(jigs, ra.compose(rb)));
        prop_assert_eq!(rotate_piece(rotate_piece(jigs, ra), ra.inverse()), jigs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn enumerated_windows_are_feasible_and_distinct(seed in any::<u64>(), q in 4u32..8) {
        let (bag, _) = disassemble(&generate(5, q, RngSeed(seed)).unwrap(), RngSeed(seed));
        let windows = enumerate_windows(&bag, 1, 10_000_000).unwrap();
        prop_assert!(windows.iter().all(|w| w.is_feasible_in(&bag)));
        let distinct: BTreeSet<_> = windows.iter().collect();
        prop_assert_eq!(distinct.len(), windows.len());
    }
}
