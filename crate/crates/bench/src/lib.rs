//! Seeded inputs shared by the kernel benchmarks.

use realcat::cat::EnrichedCategory;
use realcat::grid::ValueGrid;
use realcat::presheaf::Weight;
use realcat::random;

pub const SEED: u64 = 2024;

/// A random Łukasiewicz category on `n` elements over the grid `1/k`.
pub fn category(n: usize, k: i64) -> EnrichedCategory {
    let grid = ValueGrid::lukasiewicz(k);
    random::category(&mut random::rng(SEED), &grid, n, 0.3)
}

/// A category together with a random weight on it.
pub fn category_with_weight(n: usize, k: i64) -> (EnrichedCategory, Weight) {
    let grid = ValueGrid::lukasiewicz(k);
    let mut rng = random::rng(SEED);
    let x = random::category(&mut rng, &grid, n, 0.3);
    let phi = random::weight(&mut rng, &x, &grid);
    (x, phi)
}
