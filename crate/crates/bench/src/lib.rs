//! Seeded instances shared by the benchmarks.

use bigraded_pd::generate::{one_critical, random_bifiltration, totally_nested};
use bigraded_pd::{refine_to_nondegenerate, Bifiltration};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Simplex count of the scaling runs.
pub const M: usize = 40;
/// Grid sides of the scaling runs.
pub const SIDES: [u32; 4] = [40, 60, 80, 120];

fn rng(seed: u64, n: u32) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (u64::from(n) << 32))
}

/// 1-critical, `m` simplices up to dimension 2, on an `n` by `n` grid.
pub fn one_critical_instance(m: usize, n: u32, seed: u64) -> Bifiltration {
    one_critical(&mut rng(seed, n), m, n, 2)
}

/// Grades along a chain: the diagram has one interval per pair.
pub fn nested_instance(m: usize, n: u32, seed: u64) -> Bifiltration {
    totally_nested(&mut rng(seed, n), m, n, 2)
}

/// Up to three corners per simplex, refined to a square grid.
pub fn multi_critical_instance(m: usize, coarse: u32, seed: u64) -> Bifiltration {
    let raw = random_bifiltration(&mut rng(seed, coarse), m, 2, 3, coarse);
    refine_to_nondegenerate(&raw).expect("generated grids are tight").0
}
