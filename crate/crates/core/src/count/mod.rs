//! Exact counting of standard and solid standard Young tableaux.

mod hook;
mod memo;
mod oracle;
mod plane;

pub use hook::{
    factorial, hook_count, hook_lengths, involutions, k_catalan, partitions, HookMatrix,
};
pub use memo::{CacheFileError, CacheStats, MemoCache, ShapeKey, CACHE_FORMAT_VERSION};
pub use oracle::{
    brute_force_count, brute_force_count_with_limit, OracleLimitExceeded, DEFAULT_ORACLE_LIMIT,
};
pub use plane::{plane_partitions, PlanePartitions};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::par::{map_reduce, Parallelism};
use crate::shape::PlanePartition;

/// Number of solid standard Young tableaux of `shape`: the largest label sits
/// in some corner, so the count is the sum over corners of the count of the
/// shape with that corner removed. The empty shape counts 1.
pub fn count_solid_syt(shape: &PlanePartition, cache: &MemoCache) -> BigUint {
    if shape.is_empty() {
        return BigUint::one();
    }
    let key = cache.key(shape);
    if let Some(v) = cache.get(&key) {
        return v;
    }
    let total: BigUint = shape
        .corners()
        .into_iter()
        .map(|c| count_solid_syt(&shape.remove_corner_unchecked(c), cache))
        .sum();
    cache.insert(key, total)
}

const CHUNK: usize = 1 << 14;

/// Total number of solid standard Young tableaux over all plane partitions of
/// `n`, for `n = 1..=k`. Weights are processed in increasing order so each
/// shape only needs lookups one level down.
pub fn y3_seq(k: u32, cache: &MemoCache, par: Parallelism) -> Vec<BigUint> {
    (1..=k).map(|n| y3_term(n, cache, par)).collect()
}

pub fn y3_term(n: u32, cache: &MemoCache, par: Parallelism) -> BigUint {
    let mut total = BigUint::zero();
    let mut shapes = plane_partitions(n);
    loop {
        let chunk: Vec<PlanePartition> = shapes.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            return total;
        }
        total += map_reduce(
            par,
            &chunk,
            BigUint::zero(),
            |s| count_solid_syt(s, cache),
            |a, b| a + b,
        );
    }
}
