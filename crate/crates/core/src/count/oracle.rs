//! Brute-force linear-extension counting, used to check the memoized recursion.

use num_bigint::BigUint;
use thiserror::Error;

use crate::shape::PlanePartition;

pub const DEFAULT_ORACLE_LIMIT: u64 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("shape has {boxes} boxes, the brute-force oracle is limited to {limit}")]
pub struct OracleLimitExceeded {
    pub boxes: u64,
    pub limit: u64,
}

pub fn brute_force_count(shape: &PlanePartition) -> Result<BigUint, OracleLimitExceeded> {
    brute_force_count_with_limit(shape, DEFAULT_ORACLE_LIMIT)
}

/// Enumerates every labelling of the boxes that increases along all three
/// axes, by placing labels 1, 2, … on boxes whose backward neighbours are
/// already labelled.
pub fn brute_force_count_with_limit(
    shape: &PlanePartition,
    limit: u64,
) -> Result<BigUint, OracleLimitExceeded> {
    let boxes = shape.boxes();
    let n = boxes.len() as u64;
    if n > limit || n > 63 {
        return Err(OracleLimitExceeded { boxes: n, limit });
    }
    let index = |i: u32, j: u32, k: u32| boxes.iter().position(|b| (b.i, b.j, b.k) == (i, j, k));
    let preds: Vec<u64> = boxes
        .iter()
        .map(|b| {
            let mut mask = 0u64;
            for (i, j, k) in [
                (b.i - 1, b.j, b.k),
                (b.i, b.j - 1, b.k),
                (b.i, b.j, b.k - 1),
            ] {
                if let Some(p) = index(i, j, k) {
                    mask |= 1 << p;
                }
            }
            mask
        })
        .collect();
    let full = if n == 0 { 0 } else { u64::MAX >> (64 - n) };

    fn extend(placed: u64, full: u64, preds: &[u64]) -> u64 {
        if placed == full {
            return 1;
        }
        preds
            .iter()
            .enumerate()
            .filter(|&(b, &p)| placed & (1 << b) == 0 && p & placed == p)
            .map(|(b, _)| extend(placed | (1 << b), full, preds))
            .sum()
    }
    Ok(BigUint::from(extend(0, full, &preds)))
}
