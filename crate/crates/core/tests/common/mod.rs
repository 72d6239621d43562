#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use solid_syt::{BoxCoord, PlanePartition};

/// Linear extensions counted as paths in the lattice of down-sets.
/// Independent of corner removal and of the library's own oracle.
pub fn downset_count(shape: &PlanePartition) -> BigUint {
    let boxes = shape.boxes();
    assert!(boxes.len() <= 20, "too many boxes for a bitmask");
    let index: HashMap<BoxCoord, usize> = boxes.iter().enumerate().map(|(n, b)| (*b, n)).collect();
    let preds: Vec<u32> = boxes
        .iter()
        .map(|b| {
            let mut m = 0u32;
            for p in [
                (b.i > 1).then(|| BoxCoord::new(b.i - 1, b.j, b.k)),
                (b.j > 1).then(|| BoxCoord::new(b.i, b.j - 1, b.k)),
                (b.k > 1).then(|| BoxCoord::new(b.i, b.j, b.k - 1)),
            ]
            .into_iter()
            .flatten()
            {
                m |= 1 << index[&p];
            }
            m
        })
        .collect();
    let full = (1u32 << boxes.len()) - 1;
    let mut ways: HashMap<u32, BigUint> = HashMap::from([(0, BigUint::one())]);
    let mut order: Vec<u32> = (0..=full).collect();
    order.sort_by_key(|m| m.count_ones());
    let mut total = BigUint::zero();
    for m in order {
        let Some(w) = ways.get(&m).cloned() else {
            continue;
        };
        if m == full {
            total = w;
            break;
        }
        for (b, &p) in preds.iter().enumerate() {
            if m & (1 << b) == 0 && m & p == p {
                *ways.entry(m | (1 << b)).or_default() += &w;
            }
        }
    }
    total
}

/// Rebuilds a height matrix from a box set.
pub fn from_boxes(boxes: &[(u32, u32, u32)]) -> PlanePartition {
    let rows = boxes.iter().map(|b| b.0).max().unwrap_or(0) as usize;
    let mut h: Vec<Vec<u32>> = vec![Vec::new(); rows];
    for &(i, j, _) in boxes {
        let row = &mut h[i as usize - 1];
        if row.len() < j as usize {
            row.resize(j as usize, 0);
        }
        row[j as usize - 1] += 1;
    }
    PlanePartition::from_rows(h).expect("box set of a plane partition")
}

/// The shape with its coordinates permuted by `perm`.
pub fn permuted(shape: &PlanePartition, perm: [usize; 3]) -> PlanePartition {
    let boxes: Vec<(u32, u32, u32)> = shape
        .boxes()
        .iter()
        .map(|b| {
            let c = [b.i, b.j, b.k];
            (c[perm[0]], c[perm[1]], c[perm[2]])
        })
        .collect();
    from_boxes(&boxes)
}

pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

/// Random plane partition: random nonincreasing rows, then clipped by the row above.
pub fn shape_from_seed(rows: &[Vec<u32>]) -> PlanePartition {
    let mut out: Vec<Vec<u32>> = Vec::new();
    for row in rows {
        let mut r: Vec<u32> = row.iter().copied().filter(|&h| h > 0).collect();
        r.sort_unstable_by(|a, b| b.cmp(a));
        if let Some(prev) = out.last() {
            r.truncate(prev.len());
            for (x, &p) in r.iter_mut().zip(prev) {
                *x = (*x).min(p);
            }
        }
        if r.is_empty() {
            break;
        }
        out.push(r);
    }
    PlanePartition::from_rows(out).expect("clipped rows form a plane partition")
}

/// First thirty totals over all plane partitions of n = 1..30.
pub const Y3_TERMS: [&str; 30] = [
    "1",
    "3",
    "9",
    "33",
    "135",
    "633",
    "3207",
    "17589",
    "102627",
    "636033",
    "4161141",
    "28680717",
    "207318273",
    "1567344549",
    "12345147705",
    "101013795753",
    "856212871761",
    "7501911705747",
    "67815650852235",
    "631574151445665",
    "6051983918989833",
    "59605200185016639",
    "602764245172225251",
    "6252962956009863363",
    "66482211459036254169",
    "723810526382641418667",
    "8062440364611311185977",
    "91804267420894431624357",
    "1067720130017504052805449",
    "12673922788286515247094267",
];
