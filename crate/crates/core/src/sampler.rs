//! Random standard and solid standard Young tableaux.
//!
//! Three generators are provided:
//!
//! * [`sample_uniform`]: exact uniform sampling of solid tableaux. The largest
//!   label goes to corner `c` with probability `f(λ−c)/f(λ)`, realised with an
//!   exact big-integer die, and the rest is filled recursively.
//! * [`sample_gnw2`]: the hook walk for ordinary shapes, exactly uniform.
//! * [`sample_gnw3`]: the same walk on solid shapes using the three axis rays
//!   as the hook. Always produces a valid tableau, not uniformly.
//!
//! All randomness comes from [`RandomSource`], a ChaCha20 stream seeded from a
//! 64-bit seed, so a seed reproduces its output on every platform.

use num_bigint::BigUint;
use num_traits::Zero;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use thiserror::Error;

use crate::count::{count_solid_syt, MemoCache};
use crate::shape::{BoxCoord, Partition, PlanePartition};

/// Deterministic source of fair dice.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha20Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        RandomSource {
            seed,
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform on `0..m` by rejection: draw `bits(m-1)` random bits and retry
    /// while the result is `≥ m`.
    pub fn uniform_int(&mut self, m: &BigUint) -> BigUint {
        assert!(!m.is_zero(), "a die needs at least one face");
        let bits = (m - 1u32).bits();
        if bits == 0 {
            return BigUint::zero();
        }
        let bytes = bits.div_ceil(8) as usize;
        let excess = (bytes as u64 * 8 - bits) as u32;
        let mut buf = vec![0u8; bytes];
        loop {
            self.rng.fill_bytes(&mut buf);
            // little-endian: the last byte is the most significant
            buf[bytes - 1] &= 0xFF >> excess;
            let candidate = BigUint::from_bytes_le(&buf);
            if &candidate < m {
                return candidate;
            }
        }
    }

    /// Uniform on `0..m` for machine-sized `m`, same rejection scheme.
    pub fn uniform_usize(&mut self, m: usize) -> usize {
        assert!(m > 0, "a die needs at least one face");
        if m == 1 {
            return 0;
        }
        let bits = usize::BITS - (m - 1).leading_zeros();
        let mask = if bits == 64 {
            u64::MAX
        } else {
            (1u64 << bits) - 1
        };
        loop {
            let candidate = (self.rng.next_u64() & mask) as usize;
            if candidate < m {
                return candidate;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("label array does not match the shape")]
    ShapeMismatch,
    #[error("labels are not a permutation of 1..={0}")]
    NotBijective(u64),
    #[error("labels do not increase at {0}")]
    NotIncreasing(BoxCoord),
}

/// A labelling of a solid diagram, `labels[i][j][k]` for the 0-based box.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SolidTableau {
    shape: PlanePartition,
    labels: Vec<Vec<Vec<u32>>>,
}

impl SolidTableau {
    pub fn new(shape: PlanePartition, labels: Vec<Vec<Vec<u32>>>) -> Result<Self, TableauError> {
        let t = SolidTableau { shape, labels };
        t.check()?;
        Ok(t)
    }

    pub fn shape(&self) -> &PlanePartition {
        &self.shape
    }

    pub fn labels(&self) -> &[Vec<Vec<u32>>] {
        &self.labels
    }

    pub fn label(&self, b: BoxCoord) -> u32 {
        self.labels[b.i as usize - 1][b.j as usize - 1][b.k as usize - 1]
    }

    /// Bijection onto `1..=n` and strict increase along all three axes.
    pub fn check(&self) -> Result<(), TableauError> {
        let rows = self.shape.rows();
        if self.labels.len() != rows.len()
            || self.labels.iter().zip(rows).any(|(l, r)| {
                l.len() != r.len() || l.iter().zip(r).any(|(c, &h)| c.len() != h as usize)
            })
        {
            return Err(TableauError::ShapeMismatch);
        }
        let n = self.shape.box_count();
        let mut seen = vec![false; n as usize + 1];
        for &v in self.labels.iter().flatten().flatten() {
            if v == 0 || v as u64 > n || std::mem::replace(&mut seen[v as usize], true) {
                return Err(TableauError::NotBijective(n));
            }
        }
        for b in self.shape.boxes() {
            let here = self.label(b);
            for next in [
                BoxCoord::new(b.i + 1, b.j, b.k),
                BoxCoord::new(b.i, b.j + 1, b.k),
                BoxCoord::new(b.i, b.j, b.k + 1),
            ] {
                if self.shape.contains(next) && self.label(next) <= here {
                    return Err(TableauError::NotIncreasing(b));
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for SolidTableau {
    /// One line per row; each cell's column of labels, bottom to top, in brackets.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, row) in self.labels.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row
                .iter()
                .map(|col| {
                    let ls: Vec<String> = col.iter().map(|l| l.to_string()).collect();
                    format!("[{}]", ls.join(" "))
                })
                .collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// An ordinary standard Young tableau.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tableau2D {
    shape: Partition,
    labels: Vec<Vec<u32>>,
}

impl Tableau2D {
    pub fn new(shape: Partition, labels: Vec<Vec<u32>>) -> Result<Self, TableauError> {
        let t = Tableau2D { shape, labels };
        t.check()?;
        Ok(t)
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn labels(&self) -> &[Vec<u32>] {
        &self.labels
    }

    pub fn check(&self) -> Result<(), TableauError> {
        if self.labels.len() != self.shape.len()
            || self
                .labels
                .iter()
                .zip(self.shape.parts())
                .any(|(l, &p)| l.len() != p as usize)
        {
            return Err(TableauError::ShapeMismatch);
        }
        let n = self.shape.weight();
        let mut seen = vec![false; n as usize + 1];
        for &v in self.labels.iter().flatten() {
            if v == 0 || v as u64 > n || std::mem::replace(&mut seen[v as usize], true) {
                return Err(TableauError::NotBijective(n));
            }
        }
        for (i, row) in self.labels.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let right = row.get(j + 1);
                let below = self.labels.get(i + 1).and_then(|r| r.get(j));
                if right.is_some_and(|&r| r <= v) || below.is_some_and(|&b| b <= v) {
                    return Err(TableauError::NotIncreasing(BoxCoord::new(
                        i as u32 + 1,
                        j as u32 + 1,
                        1,
                    )));
                }
            }
        }
        Ok(())
    }

    /// The same labels viewed as a height-1 solid tableau.
    pub fn to_solid(&self) -> SolidTableau {
        SolidTableau {
            shape: self.shape.to_flat_shape(),
            labels: self
                .labels
                .iter()
                .map(|r| r.iter().map(|&v| vec![v]).collect())
                .collect(),
        }
    }
}

impl std::fmt::Display for Tableau2D {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, row) in self.labels.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn empty_labels(shape: &PlanePartition) -> Vec<Vec<Vec<u32>>> {
    shape
        .rows()
        .iter()
        .map(|r| r.iter().map(|&h| vec![0; h as usize]).collect())
        .collect()
}

/// Exactly uniform random solid tableau of `shape`.
pub fn sample_uniform(
    shape: &PlanePartition,
    rng: &mut RandomSource,
    cache: &MemoCache,
) -> SolidTableau {
    let mut labels = empty_labels(shape);
    let mut current = shape.clone();
    for label in (1..=shape.box_count() as u32).rev() {
        let corners = current.corners();
        let weights: Vec<BigUint> = corners
            .iter()
            .map(|&c| count_solid_syt(&current.remove_corner_unchecked(c), cache))
            .collect();
        let total: BigUint = weights.iter().sum();
        let mut roll = rng.uniform_int(&total);
        let mut chosen = *corners.last().expect("nonempty shape has a corner");
        for (c, w) in corners.iter().zip(&weights) {
            if roll < *w {
                chosen = *c;
                break;
            }
            roll -= w;
        }
        labels[chosen.i as usize - 1][chosen.j as usize - 1][chosen.k as usize - 1] = label;
        current = current.remove_corner_unchecked(chosen);
    }
    SolidTableau {
        shape: shape.clone(),
        labels,
    }
}

/// Hook walk on an ordinary shape. Exactly uniform.
pub fn sample_gnw2(lambda: &Partition, rng: &mut RandomSource) -> Tableau2D {
    let mut rows: Vec<usize> = lambda.parts().iter().map(|&p| p as usize).collect();
    let mut labels: Vec<Vec<u32>> = rows.iter().map(|&p| vec![0; p]).collect();
    let n = lambda.weight() as usize;
    for label in (1..=n as u32).rev() {
        let remaining = label as usize;
        let mut pick = rng.uniform_usize(remaining);
        let mut i = 0;
        while pick >= rows[i] {
            pick -= rows[i];
            i += 1;
        }
        let mut j = pick;
        loop {
            let arm = rows[i] - j - 1;
            let leg = rows[i + 1..].iter().take_while(|&&len| len > j).count();
            if arm + leg == 0 {
                break;
            }
            let step = rng.uniform_usize(arm + leg);
            if step < arm {
                j += 1 + step;
            } else {
                i += 1 + (step - arm);
            }
        }
        labels[i][j] = label;
        rows[i] -= 1;
        while rows.last() == Some(&0) {
            rows.pop();
        }
    }
    Tableau2D {
        shape: lambda.clone(),
        labels,
    }
}

/// Hook walk on a solid shape. The hook of a box is every box of the shape
/// that agrees with it in two coordinates and lies strictly beyond it in the
/// third. The walk starts at a uniformly chosen box and restarts for each label.
pub fn sample_gnw3(shape: &PlanePartition, rng: &mut RandomSource) -> SolidTableau {
    let mut heights: Vec<Vec<u32>> = shape.rows().to_vec();
    let mut labels = empty_labels(shape);
    let h = |heights: &Vec<Vec<u32>>, i: usize, j: usize| -> u32 {
        heights.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0)
    };
    for label in (1..=shape.box_count() as u32).rev() {
        let mut pick = rng.uniform_usize(label as usize) as u32;
        let (mut i, mut j) = (0usize, 0usize);
        'find: for (ri, row) in heights.iter().enumerate() {
            for (cj, &height) in row.iter().enumerate() {
                if pick < height {
                    (i, j) = (ri, cj);
                    break 'find;
                }
                pick -= height;
            }
        }
        let mut k = pick;
        loop {
            let down = (i + 1..heights.len())
                .take_while(|&ii| h(&heights, ii, j) > k)
                .count();
            let across = (j + 1..heights[i].len())
                .take_while(|&jj| heights[i][jj] > k)
                .count();
            let up = (heights[i][j] - k - 1) as usize;
            let hook = down + across + up;
            if hook == 0 {
                break;
            }
            let step = rng.uniform_usize(hook);
            if step < down {
                i += 1 + step;
            } else if step < down + across {
                j += 1 + (step - down);
            } else {
                k += 1 + (step - down - across) as u32;
            }
        }
        labels[i][j][k as usize] = label;
        heights[i][j] -= 1;
        if heights[i][j] == 0 {
            heights[i].pop();
            if heights[i].is_empty() {
                heights.pop();
            }
        }
    }
    SolidTableau {
        shape: shape.clone(),
        labels,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_shape;

    #[test]
    fn one_faced_die() {
        let mut rng = RandomSource::new(3);
        for _ in 0..10 {
            assert!(rng.uniform_int(&BigUint::from(1u32)).is_zero());
            assert_eq!(rng.uniform_usize(1), 0);
        }
    }

    #[test]
    fn huge_die_stays_in_range() {
        let mut rng = RandomSource::new(11);
        let m = BigUint::from(1u32) << 80u32;
        let mut top_bit_seen = false;
        for _ in 0..200 {
            let v = rng.uniform_int(&m);
            assert!(v < m);
            top_bit_seen |= v.bits() == 80;
        }
        assert!(top_bit_seen);
    }

    #[test]
    fn same_seed_same_stream() {
        let mut a = RandomSource::new(42);
        let mut b = RandomSource::new(42);
        let m = BigUint::from(1_000_003u32);
        for _ in 0..50 {
            assert_eq!(a.uniform_int(&m), b.uniform_int(&m));
        }
    }

    #[test]
    fn trivial_shapes() {
        let one = parse_shape("[[1]]").unwrap();
        let mut rng = RandomSource::new(1);
        let cache = MemoCache::new();
        assert_eq!(
            sample_uniform(&one, &mut rng, &cache).labels(),
            &[vec![vec![1]]]
        );
        assert_eq!(sample_gnw3(&one, &mut rng).labels(), &[vec![vec![1]]]);
        let p = Partition::new(vec![1]).unwrap();
        assert_eq!(sample_gnw2(&p, &mut rng).labels(), &[vec![1]]);
    }

    #[test]
    fn checker_rejects_bad_labels() {
        let shape = parse_shape("[[2,1]]").unwrap();
        let bad = SolidTableau::new(shape.clone(), vec![vec![vec![2, 1], vec![3]]]);
        assert_eq!(
            bad,
            Err(TableauError::NotIncreasing(BoxCoord::new(1, 1, 1)))
        );
        let dup = SolidTableau::new(shape.clone(), vec![vec![vec![1, 1], vec![3]]]);
        assert_eq!(dup, Err(TableauError::NotBijective(3)));
        let good = SolidTableau::new(shape, vec![vec![vec![1, 3], vec![2]]]);
        assert!(good.is_ok());
        let lam = Partition::new(vec![2, 1]).unwrap();
        assert!(Tableau2D::new(lam.clone(), vec![vec![1, 2], vec![3]]).is_ok());
        assert!(Tableau2D::new(lam, vec![vec![1, 3], vec![2]]).is_ok());
    }

    #[test]
    fn cube_sample_is_valid() {
        let cube = parse_shape("[[3,3,3],[3,3,3],[3,3,3]]").unwrap();
        let cache = MemoCache::new();
        let t = sample_uniform(&cube, &mut RandomSource::new(42), &cache);
        t.check().unwrap();
        assert_eq!(t.label(BoxCoord::new(3, 3, 3)), 27);
        assert_eq!(t.label(BoxCoord::new(1, 1, 1)), 1);
    }

    #[test]
    fn display_groups_columns() {
        let shape = parse_shape("[[2,1]]").unwrap();
        let t = SolidTableau::new(shape, vec![vec![vec![1, 3], vec![2]]]).unwrap();
        assert_eq!(t.to_string(), "[1 3] [2]");
    }
}
