//! Sequence generation for shape families by a level-by-level walk count.
//!
//! A solid tableau of a shape is a monotone lattice walk: after placing labels
//! `1..t` the filled boxes form a sub-plane-partition `x` of the shape with
//! `Σ x = t`, and each step raises one cell by one. For `[[n,n],[n],[n]]`
//! this is the four-dimensional walk `x1 ≥ x2 ≥ x3`, `x1 ≥ x4` where `x1` is
//! the corner cell, `x2, x3` the first column below it and `x4` the cell to
//! its right. The engine handles any cell set the same way.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::count::{count_solid_syt, MemoCache};
use crate::par::{map_collect, Parallelism};
use crate::shape::{PlanePartition, ShapeError, ShapeFamily};

/// Heights per cell of the capping shape, row-major.
pub type WalkState = Box<[u32]>;

/// Counts of walks from the zero state to each state of one level.
pub type LevelTable = HashMap<WalkState, BigUint>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    #[default]
    Walk,
    Memo,
}

#[derive(Debug, Clone)]
struct Grid {
    caps: Vec<u32>,
    left: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    right: Vec<Option<usize>>,
    below: Vec<Option<usize>>,
}

impl Grid {
    fn new(cap: &PlanePartition) -> Self {
        let rows = cap.rows();
        let mut index = Vec::with_capacity(rows.len());
        let mut caps = Vec::new();
        for row in rows {
            let start = caps.len();
            caps.extend_from_slice(row);
            index.push(start);
        }
        let at = |i: usize, j: usize| -> Option<usize> {
            rows.get(i).filter(|r| j < r.len()).map(|_| index[i] + j)
        };
        let (mut left, mut above, mut right, mut below) = (vec![], vec![], vec![], vec![]);
        for (i, row) in rows.iter().enumerate() {
            for j in 0..row.len() {
                left.push(j.checked_sub(1).and_then(|jj| at(i, jj)));
                above.push(i.checked_sub(1).and_then(|ii| at(ii, j)));
                right.push(at(i, j + 1));
                below.push(at(i + 1, j));
            }
        }
        Grid {
            caps,
            left,
            above,
            right,
            below,
        }
    }

    fn can_raise(&self, x: &[u32], c: usize) -> bool {
        x[c] < self.caps[c]
            && self.left[c].is_none_or(|l| x[l] > x[c])
            && self.above[c].is_none_or(|a| x[a] > x[c])
    }

    fn can_lower(&self, x: &[u32], c: usize) -> bool {
        x[c] >= 1
            && self.right[c].is_none_or(|r| x[c] > x[r])
            && self.below[c].is_none_or(|b| x[c] > x[b])
    }

    /// Successors of `x`, each reachable state produced from exactly one
    /// predecessor: the one obtained by lowering its last lowerable cell.
    fn owned_successors(&self, x: &[u32]) -> Vec<WalkState> {
        let mut out = Vec::new();
        for c in 0..x.len() {
            if !self.can_raise(x, c) {
                continue;
            }
            let mut y = x.to_vec();
            y[c] += 1;
            let last = (0..y.len()).rev().find(|&d| self.can_lower(&y, d));
            if last == Some(c) {
                out.push(y.into_boxed_slice());
            }
        }
        out
    }

    fn pull(&self, prev: &LevelTable, y: &[u32]) -> BigUint {
        let mut buf = y.to_vec();
        let mut total = BigUint::zero();
        for c in 0..y.len() {
            if self.can_lower(y, c) {
                buf[c] -= 1;
                if let Some(v) = prev.get(buf.as_slice()) {
                    total += v;
                }
                buf[c] += 1;
            }
        }
        total
    }
}

/// Forward dynamic program over levels `t = 0, 1, …, |cap|`. Only the
/// current level is held; the previous one is dropped after each step.
#[derive(Debug)]
pub struct WalkDp {
    grid: Grid,
    level: u64,
    final_level: u64,
    table: LevelTable,
}

impl WalkDp {
    pub fn new(cap: &PlanePartition) -> Self {
        let grid = Grid::new(cap);
        let zero: WalkState = vec![0; grid.caps.len()].into_boxed_slice();
        WalkDp {
            grid,
            level: 0,
            final_level: cap.box_count(),
            table: HashMap::from([(zero, BigUint::one())]),
        }
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn final_level(&self) -> u64 {
        self.final_level
    }

    pub fn table(&self) -> &LevelTable {
        &self.table
    }

    /// Number of cells a state can be raised at.
    pub fn raisable_cells(&self, x: &[u32]) -> usize {
        (0..x.len()).filter(|&c| self.grid.can_raise(x, c)).count()
    }

    /// Advances one level; returns false once the full shape has been reached.
    pub fn step(&mut self, par: Parallelism) -> bool {
        if self.level >= self.final_level {
            return false;
        }
        let states: Vec<&WalkState> = self.table.keys().collect();
        let grid = &self.grid;
        let next: Vec<WalkState> = map_collect(par, &states, |x| grid.owned_successors(x))
            .into_iter()
            .flatten()
            .collect();
        let prev = &self.table;
        let values = map_collect(par, &next, |y| grid.pull(prev, y));
        self.table = next.into_iter().zip(values).collect();
        self.level += 1;
        true
    }
}

fn flatten(shape: &PlanePartition) -> WalkState {
    shape.rows().iter().flatten().copied().collect()
}

/// Number of solid tableaux of `family` at `n`, by walking level by level.
pub fn count_walks(family: &ShapeFamily, n: u32, par: Parallelism) -> Result<BigUint, ShapeError> {
    let shape = family.instantiate(n)?;
    let mut dp = WalkDp::new(&shape);
    while dp.step(par) {}
    Ok(dp.table.get(&flatten(&shape)).cloned().unwrap_or_default())
}

/// Terms `a(n_min), …, a(n_min + terms − 1)` of the family's counting sequence.
pub fn sidra(
    family: &ShapeFamily,
    terms: u32,
    engine: Engine,
    cache: &MemoCache,
    par: Parallelism,
) -> Result<Vec<BigUint>, ShapeError> {
    sidra_from(family, family.n_min(), terms, engine, cache, par)
}

/// Terms `a(first), …, a(first + terms − 1)`; `first` must be at least `n_min`.
///
/// The walk engine runs a single pass capped by the largest instance and reads
/// each term off when its level is reached: every walk to a smaller instance
/// stays inside that instance, so the larger cap changes nothing.
pub fn sidra_from(
    family: &ShapeFamily,
    first: u32,
    terms: u32,
    engine: Engine,
    cache: &MemoCache,
    par: Parallelism,
) -> Result<Vec<BigUint>, ShapeError> {
    if first < family.n_min() {
        return Err(ShapeError::BelowMinParameter {
            n: first,
            min: family.n_min(),
        });
    }
    let ns: Vec<u32> = (first..first + terms).collect();
    match engine {
        Engine::Memo => ns
            .iter()
            .map(|&n| Ok(count_solid_syt(&family.instantiate(n)?, cache)))
            .collect(),
        Engine::Walk => {
            let Some(&last) = ns.last() else {
                return Ok(Vec::new());
            };
            let cap = family.instantiate(last)?;
            let mut targets = ns
                .iter()
                .map(|&n| {
                    let s = family.instantiate(n)?;
                    Ok((s.box_count(), flatten(&s)))
                })
                .collect::<Result<Vec<_>, ShapeError>>()?;
            targets.reverse();
            let mut out = Vec::with_capacity(ns.len());
            let mut dp = WalkDp::new(&cap);
            loop {
                while let Some((level, state)) = targets.last() {
                    if *level != dp.level() {
                        break;
                    }
                    out.push(dp.table().get(state).cloned().unwrap_or_default());
                    targets.pop();
                }
                if targets.is_empty() || !dp.step(par) {
                    break;
                }
            }
            Ok(out)
        }
    }
}
