//! Streaming generation of all plane partitions of a given weight.

use crate::shape::PlanePartition;

/// Rows that may follow `bound`: partitions of any weight in `1..=remaining`
/// that fit cell-wise under `bound`. Heavier rows first, then
/// lexicographically decreasing.
fn rows_under(bound: &[u32], remaining: u32) -> Vec<Vec<u32>> {
    fn go(bound: &[u32], rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        let col = cur.len();
        if col >= bound.len() {
            return;
        }
        let top = rest.min(max).min(bound[col]);
        // The remaining cells cannot hold more than `top` each.
        let room = bound[col..].iter().map(|&b| b.min(top)).sum::<u32>();
        if room < rest {
            return;
        }
        for p in (1..=top).rev() {
            cur.push(p);
            go(bound, rest - p, p, cur, out);
            cur.pop();
        }
    }
    let capacity: u32 = bound.iter().sum();
    let mut out = Vec::new();
    for weight in (1..=remaining.min(capacity)).rev() {
        go(bound, weight, u32::MAX, &mut Vec::new(), &mut out);
    }
    out
}

struct Frame {
    candidates: Vec<Vec<u32>>,
    next: usize,
    remaining: u32,
}

/// Iterator over every plane partition of weight `n` exactly once, built row
/// by row: each row is a partition fitting under the previous one.
pub struct PlanePartitions {
    stack: Vec<Frame>,
    rows: Vec<Vec<u32>>,
    empty_pending: bool,
}

pub fn plane_partitions(n: u32) -> PlanePartitions {
    let mut stack = Vec::new();
    if n > 0 {
        stack.push(Frame {
            candidates: rows_under(&vec![n; n as usize], n),
            next: 0,
            remaining: n,
        });
    }
    PlanePartitions {
        stack,
        rows: Vec::new(),
        empty_pending: n == 0,
    }
}

impl Iterator for PlanePartitions {
    type Item = PlanePartition;

    fn next(&mut self) -> Option<PlanePartition> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(PlanePartition::empty());
        }
        loop {
            let depth = self.stack.len().checked_sub(1)?;
            let frame = &mut self.stack[depth];
            if frame.next == frame.candidates.len() {
                self.stack.pop();
                self.rows.truncate(depth);
                continue;
            }
            let row = frame.candidates[frame.next].clone();
            frame.next += 1;
            let remaining = frame.remaining - row.iter().sum::<u32>();
            self.rows.truncate(depth);
            self.rows.push(row);
            if remaining == 0 {
                return Some(PlanePartition::from_rows_unchecked(self.rows.clone()));
            }
            let candidates = rows_under(&self.rows[depth], remaining);
            self.stack.push(Frame {
                candidates,
                next: 0,
                remaining,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_weights() {
        let two: Vec<String> = plane_partitions(2).map(|p| p.to_string()).collect();
        assert_eq!(two, vec!["[[2]]", "[[1,1]]", "[[1],[1]]"]);
        let zero: Vec<PlanePartition> = plane_partitions(0).collect();
        assert_eq!(zero, vec![PlanePartition::empty()]);
    }

    /// Independent generator: grow every shape of weight n-1 by one box in
    /// every position that `validate` accepts.
    fn by_growth(n: u32) -> HashSet<PlanePartition> {
        let mut level: HashSet<PlanePartition> = [PlanePartition::empty()].into();
        for _ in 0..n {
            let mut next = HashSet::new();
            for shape in &level {
                let rows = shape.rows();
                for i in 0..=rows.len() {
                    let width = rows.get(i).map_or(0, |r| r.len());
                    for j in 0..=width {
                        let mut grown: Vec<Vec<i64>> = rows
                            .iter()
                            .map(|r| r.iter().map(|&h| h as i64).collect())
                            .collect();
                        if i == grown.len() {
                            grown.push(Vec::new());
                        }
                        if j == grown[i].len() {
                            grown[i].push(0);
                        }
                        grown[i][j] += 1;
                        if let Ok(p) = PlanePartition::validate(&grown) {
                            next.insert(p);
                        }
                    }
                }
            }
            level = next;
        }
        level
    }

    #[test]
    fn matches_growth_generator() {
        for n in 1..=8 {
            let fast: Vec<PlanePartition> = plane_partitions(n).collect();
            let set: HashSet<PlanePartition> = fast.iter().cloned().collect();
            assert_eq!(set.len(), fast.len(), "duplicates at n={n}");
            assert_eq!(set, by_growth(n), "n={n}");
        }
    }

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (0..=9).map(|n| plane_partitions(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 3, 6, 13, 24, 48, 86, 160, 282]);
    }
}
