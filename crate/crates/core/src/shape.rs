//! Partitions, plane partitions and parametric shape families.
//!
//! A [`PlanePartition`] is stored as its matrix of column heights. Rows are
//! never empty and absent entries count as height 0, so two shapes with the
//! same box set are structurally equal.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShapeError {
    #[error("entry at ({row},{col}) is not positive")]
    NonPositiveEntry { row: usize, col: usize },
    #[error("row {row} increases at ({row},{col})")]
    RowNotDecreasing { row: usize, col: usize },
    #[error("column {col} increases at ({row},{col})")]
    ColumnNotDecreasing { row: usize, col: usize },
    #[error("entry at ({row},{col}) does not fit in 32 bits")]
    EntryTooLarge { row: usize, col: usize },
    #[error("row {row} is empty")]
    EmptyRow { row: usize },
    #[error("{0} is not a corner of the shape")]
    NotACorner(BoxCoord),
    #[error("parameter n = {n} is below the family minimum {min}")]
    BelowMinParameter { n: u32, min: u32 },
    #[error("shape family is invalid: {0}")]
    InvalidFamily(String),
    #[error("partition parts must be positive and weakly decreasing: {0:?}")]
    InvalidPartition(Vec<i64>),
}

/// A box of a solid diagram, 1-based: row `i`, column `j`, height `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BoxCoord {
    pub i: u32,
    pub j: u32,
    pub k: u32,
}

impl BoxCoord {
    pub fn new(i: u32, j: u32, k: u32) -> Self {
        BoxCoord { i, j, k }
    }
}

impl fmt::Display for BoxCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.i, self.j, self.k)
    }
}

/// An integer partition `λ_1 ≥ λ_2 ≥ … ≥ λ_k > 0`. The empty partition has no parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, ShapeError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(ShapeError::InvalidPartition(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// A `rows × cols` rectangle.
    pub fn rectangle(rows: u32, cols: u32) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![cols; rows as usize],
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Number of rows whose length is at least `col` (1-based column).
    pub fn column_length(&self, col: u32) -> u32 {
        self.parts.iter().take_while(|&&p| p >= col).count() as u32
    }

    /// The height-1 solid diagram with this partition as its floor plan.
    pub fn to_flat_shape(&self) -> PlanePartition {
        PlanePartition {
            rows: self.parts.iter().map(|&p| vec![1; p as usize]).collect(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The solid Young diagram of a plane partition, as a matrix of column heights.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PlanePartition {
    rows: Vec<Vec<u32>>,
}

impl PlanePartition {
    pub fn empty() -> Self {
        PlanePartition { rows: Vec::new() }
    }

    /// Checks both monotonicity conditions and positivity; reports the first
    /// offending cell in row-major order (1-based).
    pub fn validate<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, ShapeError> {
        let mut out: Vec<Vec<u32>> = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.is_empty() {
                return Err(ShapeError::EmptyRow { row: i + 1 });
            }
            for (j, &h) in row.iter().enumerate() {
                let cell = (i + 1, j + 1);
                if h <= 0 {
                    return Err(ShapeError::NonPositiveEntry {
                        row: cell.0,
                        col: cell.1,
                    });
                }
                if j > 0 && h > row[j - 1] {
                    return Err(ShapeError::RowNotDecreasing {
                        row: cell.0,
                        col: cell.1,
                    });
                }
                if i > 0 {
                    let above = rows[i - 1].as_ref().get(j).copied().unwrap_or(0);
                    if h > above {
                        return Err(ShapeError::ColumnNotDecreasing {
                            row: cell.0,
                            col: cell.1,
                        });
                    }
                }
            }
            let row = row
                .iter()
                .enumerate()
                .map(|(j, &h)| {
                    u32::try_from(h).map_err(|_| ShapeError::EntryTooLarge {
                        row: i + 1,
                        col: j + 1,
                    })
                })
                .collect::<Result<Vec<u32>, _>>()?;
            out.push(row);
        }
        Ok(PlanePartition { rows: out })
    }

    /// Builds a shape from heights already known to be valid. Debug builds check.
    pub(crate) fn from_rows_unchecked(rows: Vec<Vec<u32>>) -> Self {
        let shape = PlanePartition { rows };
        debug_assert!(shape.is_valid(), "invalid shape {shape}");
        shape
    }

    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self, ShapeError> {
        let wide: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| r.iter().map(|&h| h as i64).collect())
            .collect();
        Self::validate(&wide)
    }

    fn is_valid(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            !row.is_empty()
                && row.iter().all(|&h| h > 0)
                && row.windows(2).all(|w| w[0] >= w[1])
                && (i == 0
                    || row
                        .iter()
                        .enumerate()
                        .all(|(j, &h)| h <= self.height(i - 1, j)))
        })
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn box_count(&self) -> u64 {
        self.rows.iter().flatten().map(|&h| h as u64).sum()
    }

    /// Height at a 0-based cell, 0 when absent.
    pub fn height(&self, i: usize, j: usize) -> u32 {
        self.rows
            .get(i)
            .and_then(|r| r.get(j))
            .copied()
            .unwrap_or(0)
    }

    pub fn contains(&self, b: BoxCoord) -> bool {
        b.i >= 1 && b.j >= 1 && b.k >= 1 && b.k <= self.height(b.i as usize - 1, b.j as usize - 1)
    }

    /// Every height is 1, i.e. the shape is an ordinary Young diagram.
    pub fn is_flat(&self) -> bool {
        self.rows.iter().flatten().all(|&h| h == 1)
    }

    /// The floor plan as a partition (row lengths).
    pub fn floor(&self) -> Partition {
        Partition {
            parts: self.rows.iter().map(|r| r.len() as u32).collect(),
        }
    }

    /// All boxes in row-major order, heights ascending within a cell.
    pub fn boxes(&self) -> Vec<BoxCoord> {
        let mut out = Vec::with_capacity(self.box_count() as usize);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &h) in row.iter().enumerate() {
                for k in 1..=h {
                    out.push(BoxCoord::new(i as u32 + 1, j as u32 + 1, k));
                }
            }
        }
        out
    }

    /// Boxes with no forward neighbour in any of the three directions,
    /// ordered by `(i, j)`.
    pub fn corners(&self) -> Vec<BoxCoord> {
        let mut out = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &h) in row.iter().enumerate() {
                if self.height(i, j + 1) < h && self.height(i + 1, j) < h {
                    out.push(BoxCoord::new(i as u32 + 1, j as u32 + 1, h));
                }
            }
        }
        out
    }

    pub fn is_corner(&self, c: BoxCoord) -> bool {
        if c.i == 0 || c.j == 0 {
            return false;
        }
        let (i, j) = (c.i as usize - 1, c.j as usize - 1);
        let h = self.height(i, j);
        h > 0 && c.k == h && self.height(i, j + 1) < h && self.height(i + 1, j) < h
    }

    pub fn remove_corner(&self, c: BoxCoord) -> Result<Self, ShapeError> {
        if !self.is_corner(c) {
            return Err(ShapeError::NotACorner(c));
        }
        Ok(self.remove_corner_unchecked(c))
    }

    /// Removes a box already known to be a corner.
    pub(crate) fn remove_corner_unchecked(&self, c: BoxCoord) -> Self {
        let mut rows = self.rows.clone();
        let (i, j) = (c.i as usize - 1, c.j as usize - 1);
        rows[i][j] -= 1;
        if rows[i][j] == 0 {
            rows[i].pop();
            if rows[i].is_empty() {
                rows.pop();
            }
        }
        PlanePartition { rows }
    }

    /// The lexicographically smallest height matrix among the six images of
    /// the box set under coordinate permutations.
    pub fn canonicalize(&self) -> Self {
        if self.rows.is_empty() {
            return self.clone();
        }
        let boxes: Vec<[u32; 3]> = self
            .boxes()
            .iter()
            .map(|b| [b.i - 1, b.j - 1, b.k - 1])
            .collect();
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 0, 1],
            [1, 2, 0],
            [2, 1, 0],
        ];
        let mut best: Option<Vec<Vec<u32>>> = None;
        for perm in PERMS {
            let rows = rebuild_heights(&boxes, perm);
            if best.as_ref().is_none_or(|b| rows < *b) {
                best = Some(rows);
            }
        }
        PlanePartition {
            rows: best.unwrap_or_default(),
        }
    }

    /// Cell-wise containment of box sets.
    pub fn is_contained_in(&self, other: &PlanePartition) -> bool {
        self.rows.iter().enumerate().all(|(i, row)| {
            row.iter()
                .enumerate()
                .all(|(j, &h)| h <= other.height(i, j))
        })
    }
}

fn rebuild_heights(boxes: &[[u32; 3]], perm: [usize; 3]) -> Vec<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for b in boxes {
        let (a, c, h) = (b[perm[0]] as usize, b[perm[1]] as usize, b[perm[2]] + 1);
        if rows.len() <= a {
            rows.resize(a + 1, Vec::new());
        }
        let row = &mut rows[a];
        if row.len() <= c {
            row.resize(c + 1, 0);
        }
        row[c] = row[c].max(h);
    }
    rows
}

impl fmt::Display for PlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let cells: Vec<String> = row.iter().map(|h| h.to_string()).collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        write!(f, "]")
    }
}

/// A cell of a parametric shape: the parameter `n` or a positive constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyCell {
    Param,
    Const(u32),
}

impl FamilyCell {
    fn at(self, n: u32) -> u32 {
        match self {
            FamilyCell::Param => n,
            FamilyCell::Const(c) => c,
        }
    }
}

/// A shape such as `[[n,n],[n,1]]`, valid for every `n ≥ n_min`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ShapeFamily {
    entries: Vec<Vec<FamilyCell>>,
    n_min: u32,
}

impl ShapeFamily {
    pub fn new(entries: Vec<Vec<FamilyCell>>) -> Result<Self, ShapeError> {
        if entries.iter().any(|r| r.is_empty()) {
            return Err(ShapeError::InvalidFamily("empty row".into()));
        }
        if entries.iter().flatten().any(|c| *c == FamilyCell::Const(0)) {
            return Err(ShapeError::InvalidFamily(
                "constant entries must be positive".into(),
            ));
        }
        // A constant followed (rightwards or downwards) by the parameter breaks
        // monotonicity for all large n.
        for (i, row) in entries.iter().enumerate() {
            for (j, &cell) in row.iter().enumerate() {
                let right = row.get(j + 1).copied();
                let below = entries.get(i + 1).and_then(|r| r.get(j)).copied();
                if let FamilyCell::Const(c) = cell {
                    if right == Some(FamilyCell::Param) || below == Some(FamilyCell::Param) {
                        return Err(ShapeError::InvalidFamily(format!(
                            "constant {c} at ({},{}) precedes the parameter",
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let max_const = entries
            .iter()
            .flatten()
            .filter_map(|c| match c {
                FamilyCell::Const(c) => Some(*c),
                FamilyCell::Param => None,
            })
            .max()
            .unwrap_or(1)
            .max(1);
        let mut family = ShapeFamily { entries, n_min: 1 };
        let n_min = (1..=max_const)
            .find(|&n| family.try_instantiate(n).is_ok())
            .ok_or_else(|| ShapeError::InvalidFamily("constant entries are not monotone".into()))?;
        family.n_min = n_min;
        Ok(family)
    }

    pub fn entries(&self) -> &[Vec<FamilyCell>] {
        &self.entries
    }

    pub fn n_min(&self) -> u32 {
        self.n_min
    }

    fn try_instantiate(&self, n: u32) -> Result<PlanePartition, ShapeError> {
        let rows: Vec<Vec<i64>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|c| c.at(n) as i64).collect())
            .collect();
        PlanePartition::validate(&rows)
    }

    pub fn instantiate(&self, n: u32) -> Result<PlanePartition, ShapeError> {
        if n < self.n_min {
            return Err(ShapeError::BelowMinParameter { n, min: self.n_min });
        }
        self.try_instantiate(n)
    }
}

impl fmt::Display for ShapeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    FamilyCell::Param => "n".to_string(),
                    FamilyCell::Const(c) => c.to_string(),
                })
                .collect();
            write!(f, "[{}]", cells.join(","))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(rows: &[&[i64]]) -> PlanePartition {
        PlanePartition::validate(rows).unwrap()
    }

    /// Order-ideal check straight from the box set.
    fn is_order_ideal(shape: &PlanePartition) -> bool {
        shape.boxes().iter().all(|b| {
            [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
                .iter()
                .all(|&(di, dj, dk)| {
                    let prev = BoxCoord::new(b.i - di, b.j - dj, b.k - dk);
                    prev.i == 0 || prev.j == 0 || prev.k == 0 || shape.contains(prev)
                })
        })
    }

    #[test]
    fn validate_examples() {
        let cube = pp(&[&[3, 3, 3], &[3, 3, 3], &[3, 3, 3]]);
        assert_eq!(cube.box_count(), 27);
        assert_eq!(pp(&[&[1]]).box_count(), 1);
        assert_eq!(
            PlanePartition::validate(&[[1i64, 2]]),
            Err(ShapeError::RowNotDecreasing { row: 1, col: 2 })
        );
        assert_eq!(
            PlanePartition::validate(&[vec![2i64], vec![1, 1]]),
            Err(ShapeError::ColumnNotDecreasing { row: 2, col: 2 })
        );
        assert_eq!(
            PlanePartition::validate(&[vec![2i64], vec![3]]),
            Err(ShapeError::ColumnNotDecreasing { row: 2, col: 1 })
        );
        assert_eq!(
            PlanePartition::validate(&[[1i64, 0]]),
            Err(ShapeError::NonPositiveEntry { row: 1, col: 2 })
        );
        assert!(is_order_ideal(&cube));
    }

    #[test]
    fn corner_examples() {
        assert_eq!(pp(&[&[1]]).corners(), vec![BoxCoord::new(1, 1, 1)]);
        assert_eq!(
            pp(&[&[2, 1]]).corners(),
            vec![BoxCoord::new(1, 1, 2), BoxCoord::new(1, 2, 1)]
        );
        let cube = pp(&[&[3, 3, 3], &[3, 3, 3], &[3, 3, 3]]);
        assert_eq!(cube.corners(), vec![BoxCoord::new(3, 3, 3)]);
    }

    #[test]
    fn remove_corner_examples() {
        assert!(pp(&[&[1]])
            .remove_corner(BoxCoord::new(1, 1, 1))
            .unwrap()
            .is_empty());
        assert_eq!(
            pp(&[&[2, 1]])
                .remove_corner(BoxCoord::new(1, 1, 2))
                .unwrap(),
            pp(&[&[1, 1]])
        );
        assert_eq!(
            pp(&[&[3, 3], &[3]])
                .remove_corner(BoxCoord::new(2, 1, 3))
                .unwrap(),
            pp(&[&[3, 3], &[2]])
        );
        assert_eq!(
            pp(&[&[2, 1]]).remove_corner(BoxCoord::new(1, 1, 1)),
            Err(ShapeError::NotACorner(BoxCoord::new(1, 1, 1)))
        );
    }

    #[test]
    fn peeling_reaches_empty_shape() {
        let mut shape = pp(&[&[3, 2, 1], &[2, 2], &[1]]);
        let mut steps = 0;
        while !shape.is_empty() {
            let c = shape.corners()[0];
            shape = shape.remove_corner(c).unwrap();
            assert!(shape.is_valid());
            steps += 1;
        }
        assert_eq!(steps, 11);
    }

    #[test]
    fn domino_orientations_share_representative() {
        let a = pp(&[&[1, 1]]).canonicalize();
        let b = pp(&[&[1], &[1]]).canonicalize();
        let c = pp(&[&[2]]).canonicalize();
        assert_eq!(a, b);
        assert_eq!(b, c);
        let cube = pp(&[&[3, 3, 3], &[3, 3, 3], &[3, 3, 3]]);
        assert_eq!(cube.canonicalize(), cube);
    }

    #[test]
    fn canonical_orbit_of_l_tromino() {
        let rep = pp(&[&[2, 1]]).canonicalize();
        for other in [pp(&[&[2], &[1]]), pp(&[&[1, 1], &[1]]), pp(&[&[2, 1]])] {
            assert_eq!(other.canonicalize(), rep);
        }
    }

    fn family(rows: &[&[Option<u32>]]) -> ShapeFamily {
        ShapeFamily::new(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|c| c.map_or(FamilyCell::Param, FamilyCell::Const))
                        .collect()
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn instantiate_examples() {
        let n = None;
        let kreweras = family(&[&[n, n], &[n]]);
        assert_eq!(kreweras.instantiate(2).unwrap(), pp(&[&[2, 2], &[2]]));
        let two = family(&[&[n, n], &[n, Some(1)]]);
        assert_eq!(two.n_min(), 1);
        assert_eq!(two.instantiate(1).unwrap(), pp(&[&[1, 1], &[1, 1]]));
        let hook = family(&[&[n, n], &[n], &[n]]);
        assert_eq!(hook.instantiate(3).unwrap(), pp(&[&[3, 3], &[3], &[3]]));
        let three = family(&[&[n, Some(3)]]);
        assert_eq!(three.n_min(), 3);
        assert_eq!(
            three.instantiate(2),
            Err(ShapeError::BelowMinParameter { n: 2, min: 3 })
        );
        assert!(ShapeFamily::new(vec![vec![FamilyCell::Const(2), FamilyCell::Param]]).is_err());
    }

    #[test]
    fn family_instances_grow_monotonically() {
        let n = None;
        let fam = family(&[&[n, n, Some(2)], &[n, Some(1)]]);
        assert_eq!(fam.n_min(), 2);
        for m in fam.n_min()..10 {
            let small = fam.instantiate(m).unwrap();
            let big = fam.instantiate(m + 1).unwrap();
            assert!(small.is_contained_in(&big));
        }
    }
}
