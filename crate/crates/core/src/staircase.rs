//! Staircases: upsets of a grid given by their lower corners, each corner
//! carrying a witness cycle and the chain it was built from.

use crate::matrix::SparseColumn;
use crate::poset::Grade;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corner {
    pub grade: Grade,
    /// A cycle present at `grade`.
    pub z: SparseColumn,
    /// A chain with boundary `z`.
    pub v: SparseColumn,
}

/// Lower corners sorted by increasing `x`, hence strictly decreasing `y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Staircase {
    corners: Vec<Corner>,
}

impl Staircase {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keeps the minimal grades; among equal grades the first one wins.
    pub fn from_corners(mut cs: Vec<Corner>) -> Self {
        cs.sort_by_key(|c| (c.grade.x, c.grade.y));
        let mut out: Vec<Corner> = Vec::with_capacity(cs.len());
        for c in cs {
            // sorted by x, so c is dominated iff the last kept y is <= c.y
            if out.last().is_some_and(|l| l.grade.y <= c.grade.y) {
                continue;
            }
            out.push(c);
        }
        Staircase { corners: out }
    }

    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn corners_mut(&mut self) -> &mut [Corner] {
        &mut self.corners
    }

    pub fn into_corners(self) -> Vec<Corner> {
        self.corners
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn lower(&self) -> impl Iterator<Item = Grade> + '_ {
        self.corners.iter().map(|c| c.grade)
    }

    /// Grades `(x_{t+1}, y_t)` between consecutive lower corners.
    pub fn upper(&self) -> impl Iterator<Item = Grade> + '_ {
        self.corners.windows(2).map(|w| Grade::new(w[1].grade.x, w[0].grade.y))
    }

    /// The Möbius weights of the upset: `+1` at lower, `-1` at upper corners.
    pub fn signed(&self) -> impl Iterator<Item = (Grade, i64)> + '_ {
        self.lower().map(|g| (g, 1)).chain(self.upper().map(|g| (g, -1)))
    }

    /// The corner below `g` with the largest `x`, if `g` is in the upset.
    pub fn below(&self, g: Grade) -> Option<&Corner> {
        let k = self.corners.partition_point(|c| c.grade.x <= g.x);
        k.checked_sub(1).map(|k| &self.corners[k]).filter(|c| c.grade.y <= g.y)
    }

    pub fn contains(&self, g: Grade) -> bool {
        self.below(g).is_some()
    }

    /// Corners below `e`: the intersection with the downset of `e`.
    pub fn restrict(&self, e: Grade) -> Staircase {
        let corners = self.corners.iter().filter(|c| c.grade.leq(e)).cloned().collect();
        Staircase { corners }
    }

    pub fn remove_row(&mut self, y: u32) -> Option<Corner> {
        let k = self.corners.iter().position(|c| c.grade.y == y)?;
        Some(self.corners.remove(k))
    }

    pub fn push(&mut self, c: Corner) {
        self.corners.push(c);
        self.corners.sort_by_key(|c| c.grade.x);
    }

    /// Sorted and an antichain.
    pub fn is_well_formed(&self) -> bool {
        self.corners.windows(2).all(|w| w[0].grade.x < w[1].grade.x && w[0].grade.y > w[1].grade.y)
    }
}

/// Lower corners of the intersection of two upsets, by a merge over the
/// step functions `x -> min y`.
pub fn meet_grades(a: &[Grade], b: &[Grade]) -> Vec<Grade> {
    let step = |s: &[Grade], x: u32| -> Option<u32> {
        let k = s.partition_point(|g| g.x <= x);
        k.checked_sub(1).map(|k| s[k].y)
    };
    let mut xs: Vec<u32> = a.iter().chain(b).map(|g| g.x).collect();
    xs.sort_unstable();
    xs.dedup();
    let mut out: Vec<Grade> = Vec::new();
    for x in xs {
        if let (Some(ya), Some(yb)) = (step(a, x), step(b, x)) {
            let y = ya.max(yb);
            if out.last().is_none_or(|l| y < l.y) {
                out.push(Grade::new(x, y));
            }
        }
    }
    out
}
