//! Signed diagrams: one integer interval function per homology dimension.

use std::collections::BTreeMap;

use crate::poset::{Grade, Grid, Interval, IntervalFunction};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SignedDiagram {
    grid: Grid,
    by_dim: BTreeMap<usize, IntervalFunction>,
}

impl SignedDiagram {
    pub fn new(grid: Grid) -> Self {
        SignedDiagram { grid, by_dim: BTreeMap::new() }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    /// Adds `v` at `iv`; entries that cancel to zero are removed.
    pub fn add(&mut self, dim: usize, iv: Interval, v: i64) {
        if v == 0 {
            return;
        }
        let f = self.by_dim.entry(dim).or_default();
        let e = f.entry(iv).or_insert(0);
        *e += v;
        if *e == 0 {
            f.remove(&iv);
            if f.is_empty() {
                self.by_dim.remove(&dim);
            }
        }
    }

    pub fn get(&self, dim: usize, iv: &Interval) -> i64 {
        self.by_dim.get(&dim).and_then(|f| f.get(iv)).copied().unwrap_or(0)
    }

    /// The interval function of one dimension (empty if nothing is there).
    pub fn dimension(&self, dim: usize) -> IntervalFunction {
        self.by_dim.get(&dim).cloned().unwrap_or_default()
    }

    pub fn set_dimension(&mut self, dim: usize, f: IntervalFunction) {
        let f: IntervalFunction = f.into_iter().filter(|e| e.1 != 0).collect();
        if f.is_empty() {
            self.by_dim.remove(&dim);
        } else {
            self.by_dim.insert(dim, f);
        }
    }

    pub fn dims(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_dim.keys().copied()
    }

    /// Support size summed over dimensions.
    pub fn support_size(&self) -> usize {
        self.by_dim.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.by_dim.is_empty()
    }

    /// Entries ordered by dimension, then lexicographically by interval.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Interval, i64)> + '_ {
        self.by_dim.iter().flat_map(|(&d, f)| f.iter().map(move |(iv, &v)| (d, *iv, v)))
    }

    /// Keeps only the listed dimensions.
    pub fn restrict_dims(&self, keep: impl Fn(usize) -> bool) -> Self {
        let by_dim = self.by_dim.iter().filter(|e| keep(*e.0)).map(|(d, f)| (*d, f.clone()));
        SignedDiagram { grid: self.grid, by_dim: by_dim.collect() }
    }

    /// Sends both endpoints of every interval through `f`, summing fibres.
    pub fn pushforward(&self, target: Grid, f: impl Fn(Grade) -> Grade) -> Self {
        let mut out = SignedDiagram::new(target);
        for (d, iv, v) in self.iter() {
            out.add(d, Interval::new(f(iv.lo), f(iv.hi)), v);
        }
        out
    }

    /// The first entry, in iteration order, where the two diagrams differ.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, Interval, i64, i64)> {
        let mut keys: Vec<(usize, Interval)> =
            self.iter().chain(other.iter()).map(|(d, iv, _)| (d, iv)).collect();
        keys.sort();
        keys.dedup();
        keys.into_iter().find_map(|(d, iv)| {
            let (a, b) = (self.get(d, &iv), other.get(d, &iv));
            (a != b).then_some((d, iv, a, b))
        })
    }
}
