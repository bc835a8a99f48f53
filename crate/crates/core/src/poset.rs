//! Grades, grid intervals, monotone paths, and the incidence-algebra machinery
//! (zeta and Möbius functions) on the interval posets of a chain and of a grid.
//!
//! A chain `P_n = {0 < 1 < ... < n}` is treated as the degenerate grid with a
//! single row, so every function here works on [`Grid`] values and on the
//! [`Interval`] type.

use std::collections::BTreeMap;
use std::fmt;

/// A point of the grid; ordered lexicographically for storage, compared
/// componentwise for the poset structure via [`Grade::leq`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Grade {
    pub x: u32,
    pub y: u32,
}

impl Grade {
    pub const fn new(x: u32, y: u32) -> Self {
        Grade { x, y }
    }

    /// Componentwise order.
    pub fn leq(self, other: Grade) -> bool {
        self.x <= other.x && self.y <= other.y
    }

    pub fn join(self, other: Grade) -> Grade {
        Grade::new(self.x.max(other.x), self.y.max(other.y))
    }

    pub fn meet(self, other: Grade) -> Grade {
        Grade::new(self.x.min(other.x), self.y.min(other.y))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// A closed interval `[lo, hi]` with `lo <= hi` componentwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interval {
    pub lo: Grade,
    pub hi: Grade,
}

impl Interval {
    pub fn new(lo: Grade, hi: Grade) -> Self {
        debug_assert!(lo.leq(hi), "interval with {lo} not below {hi}");
        Interval { lo, hi }
    }

    /// Product order on intervals: `[a,b] <= [c,d]` iff `a <= c` and `b <= d`.
    pub fn leq(&self, other: &Interval) -> bool {
        self.lo.leq(other.lo) && self.hi.leq(other.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Sparse integer-valued function on intervals; absent keys are zero.
pub type IntervalFunction = BTreeMap<Interval, i64>;

/// The grid `{0..=nx} x {0..=ny}`. `ny == 0` is the chain `P_nx`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Grid {
    pub nx: u32,
    pub ny: u32,
}

impl Grid {
    pub fn square(n: u32) -> Self {
        Grid { nx: n, ny: n }
    }

    pub fn chain(n: u32) -> Self {
        Grid { nx: n, ny: 0 }
    }

    pub fn bottom(&self) -> Grade {
        Grade::new(0, 0)
    }

    pub fn top(&self) -> Grade {
        Grade::new(self.nx, self.ny)
    }

    pub fn contains(&self, g: Grade) -> bool {
        g.x <= self.nx && g.y <= self.ny
    }

    /// All grades in lexicographic order.
    pub fn grades(&self) -> impl Iterator<Item = Grade> + '_ {
        let ny = self.ny;
        (0..=self.nx).flat_map(move |x| (0..=ny).map(move |y| Grade::new(x, y)))
    }

    /// Grades that are `>= lo`, in lexicographic order.
    pub fn grades_above(&self, lo: Grade) -> impl Iterator<Item = Grade> + '_ {
        let ny = self.ny;
        (lo.x..=self.nx).flat_map(move |x| (lo.y..=ny).map(move |y| Grade::new(x, y)))
    }

    /// All intervals, lexicographic in `(lo, hi)`.
    pub fn intervals(&self) -> impl Iterator<Item = Interval> + '_ {
        self.grades()
            .flat_map(move |lo| self.grades_above(lo).map(move |hi| Interval { lo, hi }))
    }

    pub fn interval_count(&self) -> u64 {
        let per_axis = |n: u64| (n + 1) * (n + 2) / 2;
        per_axis(self.nx as u64) * per_axis(self.ny as u64)
    }
}

/// Möbius function of the interval poset of a chain, for `ab <= cd`.
///
/// The value is `(-1)^(i+j)` when `ab = [c-i, d-j]` with `i, j` in `{0,1}`
/// and both `[c-i, d]` and `[c, d-j]` are intervals; otherwise zero. The extra
/// existence condition matters only for `[c-1, c-1]` below `[c, c]`, where the
/// interval between them is a three-element chain and the value is zero.
pub fn mobius_1d(ab: (u32, u32), cd: (u32, u32)) -> i64 {
    let (a, b) = ab;
    let (c, d) = cd;
    if a > c || b > d || c - a > 1 || d - b > 1 || a > b || c > d {
        return 0;
    }
    let i = c - a;
    let j = d - b;
    if j == 1 && d - 1 < c {
        return 0;
    }
    if (i + j) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Möbius function of the interval poset of the grid; it factors over the two
/// axes because `Int(P x Q)` is isomorphic to `Int P x Int Q`.
pub fn mobius_2d(ab: &Interval, cd: &Interval) -> i64 {
    mobius_1d((ab.lo.x, ab.hi.x), (cd.lo.x, cd.hi.x))
        * mobius_1d((ab.lo.y, ab.hi.y), (cd.lo.y, cd.hi.y))
}

/// The (at most 16) intervals `ab` with a possibly nonzero value of
/// `mobius_2d(ab, cd)`, paired with that value.
pub fn mobius_support(cd: &Interval) -> impl Iterator<Item = (Interval, i64)> + '_ {
    (0..16u32).filter_map(move |mask| {
        let (i1, i2, j1, j2) = (mask & 1, (mask >> 1) & 1, (mask >> 2) & 1, (mask >> 3) & 1);
        if cd.lo.x < i1 || cd.lo.y < i2 || cd.hi.x < j1 || cd.hi.y < j2 {
            return None;
        }
        let lo = Grade::new(cd.lo.x - i1, cd.lo.y - i2);
        let hi = Grade::new(cd.hi.x - j1, cd.hi.y - j2);
        if !lo.leq(hi) {
            return None;
        }
        let ab = Interval { lo, hi };
        let mu = mobius_2d(&ab, cd);
        (mu != 0).then_some((ab, mu))
    })
}

/// `g[c,d] = sum over [a,b] <= [c,d] of f[a,b] * mu([a,b],[c,d])`.
pub fn mobius_invert(f: &IntervalFunction, grid: Grid) -> IntervalFunction {
    let mut g = IntervalFunction::new();
    for cd in grid.intervals() {
        let v: i64 = mobius_support(&cd)
            .map(|(ab, mu)| mu * f.get(&ab).copied().unwrap_or(0))
            .sum();
        if v != 0 {
            g.insert(cd, v);
        }
    }
    g
}

/// `f[c,d] = sum over [a,b] <= [c,d] of g[a,b]`, evaluated on every interval
/// of `grid`. Cost is proportional to (intervals) x (support of `g`).
pub fn zeta_integrate(g: &IntervalFunction, grid: Grid) -> IntervalFunction {
    let support: Vec<(Interval, i64)> =
        g.iter().filter(|(_, v)| **v != 0).map(|(k, v)| (*k, *v)).collect();
    let mut f = IntervalFunction::new();
    for cd in grid.intervals() {
        let v: i64 = support.iter().filter(|(ab, _)| ab.leq(&cd)).map(|(_, v)| *v).sum();
        if v != 0 {
            f.insert(cd, v);
        }
    }
    f
}

/// One unit step of a monotone lattice path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Right,
    Up,
}

/// A monotone path from `(0,0)` to `(nx,ny)` given by its unit steps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    steps: Vec<Step>,
    points: Vec<Grade>,
}

impl Path {
    pub fn new(steps: Vec<Step>) -> Self {
        let mut points = Vec::with_capacity(steps.len() + 1);
        let mut cur = Grade::new(0, 0);
        points.push(cur);
        for s in &steps {
            match s {
                Step::Right => cur.x += 1,
                Step::Up => cur.y += 1,
            }
            points.push(cur);
        }
        Path { steps, points }
    }

    /// The boundary path that runs up the left edge, then along the top.
    pub fn left_top(n: u32) -> Self {
        let mut steps = vec![Step::Up; n as usize];
        steps.extend(std::iter::repeat_n(Step::Right, n as usize));
        Path::new(steps)
    }

    /// The boundary path that runs along the bottom edge, then up the right.
    pub fn bottom_right(n: u32) -> Self {
        let mut steps = vec![Step::Right; n as usize];
        steps.extend(std::iter::repeat_n(Step::Up, n as usize));
        Path::new(steps)
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `points()[k]` is the grade reached after `k` steps.
    pub fn points(&self) -> &[Grade] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self) -> Grade {
        *self.points.last().expect("path has a start point")
    }
}

/// Left adjoint of the path map: the least index `x` with `a <= p(x)`.
///
/// The path points are totally ordered and increase in both coordinates, so
/// a binary search on "both coordinates reached" is valid.
pub fn path_galois(p: &Path, a: Grade) -> u32 {
    let pts = p.points();
    let idx = pts.partition_point(|q| !a.leq(*q));
    assert!(idx < pts.len(), "grade {a} lies outside the path's grid");
    idx as u32
}

/// Monotone map from a refined grid to a coarse grid, one lookup table per
/// axis: refined coordinate `r` goes to `x[r]` (respectively `y[r]`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeilingMap {
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

impl CeilingMap {
    pub fn identity(nx: u32, ny: u32) -> Self {
        CeilingMap { x: (0..=nx).collect(), y: (0..=ny).collect() }
    }

    pub fn apply(&self, g: Grade) -> Grade {
        Grade::new(self.x[g.x as usize], self.y[g.y as usize])
    }

    pub fn source(&self) -> Grid {
        Grid { nx: self.x.len() as u32 - 1, ny: self.y.len() as u32 - 1 }
    }

    pub fn target(&self) -> Grid {
        Grid { nx: *self.x.last().unwrap_or(&0), ny: *self.y.last().unwrap_or(&0) }
    }

    /// The right adjoint: coarse `c` goes to the largest refined coordinate
    /// whose ceiling is at most `c`.
    pub fn inclusion(&self, c: Grade) -> Grade {
        let last = |table: &[u32], c: u32| table.partition_point(|&v| v <= c) as u32 - 1;
        Grade::new(last(&self.x, c.x), last(&self.y, c.y))
    }
}

/// Builds the ceiling map of a refinement: `parents[r]` is the coarse
/// coordinate that refined coordinate `r` belongs to (non-decreasing, with
/// `parents[0] == 0`); each refined coordinate maps to its parent.
pub fn refinement_galois(parents_x: &[u32], parents_y: &[u32]) -> CeilingMap {
    let check = |p: &[u32]| {
        assert!(!p.is_empty() && p[0] == 0, "refinement must start at the bottom");
        assert!(p.windows(2).all(|w| w[0] <= w[1]), "refinement must be monotone");
    };
    check(parents_x);
    check(parents_y);
    CeilingMap { x: parents_x.to_vec(), y: parents_y.to_vec() }
}

/// Rota's Galois-connection theorem: the diagram of `F o g` is the sum of the
/// diagram of `F` over the fibres of `Int f`.
pub fn pushforward(
    diagram: &IntervalFunction,
    f: impl Fn(Grade) -> Grade,
) -> IntervalFunction {
    let mut out = IntervalFunction::new();
    for (iv, v) in diagram {
        let image = Interval::new(f(iv.lo), f(iv.hi));
        *out.entry(image).or_insert(0) += v;
    }
    out.retain(|_, v| *v != 0);
    out
}
