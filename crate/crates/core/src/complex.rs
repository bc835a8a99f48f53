//! Simplicial complexes with per-simplex appearance curves on a grid.

use std::collections::HashMap;
use std::fmt;

use crate::poset::{path_galois, CeilingMap, Grade, Grid, Path};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    /// Identifier from the input; used for tie-breaking and reporting.
    pub id: u64,
    /// Sorted vertex labels.
    pub vertices: Vec<u32>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// A finite simplicial complex; simplices are addressed by their index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: Vec<Simplex>,
    index: HashMap<Vec<u32>, usize>,
}

impl SimplicialComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a simplex; vertices are sorted. Returns its index.
    pub fn push(&mut self, id: u64, mut vertices: Vec<u32>) -> Result<usize, Error> {
        vertices.sort_unstable();
        if vertices.is_empty() || vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid(vec![Violation::MalformedSimplex { id }]));
        }
        if self.index.contains_key(&vertices) {
            return Err(Error::Invalid(vec![Violation::DuplicateSimplex { id }]));
        }
        let k = self.simplices.len();
        self.index.insert(vertices.clone(), k);
        self.simplices.push(Simplex { id, vertices });
        Ok(k)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, k: usize) -> &Simplex {
        &self.simplices[k]
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn dim(&self, k: usize) -> usize {
        self.simplices[k].dim()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().map(Simplex::dim).max()
    }

    pub fn find(&self, vertices: &[u32]) -> Option<usize> {
        self.index.get(vertices).copied()
    }

    /// Codimension-one faces of simplex `k` with their orientation signs:
    /// removing the `t`-th vertex contributes `(-1)^t`. `None` marks a face
    /// missing from the complex.
    pub fn facets(&self, k: usize) -> Vec<(Option<usize>, i64)> {
        let v = &self.simplices[k].vertices;
        if v.len() == 1 {
            return Vec::new();
        }
        (0..v.len())
            .map(|t| {
                let mut face = v.clone();
                face.remove(t);
                let sign = if t % 2 == 0 { 1 } else { -1 };
                (self.find(&face), sign)
            })
            .collect()
    }
}

/// The lower corners of an upset of the grid: an antichain sorted by
/// increasing `x` (hence strictly decreasing `y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AppearanceCurve {
    corners: Vec<Grade>,
}

impl AppearanceCurve {
    /// Sorts the corners; validity is checked by [`validate`].
    pub fn new(mut corners: Vec<Grade>) -> Self {
        corners.sort();
        AppearanceCurve { corners }
    }

    pub fn lower_corners(&self) -> &[Grade] {
        &self.corners
    }

    pub fn contains(&self, g: Grade) -> bool {
        self.corners.iter().any(|c| c.leq(g))
    }

    pub fn is_antichain(&self) -> bool {
        self.corners.windows(2).all(|w| w[0].x < w[1].x && w[0].y > w[1].y)
    }

    /// Grades `(x_{t+1}, y_t)` between consecutive lower corners.
    pub fn upper_corners(&self) -> Vec<Grade> {
        self.corners.windows(2).map(|w| Grade::new(w[1].x, w[0].y)).collect()
    }

    /// Smallest x-coordinate of a lower corner.
    pub fn min_x(&self) -> u32 {
        self.corners.first().map_or(u32::MAX, |c| c.x)
    }
}

/// A simplicial complex together with an appearance curve per simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bifiltration {
    pub complex: SimplicialComplex,
    pub curves: Vec<AppearanceCurve>,
    pub grid: Grid,
}

/// A reason a bifiltration is rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MalformedSimplex { id: u64 },
    DuplicateSimplex { id: u64 },
    MissingFace { id: u64 },
    EmptyCurve { id: u64 },
    NotAntichain { id: u64 },
    OutOfRange { id: u64, corner: Grade },
    FaceMonotonicity { id: u64, face: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MalformedSimplex { id } => write!(f, "simplex {id}: malformed vertex list"),
            Violation::DuplicateSimplex { id } => write!(f, "simplex {id}: duplicate vertex set"),
            Violation::MissingFace { id } => write!(f, "simplex {id}: a face is missing"),
            Violation::EmptyCurve { id } => write!(f, "simplex {id}: no corners"),
            Violation::NotAntichain { id } => write!(f, "simplex {id}: corners not an antichain"),
            Violation::OutOfRange { id, corner } => {
                write!(f, "simplex {id}: corner {corner} outside the grid")
            }
            Violation::FaceMonotonicity { id, face } => {
                write!(f, "simplex {id}: face monotonicity broken by face {face}")
            }
        }
    }
}

impl Bifiltration {
    pub fn new(complex: SimplicialComplex, curves: Vec<AppearanceCurve>, grid: Grid) -> Self {
        assert_eq!(complex.len(), curves.len());
        Bifiltration { complex, curves, grid }
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn contains(&self, k: usize, g: Grade) -> bool {
        self.curves[k].contains(g)
    }

    /// Indices of the simplices of `F(g)`.
    pub fn at(&self, g: Grade) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.contains(k, g)).collect()
    }

    pub fn corner_count(&self) -> usize {
        self.curves.iter().map(|c| c.lower_corners().len()).sum()
    }

    pub fn is_one_critical(&self) -> bool {
        self.curves.iter().all(|c| c.lower_corners().len() == 1)
    }
}

/// Checks closure under faces, curve shape, grid range and monotonicity.
pub fn validate(b: &Bifiltration) -> Result<(), Vec<Violation>> {
    let mut out = Vec::new();
    let cx = &b.complex;
    for (k, s) in cx.simplices().iter().enumerate() {
        let curve = &b.curves[k];
        if curve.lower_corners().is_empty() {
            out.push(Violation::EmptyCurve { id: s.id });
            continue;
        }
        if !curve.is_antichain() {
            out.push(Violation::NotAntichain { id: s.id });
        }
        for &c in curve.lower_corners() {
            if c.x < 1 || c.y < 1 || !b.grid.contains(c) {
                out.push(Violation::OutOfRange { id: s.id, corner: c });
            }
        }
        for (face, _) in cx.facets(k) {
            match face {
                None => out.push(Violation::MissingFace { id: s.id }),
                Some(r) => {
                    let ok = curve.lower_corners().iter().all(|&c| b.curves[r].contains(c));
                    if !ok {
                        out.push(Violation::FaceMonotonicity { id: s.id, face: cx.simplex(r).id });
                    }
                }
            }
        }
    }
    out.dedup();
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// No two lower corners, across all curves, share an x- or a y-coordinate.
pub fn is_nondegenerate(b: &Bifiltration) -> bool {
    let mut xs: Vec<u32> = Vec::new();
    let mut ys: Vec<u32> = Vec::new();
    for c in b.curves.iter().flat_map(|c| c.lower_corners()) {
        xs.push(c.x);
        ys.push(c.y);
    }
    let distinct = |v: &mut Vec<u32>| {
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    };
    distinct(&mut xs) && distinct(&mut ys)
}

/// Non-degenerate and every axis coordinate `1..=n` hosts exactly one lower
/// corner, with a square grid of side `n` = number of lower corners.
pub fn is_staircase_normal(b: &Bifiltration) -> bool {
    let n = b.corner_count() as u32;
    if b.grid != Grid::square(n) || !is_nondegenerate(b) {
        return false;
    }
    b.curves.iter().flat_map(|c| c.lower_corners()).all(|c| c.x >= 1 && c.y >= 1)
}

/// Refines a valid bifiltration into staircase-normal form.
///
/// The grid must be tight (its top coordinates are the largest corner
/// coordinates): the top grade carries the essential classes, so slack
/// between the last corner and the top cannot be represented after
/// compression.
///
/// Along each axis the lower corners are ranked by (coordinate, dimension,
/// input id), so a face sharing a coordinate with a coface gets the earlier
/// refined coordinate. The returned map sends refined grades to the original
/// grid and satisfies `F = F' o inclusion`.
pub fn refine_to_nondegenerate(b: &Bifiltration) -> Result<(Bifiltration, CeilingMap), Error> {
    validate(b).map_err(Error::Invalid)?;
    let (mx, my) = b
        .curves
        .iter()
        .flat_map(|c| c.lower_corners())
        .fold((0, 0), |(x, y), c| (x.max(c.x), y.max(c.y)));
    if b.is_empty() || mx != b.grid.nx || my != b.grid.ny {
        return Err(Error::LooseGrid);
    }
    let cx = &b.complex;
    let mut corners: Vec<(usize, usize)> = Vec::new();
    for (k, c) in b.curves.iter().enumerate() {
        for t in 0..c.lower_corners().len() {
            corners.push((k, t));
        }
    }
    let key = |&(k, t): &(usize, usize), axis: usize| {
        let c = b.curves[k].lower_corners()[t];
        let coord = if axis == 0 { c.x } else { c.y };
        (coord, cx.dim(k), cx.simplex(k).id, t)
    };
    let n = corners.len() as u32;
    let mut refined: Vec<Vec<Grade>> =
        b.curves.iter().map(|c| vec![Grade::default(); c.lower_corners().len()]).collect();
    let mut parents = [vec![0u32], vec![0u32]];
    for (axis, parent) in parents.iter_mut().enumerate() {
        let mut order = corners.clone();
        order.sort_by_key(|c| key(c, axis));
        for (r, &(k, t)) in order.iter().enumerate() {
            let (coord, ..) = key(&(k, t), axis);
            parent.push(coord);
            if axis == 0 {
                refined[k][t].x = r as u32 + 1;
            } else {
                refined[k][t].y = r as u32 + 1;
            }
        }
    }
    let curves = refined.into_iter().map(AppearanceCurve::new).collect();
    let out = Bifiltration::new(cx.clone(), curves, Grid::square(n));
    let [px, py] = parents;
    Ok((out, CeilingMap { x: px, y: py }))
}

/// A 1-parameter filtration: each simplex is added at a step of a path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFiltration {
    /// `(simplex index, step)` in filtration order; faces precede cofaces.
    pub order: Vec<(usize, u32)>,
    /// Number of steps; grades are `0..=len`.
    pub len: u32,
}

impl OneFiltration {
    /// Simplices present at grade `t`.
    pub fn prefix(&self, t: u32) -> impl Iterator<Item = usize> + '_ {
        self.order.iter().take_while(move |(_, s)| *s <= t).map(|(k, _)| *k)
    }
}

/// The 1-filtration `F o p`: a simplex is added at the first path point that
/// lies in its upset.
pub fn restrict_to_path(b: &Bifiltration, p: &Path) -> Result<OneFiltration, Error> {
    if !is_nondegenerate(b) {
        return Err(Error::Degenerate);
    }
    Ok(restrict_any(b, p))
}

/// [`restrict_to_path`] without the non-degeneracy requirement; ties are
/// ordered by dimension, then index.
pub fn restrict_any(b: &Bifiltration, p: &Path) -> OneFiltration {
    let mut order: Vec<(usize, u32)> = (0..b.len())
        .map(|k| {
            let step =
                b.curves[k].lower_corners().iter().map(|&c| path_galois(p, c)).min().unwrap();
            (k, step)
        })
        .collect();
    order.sort_by_key(|&(k, s)| (s, b.complex.dim(k), k));
    OneFiltration { order, len: p.len() as u32 }
}
