//! Brute-force ground truth: the birth-death function by dense elimination
//! at every pair of grades, and its Möbius inversion.
//!
//! Nothing here touches the sparse reduction or the vineyard code.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::complex::{Bifiltration, OneFiltration, SimplicialComplex};
use crate::diagram::SignedDiagram;
use crate::field::Field;
use crate::poset::{mobius_support, Grade, Grid, Interval, IntervalFunction};

/// Dense vectors over a prime field.
trait Vector: Clone + Send + Sync {
    fn zero(width: usize) -> Self;
    fn set(&mut self, i: usize, c: u32);
    fn get(&self, i: usize) -> u32;
    /// Largest index with a nonzero entry.
    fn lead(&self) -> Option<usize>;
    /// `self += c * other`.
    fn axpy(&mut self, c: u32, other: &Self, f: &Field);
}

#[derive(Clone)]
struct Bits(Vec<u64>);

impl Vector for Bits {
    fn zero(width: usize) -> Self {
        Bits(vec![0; width.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize, c: u32) {
        if c & 1 == 1 {
            self.0[i / 64] |= 1 << (i % 64);
        } else {
            self.0[i / 64] &= !(1 << (i % 64));
        }
    }
    fn get(&self, i: usize) -> u32 {
        ((self.0[i / 64] >> (i % 64)) & 1) as u32
    }
    fn lead(&self) -> Option<usize> {
        self.0.iter().enumerate().rev().find(|(_, w)| **w != 0).map(|(k, w)| {
            k * 64 + 63 - w.leading_zeros() as usize
        })
    }
    fn axpy(&mut self, c: u32, other: &Self, _: &Field) {
        if c & 1 == 1 {
            for (a, b) in self.0.iter_mut().zip(&other.0) {
                *a ^= b;
            }
        }
    }
}

#[derive(Clone)]
struct Residues(Vec<u32>);

impl Vector for Residues {
    fn zero(width: usize) -> Self {
        Residues(vec![0; width])
    }
    fn set(&mut self, i: usize, c: u32) {
        self.0[i] = c;
    }
    fn get(&self, i: usize) -> u32 {
        self.0[i]
    }
    fn lead(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0)
    }
    fn axpy(&mut self, c: u32, other: &Self, f: &Field) {
        if c != 0 {
            for (a, &b) in self.0.iter_mut().zip(&other.0) {
                *a = f.add(*a, f.mul(c, b));
            }
        }
    }
}

/// Row-echelon basis indexed by leading coordinate.
#[derive(Clone)]
struct Echelon<V> {
    piv: Vec<Option<V>>,
    rank: usize,
}

impl<V: Vector> Echelon<V> {
    fn new(width: usize) -> Self {
        Echelon { piv: vec![None; width], rank: 0 }
    }

    /// Reduces `v` to zero or to a new pivot; returns whether it was new.
    fn insert(&mut self, mut v: V, f: &Field) -> bool {
        while let Some(l) = v.lead() {
            match &self.piv[l] {
                Some(p) => {
                    let c = f.neg(f.div(v.get(l), p.get(l)));
                    v.axpy(c, p, f);
                }
                None => {
                    self.piv[l] = Some(v);
                    self.rank += 1;
                    return true;
                }
            }
        }
        false
    }
}

/// Cycle and boundary spaces of one subcomplex in one dimension.
struct Spaces<V> {
    cycles: Vec<V>,
    boundaries: Echelon<V>,
}

/// Evaluates the birth-death function of a filtration over a grid.
pub struct ZbOracle {
    grid: Grid,
    field: Field,
    max_dim: usize,
    /// Subcomplex id of every grade, indexed `x * (ny + 1) + y`.
    set_of: Vec<usize>,
    kind: Kind,
}

enum Kind {
    Gf2(Vec<Vec<Spaces<Bits>>>),
    Modp(Vec<Vec<Spaces<Residues>>>),
}

impl ZbOracle {
    pub fn for_bifiltration(b: &Bifiltration, field: Field) -> Self {
        Self::build(&b.complex, b.grid, field, |k, g| b.contains(k, g))
    }

    /// The 1-filtration as a function on the chain `Grid::chain(len)`.
    pub fn for_one_filtration(cx: &SimplicialComplex, f: &OneFiltration, field: Field) -> Self {
        let mut step = vec![u32::MAX; cx.len()];
        for &(k, s) in &f.order {
            step[k] = s;
        }
        Self::build(cx, Grid::chain(f.len), field, |k, g| step[k] <= g.x)
    }

    fn build(
        cx: &SimplicialComplex,
        grid: Grid,
        field: Field,
        member: impl Fn(usize, Grade) -> bool,
    ) -> Self {
        let mut ids: HashMap<Vec<bool>, usize> = HashMap::new();
        let mut sets: Vec<Vec<bool>> = Vec::new();
        let mut set_of = Vec::new();
        for g in grid.grades() {
            let present: Vec<bool> = (0..cx.len()).map(|k| member(k, g)).collect();
            let next = sets.len();
            let id = *ids.entry(present.clone()).or_insert_with(|| {
                sets.push(present);
                next
            });
            set_of.push(id);
        }
        let max_dim = cx.max_dim().unwrap_or(0);
        let kind = if field.characteristic() == 2 {
            Kind::Gf2(spaces_for(cx, &sets, max_dim, &field))
        } else {
            Kind::Modp(spaces_for(cx, &sets, max_dim, &field))
        };
        ZbOracle { grid, field, max_dim, set_of, kind }
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    fn set(&self, g: Grade) -> usize {
        self.set_of[(g.x * (self.grid.ny + 1) + g.y) as usize]
    }

    /// `dim(Z_d(a) ∩ B_d(b))`, or `dim Z_d(a)` when `b` is the top grade.
    pub fn zb(&self, d: usize, iv: &Interval) -> i64 {
        if d > self.max_dim {
            return 0;
        }
        let (sa, sb) = (self.set(iv.lo), self.set(iv.hi));
        let top = iv.hi == self.grid.top();
        match &self.kind {
            Kind::Gf2(s) => meet(&s[d][sa], &s[d][sb], top, &self.field),
            Kind::Modp(s) => meet(&s[d][sa], &s[d][sb], top, &self.field),
        }
    }

    /// The birth-death function on every interval, nonzero values only.
    pub fn zb_table(&self, d: usize) -> IntervalFunction {
        let ivs: Vec<Interval> = self.grid.intervals().collect();
        ivs.par_iter()
            .filter_map(|iv| {
                let v = self.zb(d, iv);
                (v != 0).then_some((*iv, v))
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }

    /// Möbius inversion of the birth-death function in every dimension.
    ///
    /// Lower grades are visited one column `x` at a time, so only two
    /// columns of birth-death values are alive at once.
    pub fn diagram(&self) -> SignedDiagram {
        let mut out = SignedDiagram::new(self.grid);
        for d in 0..=self.max_dim {
            out.set_dimension(d, self.diagram_dim(d));
        }
        out
    }

    fn diagram_dim(&self, d: usize) -> IntervalFunction {
        let g = self.grid;
        let (w, h) = (g.nx as usize + 1, g.ny as usize + 1);
        let slab = |x: u32| -> Vec<i64> {
            // index [lo.y][hi.x][hi.y]
            (0..h)
                .into_par_iter()
                .flat_map_iter(|ly| {
                    let lo = Grade::new(x, ly as u32);
                    (0..w * h).map(move |k| {
                        let hi = Grade::new((k / h) as u32, (k % h) as u32);
                        if lo.leq(hi) {
                            self.zb(d, &Interval { lo, hi })
                        } else {
                            0
                        }
                    })
                })
                .collect()
        };
        let mut out = IntervalFunction::new();
        let mut prev: Vec<i64> = Vec::new();
        for x in 0..=g.nx {
            let cur = slab(x);
            let look = |iv: &Interval| -> i64 {
                let s = if iv.lo.x == x { &cur } else { &prev };
                s[iv.lo.y as usize * w * h + iv.hi.x as usize * h + iv.hi.y as usize]
            };
            let entries: Vec<(Interval, i64)> = (0..h as u32)
                .into_par_iter()
                .flat_map_iter(|ly| {
                    let lo = Grade::new(x, ly);
                    g.grades_above(lo).filter_map(move |hi| {
                        let cd = Interval { lo, hi };
                        let v: i64 = mobius_support(&cd).map(|(ab, mu)| mu * look(&ab)).sum();
                        (v != 0).then_some((cd, v))
                    })
                })
                .collect();
            out.extend(entries);
            prev = cur;
        }
        out
    }
}

fn meet<V: Vector>(a: &Spaces<V>, b: &Spaces<V>, top: bool, f: &Field) -> i64 {
    if top {
        return a.cycles.len() as i64;
    }
    let mut e = b.boundaries.clone();
    let fresh = a.cycles.iter().filter(|z| e.insert((*z).clone(), f)).count();
    (a.cycles.len() - fresh) as i64
}

/// Per dimension and per distinct subcomplex: a cycle basis and an echelon
/// basis of boundaries, both in the coordinates of that dimension's simplices.
fn spaces_for<V: Vector>(
    cx: &SimplicialComplex,
    sets: &[Vec<bool>],
    max_dim: usize,
    f: &Field,
) -> Vec<Vec<Spaces<V>>> {
    let mut local = vec![0usize; cx.len()];
    let mut count = vec![0usize; max_dim + 2];
    for k in 0..cx.len() {
        local[k] = count[cx.dim(k)];
        count[cx.dim(k)] += 1;
    }
    let boundary = |k: usize| -> V {
        let d = cx.dim(k);
        let mut v = V::zero(if d == 0 { 1 } else { count[d - 1] });
        for (face, sign) in cx.facets(k) {
            v.set(local[face.expect("closed complex")], f.from_i64(sign));
        }
        v
    };
    (0..=max_dim)
        .map(|d| {
            sets.par_iter()
                .map(|present| {
                    let mut cycles = Vec::new();
                    let width_below = if d == 0 { 1 } else { count[d - 1] };
                    // pivots of reduced boundaries, with the chain producing them
                    let mut piv: Vec<Option<(V, V)>> = vec![None; width_below];
                    let mut boundaries = Echelon::new(count[d]);
                    for k in 0..cx.len() {
                        if !present[k] {
                            continue;
                        }
                        if cx.dim(k) == d {
                            let mut bd = boundary(k);
                            let mut chain = V::zero(count[d]);
                            chain.set(local[k], 1);
                            loop {
                                match bd.lead() {
                                    None => {
                                        cycles.push(chain);
                                        break;
                                    }
                                    Some(l) => match &piv[l] {
                                        Some((pb, pc)) => {
                                            let c = f.neg(f.div(bd.get(l), pb.get(l)));
                                            bd.axpy(c, pb, f);
                                            chain.axpy(c, pc, f);
                                        }
                                        None => {
                                            piv[l] = Some((bd, chain));
                                            break;
                                        }
                                    },
                                }
                            }
                        } else if cx.dim(k) == d + 1 {
                            boundaries.insert(boundary(k), f);
                        }
                    }
                    Spaces { cycles, boundaries }
                })
                .collect()
        })
        .collect()
}

/// The diagram by Möbius inversion of the birth-death function.
pub fn brute_diagram(b: &Bifiltration, field: Field) -> SignedDiagram {
    ZbOracle::for_bifiltration(b, field).diagram()
}

/// The 1-parameter diagram of `f` on the chain `Grid::chain(f.len)`.
pub fn diagram_1d(cx: &SimplicialComplex, f: &OneFiltration, field: Field) -> SignedDiagram {
    ZbOracle::for_one_filtration(cx, f, field).diagram()
}

/// `xz - xy - wz + wy` for grades `w <= x <= y <= z`, where `uv` is the
/// birth-death value of `[u, v]`.
pub fn wxyz(o: &ZbOracle, d: usize, w: Grade, x: Grade, y: Grade, z: Grade) -> i64 {
    let zb = |u: Grade, v: Grade| o.zb(d, &Interval::new(u, v));
    zb(x, z) - zb(x, y) - zb(w, z) + zb(w, y)
}

/// Results of checking the square identities on a whole grid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub squares: usize,
    pub single_pair: usize,
    pub failures: Vec<String>,
}

/// Checks, for every interval `[d, h]` with `(1,1) <= d <= h - (1,1)`, that
/// the five path expressions of the diagram value agree with it, that
/// `adeh` is 0, 1 or 2, and that the value factors as `B * D` when
/// `adeh = 1`.
pub fn check_square_identities(o: &ZbOracle, dgm: &SignedDiagram) -> LemmaReport {
    let g = o.grid();
    let mut rep = LemmaReport::default();
    let one = |p: Grade, dx: u32, dy: u32| Grade::new(p.x - dx, p.y - dy);
    for dim in 0..=o.max_dim() {
        for iv in g.intervals() {
            let (dd, h) = (iv.lo, iv.hi);
            if dd.x < 1 || dd.y < 1 || h.x < dd.x + 1 || h.y < dd.y + 1 {
                continue;
            }
            rep.squares += 1;
            let (a, b, c) = (one(dd, 1, 1), one(dd, 0, 1), one(dd, 1, 0));
            let (e, f, gg) = (one(h, 1, 1), one(h, 0, 1), one(h, 1, 0));
            let q = |w, x, y, z| wxyz(o, dim, w, x, y, z);
            let value = dgm.get(dim, &iv);
            let exprs = [
                (q(c, dd, f, h) - q(a, b, f, h)) - (q(c, dd, e, gg) - q(a, b, e, gg)),
                (q(c, dd, gg, h) - q(a, b, gg, h)) - (q(c, dd, e, f) - q(a, b, e, f)),
                (q(b, dd, f, h) - q(a, c, f, h)) - (q(b, dd, e, gg) - q(a, c, e, gg)),
                (q(b, dd, gg, h) - q(a, c, gg, h)) - (q(b, dd, e, f) - q(a, c, e, f)),
                q(a, dd, e, h) - q(a, dd, e, f) - q(a, dd, e, gg) - q(a, b, e, h)
                    - q(a, c, e, h)
                    + q(a, b, e, f)
                    + q(a, b, e, gg)
                    + q(a, c, e, f)
                    + q(a, c, e, gg),
            ];
            for (k, v) in exprs.iter().enumerate() {
                if *v != value {
                    rep.failures.push(format!("dim {dim} {iv}: expression {k} = {v}, diagram {value}"));
                }
            }
            let adeh = q(a, dd, e, h);
            if !(0..=2).contains(&adeh) {
                rep.failures.push(format!("dim {dim} {iv}: adeh = {adeh}"));
            }
            if adeh == 1 {
                rep.single_pair += 1;
                let bb = 1 - q(a, b, e, h) - q(a, c, e, h);
                let dd2 = 1 - q(a, dd, e, f) - q(a, dd, e, gg);
                if bb * dd2 != exprs[4] {
                    rep.failures.push(format!("dim {dim} {iv}: B*D = {} but nine-term {}", bb * dd2, exprs[4]));
                }
            }
        }
    }
    rep
}

/// Birth-death tables of every dimension, nonzero values only.
pub fn zb_tables(o: &ZbOracle) -> BTreeMap<usize, IntervalFunction> {
    (0..=o.max_dim()).map(|d| (d, o.zb_table(d))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::AppearanceCurve;
    use crate::poset::{mobius_invert, zeta_integrate};

    fn circle() -> Bifiltration {
        let mut cx = SimplicialComplex::new();
        let list: &[(&[u32], (u32, u32))] = &[
            (&[0], (1, 1)),
            (&[1], (2, 2)),
            (&[2], (3, 3)),
            (&[0, 1], (4, 4)),
            (&[1, 2], (5, 5)),
            (&[0, 2], (6, 6)),
        ];
        let mut curves = Vec::new();
        for (k, (v, c)) in list.iter().enumerate() {
            cx.push(k as u64, v.to_vec()).unwrap();
            curves.push(AppearanceCurve::new(vec![Grade::new(c.0, c.1)]));
        }
        Bifiltration::new(cx, curves, Grid::square(6))
    }

    fn iv(a: (u32, u32), b: (u32, u32)) -> Interval {
        Interval::new(Grade::new(a.0, a.1), Grade::new(b.0, b.1))
    }

    #[test]
    fn diagonal_circle() {
        let b = circle();
        for p in [2, 3] {
            let dg = brute_diagram(&b, Field::new(p).unwrap());
            let expect = [
                (0, iv((1, 1), (6, 6))),
                (0, iv((2, 2), (4, 4))),
                (0, iv((3, 3), (5, 5))),
                (1, iv((6, 6), (6, 6))),
            ];
            let got: Vec<(usize, Interval)> = dg.iter().map(|(d, i, v)| {
                assert_eq!(v, 1);
                (d, i)
            }).collect();
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn inversion_round_trip() {
        let b = circle();
        let o = ZbOracle::for_bifiltration(&b, Field::GF2);
        let dg = o.diagram();
        for d in 0..=1 {
            let zb = o.zb_table(d);
            assert_eq!(zeta_integrate(&dg.dimension(d), b.grid), zb);
            assert_eq!(mobius_invert(&zb, b.grid), dg.dimension(d));
        }
    }

    #[test]
    fn bottom_is_empty() {
        let b = circle();
        let o = ZbOracle::for_bifiltration(&b, Field::GF2);
        assert_eq!(o.zb(0, &iv((0, 0), (6, 6))), 0);
        // three vertex cycles, two of them bounded by the two edges
        assert_eq!(o.zb(0, &iv((5, 5), (6, 5))), 2);
    }

    #[test]
    fn square_identities_hold_on_the_circle() {
        let b = circle();
        let o = ZbOracle::for_bifiltration(&b, Field::GF2);
        let rep = check_square_identities(&o, &o.diagram());
        assert!(rep.failures.is_empty(), "{:?}", rep.failures);
        assert!(rep.squares > 0);
    }
}
