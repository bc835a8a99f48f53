//! The square-by-square sweep.
//!
//! A monotone path starts along the left and top edges of the grid and is
//! pushed across one unit square at a time: columns `i = 1..=n` left to
//! right, rows `j = n..=1` top to bottom within a column. At square
//! `h = (i, j)` with `e = h - (1,1)`, `f = h - (0,1)`, `g = h - (1,0)`, the
//! path `e -> g -> h` becomes `e -> f -> h`. The four unit steps are called
//! `L` (`e -> g`), `T` (`g -> h`), `Bt` (`e -> f`) and `Rt` (`f -> h`).
//!
//! For every negative cell `κ` on the path we keep its birth set: the
//! grades `x` below the grade `u` preceding `κ` at which the class killed by
//! `κ` already exists, `{x <= u : ∂κ ∈ Z(x) + B(u)}`. It depends only on
//! `κ` and `u`, so a square changes it only for the cells entering there.
//! The diagram values with upper grade `h` are Möbius weights of those sets:
//! for `d <= e` the weight of the `Rt` set minus that of the `L` set, on
//! column `i` the weight of the `Rt` set, and on row `j` that of the `T` set.
//!
//! Column-`i` parts of birth sets are learned while walking down the column:
//! while the cell `A` with its x-corner at `i` is positive and sits on the
//! vertical part of the path, its partner owns an open run of grades on
//! column `i`, which closes exactly when the partner changes or `A` leaves.

use crate::complex::{is_nondegenerate, refine_to_nondegenerate, restrict_any, Bifiltration};
use crate::diagram::SignedDiagram;
use crate::field::Field;
use crate::matrix::{reduce_filtration, RVDecomposition, SparseColumn};
use crate::poset::{Grade, Interval, Path};
use crate::staircase::{meet_grades, Corner, Staircase};
use crate::vineyard::{nested_or_disjoint, transpose, Case};
use crate::Error;

/// Positions of a cell and its partner in the current order.
type PairPos = Option<(usize, usize)>;

#[derive(Clone, Debug, Default)]
pub struct SweepOptions {
    pub field: Field,
    /// Verify the decomposition, the birth sets and the pairing lemmas after
    /// every square. Quadratic per square; meant for tests.
    pub check: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepStats {
    pub squares: u64,
    pub transpositions: u64,
    pub switches: u64,
    /// Entries visited by column operations during the sweep proper.
    pub matrix_ops: u64,
    /// Entries visited while updating stored corner chains.
    pub corner_ops: u64,
    /// Largest matrix work at a single square.
    pub max_square_ops: u64,
    /// Individual `±1` contributions emitted before summation.
    pub emissions: u64,
    /// Crossing-pair fixes applied by the vineyard.
    pub crossing_fixes: u64,
}

/// What happens at one square.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Square {
    Empty,
    /// `L = Rt`.
    Horizontal(usize),
    /// `T = Bt`.
    Vertical(usize),
    /// `T = Rt`: `h` is a lower corner of the cell.
    Lower(usize),
    /// `L = Bt`: `h` is an upper corner of the cell.
    Upper(usize),
    /// `L = Rt = tau`, `T = Bt = sigma`.
    Swap { tau: usize, sigma: usize },
}

struct State<'a> {
    b: &'a Bifiltration,
    n: u32,
    rv: RVDecomposition,
    /// Birth set of every negative cell; empty for positive cells.
    w: Vec<Staircase>,
    /// Cell whose column-`i` run is open.
    owner: Option<usize>,
    /// `(κ, h)` for every negative `κ` added by an `Rt` step in this column.
    records: Vec<(usize, Grade)>,
    /// The single cell with a lower corner at each x, and at each y.
    col_cell: Vec<Option<usize>>,
    row_cell: Vec<Option<usize>>,
    out: SignedDiagram,
    stats: SweepStats,
    check: bool,
}

/// Computes the diagram of a non-degenerate bifiltration on a square grid.
pub fn sweep(b: &Bifiltration, opts: &SweepOptions) -> Result<(SignedDiagram, SweepStats), Error> {
    crate::complex::validate(b).map_err(Error::Invalid)?;
    if !is_nondegenerate(b) {
        return Err(Error::Degenerate);
    }
    if b.grid.nx != b.grid.ny {
        return Err(Error::Invariant("the sweep needs a square grid".into()));
    }
    let n = b.grid.nx;
    let mut st = State::new(b, n, opts)?;
    if st.check {
        st.verify(1, n + 1)?;
    }
    for i in 1..=n {
        for j in (1..=n).rev() {
            st.square(i, j)?;
            if st.check {
                st.verify(i, j)?;
            }
        }
        st.records.clear();
        st.owner = None;
    }
    st.finalize();
    Ok((st.out, st.stats))
}

/// The diagram of any valid bifiltration on its own grid: degenerate or
/// non-square inputs are refined, swept, and pushed back along the ceiling
/// map, which leaves the diagram of the original unchanged.
pub fn compute(b: &Bifiltration, opts: &SweepOptions) -> Result<(SignedDiagram, SweepStats), Error> {
    crate::complex::validate(b).map_err(Error::Invalid)?;
    if b.grid.nx == b.grid.ny && is_nondegenerate(b) {
        return sweep(b, opts);
    }
    let (r, map) = refine_to_nondegenerate(b)?;
    let (d, stats) = sweep(&r, opts)?;
    Ok((d.pushforward(b.grid, |g| map.apply(g)), stats))
}

impl<'a> State<'a> {
    fn new(b: &'a Bifiltration, n: u32, opts: &SweepOptions) -> Result<Self, Error> {
        let path = Path::left_top(n);
        let f = restrict_any(b, &path);
        let mut rv = reduce_filtration(&b.complex, &f, &opts.field)?;
        rv.add_implicit_cells();
        let mut col_cell = vec![None; n as usize + 2];
        let mut row_cell = vec![None; n as usize + 2];
        for (k, c) in b.curves.iter().enumerate() {
            for g in c.lower_corners() {
                col_cell[g.x as usize] = Some(k);
                row_cell[g.y as usize] = Some(k);
            }
        }
        let cells = rv.len();
        let mut w = vec![Staircase::new(); cells];
        for &k in &rv.order {
            if !rv.is_positive(k) {
                let s = rv.low[k].unwrap();
                let x = b.curves[s].min_x();
                w[k] = Staircase::from_corners(vec![Corner {
                    grade: Grade::new(x, n),
                    z: rv.r[k].clone(),
                    v: rv.v[k].clone(),
                }]);
            }
        }
        rv.ops = 0;
        Ok(State {
            b,
            n,
            rv,
            w,
            owner: None,
            records: Vec::new(),
            col_cell,
            row_cell,
            out: SignedDiagram::new(b.grid),
            stats: SweepStats::default(),
            check: opts.check,
        })
    }

    fn emit(&mut self, cell: usize, lo: Grade, hi: Grade, v: i64) {
        let dim = self.rv.dims[cell] - 1;
        self.stats.emissions += 1;
        self.out.add(dim, Interval::new(lo, hi), v);
    }

    fn emit_set(&mut self, cell: usize, set: &Staircase, hi: Grade, sign: i64) {
        let items: Vec<(Grade, i64)> = set.signed().collect();
        for (g, v) in items {
            self.emit(cell, g, hi, sign * v);
        }
    }

    fn classify(&self, i: u32, j: u32) -> Result<Square, Error> {
        let (e, f) = (Grade::new(i - 1, j - 1), Grade::new(i, j - 1));
        let (g, h) = (Grade::new(i - 1, j), Grade::new(i, j));
        let mut steps = [None; 4]; // L, T, Bt, Rt
        let mut cands = vec![self.col_cell[i as usize], self.row_cell[j as usize]];
        cands.dedup();
        for s in cands.into_iter().flatten() {
            let c = &self.b.curves[s];
            let (ie, ifr, ig, ih) = (c.contains(e), c.contains(f), c.contains(g), c.contains(h));
            for (slot, hit) in [(0, ig && !ie), (1, ih && !ig), (2, ifr && !ie), (3, ih && !ifr)] {
                if hit {
                    if steps[slot].is_some() {
                        return Err(Error::Degenerate);
                    }
                    steps[slot] = Some(s);
                }
            }
        }
        Ok(match steps {
            [None, None, None, None] => Square::Empty,
            [Some(l), None, None, Some(r)] if l == r => Square::Horizontal(l),
            [None, Some(t), Some(b), None] if t == b => Square::Vertical(t),
            [None, Some(t), None, Some(r)] if t == r => Square::Lower(t),
            [Some(l), None, Some(b), None] if l == b => Square::Upper(l),
            [Some(l), Some(t), Some(b), Some(r)] if l == r && t == b && l != t => {
                Square::Swap { tau: l, sigma: t }
            }
            other => return Err(Error::Invariant(format!("unexpected square {other:?} at {h}"))),
        })
    }

    fn positive(&self, c: usize) -> bool {
        self.rv.is_positive(c)
    }

    fn square(&mut self, i: u32, j: u32) -> Result<(), Error> {
        self.stats.squares += 1;
        let ops0 = self.rv.ops;
        let e = Grade::new(i - 1, j - 1);
        let g = Grade::new(i - 1, j);
        let h = Grade::new(i, j);
        let kind = self.classify(i, j)?;
        let at_t = match kind {
            Square::Vertical(a) | Square::Lower(a) | Square::Swap { sigma: a, .. } => Some(a),
            _ => None,
        };
        // the open run before the step, with its chains
        let old_owner = at_t.filter(|&a| self.positive(a)).and_then(|a| self.rv.partner(a));
        let snapshot = old_owner.map(|k| (self.rv.r[k].clone(), self.rv.v[k].clone()));
        // the row-j part of the T cell's birth set
        if let Some(a) = at_t {
            if !self.positive(a) {
                self.emit_row(a, g, h);
            }
        }
        match kind {
            Square::Empty | Square::Vertical(_) => {}
            Square::Horizontal(s) => {
                if !self.positive(s) {
                    self.records.push((s, h));
                }
            }
            Square::Lower(a) => {
                if !self.positive(a) {
                    let set = self.w[a].restrict(e);
                    self.emit_set(a, &set, h, 1);
                    self.records.push((a, h));
                }
            }
            Square::Upper(a) => {
                if !self.positive(a) {
                    let set = self.w[a].restrict(e);
                    self.emit_set(a, &set, h, -1);
                }
            }
            Square::Swap { tau, sigma } => self.swap(tau, sigma, e, h)?,
        }
        let bt = match kind {
            Square::Vertical(a) | Square::Upper(a) | Square::Swap { sigma: a, .. } => Some(a),
            _ => None,
        };
        let new_owner = bt.filter(|&a| self.positive(a)).and_then(|a| self.rv.partner(a));
        if let Some(k) = old_owner {
            if new_owner != Some(k) {
                let (z, v) = snapshot.unwrap();
                self.close_run(k, h, z, v);
            }
        }
        self.owner = new_owner;
        let used = self.rv.ops - ops0;
        self.stats.matrix_ops += used;
        self.stats.max_square_ops = self.stats.max_square_ops.max(used);
        Ok(())
    }

    /// Emits the row-`j` corners of the birth set of `a` (entering at `T`)
    /// and drops them: below `e` the set is unchanged.
    fn emit_row(&mut self, a: usize, g: Grade, h: Grade) {
        let set = self.w[a].restrict(g);
        let cs = set.corners();
        if let Some(first) = cs.first() {
            if first.grade.y == g.y {
                let second = cs.get(1).map(|c| c.grade.x);
                let lo = first.grade;
                self.emit(a, lo, h, 1);
                if let Some(x2) = second {
                    self.emit(a, Grade::new(x2, g.y), h, -1);
                }
            }
        }
        let mut kept = set;
        kept.remove_row(g.y);
        self.w[a] = kept;
    }

    /// Appends the lower corner `h` to the run owner's birth set and settles
    /// the column-`i` values recorded for it.
    fn close_run(&mut self, k: usize, h: Grade, z: SparseColumn, v: SparseColumn) {
        let w_prev = self.w[k]
            .corners()
            .iter()
            .rev()
            .find(|c| c.grade.x < h.x)
            .map(|c| c.grade.y);
        let mut cs = std::mem::take(&mut self.w[k]).into_corners();
        cs.retain(|c| c.grade.x <= h.x);
        cs.push(Corner { grade: h, z, v });
        self.w[k] = Staircase::from_corners(cs);
        let pending: Vec<Grade> =
            self.records.iter().filter(|r| r.0 == k).map(|r| r.1).collect();
        self.records.retain(|r| r.0 != k);
        for hi in pending {
            self.emit(k, h, hi, 1);
            if let Some(wy) = w_prev {
                self.emit(k, Grade::new(h.x, wy), hi, -1);
            }
        }
    }

    fn swap(&mut self, tau: usize, sigma: usize, e: Grade, h: Grade) -> Result<(), Error> {
        let k = self.rv.pos[tau];
        if self.rv.pos[sigma] != k + 1 {
            return Err(Error::Invariant(format!("cells at {h} are not adjacent")));
        }
        let v_sigma = self.rv.v[sigma].clone();
        let before = self.pair_positions(tau, sigma);
        let out = transpose(&mut self.rv, k)?;
        self.stats.transpositions += 1;
        if out.crossing_fix {
            self.stats.crossing_fixes += 1;
        }
        if out.switched {
            self.stats.switches += 1;
            if self.check {
                let after = self.pair_positions(tau, sigma);
                for (p, q) in [before, after] {
                    if let (Some(p), Some(q)) = (p, q) {
                        if !nested_or_disjoint(&self.rv, p, q) && !positions_nested_or_disjoint(p, q) {
                            return Err(Error::Invariant(format!("crossing switch at {h}")));
                        }
                    }
                }
            }
        }
        let f = self.rv.field;
        match out.case {
            Case::PositivePositive => {}
            Case::PositiveNegative => {
                // sigma's chains may not mention tau any more
                let vt = self.rv.v[tau].clone();
                let dt = vt.get(tau);
                for c in self.w[sigma].corners_mut() {
                    let x = c.v.get(tau);
                    if x != 0 {
                        self.stats.corner_ops += c.v.add_scaled(&vt, f.neg(f.div(x, dt)), &f) as u64;
                    }
                }
            }
            Case::NegativePositive => {
                if out.switched {
                    let x = self.w[tau].restrict(e);
                    self.emit_set(tau, &x, h, -1);
                    let mu = v_sigma.get(tau);
                    let mut cs = x.into_corners();
                    for c in &mut cs {
                        let d = c.v.get(tau);
                        self.stats.corner_ops +=
                            c.v.add_scaled(&v_sigma, f.neg(f.div(d, mu)), &f) as u64;
                    }
                    self.w[sigma] = Staircase::from_corners(cs);
                    self.w[tau] = Staircase::new();
                } else {
                    self.records.push((tau, h));
                }
            }
            Case::NegativeNegative => {
                let x = self.w[tau].restrict(e);
                let u = self.w[sigma].restrict(e);
                let (zt, yt): (Vec<Corner>, Vec<Corner>) =
                    u.into_corners().into_iter().partition(|c| c.v.get(tau) != 0);
                let zs = Staircase::from_corners(zt.clone());
                let xg: Vec<Grade> = x.lower().collect();
                let zg: Vec<Grade> = zs.lower().collect();
                let mut sig = yt;
                for p in meet_grades(&zg, &xg) {
                    let a = zs.below(p).unwrap();
                    let bb = x.below(p).unwrap();
                    let c = f.neg(f.div(a.v.get(tau), bb.v.get(tau)));
                    let mut z = a.z.clone();
                    let mut v = a.v.clone();
                    self.stats.corner_ops += z.add_scaled(&bb.z, c, &f) as u64;
                    self.stats.corner_ops += v.add_scaled(&bb.v, c, &f) as u64;
                    sig.push(Corner { grade: p, z, v });
                }
                let mut tc = x.corners().to_vec();
                tc.extend(zt);
                let new_tau = Staircase::from_corners(tc);
                self.emit_set(tau, &new_tau, h, 1);
                self.emit_set(tau, &x, h, -1);
                self.w[tau] = new_tau;
                self.w[sigma] = Staircase::from_corners(sig);
                self.records.push((tau, h));
            }
        }
        Ok(())
    }

    fn pair_positions(&self, tau: usize, sigma: usize) -> (PairPos, PairPos) {
        let p = |c: usize| self.rv.partner(c).map(|q| (self.rv.pos[c], self.rv.pos[q]));
        (p(tau), p(sigma))
    }

    fn finalize(&mut self) {
        let top = self.b.grid.top();
        let implicit: Vec<usize> = (self.rv.real..self.rv.len()).collect();
        for c in implicit {
            let set = self.w[c].clone();
            self.emit_set(c, &set, top, 1);
        }
    }

    /// Checks the decomposition and that every negative cell is paired with
    /// the cell entering at the first path point of its birth set. The path
    /// is the one after square `(i, j)`, i.e. through `(i, j - 1)`.
    fn verify(&self, i: u32, j: u32) -> Result<(), Error> {
        self.rv.check().map_err(Error::Invariant)?;
        let n = self.n;
        // path through column i - 1 up to j - 1, then column i, then the top row
        let mut pts = Vec::new();
        for y in 0..j.min(n + 1) {
            pts.push(Grade::new(i - 1, y));
        }
        for y in (j - 1).min(n)..=n {
            pts.push(Grade::new(i, y));
        }
        for x in i + 1..=n {
            pts.push(Grade::new(x, n));
        }
        pts.dedup();
        let enter = |p: usize| -> Option<usize> {
            (0..self.b.len()).find(|&k| {
                self.b.contains(k, pts[p]) && (p == 0 || !self.b.contains(k, pts[p - 1]))
            })
        };
        for &k in &self.rv.order {
            if self.rv.is_positive(k) {
                continue;
            }
            if !self.w[k].is_well_formed() {
                return Err(Error::Invariant(format!("birth set of {k} is not an antichain")));
            }
            let partner = self.rv.low[k].unwrap();
            let first = (0..pts.len()).find(|&p| {
                let q = pts[p];
                self.w[k].contains(q) || (self.owner == Some(k) && q.x == i && q.y + 1 >= j)
            });
            let got = first.and_then(enter);
            if got != Some(partner) {
                return Err(Error::Invariant(format!(
                    "after ({i},{j}): cell {k} is paired with {partner} but its birth set starts at {:?}",
                    first.map(|p| pts[p])
                )));
            }
        }
        Ok(())
    }
}

fn positions_nested_or_disjoint(p: (usize, usize), q: (usize, usize)) -> bool {
    let (a, b) = (p.0.min(p.1), p.0.max(p.1));
    let (c, d) = (q.0.min(q.1), q.0.max(q.1));
    (a < c && d < b) || (c < a && b < d) || b < c || d < a
}
