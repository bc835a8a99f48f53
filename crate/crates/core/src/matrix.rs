//! Sparse columns over a prime field and the `R = DV` reduction.
//!
//! Rows and columns are addressed by cell index (a simplex index, or an
//! implicit cell appended after the simplices), never by filtration position,
//! so a transposition only has to swap two entries of the position table.
//! "Lowest" always means largest filtration position.

use crate::complex::{OneFiltration, SimplicialComplex};
use crate::field::Field;
use crate::Error;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseColumn {
    entries: Vec<(usize, u32)>,
}

impl SparseColumn {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn unit(k: usize) -> Self {
        SparseColumn { entries: vec![(k, 1)] }
    }

    /// Builds a column from arbitrary entries, merging repeats and dropping
    /// zeros.
    pub fn from_entries(f: &Field, mut e: Vec<(usize, u32)>) -> Self {
        e.sort_unstable_by_key(|x| x.0);
        let mut out: Vec<(usize, u32)> = Vec::with_capacity(e.len());
        for (k, c) in e {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 = f.add(last.1, c),
                _ => out.push((k, c % f.characteristic())),
            }
        }
        out.retain(|x| x.1 != 0);
        SparseColumn { entries: out }
    }

    pub fn entries(&self) -> &[(usize, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, k: usize) -> u32 {
        self.entries.binary_search_by_key(&k, |x| x.0).map_or(0, |i| self.entries[i].1)
    }

    /// The entry with the largest position, if any.
    pub fn low(&self, pos: &[usize]) -> Option<usize> {
        self.entries.iter().map(|x| x.0).max_by_key(|&k| pos[k])
    }

    /// `self += c * other`; returns the number of entries visited.
    pub fn add_scaled(&mut self, other: &SparseColumn, c: u32, f: &Field) -> usize {
        if c == 0 || other.is_empty() {
            return 0;
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, f.mul(c, b[j].1)));
                j += 1;
            } else {
                let v = f.add(a[i].1, f.mul(c, b[j].1));
                if v != 0 {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        let visited = a.len() + b.len();
        self.entries = out;
        visited
    }

    pub fn scale(&mut self, c: u32, f: &Field) {
        assert!(c != 0);
        for e in &mut self.entries {
            e.1 = f.mul(e.1, c);
        }
    }
}

/// Boundary columns of a filtration's cells, with the filtration order.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub columns: Vec<SparseColumn>,
    pub dims: Vec<usize>,
    /// Cell indices in filtration order.
    pub order: Vec<usize>,
}

/// Column `k` holds the signed boundary of simplex `k`.
pub fn boundary_matrix(
    cx: &SimplicialComplex,
    f: &OneFiltration,
    field: &Field,
) -> Result<BoundaryMatrix, Error> {
    let order: Vec<usize> = f.order.iter().map(|e| e.0).collect();
    let mut pos = vec![usize::MAX; cx.len()];
    for (p, &k) in order.iter().enumerate() {
        pos[k] = p;
    }
    let mut columns = Vec::with_capacity(cx.len());
    for k in 0..cx.len() {
        let mut e = Vec::new();
        for (face, sign) in cx.facets(k) {
            let bad = || Error::Invariant(format!("face of simplex {} missing", cx.simplex(k).id));
            let r = face.ok_or_else(bad)?;
            if pos[r] == usize::MAX || pos[k] == usize::MAX || pos[r] > pos[k] {
                return Err(bad());
            }
            e.push((r, field.from_i64(sign)));
        }
        columns.push(SparseColumn::from_entries(field, e));
    }
    let dims = (0..cx.len()).map(|k| cx.dim(k)).collect();
    Ok(BoundaryMatrix { columns, dims, order })
}

/// An `R = DV` decomposition with explicit V, position tables and pairing.
#[derive(Clone, Debug)]
pub struct RVDecomposition {
    pub field: Field,
    pub d: Vec<SparseColumn>,
    pub r: Vec<SparseColumn>,
    pub v: Vec<SparseColumn>,
    /// Dimension of each cell; an implicit cell is one above its partner.
    pub dims: Vec<usize>,
    /// `order[p]` is the cell at position `p`; `pos` is its inverse.
    pub order: Vec<usize>,
    pub pos: Vec<usize>,
    /// Low of each nonzero R column.
    pub low: Vec<Option<usize>>,
    /// `owner[row]`: the column whose low is `row`.
    pub owner: Vec<Option<usize>>,
    /// Number of real (simplex) cells; larger indices are implicit.
    pub real: usize,
    /// Entries visited by column operations since the last reset.
    pub ops: u64,
}

impl RVDecomposition {
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn is_positive(&self, c: usize) -> bool {
        self.r[c].is_empty()
    }

    pub fn is_implicit(&self, c: usize) -> bool {
        c >= self.real
    }

    /// The cell paired with `c`, if any.
    pub fn partner(&self, c: usize) -> Option<usize> {
        if self.is_positive(c) {
            self.owner[c]
        } else {
            self.low[c]
        }
    }

    /// `(positive, negative)` pairs and unpaired positive cells.
    pub fn pairs(&self) -> (Vec<(usize, usize)>, Vec<usize>) {
        let mut pairs = Vec::new();
        let mut unpaired = Vec::new();
        for &c in &self.order {
            if self.is_positive(c) {
                match self.owner[c] {
                    Some(k) => pairs.push((c, k)),
                    None => unpaired.push(c),
                }
            }
        }
        (pairs, unpaired)
    }

    /// `R[a] -= c * R[b]` and `V[a] -= c * V[b]`.
    pub fn column_op(&mut self, a: usize, b: usize, c: u32) {
        assert_ne!(a, b);
        let neg = self.field.neg(c);
        let rb = self.r[b].clone();
        let vb = self.v[b].clone();
        self.ops += self.r[a].add_scaled(&rb, neg, &self.field) as u64;
        self.ops += self.v[a].add_scaled(&vb, neg, &self.field) as u64;
    }

    /// Recomputes the cached low of column `c` and the owner table.
    pub fn refresh_low(&mut self, c: usize) {
        if let Some(old) = self.low[c] {
            if self.owner[old] == Some(c) {
                self.owner[old] = None;
            }
        }
        let l = self.r[c].low(&self.pos);
        self.low[c] = l;
        if let Some(l) = l {
            self.owner[l] = Some(c);
        }
    }

    /// Appends one implicit cell per unpaired cell. The new cell's boundary is
    /// the cycle `V[σ]`, so it is negative with low `σ` and `V` is the unit.
    /// Returns the new cells, in position order of their partners.
    pub fn add_implicit_cells(&mut self) -> Vec<usize> {
        let (_, unpaired) = self.pairs();
        let mut added = Vec::new();
        for s in unpaired {
            let c = self.d.len();
            let col = self.v[s].clone();
            self.d.push(col.clone());
            self.r.push(col);
            self.v.push(SparseColumn::unit(c));
            self.dims.push(self.dims[s] + 1);
            self.pos.push(self.order.len());
            self.order.push(c);
            self.low.push(Some(s));
            self.owner.push(None);
            self.owner[s] = Some(c);
            added.push(c);
        }
        added
    }

    /// `R = DV`, R reduced, V upper triangular with nonzero diagonal, and the
    /// cached lows are current.
    pub fn check(&self) -> Result<(), String> {
        let f = &self.field;
        let mut seen = vec![false; self.len()];
        for &c in &self.order {
            let mut dv = SparseColumn::new();
            for &(k, x) in self.v[c].entries() {
                if self.pos[k] > self.pos[c] {
                    return Err(format!("V[{c}] has entry {k} below the diagonal"));
                }
                dv.add_scaled(&self.d[k], x, f);
            }
            if self.v[c].get(c) == 0 {
                return Err(format!("V[{c}] has a zero diagonal"));
            }
            if dv != self.r[c] {
                return Err(format!("R[{c}] differs from D V[{c}]"));
            }
            let l = self.r[c].low(&self.pos);
            if l != self.low[c] {
                return Err(format!("stale low for column {c}"));
            }
            if let Some(l) = l {
                if seen[l] {
                    return Err(format!("row {l} is the low of two columns"));
                }
                seen[l] = true;
                if self.owner[l] != Some(c) {
                    return Err(format!("owner of row {l} is stale"));
                }
            }
        }
        for (row, o) in self.owner.iter().enumerate() {
            if o.is_some() && !seen[row] {
                return Err(format!("row {row} has an owner but no column has it as low"));
            }
        }
        Ok(())
    }
}

/// Left-to-right column reduction by filtration position.
pub fn reduce(bm: &BoundaryMatrix, field: &Field) -> RVDecomposition {
    let cells = bm.columns.len();
    let mut pos = vec![usize::MAX; cells];
    for (p, &k) in bm.order.iter().enumerate() {
        pos[k] = p;
    }
    let mut rv = RVDecomposition {
        field: *field,
        d: bm.columns.clone(),
        r: bm.columns.clone(),
        v: (0..cells).map(SparseColumn::unit).collect(),
        dims: bm.dims.clone(),
        order: bm.order.clone(),
        pos,
        low: vec![None; cells],
        owner: vec![None; cells],
        real: cells,
        ops: 0,
    };
    for p in 0..bm.order.len() {
        let c = bm.order[p];
        while let Some(l) = rv.r[c].low(&rv.pos) {
            match rv.owner[l] {
                Some(b) => {
                    let x = field.div(rv.r[c].get(l), rv.r[b].get(l));
                    rv.column_op(c, b, x);
                }
                None => {
                    rv.low[c] = Some(l);
                    rv.owner[l] = Some(c);
                    break;
                }
            }
        }
    }
    rv
}

/// Reduction of the filtration `f` of `cx`.
pub fn reduce_filtration(
    cx: &SimplicialComplex,
    f: &OneFiltration,
    field: &Field,
) -> Result<RVDecomposition, Error> {
    Ok(reduce(&boundary_matrix(cx, f, field)?, field))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn filtration(cx: &SimplicialComplex) -> OneFiltration {
        let mut order: Vec<(usize, u32)> = (0..cx.len()).map(|k| (k, k as u32 + 1)).collect();
        order.sort_by_key(|&(k, _)| (cx.dim(k), k));
        for (s, e) in order.iter_mut().enumerate() {
            e.1 = s as u32 + 1;
        }
        OneFiltration { len: cx.len() as u32, order }
    }

    fn complex(list: &[&[u32]]) -> SimplicialComplex {
        let mut cx = SimplicialComplex::new();
        for (k, v) in list.iter().enumerate() {
            cx.push(k as u64, v.to_vec()).unwrap();
        }
        cx
    }

    #[test]
    fn merge_of_two_vertices() {
        let cx = complex(&[&[0], &[1], &[0, 1]]);
        let rv = reduce_filtration(&cx, &filtration(&cx), &Field::GF2).unwrap();
        rv.check().unwrap();
        let (pairs, unpaired) = rv.pairs();
        assert_eq!(pairs, vec![(1, 2)]);
        assert_eq!(unpaired, vec![0]);
    }

    #[test]
    fn triangle_boundary_signs() {
        let cx = complex(&[&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]]);
        let f = Field::new(3).unwrap();
        let bm = boundary_matrix(&cx, &filtration(&cx), &f).unwrap();
        assert_eq!(bm.columns[6].entries(), &[(3, 1), (4, 2), (5, 1)]);
        assert_eq!(bm.columns[3].entries(), &[(0, 2), (1, 1)]);
    }

    #[test]
    fn circle_gets_two_implicit_cells() {
        let cx = complex(&[&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2]]);
        for p in [2, 3, 5] {
            let f = Field::new(p).unwrap();
            let mut rv = reduce_filtration(&cx, &filtration(&cx), &f).unwrap();
            let added = rv.add_implicit_cells();
            assert_eq!(added.len(), 2);
            rv.check().unwrap();
            assert_eq!(rv.dims[added[0]], 1);
            assert_eq!(rv.dims[added[1]], 2);
            assert!(rv.pairs().1.is_empty());
        }
    }

    #[test]
    fn missing_face_is_reported() {
        let cx = complex(&[&[0], &[0, 1]]);
        let f = OneFiltration { order: vec![(0, 1), (1, 2)], len: 2 };
        assert!(boundary_matrix(&cx, &f, &Field::GF2).is_err());
    }
}
