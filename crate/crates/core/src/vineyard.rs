//! Adjacent transpositions of an `R = DV` decomposition.

use crate::matrix::RVDecomposition;
use crate::Error;

/// Signs of the two transposed cells, earlier one first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    PositivePositive,
    NegativeNegative,
    /// Earlier cell negative, later cell positive.
    NegativePositive,
    /// Earlier cell positive, later cell negative.
    PositiveNegative,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TranspositionOutcome {
    pub case: Case,
    /// Cell that moved from position `k` to `k + 1`.
    pub tau: usize,
    /// Cell that moved from position `k + 1` to `k`.
    pub sigma: usize,
    pub switched: bool,
    /// Whether the crossing fix-up was applied.
    pub crossing_fix: bool,
    /// Entries visited by column operations.
    pub ops: u64,
}

/// Swaps the cells at positions `k` and `k + 1` and restores the invariants.
///
/// Writing `τ` for the earlier and `σ` for the later cell: the entry
/// `V[τ, σ]` is cleared first; then, depending on the signs, a second column
/// operation may be needed to keep `R` reduced, which is exactly when the
/// pairing switches. When two positive cells go from nested to crossing
/// pairs, the partner columns are adjusted so `V` has no entry linking them.
pub fn transpose(rv: &mut RVDecomposition, k: usize) -> Result<TranspositionOutcome, Error> {
    let tau = rv.order[k];
    let sigma = rv.order[k + 1];
    if rv.is_implicit(tau) || rv.is_implicit(sigma) {
        return Err(Error::Invariant("implicit cells never transpose".into()));
    }
    if rv.d[sigma].get(tau) != 0 {
        return Err(Error::Invariant(format!("cell {tau} is a face of cell {sigma}")));
    }
    let f = rv.field;
    let ops0 = rv.ops;
    let case = match (rv.is_positive(tau), rv.is_positive(sigma)) {
        (true, true) => Case::PositivePositive,
        (false, false) => Case::NegativeNegative,
        (false, true) => Case::NegativePositive,
        (true, false) => Case::PositiveNegative,
    };
    let before = (rv.partner(tau), rv.partner(sigma));
    let a = rv.owner[sigma];
    let b = rv.owner[tau];
    let vts = rv.v[sigma].get(tau);
    let lam = if vts == 0 { 0 } else { f.div(vts, rv.v[tau].get(tau)) };
    let mut crossing_fix = false;
    match case {
        Case::PositivePositive => {
            if lam != 0 {
                rv.column_op(sigma, tau, lam);
            }
            if let (Some(a), Some(b)) = (a, b) {
                let rta = rv.r[a].get(tau);
                if rta != 0 {
                    let (early, late) = if rv.pos[a] < rv.pos[b] { (a, b) } else { (b, a) };
                    let c = f.div(rv.r[late].get(tau), rv.r[early].get(tau));
                    rv.column_op(late, early, c);
                } else if rv.pos[a] < rv.pos[b] {
                    crossing_fix = clear_v_entry(rv, a, b);
                }
            }
        }
        Case::NegativeNegative => {
            if lam != 0 {
                let (pt, ps) = (rv.low[tau].unwrap(), rv.low[sigma].unwrap());
                rv.column_op(sigma, tau, lam);
                if rv.pos[pt] > rv.pos[ps] {
                    let c = f.div(rv.r[tau].get(pt), rv.r[sigma].get(pt));
                    rv.column_op(tau, sigma, c);
                }
            }
        }
        Case::NegativePositive => {
            let rta = a.map_or(0, |a| rv.r[a].get(tau));
            if (rta != 0) != (lam != 0) {
                return Err(Error::Invariant(format!(
                    "R[{tau}, partner] and V[{tau}, {sigma}] disagree"
                )));
            }
            if lam != 0 {
                let pt = rv.low[tau].unwrap();
                rv.column_op(sigma, tau, lam);
                let c = f.div(rv.r[tau].get(pt), rv.r[sigma].get(pt));
                rv.column_op(tau, sigma, c);
                debug_assert!(rv.r[tau].is_empty());
            }
        }
        Case::PositiveNegative => {
            if lam != 0 {
                rv.column_op(sigma, tau, lam);
            }
        }
    }
    rv.order.swap(k, k + 1);
    rv.pos[tau] = k + 1;
    rv.pos[sigma] = k;
    for c in [Some(tau), Some(sigma), a, b].into_iter().flatten() {
        rv.refresh_low(c);
    }
    for c in [Some(tau), Some(sigma), a, b].into_iter().flatten() {
        if let Some(l) = rv.low[c] {
            rv.owner[l] = Some(c);
        }
    }
    let after = (rv.partner(tau), rv.partner(sigma));
    Ok(TranspositionOutcome {
        case,
        tau,
        sigma,
        switched: before != after,
        crossing_fix,
        ops: rv.ops - ops0,
    })
}

/// Clears `V[alpha, beta]` with a multiple of column `alpha`; `alpha` must
/// precede `beta`. The low of `beta` is unchanged because column `alpha` of
/// `R` lies strictly above it.
pub fn enforce_crossing_zero(
    rv: &mut RVDecomposition,
    alpha: usize,
    beta: usize,
) -> Result<(), Error> {
    if rv.pos[alpha] >= rv.pos[beta] {
        return Err(Error::Invariant(format!("column {alpha} does not precede {beta}")));
    }
    clear_v_entry(rv, alpha, beta);
    Ok(())
}

fn clear_v_entry(rv: &mut RVDecomposition, alpha: usize, beta: usize) -> bool {
    let x = rv.v[beta].get(alpha);
    if x == 0 {
        return false;
    }
    let c = rv.field.div(x, rv.v[alpha].get(alpha));
    rv.column_op(beta, alpha, c);
    true
}

/// Pairs `(s, α)` and `(t, β)` with `s < t < α < β` in position order whose
/// entry `V[α, β]` is nonzero.
pub fn crossing_violations(rv: &RVDecomposition) -> Vec<(usize, usize)> {
    let (pairs, _) = rv.pairs();
    let mut out = Vec::new();
    for &(s, alpha) in &pairs {
        for &(t, beta) in &pairs {
            let p = |c: usize| rv.pos[c];
            if p(s) < p(t) && p(t) < p(alpha) && p(alpha) < p(beta) && rv.v[beta].get(alpha) != 0
            {
                out.push((alpha, beta));
            }
        }
    }
    out
}

/// Two pairs are nested or disjoint (as position intervals), not crossing.
pub fn nested_or_disjoint(rv: &RVDecomposition, p: (usize, usize), q: (usize, usize)) -> bool {
    let iv = |(a, b): (usize, usize)| {
        let (x, y) = (rv.pos[a], rv.pos[b]);
        (x.min(y), x.max(y))
    };
    let (a, b) = iv(p);
    let (c, d) = iv(q);
    let nested = (a < c && d < b) || (c < a && b < d);
    let disjoint = b < c || d < a;
    nested || disjoint
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{OneFiltration, SimplicialComplex};
    use crate::field::Field;
    use crate::matrix::{reduce_filtration, BoundaryMatrix};

    fn setup(list: &[&[u32]], p: u32) -> (SimplicialComplex, RVDecomposition) {
        let mut cx = SimplicialComplex::new();
        for (k, v) in list.iter().enumerate() {
            cx.push(k as u64, v.to_vec()).unwrap();
        }
        let order = (0..cx.len()).map(|k| (k, k as u32 + 1)).collect();
        let f = OneFiltration { order, len: cx.len() as u32 };
        let rv = reduce_filtration(&cx, &f, &Field::new(p).unwrap()).unwrap();
        (cx, rv)
    }

    fn fresh_pairs(rv: &RVDecomposition) -> (Vec<(usize, usize)>, Vec<usize>) {
        let bm = BoundaryMatrix {
            columns: rv.d.clone(),
            dims: rv.dims.clone(),
            order: rv.order.clone(),
        };
        crate::matrix::reduce(&bm, &rv.field).pairs()
    }

    #[test]
    fn swapping_vertices_switches_the_merge() {
        // u, v, w, uv, vw: moving w before v makes vw kill w instead.
        let (_, mut rv) = setup(&[&[0], &[1], &[2], &[0, 1], &[1, 2]], 2);
        let out = transpose(&mut rv, 1).unwrap();
        assert_eq!(out.case, Case::PositivePositive);
        rv.check().unwrap();
        assert_eq!(rv.pairs(), fresh_pairs(&rv));
    }

    #[test]
    fn negative_then_positive_switch() {
        // u, v, uv, w: moving w before uv keeps uv negative.
        let (_, mut rv) = setup(&[&[0], &[1], &[0, 1], &[2]], 3);
        let out = transpose(&mut rv, 2).unwrap();
        assert_eq!(out.case, Case::NegativePositive);
        assert!(!out.switched);
        rv.check().unwrap();
    }

    #[test]
    fn rejects_face_coface_swap() {
        let (_, mut rv) = setup(&[&[0], &[1], &[0, 1]], 2);
        assert!(transpose(&mut rv, 1).is_err());
    }

    #[test]
    fn triangle_edges_all_orders() {
        let list: &[&[u32]] = &[&[0], &[1], &[2], &[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]];
        for p in [2, 3, 5] {
            let (_, mut rv) = setup(list, p);
            rv.add_implicit_cells();
            for k in [3, 4, 3, 4, 3, 0, 1, 0] {
                if transpose(&mut rv, k).is_ok() {
                    rv.check().unwrap();
                    let (pairs, _) = rv.pairs();
                    let real: Vec<_> = pairs.into_iter().filter(|e| e.1 < rv.real).collect();
                    let (fresh, _) = fresh_pairs(&RVDecomposition {
                        d: rv.d[..rv.real].to_vec(),
                        dims: rv.dims[..rv.real].to_vec(),
                        order: rv.order[..rv.real].to_vec(),
                        ..rv.clone()
                    });
                    assert_eq!(real, fresh);
                    assert!(crossing_violations(&rv).is_empty());
                }
            }
        }
    }
}
