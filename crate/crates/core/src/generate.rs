//! Seeded random instances for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::complex::{
    is_nondegenerate, refine_to_nondegenerate, AppearanceCurve, Bifiltration, OneFiltration,
    SimplicialComplex,
};
use crate::poset::{CeilingMap, Grade, Grid, Path, Step};

/// A random complex on at most `max_vertices` vertices with exactly `m`
/// simplices (fewer if the vertices run out of room), grown by adding
/// simplices whose facets are already present.
pub fn random_complex<R: Rng>(rng: &mut R, m: usize, max_dim: usize, max_vertices: u32) -> SimplicialComplex {
    let mut cx = SimplicialComplex::new();
    let mut next_vertex = 0u32;
    while cx.len() < m {
        let mut candidates: Vec<Vec<u32>> = Vec::new();
        for k in 0..cx.len() {
            let s = cx.simplex(k).vertices.clone();
            if s.len() > max_dim {
                continue;
            }
            for v in 0..next_vertex {
                if s.contains(&v) {
                    continue;
                }
                let mut t = s.clone();
                t.push(v);
                t.sort_unstable();
                let facets_present = (0..t.len()).all(|i| {
                    let mut f = t.clone();
                    f.remove(i);
                    cx.find(&f).is_some()
                });
                if facets_present && cx.find(&t).is_none() && !candidates.contains(&t) {
                    candidates.push(t);
                }
            }
        }
        let new_vertex = next_vertex < max_vertices && (next_vertex < 2 || rng.gen_bool(0.3));
        if new_vertex || (candidates.is_empty() && next_vertex < max_vertices) {
            cx.push(cx.len() as u64, vec![next_vertex]).unwrap();
            next_vertex += 1;
        } else if let Some(t) = candidates.choose(rng) {
            cx.push(cx.len() as u64, t.clone()).unwrap();
        } else {
            break;
        }
    }
    cx
}

/// A uniformly random order in which every simplex follows its faces.
pub fn random_linear_extension<R: Rng>(rng: &mut R, cx: &SimplicialComplex) -> Vec<usize> {
    let mut placed = vec![false; cx.len()];
    let mut order = Vec::with_capacity(cx.len());
    while order.len() < cx.len() {
        let ready: Vec<usize> = (0..cx.len())
            .filter(|&k| {
                !placed[k] && cx.facets(k).iter().all(|(f, _)| f.is_some_and(|f| placed[f]))
            })
            .collect();
        let &k = ready.choose(rng).expect("complex is closed");
        placed[k] = true;
        order.push(k);
    }
    order
}

/// A random 1-filtration adding one simplex per step.
pub fn random_one_filtration<R: Rng>(
    rng: &mut R,
    m: usize,
    max_dim: usize,
) -> (SimplicialComplex, OneFiltration) {
    let cx = random_complex(rng, m, max_dim, 6);
    let order = random_linear_extension(rng, &cx);
    let f = OneFiltration {
        len: order.len() as u32,
        order: order.into_iter().enumerate().map(|(s, k)| (k, s as u32 + 1)).collect(),
    };
    (cx, f)
}

/// Places the `s`-th simplex of a 1-filtration at `(s, s)`.
pub fn diagonal(cx: &SimplicialComplex, f: &OneFiltration) -> Bifiltration {
    let mut curves = vec![AppearanceCurve::new(Vec::new()); cx.len()];
    for &(k, s) in &f.order {
        curves[k] = AppearanceCurve::new(vec![Grade::new(s, s)]);
    }
    Bifiltration::new(cx.clone(), curves, Grid::square(f.len))
}

/// `k` distinct sorted values from `1..=n`.
fn sorted_sample<R: Rng>(rng: &mut R, n: u32, k: usize) -> Vec<u32> {
    let mut v = rand::seq::index::sample(rng, n as usize, k).into_vec();
    v.sort_unstable();
    v.into_iter().map(|x| x as u32 + 1).collect()
}

/// A 1-critical instance whose grades form a chain: both coordinates
/// increase along one filtration order, on an `n` by `n` grid.
pub fn totally_nested<R: Rng>(rng: &mut R, m: usize, n: u32, max_dim: usize) -> Bifiltration {
    let cx = random_complex(rng, m, max_dim, 8);
    let order = random_linear_extension(rng, &cx);
    let xs = sorted_sample(rng, n, cx.len());
    let ys = sorted_sample(rng, n, cx.len());
    let mut curves = vec![AppearanceCurve::new(Vec::new()); cx.len()];
    for (s, &k) in order.iter().enumerate() {
        curves[k] = AppearanceCurve::new(vec![Grade::new(xs[s], ys[s])]);
    }
    Bifiltration::new(cx, curves, Grid::square(n))
}

/// A non-degenerate 1-critical instance on an `n` by `n` grid: x and y
/// coordinates follow two independent random linear extensions.
pub fn one_critical<R: Rng>(rng: &mut R, m: usize, n: u32, max_dim: usize) -> Bifiltration {
    let cx = random_complex(rng, m, max_dim, 12);
    let ox = random_linear_extension(rng, &cx);
    let oy = random_linear_extension(rng, &cx);
    let xs = sorted_sample(rng, n, cx.len());
    let ys = sorted_sample(rng, n, cx.len());
    let mut g = vec![Grade::default(); cx.len()];
    for (s, &k) in ox.iter().enumerate() {
        g[k].x = xs[s];
    }
    for (s, &k) in oy.iter().enumerate() {
        g[k].y = ys[s];
    }
    let curves = g.into_iter().map(|c| AppearanceCurve::new(vec![c])).collect();
    Bifiltration::new(cx, curves, Grid::square(n))
}

/// A valid, usually degenerate instance on a small tight grid. Simplices get
/// up to `max_corners` lower corners; the coarse coordinates are drawn from
/// `1..=coarse`, then unused coordinates are squeezed out.
pub fn random_bifiltration<R: Rng>(
    rng: &mut R,
    m: usize,
    max_dim: usize,
    max_corners: usize,
    coarse: u32,
) -> Bifiltration {
    let cx = random_complex(rng, m, max_dim, 5);
    let mut by_dim: Vec<usize> = (0..cx.len()).collect();
    by_dim.sort_by_key(|&k| cx.dim(k));
    let mut corners: Vec<Vec<Grade>> = vec![Vec::new(); cx.len()];
    for &k in &by_dim {
        let count = rng.gen_range(1..=max_corners);
        let mut cs: Vec<Grade> = Vec::new();
        for _ in 0..count {
            let mut g = Grade::new(rng.gen_range(1..=coarse), rng.gen_range(1..=coarse));
            for (f, _) in cx.facets(k) {
                let fc = &corners[f.unwrap()];
                g = g.join(*fc.choose(rng).unwrap());
            }
            cs.push(g);
        }
        cs.sort();
        cs.dedup();
        let minimal: Vec<Grade> =
            cs.iter().copied().filter(|&c| !cs.iter().any(|&d| d != c && d.leq(c))).collect();
        corners[k] = minimal;
    }
    tighten(cx, corners)
}

/// Drops grid coordinates that host no corner, keeping the order.
fn tighten(cx: SimplicialComplex, corners: Vec<Vec<Grade>>) -> Bifiltration {
    let rank = |sel: fn(&Grade) -> u32| {
        let mut v: Vec<u32> = corners.iter().flatten().map(sel).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let xs = rank(|g| g.x);
    let ys = rank(|g| g.y);
    let at = |v: &[u32], c: u32| v.binary_search(&c).unwrap() as u32 + 1;
    let curves = corners
        .iter()
        .map(|cs| AppearanceCurve::new(cs.iter().map(|g| Grade::new(at(&xs, g.x), at(&ys, g.y))).collect()))
        .collect();
    Bifiltration::new(cx, curves, Grid { nx: xs.len() as u32, ny: ys.len() as u32 })
}

/// A uniformly random monotone path across an `n` by `n` grid.
pub fn random_path<R: Rng>(rng: &mut R, n: u32) -> Path {
    let mut steps: Vec<Step> =
        (0..2 * n).map(|k| if k < n { Step::Right } else { Step::Up }).collect();
    steps.shuffle(rng);
    Path::new(steps)
}

/// An instance as drawn and its non-degenerate square refinement.
#[derive(Clone, Debug)]
pub struct Instance {
    pub raw: Bifiltration,
    pub refined: Bifiltration,
    /// From the refined grid onto the raw one.
    pub map: CeilingMap,
}

/// Half 1-critical, half multi-critical, at most `max_m` simplices of
/// dimension at most `max_dim`, refined grid side at most `max_n`.
pub fn mixed_instance<R: Rng>(rng: &mut R, max_m: usize, max_dim: usize, max_n: u32) -> Instance {
    loop {
        let m = rng.gen_range(1..=max_m);
        let raw = if rng.gen_bool(0.5) {
            let n = rng.gen_range(m as u32..=max_n.max(m as u32));
            one_critical(rng, m, n, max_dim)
        } else {
            let corners = rng.gen_range(2..=3);
            let coarse = rng.gen_range(3..=6);
            random_bifiltration(rng, m, max_dim, corners, coarse)
        };
        let square = raw.grid.nx == raw.grid.ny;
        let (refined, map) = if square && is_nondegenerate(&raw) {
            (raw.clone(), CeilingMap::identity(raw.grid.nx, raw.grid.ny))
        } else {
            match refine_to_nondegenerate(&raw) {
                Ok(r) => r,
                Err(_) => continue,
            }
        };
        if refined.grid.nx <= max_n {
            return Instance { raw, refined, map };
        }
    }
}
