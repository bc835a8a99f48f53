use bigraded_pd::generate::{mixed_instance, one_critical, random_path, totally_nested};
use bigraded_pd::oracle::{brute_diagram, diagram_1d, zb_tables, ZbOracle};
use bigraded_pd::{
    path_galois, restrict_to_path, sweep, zeta_integrate, Bifiltration, Error, Field, Grade, Grid,
    SignedDiagram, SweepOptions,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fields() -> [Field; 3] {
    [Field::GF2, Field::new(3).unwrap(), Field::new(7).unwrap()]
}

fn checked(b: &Bifiltration, field: Field) -> SignedDiagram {
    sweep(b, &SweepOptions { field, check: true }).unwrap().0
}

#[test]
fn mixed_instances_match_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..120 {
        let inst = mixed_instance(&mut rng, 9, 2, 10);
        for field in fields() {
            let got = checked(&inst.refined, field);
            let want = brute_diagram(&inst.refined, field);
            assert_eq!(got.first_difference(&want), None);
        }
    }
}

#[test]
fn sparse_rows_and_columns() {
    // grids larger than the corner count leave empty rows and columns
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let b = one_critical(&mut rng, 7, 11, 2);
        let got = checked(&b, Field::GF2);
        assert_eq!(got.first_difference(&brute_diagram(&b, Field::GF2)), None);
    }
}

#[test]
fn zeta_integral_reproduces_birth_death() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..40 {
        let inst = mixed_instance(&mut rng, 8, 2, 9);
        let b = &inst.refined;
        let dg = checked(b, Field::GF2);
        let o = ZbOracle::for_bifiltration(b, Field::GF2);
        for (d, zb) in zb_tables(&o) {
            assert_eq!(zeta_integrate(&dg.dimension(d), b.grid), zb, "dimension {d}");
        }
    }
}

#[test]
fn pushforward_along_paths_gives_the_restricted_diagram() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let inst = mixed_instance(&mut rng, 8, 2, 9);
        let b = &inst.refined;
        let n = b.grid.nx;
        let dg = checked(b, Field::GF2);
        for _ in 0..10 {
            let p = random_path(&mut rng, n);
            let f = restrict_to_path(b, &p).unwrap();
            let chain = Grid::chain(p.len() as u32);
            let pushed = dg.pushforward(chain, |g| Grade::new(path_galois(&p, g), 0));
            let want = diagram_1d(&b.complex, &f, Field::GF2);
            assert_eq!(pushed.first_difference(&want), None);
        }
    }
}

#[test]
fn refinement_pushes_forward_to_the_coarse_diagram() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..60 {
        let inst = mixed_instance(&mut rng, 8, 2, 10);
        let dg = checked(&inst.refined, Field::GF2);
        let pushed = dg.pushforward(inst.raw.grid, |g| inst.map.apply(g));
        let want = brute_diagram(&inst.raw, Field::GF2);
        assert_eq!(pushed.first_difference(&want), None);
    }
}

#[test]
fn totally_nested_support_is_the_pairing() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..40 {
        let b = totally_nested(&mut rng, 12, 14, 2);
        let dg = checked(&b, Field::GF2);
        let o = ZbOracle::for_bifiltration(&b, Field::GF2);
        assert_eq!(dg, o.diagram());
        let chain: Vec<usize> = b.complex.simplices().iter().map(|s| s.dim()).collect();
        assert!(dg.iter().all(|(_, _, v)| v == 1));
        assert_eq!(dg.support_size(), chain.len() - pairs_of(&b));
    }
}

/// Simplices minus paired simplices: one interval per pair or essential class.
fn pairs_of(b: &Bifiltration) -> usize {
    use bigraded_pd::matrix::reduce_filtration;
    let p = bigraded_pd::Path::left_top(b.grid.nx);
    let f = restrict_to_path(b, &p).unwrap();
    let rv = reduce_filtration(&b.complex, &f, &Field::GF2).unwrap();
    rv.pairs().0.len()
}

#[test]
fn degenerate_input_is_rejected() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut seen = false;
    for _ in 0..50 {
        let b = bigraded_pd::generate::random_bifiltration(&mut rng, 6, 1, 2, 3);
        if !bigraded_pd::is_nondegenerate(&b) {
            assert!(matches!(sweep(&b, &SweepOptions::default()), Err(Error::Degenerate)));
            seen = true;
        }
    }
    assert!(seen);
}

/// A random monotone path on the `n` grid using every unit step in `edges`,
/// given in path order as (start grade, direction).
fn path_through(rng: &mut ChaCha8Rng, n: u32, edges: &[(Grade, bigraded_pd::Step)]) -> bigraded_pd::Path {
    use bigraded_pd::Step;
    use rand::seq::SliceRandom;
    let mut steps = Vec::new();
    let mut cur = Grade::new(0, 0);
    let mut hop = |steps: &mut Vec<Step>, from: Grade, to: Grade| {
        let mut seg: Vec<Step> = std::iter::repeat_n(Step::Right, (to.x - from.x) as usize)
            .chain(std::iter::repeat_n(Step::Up, (to.y - from.y) as usize))
            .collect();
        seg.shuffle(rng);
        steps.extend(seg);
    };
    for &(start, dir) in edges {
        hop(&mut steps, cur, start);
        steps.push(dir);
        cur = match dir {
            Step::Right => Grade::new(start.x + 1, start.y),
            Step::Up => Grade::new(start.x, start.y + 1),
        };
    }
    hop(&mut steps, cur, Grade::new(n, n));
    bigraded_pd::Path::new(steps)
}

#[test]
fn pairs_persist_across_paths_sharing_their_steps() {
    use bigraded_pd::matrix::reduce_filtration;
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut checked = 0;
    for _ in 0..60 {
        let inst = mixed_instance(&mut rng, 8, 2, 9);
        let b = &inst.refined;
        let n = b.grid.nx;
        let p = random_path(&mut rng, n);
        let f = restrict_to_path(b, &p).unwrap();
        let step_of = |f: &bigraded_pd::OneFiltration, k: usize| f.order.iter().find(|e| e.0 == k).unwrap().1;
        let rv = reduce_filtration(&b.complex, &f, &Field::GF2).unwrap();
        for (s, t) in rv.pairs().0 {
            let edge = |k: usize| {
                let i = step_of(&f, k) as usize;
                (p.points()[i - 1], p.steps()[i - 1])
            };
            let mut edges = vec![edge(s), edge(t)];
            edges.sort_by_key(|e| (e.0.x + e.0.y, e.0.x));
            for _ in 0..3 {
                let q = path_through(&mut rng, n, &edges);
                let g = restrict_to_path(b, &q).unwrap();
                let other = reduce_filtration(&b.complex, &g, &Field::GF2).unwrap();
                assert!(other.pairs().0.contains(&(s, t)));
                checked += 1;
            }
        }
    }
    assert!(checked > 100);
}
