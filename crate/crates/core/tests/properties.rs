use std::collections::BTreeMap;

use bigraded_pd::generate::{mixed_instance, random_one_filtration};
use bigraded_pd::matrix::{reduce, reduce_filtration, BoundaryMatrix, RVDecomposition};
use bigraded_pd::oracle::brute_diagram;
use bigraded_pd::staircase::{meet_grades, Corner, Staircase};
use bigraded_pd::vineyard::transpose;
use bigraded_pd::{
    mobius_2d, mobius_invert, sweep, zeta_integrate, Field, Grade, Grid, Interval, SweepOptions,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn interval_function(n: u32) -> impl Strategy<Value = BTreeMap<Interval, i64>> {
    let grid = Grid::square(n);
    let all: Vec<Interval> = grid.intervals().collect();
    prop::collection::vec((0..all.len(), -3i64..=3), 0..12).prop_map(move |es| {
        let mut f = BTreeMap::new();
        for (k, v) in es {
            if v != 0 {
                f.insert(all[k], v);
            }
        }
        f
    })
}

fn fresh(rv: &RVDecomposition) -> (Vec<(usize, usize)>, Vec<usize>) {
    let bm = BoundaryMatrix { columns: rv.d.clone(), dims: rv.dims.clone(), order: rv.order.clone() };
    reduce(&bm, &rv.field).pairs()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn zeta_then_mobius_is_identity(g in interval_function(3)) {
        let grid = Grid::square(3);
        prop_assert_eq!(mobius_invert(&zeta_integrate(&g, grid), grid), g);
    }

    #[test]
    fn mobius_sums_to_delta(i in 0usize..100, j in 0usize..100) {
        let grid = Grid::square(2);
        let all: Vec<Interval> = grid.intervals().collect();
        let (ab, cd) = (all[i % all.len()], all[j % all.len()]);
        if ab.leq(&cd) {
            let s: i64 = all.iter().filter(|x| ab.leq(x) && x.leq(&cd)).map(|x| mobius_2d(&ab, x)).sum();
            prop_assert_eq!(s, i64::from(ab == cd));
        }
    }

    #[test]
    fn meets_are_intersections(
        a in prop::collection::vec((0u32..6, 0u32..6), 1..4),
        b in prop::collection::vec((0u32..6, 0u32..6), 1..4),
    ) {
        let st = |v: &[(u32, u32)]| Staircase::from_corners(v.iter().map(|&(x, y)| Corner {
            grade: Grade::new(x, y),
            z: Default::default(),
            v: Default::default(),
        }).collect());
        let (sa, sb) = (st(&a), st(&b));
        let ga: Vec<Grade> = sa.lower().collect();
        let gb: Vec<Grade> = sb.lower().collect();
        let m = meet_grades(&ga, &gb);
        let sm = st(&m.iter().map(|g| (g.x, g.y)).collect::<Vec<_>>());
        prop_assert!(sm.is_well_formed());
        for x in 0..7 {
            for y in 0..7 {
                let g = Grade::new(x, y);
                prop_assert_eq!(sm.contains(g), sa.contains(g) && sb.contains(g));
            }
        }
    }

    #[test]
    fn transpositions_match_fresh_reduction(
        seed in any::<u64>(),
        p in prop::sample::select(vec![2u32, 3, 5]),
        swaps in prop::collection::vec(0usize..64, 1..30),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (cx, f) = random_one_filtration(&mut rng, 12, 2);
        let field = Field::new(p).unwrap();
        let mut rv = reduce_filtration(&cx, &f, &field).unwrap();
        let real = rv.len();
        for k in swaps {
            if real < 2 {
                break;
            }
            let k = k % (real - 1);
            if transpose(&mut rv, k).is_ok() {
                prop_assert_eq!(rv.check(), Ok(()));
                prop_assert_eq!(rv.pairs(), fresh(&rv));
            }
        }
    }

    #[test]
    fn sweep_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = mixed_instance(&mut rng, 7, 2, 8);
        let field = Field::new(3).unwrap();
        let (got, _) = sweep(&inst.refined, &SweepOptions { field, check: true }).unwrap();
        prop_assert_eq!(got, brute_diagram(&inst.refined, field));
    }
}
