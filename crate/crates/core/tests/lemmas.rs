use bigraded_pd::generate::{diagonal, mixed_instance, random_one_filtration};
use bigraded_pd::oracle::{check_square_identities, diagram_1d, ZbOracle};
use bigraded_pd::{sweep, Field, Grade, Interval, SweepOptions};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn square_identities_hold_on_sweep_output() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut switches = 0;
    for _ in 0..40 {
        let inst = mixed_instance(&mut rng, 8, 2, 8);
        let b = &inst.refined;
        let (dg, stats) = sweep(b, &SweepOptions { field: Field::GF2, check: true }).unwrap();
        switches += stats.switches;
        let o = ZbOracle::for_bifiltration(b, Field::GF2);
        let rep = check_square_identities(&o, &dg);
        assert!(rep.failures.is_empty(), "{:?}", &rep.failures[..rep.failures.len().min(5)]);
    }
    assert!(switches > 0);
}

#[test]
fn diagonal_embedding_recovers_the_barcode() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for _ in 0..30 {
        let (cx, f) = random_one_filtration(&mut rng, 16, 2);
        let b = diagonal(&cx, &f);
        let (dg, _) = sweep(&b, &SweepOptions::default()).unwrap();
        let bars = diagram_1d(&cx, &f, Field::GF2);
        let lift = |t: u32| Grade::new(t, t);
        for (d, iv, v) in bars.iter() {
            assert_eq!(v, 1);
            assert_eq!(dg.get(d, &Interval::new(lift(iv.lo.x), lift(iv.hi.x))), 1);
        }
        let on_diagonal = dg.iter().filter(|(_, iv, _)| iv.lo.x == iv.lo.y && iv.hi.x == iv.hi.y);
        assert_eq!(on_diagonal.count(), bars.support_size());
    }
}
