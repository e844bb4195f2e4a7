use biobj_bench::indicator::{dominates, hypervolume, normalize, Archive, ObjectivePair};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand::rngs::StdRng as Rng64;

fn pair() -> impl Strategy<Value = ObjectivePair> {
    (0.0f64..1.2, 0.0f64..1.2).prop_map(|(a, b)| ObjectivePair::new(a, b))
}

fn monte_carlo(points: &[ObjectivePair], n: usize, seed: u64) -> (f64, f64) {
    let mut rng = Rng64::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..n {
        let (u, v): (f64, f64) = (rng.gen(), rng.gen());
        if points.iter().any(|p| p.a <= u && p.b <= v) {
            hits += 1;
        }
    }
    let p = hits as f64 / n as f64;
    (p, (p * (1.0 - p) / n as f64).sqrt())
}

#[test]
fn hypervolume_matches_monte_carlo() {
    let mut rng = Rng64::seed_from_u64(77);
    for set in 0..10 {
        let n = rng.gen_range(1..=8);
        let pts: Vec<ObjectivePair> = (0..n).map(|_| ObjectivePair::new(rng.gen(), rng.gen())).collect();
        let exact = hypervolume(&pts, &ObjectivePair::new(1.0, 1.0));
        let (est, se) = monte_carlo(&pts, 200_000, set);
        assert!((exact - est).abs() <= 3.0 * se + 1e-12, "set {set}: {exact} vs {est} ± {se}");
    }
}

#[test]
fn hypervolume_edge_cases() {
    let r = ObjectivePair::new(1.0, 1.0);
    assert_eq!(hypervolume(&[], &r), 0.0);
    assert_eq!(hypervolume(&[ObjectivePair::new(1.0, 0.0)], &r), 0.0);
    assert_eq!(hypervolume(&[ObjectivePair::new(1.5, -3.0)], &r), 0.0);
    assert_eq!(hypervolume(&[ObjectivePair::new(0.0, 0.0)], &r), 1.0);
}

proptest! {
    #[test]
    fn hypervolume_ignores_order_and_duplicates(pts in prop::collection::vec(pair(), 0..12), rot in 0usize..12) {
        let r = ObjectivePair::new(1.0, 1.0);
        let base = hypervolume(&pts, &r);
        let mut shuffled = pts.clone();
        if !shuffled.is_empty() {
            let k = rot % shuffled.len();
            shuffled.rotate_left(k);
            shuffled.reverse();
            shuffled.push(shuffled[0]);
        }
        prop_assert!((base - hypervolume(&shuffled, &r)).abs() <= 1e-12);
        prop_assert!((0.0..=1.0).contains(&base));
    }

    #[test]
    fn hypervolume_monotone_under_addition(pts in prop::collection::vec(pair(), 0..10), extra in pair()) {
        let r = ObjectivePair::new(1.0, 1.0);
        let mut more = pts.clone();
        more.push(extra);
        prop_assert!(hypervolume(&more, &r) >= hypervolume(&pts, &r) - 1e-15);
    }

    #[test]
    fn dominance_is_a_strict_partial_order(u in pair(), v in pair(), w in pair()) {
        prop_assert!(!dominates(&u, &u));
        prop_assert!(!(dominates(&u, &v) && dominates(&v, &u)));
        if dominates(&u, &v) && dominates(&v, &w) {
            prop_assert!(dominates(&u, &w));
        }
    }

    #[test]
    fn normalization_is_scale_and_shift_invariant(
        ya in -50.0f64..50.0, yb in -50.0f64..50.0,
        ia in -10.0f64..0.0, ib in -10.0f64..0.0,
        span_a in 0.5f64..20.0, span_b in 0.5f64..20.0,
        s in 0.01f64..100.0, t in -100.0f64..100.0,
    ) {
        let y = ObjectivePair::new(ya, yb);
        let ideal = ObjectivePair::new(ia, ib);
        let nadir = ObjectivePair::new(ia + span_a, ib + span_b);
        let f = |p: &ObjectivePair| ObjectivePair::new(s * p.a + t, s * p.b + t);
        let n1 = normalize(&y, &ideal, &nadir).unwrap();
        let n2 = normalize(&f(&y), &f(&ideal), &f(&nadir)).unwrap();
        prop_assert!((n1.a - n2.a).abs() <= 1e-12 * (1.0 + n1.a.abs()));
        prop_assert!((n1.b - n2.b).abs() <= 1e-12 * (1.0 + n1.b.abs()));
    }

    #[test]
    fn archive_stays_mutually_nondominated(pts in prop::collection::vec((-0.5f64..1.5, -0.5f64..1.5), 1..60)) {
        let mut ar = Archive::new(ObjectivePair::new(0.0, 0.0), ObjectivePair::new(1.0, 1.0)).unwrap();
        let mut last = 0.0;
        for (i, (a, b)) in pts.iter().enumerate() {
            ar.insert(vec![i as f64], ObjectivePair::new(*a, *b));
            prop_assert!(ar.hv() >= last);
            last = ar.hv();
        }
        let e = ar.entries();
        for i in 0..e.len() {
            for j in 0..e.len() {
                if i != j {
                    prop_assert!(!dominates(&e[i].y, &e[j].y));
                    prop_assert!(e[i].y != e[j].y);
                }
            }
        }
        prop_assert!((ar.hv() - ar.recompute_hv()).abs() <= 1e-12);
    }
}

#[test]
fn degenerate_normalization_is_rejected() {
    let p = ObjectivePair::new(1.0, 1.0);
    assert!(normalize(&p, &p, &ObjectivePair::new(1.0, 2.0)).is_err());
    assert!(Archive::new(ObjectivePair::new(0.0, 0.0), ObjectivePair::new(-1.0, 1.0)).is_err());
}
