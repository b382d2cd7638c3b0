use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl2tile::annulus::{
    canonical_form, crosses, ear_insertions, ears, enumerate_bridging, fan_triangulation, insert_ear,
    is_triangulation, remove_ear, with_ear_insertions, Arc, Boundary, MarkedAnnulus, Triangulation,
};
use sl2tile::oracle::random_triangulation;

fn arb_triangulation() -> impl Strategy<Value = Triangulation> {
    (1i64..=4, 1i64..=4, 0usize..=3, any::<u64>()).prop_map(|(m, n, ears, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_triangulation(&mut rng, m, n, ears)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_triangulations_are_valid(t in arb_triangulation()) {
        prop_assert_eq!(t.arcs().len() as i64, t.m() + t.n());
        prop_assert!(is_triangulation(t.arcs(), t.annulus()));
    }

    #[test]
    fn ear_surgery_round_trips(t in arb_triangulation()) {
        for (b, i) in ears(&t) {
            if t.annulus().points_on(b) < 2 {
                continue;
            }
            let (smaller, rec) = remove_ear(&t, b, i).unwrap();
            prop_assert!(is_triangulation(smaller.arcs(), smaller.annulus()));
            prop_assert_eq!(insert_ear(&smaller, &rec).unwrap(), t.clone());
        }
        for (rec, bigger) in ear_insertions(&t) {
            prop_assert!(ears(&bigger).contains(&(rec.boundary, rec.removed_vertex_index)));
            let (back, rec2) = remove_ear(&bigger, rec.boundary, rec.removed_vertex_index).unwrap();
            prop_assert_eq!(back, t.clone());
            prop_assert_eq!(rec2, rec);
        }
    }

    #[test]
    fn crossing_is_symmetric_and_twist_invariant(t in arb_triangulation(), k in -3i64..3) {
        let twisted = t.dehn_twist(k);
        prop_assert!(is_triangulation(twisted.arcs(), twisted.annulus()));
        prop_assert_eq!(twisted.dehn_twist(-k), t.clone());
        for a in t.arcs() {
            for b in t.arcs() {
                prop_assert_eq!(crosses(a, b, t.annulus()), crosses(b, a, t.annulus()));
            }
        }
    }

    #[test]
    fn rotation_preserves_validity(t in arb_triangulation(), s in -5i64..5) {
        for b in [Boundary::P, Boundary::Q] {
            let r = t.rotate(b, s);
            prop_assert!(is_triangulation(r.arcs(), r.annulus()));
            prop_assert_eq!(r.rotate(b, -s), t.clone());
        }
    }

    #[test]
    fn json_round_trips(t in arb_triangulation()) {
        let back: Triangulation = serde_json::from_str(&serde_json::to_string(&t).unwrap()).unwrap();
        prop_assert_eq!(back, t);
    }
}

/// An ear exists exactly where a boundary point has degree zero, checked on
/// every triangulation reachable with small twists and one ear insertion.
#[test]
fn ears_are_the_isolated_points() {
    for m in 1..=3 {
        for n in 1..=3 {
            let family = with_ear_insertions(&enumerate_bridging(m, n, -1, 1).unwrap(), 2);
            for t in family {
                for b in [Boundary::P, Boundary::Q] {
                    for i in 0..t.annulus().points_on(b) {
                        let is_ear = ears(&t).contains(&(b, i));
                        assert_eq!(is_ear, t.degree(b, i) == 0, "{t} at {b:?}{i}");
                    }
                }
            }
        }
    }
}

#[test]
fn small_enumerations() {
    assert_eq!(enumerate_bridging(1, 1, 0, 0).unwrap().len(), 2);
    assert_eq!(enumerate_bridging(2, 1, 0, 0).unwrap().len(), 3);
    for (m, n) in [(1, 1), (2, 3), (3, 2)] {
        let all = enumerate_bridging(m, n, -2, 2).unwrap();
        assert!(all.iter().all(|t| t.is_all_bridging() && canonical_form(t) == *t));
        let mut sorted = all.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
    }
}

#[test]
fn invalid_input_is_rejected() {
    let a = MarkedAnnulus::new(2, 2).unwrap();
    assert!(Triangulation::new(a, vec![Arc::bridging(0, 0)]).is_err());
    assert!(Triangulation::new(a, vec![Arc::bridging(0, 0), Arc::bridging(1, -3), Arc::bridging(0, 1), Arc::bridging(1, 1)]).is_err());
    assert!(Arc::peripheral(Boundary::P, 0, 1).validate(&a).is_err());
    let fan = fan_triangulation(2, 2).unwrap();
    assert!(remove_ear(&fan, Boundary::P, 0).is_err());
}
