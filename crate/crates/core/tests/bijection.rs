mod common;

use num_bigint::BigInt;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl2tile::annulus::{canonical_form, enumerate_bridging, fan_triangulation, with_ear_insertions};
use sl2tile::bijection::{
    check_seed, extend_seed, find_unit_staircase, insert_line, reduce, reduction_chain, remove_line,
    tiling_from_triangulation, triangulation_from_tiling, Axis, LatticePath, PointKind, Reduction, Step,
};
use sl2tile::oracle::random_triangulation;
use sl2tile::tiling::{Bounds, Position};
use sl2tile::Error;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn round_trip_through_tilings(m in 1i64..=3, n in 1i64..=3, ears in 0usize..=3, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tri = random_triangulation(&mut rng, m, n, ears);
        let t = tiling_from_triangulation(&tri).unwrap();
        prop_assert_eq!(triangulation_from_tiling(&t).unwrap(), canonical_form(&tri));
    }

    #[test]
    fn line_insertion_inverts_removal(m in 1i64..=3, n in 1i64..=3, seed in any::<u64>(), r in 0i64..4, col in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = tiling_from_triangulation(&random_triangulation(&mut rng, m, n, 1)).unwrap();
        let axis = if col { Axis::Column } else { Axis::Row };
        let period = if col { t.n() } else { t.m() };
        let r = r % (period + 1);
        let bigger = insert_line(&t, axis, r).unwrap();
        let q = if col { bigger.b(r) } else { bigger.a(r) };
        prop_assert!(q.is_one());
        prop_assert_eq!(remove_line(&bigger, axis, r).unwrap(), t);
    }
}

#[test]
fn canonical_seed_values_extend_uniquely() {
    for (name, t) in common::test_tilings() {
        let s = t.seed();
        assert!(check_seed(s).all_pass(), "{name}");
        assert_eq!(extend_seed(s).unwrap(), t, "{name}");
    }
}

#[test]
fn seed_conditions_classify_points() {
    let ok = LatticePath::from_i64(1, 1, Position::new(0, 0), "RU", &[1, 2, 1]).unwrap();
    let rep = check_seed(&ok);
    assert_eq!(rep.conditions.len(), 2);
    assert!(rep.all_pass());
    assert_eq!(extend_seed(&ok).unwrap().growth(), BigInt::from(3));

    let bad = LatticePath::from_i64(1, 1, Position::new(0, 0), "RU", &[2, 3, 2]).unwrap();
    let rep = check_seed(&bad);
    let f: Vec<_> = rep.failures().collect();
    assert_eq!(f.len(), 1);
    assert_eq!(f[0].kind, PointKind::Corner);
    assert_eq!((f[0].numerator.clone(), f[0].denominator.clone()), (BigInt::from(5), BigInt::from(3)));
    assert!(matches!(extend_seed(&bad), Err(Error::PreconditionViolated(_))));

    let straight = LatticePath::from_i64(2, 1, Position::new(0, 0), "UUR", &[1, 1, 1, 1]).unwrap();
    assert!(check_seed(&straight).conditions.iter().any(|c| c.kind == PointKind::Straight));
}

#[test]
fn malformed_seeds_are_rejected() {
    let o = Position::new(0, 0);
    assert!(LatticePath::from_i64(1, 1, o, "RR", &[1, 1, 1]).is_err());
    assert!(LatticePath::from_i64(1, 1, o, "RU", &[1, 1]).is_err());
    assert!(LatticePath::from_i64(1, 1, o, "RU", &[1, 1, 2]).is_err());
    assert!(LatticePath::from_i64(1, 1, o, "RX", &[1, 1, 1]).is_err());
    assert!(LatticePath::from_i64(1, 1, o, "RU", &[1, 0, 1]).is_err());
    assert_eq!(Step::parse_word("rUu").unwrap(), vec![Step::Right, Step::Up, Step::Up]);
}

#[test]
fn path_json_round_trips() {
    let p = LatticePath::from_i64(2, 1, Position::new(3, -1), "URU", &[1, 2, 3, 1]).unwrap();
    let json = serde_json::to_value(&p).unwrap();
    assert_eq!(json["values"][1], "2");
    let back: LatticePath = serde_json::from_value(json).unwrap();
    assert_eq!(back, p);
}

#[test]
fn ear_free_tilings_have_a_unit_staircase() {
    for t in enumerate_bridging(2, 3, -2, 2).unwrap() {
        let tiling = tiling_from_triangulation(&t).unwrap();
        let path = find_unit_staircase(&tiling).unwrap().expect("staircase");
        assert!(path.values().iter().all(One::is_one));
        for p in path.points() {
            assert!(tiling.entry(p).unwrap().is_one());
        }
        assert!(matches!(reduce(&tiling).unwrap(), Reduction::NoPeripheral));
    }
}

#[test]
fn reduction_removes_rows_first() {
    let t = common::example_3_2();
    let Reduction::Reduced(smaller, rec) = reduce(&t).unwrap() else { panic!("has an ear") };
    assert_eq!((rec.axis, rec.index, rec.period), (Axis::Row, 1, 3));
    assert_eq!(smaller.row_quiddity(), [6, 1].map(BigInt::from));
    let (base, chain) = reduction_chain(&t).unwrap();
    assert_eq!(chain.len(), 2);
    assert_eq!((base.m(), base.n()), (1, 2));
    assert!(matches!(remove_line(&t, Axis::Row, 0), Err(Error::NotAnEar { .. })));
    assert!(matches!(remove_line(&common::fibonacci(), Axis::Row, 0), Err(Error::WouldEmptyBoundary(_))));
}

#[test]
fn distinct_triangulations_give_distinct_windows() {
    let family = with_ear_insertions(&enumerate_bridging(2, 2, -2, 2).unwrap(), 1);
    let b = Bounds::new(-9, 9, -9, 9).unwrap();
    let mut seen = std::collections::HashMap::new();
    for tri in family {
        let w = tiling_from_triangulation(&tri).unwrap().window(b).unwrap();
        if let Some(prev) = seen.insert(w.rows_bottom_up().to_vec(), canonical_form(&tri)) {
            assert_eq!(prev, canonical_form(&tri));
        }
    }
}

#[test]
fn fans_reduce_to_the_staircase() {
    for (m, n) in [(1, 2), (3, 3)] {
        let t = tiling_from_triangulation(&fan_triangulation(m, n).unwrap()).unwrap();
        assert_eq!(triangulation_from_tiling(&t).unwrap(), fan_triangulation(m, n).unwrap());
    }
}
