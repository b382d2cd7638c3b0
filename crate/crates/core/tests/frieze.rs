mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use sl2tile::frieze::{
    col_quiddity, frieze_entry_from_tiling_at, frieze_from_quiddity, growth_at, growth_from_frieze_at, monodromy,
    quiddity_at, row_quiddity, Matrix2, QuidditySequence, Side,
};
use sl2tile::tiling::Position;
use sl2tile::Error;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn tiling_friezes_are_position_independent(idx in 0usize..17, k in -8i64..8, d in 0i64..10, at in -15i64..15) {
        let tilings = common::test_tilings();
        let (_, t) = &tilings[idx % tilings.len()];
        for side in [Side::Row, Side::Column] {
            let here = frieze_entry_from_tiling_at(t, side, k, k + d, at).unwrap();
            prop_assert_eq!(here, frieze_entry_from_tiling_at(t, side, k, k + d, at + 7).unwrap());
        }
    }

    #[test]
    fn diamond_rule_and_growth(idx in 0usize..17, k in -6i64..6, d in 1i64..8) {
        let tilings = common::test_tilings();
        let (_, t) = &tilings[idx % tilings.len()];
        let f = frieze_from_quiddity(&row_quiddity(t)).unwrap();
        let l = k + d;
        let det = f.entry(k, l).unwrap() * f.entry(k + 1, l + 1).unwrap() - f.entry(k, l + 1).unwrap() * f.entry(k + 1, l).unwrap();
        prop_assert_eq!(det, BigInt::from(1));
        prop_assert_eq!(growth_from_frieze_at(&f, t.m(), k).unwrap(), t.growth());
        prop_assert_eq!(growth_at(t, Position::new(k, d)).unwrap(), t.growth());
    }
}

#[test]
fn quiddities_read_anywhere() {
    for (name, t) in common::test_tilings() {
        for i in -4..4 {
            for j in -4..4 {
                let p = Position::new(i, j);
                assert_eq!(quiddity_at(&t, Side::Row, p).unwrap(), *t.a(i), "{name}");
                assert_eq!(quiddity_at(&t, Side::Column, p).unwrap(), *t.b(j), "{name}");
            }
        }
        let (tr, tc) = (monodromy(&row_quiddity(&t)).trace(), monodromy(&col_quiddity(&t)).trace());
        assert_eq!((tr, tc), (t.growth(), t.growth()), "{name}");
    }
}

#[test]
fn fibonacci_frieze_rows() {
    let f = frieze_from_quiddity(&QuidditySequence::from_i64(&[3]).unwrap()).unwrap();
    let rows = f.rows(5, 0, 3);
    let expect: Vec<Vec<BigInt>> =
        [0, 1, 3, 8, 21].iter().map(|&v| vec![BigInt::from(v); 3]).collect();
    assert_eq!(rows, expect);
    assert!(f.entry(2, 1).is_err());
}

#[test]
fn non_positive_patterns_are_rejected() {
    for q in [&[1][..], &[1, 1, 1], &[1, 2], &[1, 3, 1]] {
        let err = frieze_from_quiddity(&QuidditySequence::from_i64(q).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NonPositiveEntry { .. }), "{q:?}: {err}");
    }
    // trace 2: the pattern grows linearly and stays positive
    assert!(frieze_from_quiddity(&QuidditySequence::from_i64(&[2]).unwrap()).is_ok());
    assert!(QuidditySequence::from_i64(&[]).is_err());
    assert!(QuidditySequence::from_i64(&[2, 0]).is_err());
}

#[test]
fn matrices_and_json() {
    let m = monodromy(&QuidditySequence::from_i64(&[7, 1, 2]).unwrap());
    assert_eq!(m.det(), BigInt::from(1));
    assert_eq!(m.mul(&m.inverse_unimodular()), Matrix2::identity());
    let back: Matrix2 = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
    assert_eq!(back, m);
    let q = QuidditySequence::from_i64(&[7, 1, 2]).unwrap();
    let json = serde_json::to_value(&q).unwrap();
    assert_eq!(json, serde_json::json!({"period": 3, "values": ["7", "1", "2"]}));
    assert_eq!(serde_json::from_value::<QuidditySequence>(json).unwrap(), q);
}
