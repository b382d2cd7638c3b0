mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl2tile::bijection::tiling_from_triangulation;
use sl2tile::oracle::random_triangulation;
use sl2tile::tiling::{detect_periods, detect_translations, verify_window, Bounds, PeriodicTiling, Position, Walk, Window};
use sl2tile::Execution;

fn arb_tiling() -> impl Strategy<Value = PeriodicTiling> {
    (1i64..=3, 1i64..=3, 0usize..=2, any::<u64>()).prop_map(|(m, n, ears, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        tiling_from_triangulation(&random_triangulation(&mut rng, m, n, ears)).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn windows_satisfy_every_condition(t in arb_tiling(), i0 in -20i64..20, j0 in -20i64..20) {
        let w = t.window(Bounds::new(i0, i0 + 11, j0, j0 + 11).unwrap()).unwrap();
        let rep = verify_window(&w, t.m(), t.n());
        prop_assert!(rep.all_pass(), "{:?}", rep);
    }

    #[test]
    fn entries_are_periodic(t in arb_tiling(), i in -30i64..30, j in -30i64..30, k in -4i64..4) {
        let p = Position::new(i, j);
        prop_assert_eq!(t.entry(p).unwrap(), t.entry(p.shifted(k * t.m(), k * t.n())).unwrap());
    }

    #[test]
    fn both_recurrences_agree(t in arb_tiling(), i in -25i64..25, j in -25i64..25) {
        let p = Position::new(i, j);
        let v = t.entry_by(p, Walk::Vertical).unwrap();
        prop_assert_eq!(&v, &t.entry_by(p, Walk::Horizontal).unwrap());
        prop_assert_eq!(v, t.entry(p).unwrap());
    }

    #[test]
    fn sequential_and_parallel_windows_match(t in arb_tiling()) {
        let b = Bounds::new(-7, 7, -9, 5).unwrap();
        prop_assert_eq!(t.window_with(b, Execution::Sequential).unwrap(), t.window_with(b, Execution::Parallel).unwrap());
    }

    #[test]
    fn window_json_round_trips(t in arb_tiling()) {
        let w = t.window(Bounds::new(-3, 4, -2, 6).unwrap()).unwrap();
        let back: Window = serde_json::from_str(&serde_json::to_string(&w).unwrap()).unwrap();
        prop_assert_eq!(w, back);
    }

    #[test]
    fn own_period_is_detected(t in arb_tiling()) {
        // ear insertions can push a period up to 5
        let w = t.window(Bounds::new(-10, 10, -10, 10).unwrap()).unwrap();
        prop_assert!(detect_periods(&w, 6).unwrap().contains(&(t.m(), t.n())));
        prop_assert!(detect_translations(&w, 6).contains(&(t.m(), t.n())));
    }

    #[test]
    fn seed_rebuilds_the_tiling(t in arb_tiling()) {
        let again = PeriodicTiling::from_seed(t.seed()).unwrap();
        prop_assert_eq!(&again, &t);
    }
}

#[test]
fn fibonacci_rows_are_shifted_bisections() {
    let t = common::fibonacci();
    let w = t.window(Bounds::new(0, 1, 0, 1).unwrap()).unwrap();
    assert_eq!(w, Window::from_i64_rows(0, 0, &[&[1, 1], &[2, 1]]).unwrap().with_periods(1, 1));
    for i in -3..=3 {
        for j in -3..=3 {
            let p = Position::new(i, j);
            assert_eq!(t.entry(p).unwrap(), t.entry(Position::new(0, j - i)).unwrap());
        }
    }
}

#[test]
fn text_and_bounds_parsing() {
    let b: Bounds = "-1,1,0,2".parse().unwrap();
    assert_eq!((b.i_min, b.i_max, b.j_min, b.j_max), (-1, 1, 0, 2));
    assert!("1,0,0,0".parse::<Bounds>().is_err());
    assert!("1,2,3".parse::<Bounds>().is_err());
    let w = common::fibonacci().window(b).unwrap();
    assert_eq!(w.to_text().lines().count(), 4);
    assert!(w.to_text().starts_with("# m=1 n=1 origin=(-1,0)"));
}

#[test]
fn broken_tables_are_reported() {
    let w = Window::from_i64_rows(0, 0, &[&[1, 1, 2], &[1, 2, 1], &[5, 2, 1]]).unwrap();
    let rep = verify_window(&w, 1, 1);
    assert!(!rep.all_pass());
    let mut rows: Vec<Vec<BigInt>> = common::fibonacci().window(Bounds::new(0, 3, 0, 3).unwrap()).unwrap().rows_bottom_up().to_vec();
    rows[2][2] += 1;
    let rep = verify_window(&Window::from_rows(0, 0, rows).unwrap(), 1, 1);
    assert!(!rep.all_pass());
}
