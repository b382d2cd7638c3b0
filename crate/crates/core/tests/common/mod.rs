#![allow(dead_code)]

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sl2tile::annulus::{enumerate_bridging, fan_triangulation, with_ear_insertions};
use sl2tile::bijection::{extend_seed, tiling_from_triangulation, LatticePath};
use sl2tile::catalog;
use sl2tile::oracle::random_triangulation;
use sl2tile::tiling::{PeriodicTiling, Position};

pub fn fibonacci() -> PeriodicTiling {
    tiling_from_triangulation(&catalog::annulus_1_1()).unwrap()
}

pub fn example_3_2() -> PeriodicTiling {
    tiling_from_triangulation(&catalog::annulus_3_2()).unwrap()
}

/// Named tilings covering every construction route: catalog examples, a
/// non-unit seed, fans, ear insertions and seeded random triangulations.
pub fn test_tilings() -> Vec<(String, PeriodicTiling)> {
    let mut out = vec![("fibonacci".to_string(), fibonacci()), ("A(3,2) example".to_string(), example_3_2())];
    let seed = LatticePath::from_i64(1, 1, Position::new(0, 0), "RU", &[1, 2, 1]).unwrap();
    out.push(("seed 1,2,1".into(), extend_seed(&seed).unwrap()));
    for (m, n) in [(1, 2), (2, 2), (3, 2), (2, 3), (3, 3)] {
        out.push((format!("fan A({m},{n})"), tiling_from_triangulation(&fan_triangulation(m, n).unwrap()).unwrap()));
    }
    let base = enumerate_bridging(2, 1, 1, 1).unwrap();
    for t in with_ear_insertions(&base, 1).into_iter().filter(|t| !t.is_all_bridging()).take(3) {
        out.push((format!("ear {t}"), tiling_from_triangulation(&t).unwrap()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..6 {
        let (m, n) = (1 + k % 3, 1 + (k / 3) % 3 + k % 2);
        let t = random_triangulation(&mut rng, m, n, 2);
        out.push((format!("random {t}"), tiling_from_triangulation(&t).unwrap()));
    }
    out
}
