//! Named example triangulations.

use crate::annulus::{Arc, Boundary, MarkedAnnulus, Triangulation};

/// The triangulation of `A(1,1)`; its tiling is the Fibonacci tiling.
pub fn annulus_1_1() -> Triangulation {
    let a = MarkedAnnulus::new(1, 1).expect("positive periods");
    Triangulation::new(a, vec![Arc::bridging(0, 0), Arc::bridging(0, 1)]).expect("valid triangulation")
}

/// A triangulation of `A(3,2)` whose tiling has quiddities `(7,1,2)` and
/// `(2,3)` and growth 4: three arcs from `P0` to the inner boundary, an ear
/// at `P1` and a loop from `P0` around the outer boundary.
pub fn annulus_3_2() -> Triangulation {
    let a = MarkedAnnulus::new(3, 2).expect("positive periods");
    Triangulation::new(
        a,
        vec![
            Arc::bridging(0, -1),
            Arc::bridging(0, 0),
            Arc::bridging(0, 1),
            Arc::peripheral(Boundary::P, 0, 2),
            Arc::peripheral(Boundary::P, 0, 3),
        ],
    )
    .expect("valid triangulation")
}
