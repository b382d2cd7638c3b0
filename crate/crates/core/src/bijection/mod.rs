//! Tilings from triangulations and back.
//!
//! Ears of a triangulation correspond to quiddity entries equal to 1, and
//! removing an ear removes one family of rows (or columns) of the tiling.
//! Once no ear is left, the arcs form a staircase and the tiling takes the
//! value 1 exactly on it.

mod seed;

pub use seed::*;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::annulus::{insert_ear, remove_ear, staircase_triangulation, Boundary, EarRecord, Triangulation};
use crate::error::{Error, Result};
use crate::tiling::{PeriodicTiling, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Axis {
    Row,
    Column,
}

impl Axis {
    pub fn boundary(self) -> Boundary {
        match self {
            Axis::Row => Boundary::P,
            Axis::Column => Boundary::Q,
        }
    }

    pub fn of(boundary: Boundary) -> Axis {
        match boundary {
            Boundary::P => Axis::Row,
            Boundary::Q => Axis::Column,
        }
    }
}

/// One line family `index + k * period` removed from a tiling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub axis: Axis,
    pub index: i64,
    /// Period along `axis` before the removal.
    pub period: i64,
}

#[derive(Clone, Debug)]
pub enum Reduction {
    Reduced(Box<PeriodicTiling>, ReductionRecord),
    /// No quiddity entry is 1; the tiling has a staircase of 1's.
    NoPeripheral,
}

/// The unique tiling agreeing with a seed whose conditions all hold.
pub fn extend_seed(path: &LatticePath) -> Result<PeriodicTiling> {
    PeriodicTiling::from_seed(path)
}

fn canonical_values<F>(m: i64, n: i64, f: F) -> Result<Vec<BigInt>>
where
    F: Fn(i64, i64) -> Result<BigInt>,
{
    (0..=m).map(|i| f(i, 0)).chain((1..=n).map(|j| f(m, j))).collect()
}

fn along(axis: Axis, x: i64, y: i64) -> Position {
    match axis {
        Axis::Row => Position::new(x, y),
        Axis::Column => Position::new(y, x),
    }
}

/// Inserts the line family `r + k * (period + 1)`, each line the entrywise
/// sum of its two neighbours. Index maps match [`insert_ear`].
pub fn insert_line(t: &PeriodicTiling, axis: Axis, r: i64) -> Result<PeriodicTiling> {
    let small = match axis {
        Axis::Row => t.m(),
        Axis::Column => t.n(),
    };
    if !(0..=small).contains(&r) {
        return Err(Error::IndexOutOfRange(format!("line index {r} outside [0, {small}]")));
    }
    let big = small + 1;
    let shrink = |x: i64| {
        let (q, s) = (x.div_euclid(big), x.rem_euclid(big));
        q * small + s - i64::from(s > r)
    };
    let get = |x: i64, y: i64| -> Result<BigInt> {
        if x.rem_euclid(big) == r {
            Ok(t.entry(along(axis, shrink(x - 1), y))? + t.entry(along(axis, shrink(x + 1), y))?)
        } else {
            t.entry(along(axis, shrink(x), y))
        }
    };
    let (m, n) = match axis {
        Axis::Row => (big, t.n()),
        Axis::Column => (t.m(), big),
    };
    let values = canonical_values(m, n, |i, j| match axis {
        Axis::Row => get(i, j),
        Axis::Column => get(j, i),
    })?;
    PeriodicTiling::from_canonical_values(m, n, values)
}

/// Removes the line family `r + k * period`; its quiddity entry must be 1
/// and the period at least 2.
pub fn remove_line(t: &PeriodicTiling, axis: Axis, r: i64) -> Result<PeriodicTiling> {
    let (big, quiddity) = match axis {
        Axis::Row => (t.m(), t.a(r)),
        Axis::Column => (t.n(), t.b(r)),
    };
    if big < 2 {
        return Err(Error::WouldEmptyBoundary(axis.boundary()));
    }
    if !(0..big).contains(&r) {
        return Err(Error::IndexOutOfRange(format!("line index {r} outside [0, {big})")));
    }
    if !quiddity.is_one() {
        return Err(Error::NotAnEar { boundary: axis.boundary(), index: r });
    }
    let small = big - 1;
    let grow = |x: i64| {
        let (q, s) = (x.div_euclid(small), x.rem_euclid(small));
        q * big + s + i64::from(s >= r)
    };
    let (m, n) = match axis {
        Axis::Row => (small, t.n()),
        Axis::Column => (t.m(), small),
    };
    let values = canonical_values(m, n, |i, j| match axis {
        Axis::Row => t.entry(Position::new(grow(i), j)),
        Axis::Column => t.entry(Position::new(i, grow(j))),
    })?;
    PeriodicTiling::from_canonical_values(m, n, values)
}

/// Removes the first line family with quiddity 1: rows before columns,
/// smallest index first.
pub fn reduce(t: &PeriodicTiling) -> Result<Reduction> {
    for axis in [Axis::Row, Axis::Column] {
        let quiddity = match axis {
            Axis::Row => t.row_quiddity(),
            Axis::Column => t.col_quiddity(),
        };
        if quiddity.len() < 2 {
            continue;
        }
        if let Some(r) = quiddity.iter().position(One::is_one) {
            let r = r as i64;
            let smaller = remove_line(t, axis, r)?;
            let record = ReductionRecord { axis, index: r, period: quiddity.len() as i64 };
            return Ok(Reduction::Reduced(Box::new(smaller), record));
        }
    }
    Ok(Reduction::NoPeripheral)
}

/// Columns `lo..=hi` where row `i` equals 1. Needs every column quiddity
/// entry to be at least 2, which makes each row convex.
fn ones_in_row(t: &PeriodicTiling, i: i64) -> Result<Option<(i64, i64)>> {
    let at = |j: i64| t.entry(Position::new(i, j));
    let mut j = 0;
    let mut cur = at(0)?;
    let dir = if at(1)? < cur { 1 } else { -1 };
    loop {
        let next = at(j + dir)?;
        if next >= cur {
            break;
        }
        cur = next;
        j += dir;
    }
    if !cur.is_one() {
        return Ok(None);
    }
    let (mut lo, mut hi) = (j, j);
    while at(lo - 1)?.is_one() {
        lo -= 1;
    }
    while at(hi + 1)?.is_one() {
        hi += 1;
    }
    Ok(Some((lo, hi)))
}

/// The periodic staircase of 1's, starting at its lowest point on row 0.
///
/// A quiddity entry equal to 1 marks an ear, whose line carries no 1 at
/// all, so such tilings have no staircase.
pub fn find_unit_staircase(t: &PeriodicTiling) -> Result<Option<LatticePath>> {
    if t.row_quiddity().iter().chain(t.col_quiddity()).any(One::is_one) {
        return Ok(None);
    }
    let (m, n) = (t.m(), t.n());
    let mut ones = Vec::new();
    for i in 0..m {
        match ones_in_row(t, i)? {
            Some((lo, hi)) => ones.extend((lo..=hi).map(|j| Position::new(i, j))),
            None => return Ok(None),
        }
    }
    let start = ones[0];
    let end = start.shifted(m, n);
    let mut steps = Vec::with_capacity((m + n) as usize);
    let mut cur = start;
    for &p in ones[1..].iter().chain(std::iter::once(&end)) {
        match (p.i - cur.i, p.j - cur.j) {
            (0, 1) => steps.push(Step::Right),
            (1, 0) => steps.push(Step::Up),
            _ => return Ok(None),
        }
        cur = p;
    }
    if steps.len() != (m + n) as usize {
        return Ok(None);
    }
    Ok(Some(LatticePath::unit(m, n, start, steps)?))
}

/// Peels ears until every arc is bridging, fills the all-1 staircase, then
/// re-inserts one line per ear.
pub fn tiling_from_triangulation(t: &Triangulation) -> Result<PeriodicTiling> {
    let mut records = Vec::new();
    let mut cur = t.clone();
    while let Some(&(boundary, idx)) = crate::annulus::ears(&cur).first() {
        let (smaller, record) = remove_ear(&cur, boundary, idx)?;
        records.push(record);
        cur = smaller;
    }
    let (start, steps) = cur
        .bridging_staircase()
        .ok_or_else(|| Error::InternalInconsistency(format!("ear-free triangulation {cur} is not a staircase")))?;
    let mut tiling = extend_seed(&LatticePath::unit(cur.m(), cur.n(), start, steps)?)?;
    for record in records.iter().rev() {
        tiling = insert_line(&tiling, Axis::of(record.boundary), record.removed_vertex_index)?;
    }
    Ok(tiling)
}

/// Reduces while some quiddity entry is 1, reads the staircase of 1's off
/// the remaining tiling, then puts the ears back as peripheral arcs.
pub fn triangulation_from_tiling(t: &PeriodicTiling) -> Result<Triangulation> {
    let (base, records) = reduction_chain(t)?;
    let path = find_unit_staircase(&base)?.ok_or_else(|| {
        Error::InternalInconsistency("tiling has neither a quiddity entry 1 nor a staircase of 1's".into())
    })?;
    let mut tri = staircase_triangulation(base.m(), base.n(), path.start(), path.steps())?;
    for record in records.iter().rev() {
        let small = record.period - 1;
        let ear = EarRecord {
            boundary: record.axis.boundary(),
            removed_vertex_index: record.index,
            insertion_position: (record.index - 1).rem_euclid(small),
        };
        tri = insert_ear(&tri, &ear)?;
    }
    Ok(tri)
}

/// Repeated [`reduce`] down to a tiling without quiddity entries 1.
pub fn reduction_chain(t: &PeriodicTiling) -> Result<(PeriodicTiling, Vec<ReductionRecord>)> {
    let mut records = Vec::new();
    let mut cur = t.clone();
    while let Reduction::Reduced(smaller, record) = reduce(&cur)? {
        records.push(record);
        cur = *smaller;
    }
    Ok((cur, records))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::{enumerate_bridging, fan_triangulation, Arc, MarkedAnnulus};

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn fibonacci_from_the_annulus() {
        let a = MarkedAnnulus::new(1, 1).unwrap();
        let tri = Triangulation::new(a, vec![Arc::bridging(0, 0), Arc::bridging(0, 1)]).unwrap();
        let t = tiling_from_triangulation(&tri).unwrap();
        let row: Vec<BigInt> = (-2..=4).map(|j| t.entry(Position::new(0, j)).unwrap()).collect();
        assert_eq!(row, [5, 2, 1, 1, 2, 5, 13].map(int));
        assert_eq!(triangulation_from_tiling(&t).unwrap(), tri);
        assert!(matches!(reduce(&t).unwrap(), Reduction::NoPeripheral));
    }

    #[test]
    fn fan_gives_unit_canonical_seed() {
        let t = tiling_from_triangulation(&fan_triangulation(3, 2).unwrap()).unwrap();
        assert!(t.seed().values().iter().all(One::is_one));
    }

    #[test]
    fn staircase_is_recovered() {
        for tri in enumerate_bridging(2, 3, -2, 2).unwrap() {
            let t = tiling_from_triangulation(&tri).unwrap();
            let path = find_unit_staircase(&t).unwrap().unwrap();
            assert_eq!(Some((path.start(), path.steps().to_vec())), tri.bridging_staircase());
            assert_eq!(triangulation_from_tiling(&t).unwrap(), tri);
        }
    }

    #[test]
    fn line_surgery_roundtrip() {
        let t = tiling_from_triangulation(&fan_triangulation(2, 2).unwrap()).unwrap();
        for axis in [Axis::Row, Axis::Column] {
            for r in 0..=2 {
                let big = insert_line(&t, axis, r).unwrap();
                let q = match axis {
                    Axis::Row => big.a(r).clone(),
                    Axis::Column => big.b(r).clone(),
                };
                assert!(q.is_one());
                assert_eq!(remove_line(&big, axis, r).unwrap(), t);
            }
        }
        assert!(insert_line(&t, Axis::Row, 3).is_err());
        assert!(remove_line(&t, Axis::Row, 0).is_err());
    }
}
