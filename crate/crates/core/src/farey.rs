//! Tilings as determinants of two paths in the Farey graph.
//!
//! A tiling is recovered as `u[i][j] = det(P_i, R_j)`, where `P` and `R`
//! are bi-infinite paths of integer vectors with unit consecutive
//! determinants. Normalizing `R_0 = (1,0)`, `R_1 = (0,1)` forces
//! `P_i = (u[i][1], -u[i][0])`. The matrix `M = [R_n | R_{n+1}]` shifts both
//! paths by a period: `R_{j+n} = M R_j` and `P_{i+m} = M P_i`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frieze::Matrix2;
use crate::tiling::{PeriodicTiling, Position};

/// A point of `ℚ ∪ {∞}` as a reduced pair with `q > 0`, or `(1, 0)` for ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FareyVertex {
    p: BigInt,
    q: BigInt,
}

impl FareyVertex {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(Error::Parse("(0, 0) is not a Farey vertex".into()));
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / &g, q / &g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Ok(FareyVertex { p, q })
    }

    pub fn infinity() -> Self {
        FareyVertex { p: BigInt::one(), q: BigInt::zero() }
    }

    /// The vertex a (possibly non-reduced, sign-flipped) path vector points at.
    pub fn from_vector(v: &(BigInt, BigInt)) -> Result<Self> {
        FareyVertex::new(v.0.clone(), v.1.clone())
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_infinity(&self) -> bool {
        self.q.is_zero()
    }

    fn vector(&self) -> (BigInt, BigInt) {
        (self.p.clone(), self.q.clone())
    }
}

/// Order along the boundary circle cut open at ∞, which comes last.
impl Ord for FareyVertex {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinity(), other.is_infinity()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => (&self.p * &other.q).cmp(&(&other.p * &self.q)),
        }
    }
}

impl PartialOrd for FareyVertex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FareyVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "∞")
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

impl std::str::FromStr for FareyVertex {
    type Err = Error;

    /// `p/q`, an integer, or `inf`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if matches!(s, "inf" | "∞" | "1/0") {
            return Ok(FareyVertex::infinity());
        }
        let parse = |x: &str| x.trim().parse::<BigInt>().map_err(|e| Error::Parse(format!("`{s}`: {e}")));
        match s.split_once('/') {
            Some((p, q)) => FareyVertex::new(parse(p)?, parse(q)?),
            None => FareyVertex::new(parse(s)?, 1),
        }
    }
}

pub fn det(v: &(BigInt, BigInt), w: &(BigInt, BigInt)) -> BigInt {
    &v.0 * &w.1 - &v.1 * &w.0
}

pub fn is_edge(v: &FareyVertex, w: &FareyVertex) -> bool {
    det(&v.vector(), &w.vector()).abs().is_one()
}

/// Path vectors over the index window `start..start + len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyPath {
    start: i64,
    vectors: Vec<(BigInt, BigInt)>,
}

impl FareyPath {
    pub fn new(start: i64, vectors: Vec<(BigInt, BigInt)>) -> Self {
        FareyPath { start, vectors }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.vectors.len() as i64 - 1
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.start..=self.end()
    }

    pub fn get(&self, i: i64) -> Option<&(BigInt, BigInt)> {
        usize::try_from(i - self.start).ok().and_then(|k| self.vectors.get(k))
    }

    pub fn vectors(&self) -> &[(BigInt, BigInt)] {
        &self.vectors
    }

    pub fn vertex(&self, i: i64) -> Option<FareyVertex> {
        self.get(i).map(|v| FareyVertex::from_vector(v).expect("path vectors are primitive"))
    }

    /// `det(v_i, v_{i+1})` for every consecutive pair.
    pub fn consecutive_determinants(&self) -> Vec<BigInt> {
        self.vectors.windows(2).map(|w| det(&w[0], &w[1])).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    start: i64,
    vertices: Vec<[String; 2]>,
}

impl Serialize for FareyPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathJson {
            start: self.start,
            vertices: self.vectors.iter().map(|(p, q)| [p.to_string(), q.to_string()]).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FareyPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = PathJson::deserialize(d)?;
        let vectors = json
            .vertices
            .iter()
            .map(|[p, q]| Ok((p.parse().map_err(D::Error::custom)?, q.parse().map_err(D::Error::custom)?)))
            .collect::<std::result::Result<_, D::Error>>()?;
        Ok(FareyPath { start: json.start, vectors })
    }
}

/// `det(P_i, R_j)`.
pub fn tiling_entry_from_paths(p: &FareyPath, r: &FareyPath, i: i64, j: i64) -> Result<BigInt> {
    let pi = p.get(i).ok_or_else(|| Error::IndexOutOfRange(format!("P_{i} outside {:?}", p.indices())))?;
    let rj = r.get(j).ok_or_else(|| Error::IndexOutOfRange(format!("R_{j} outside {:?}", r.indices())))?;
    Ok(det(pi, rj))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyPaths {
    pub p: FareyPath,
    pub r: FareyPath,
    pub monodromy: Matrix2,
}

/// `P` over `i_range` and `R` over `j_range` (both inclusive), normalized by
/// `R_0 = (1,0)`, `R_1 = (0,1)`.
pub fn paths_from_tiling(t: &PeriodicTiling, i_range: (i64, i64), j_range: (i64, i64)) -> Result<FareyPaths> {
    if i_range.0 > i_range.1 || j_range.0 > j_range.1 {
        return Err(Error::InvalidBounds(format!("empty index range {i_range:?} or {j_range:?}")));
    }
    let p = (i_range.0..=i_range.1)
        .map(|i| Ok((t.entry(Position::new(i, 1))?, -t.entry(Position::new(i, 0))?)))
        .collect::<Result<Vec<_>>>()?;

    // R over a range containing 0, 1 and n + 1, grown outwards from R_0, R_1
    let n = t.n();
    let lo = j_range.0.min(0);
    let hi = j_range.1.max(n + 1);
    let mut right = vec![(BigInt::one(), BigInt::zero()), (BigInt::zero(), BigInt::one())];
    for j in 1..hi {
        let b = t.b(j);
        let k = right.len();
        let next = (b * &right[k - 1].0 - &right[k - 2].0, b * &right[k - 1].1 - &right[k - 2].1);
        right.push(next);
    }
    let mut left = Vec::new();
    let (mut cur, mut after) = (right[0].clone(), right[1].clone());
    for j in (lo + 1..=0).rev() {
        // R_{j-1} = b_j R_j - R_{j+1}
        let b = t.b(j);
        let prev = (b * &cur.0 - &after.0, b * &cur.1 - &after.1);
        left.push(prev.clone());
        after = cur;
        cur = prev;
    }
    left.reverse();
    let all: Vec<(BigInt, BigInt)> = left.into_iter().chain(right).collect();
    let at = |j: i64| &all[(j - lo) as usize];
    let (rn, rn1) = (at(n), at(n + 1));
    let monodromy = Matrix2::new(rn.0.clone(), rn1.0.clone(), rn.1.clone(), rn1.1.clone());
    let r = (j_range.0..=j_range.1).map(|j| at(j).clone()).collect();
    Ok(FareyPaths { p: FareyPath::new(i_range.0, p), r: FareyPath::new(j_range.0, r), monodromy })
}

/// Sign of the permutation needed to sort distinct vertices cyclically: 1 if
/// `(a, b, c, d)` is counter-clockwise, -1 if clockwise, 0 otherwise.
fn cyclic_orientation(v: [&FareyVertex; 4]) -> i32 {
    let descents = (0..4).filter(|&k| v[k] > v[(k + 1) % 4]).count();
    match descents {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

/// Checks `det(a,c) det(b,d) = det(a,b) det(c,d) + det(a,d) det(b,c)` for
/// four distinct vertices in cyclic order (either orientation).
pub fn ptolemy_check(a: &FareyVertex, b: &FareyVertex, c: &FareyVertex, d: &FareyVertex) -> Result<bool> {
    let all = [a, b, c, d];
    for x in 0..4 {
        for y in x + 1..4 {
            if all[x] == all[y] {
                return Err(Error::CyclicOrder);
            }
        }
    }
    if cyclic_orientation(all) == 0 {
        return Err(Error::CyclicOrder);
    }
    let (a, b, c, d) = (a.vector(), b.vector(), c.vector(), d.vector());
    Ok(det(&a, &c) * det(&b, &d) == det(&a, &b) * det(&c, &d) + det(&a, &d) * det(&b, &c))
}

/// A unimodular matrix sending `a` to ∞.
fn to_infinity(a: &FareyVertex) -> Matrix2 {
    // p s - q r = 1
    let e = a.p.extended_gcd(&a.q);
    // e.x * p + e.y * q = gcd = 1 (up to sign of gcd)
    let sign = if e.gcd.is_negative() { -BigInt::one() } else { BigInt::one() };
    let s = &e.x * &sign;
    let r = -&e.y * &sign;
    Matrix2::new(s, -r, -a.q.clone(), a.p.clone())
}

/// `x = X / Y` with `Y > 0`: `c` seen from `a` placed at ∞, or `None` if `a = c`.
fn relative_position(a: &FareyVertex, c: &FareyVertex) -> Option<(BigInt, BigInt)> {
    let g = to_infinity(a);
    let (mut x, mut y) = g.apply(&c.vector());
    if y.is_zero() {
        return None;
    }
    if y.is_negative() {
        x = -x;
        y = -y;
    }
    Some((x, y))
}

/// Number of Farey edges crossed by the geodesic from `a` to `c`.
///
/// A unimodular map sends `a` to ∞, where the geodesic becomes a vertical
/// line at `x`; the crossed edges are then the nested Stern–Brocot
/// intervals around `x`, walked in runs of equal direction.
pub fn crossing_count(a: &FareyVertex, c: &FareyVertex) -> Result<BigInt> {
    let (x, y) = relative_position(a, c).ok_or_else(|| Error::InvalidBounds(format!("identical endpoints {a}")))?;
    if y.is_one() {
        return Ok(BigInt::zero());
    }
    let fl = x.div_floor(&y);
    let mut left = (fl.clone(), BigInt::one());
    let mut right = (fl + 1, BigInt::one());
    let mut count = BigInt::one();
    loop {
        // A > 0 measures x < right, B > 0 measures x > left
        let a_gap: BigInt = &y * &right.0 - &x * &right.1;
        let b_gap: BigInt = &x * &left.1 - &y * &left.0;
        let mediant = (&left.0 + &right.0, &left.1 + &right.1);
        let toward_left = &x * &mediant.1 < &y * &mediant.0;
        if &x * &mediant.1 == &y * &mediant.0 {
            return Ok(count);
        }
        if toward_left {
            // right <- right + t left while x stays below it
            let t: BigInt = (&a_gap - BigInt::one()).div_floor(&b_gap);
            right = (&right.0 + &t * &left.0, &right.1 + &t * &left.1);
            count += &t;
        } else {
            let t: BigInt = (&b_gap - BigInt::one()).div_floor(&a_gap);
            left = (&left.0 + &t * &right.0, &left.1 + &t * &right.1);
            count += &t;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bijection::{extend_seed, LatticePath};
    use crate::tiling::Position;

    fn v(s: &str) -> FareyVertex {
        s.parse().unwrap()
    }

    /// One mediant at a time.
    fn crossing_count_stepwise(a: &FareyVertex, c: &FareyVertex) -> u64 {
        let (x, y) = relative_position(a, c).unwrap();
        if y.is_one() {
            return 0;
        }
        let fl = x.div_floor(&y);
        let (mut l, mut r) = ((fl.clone(), BigInt::one()), (fl + 1, BigInt::one()));
        let mut count = 1;
        loop {
            let med = (&l.0 + &r.0, &l.1 + &r.1);
            match (&x * &med.1).cmp(&(&y * &med.0)) {
                Ordering::Equal => return count,
                Ordering::Less => r = med,
                Ordering::Greater => l = med,
            }
            count += 1;
        }
    }

    #[test]
    fn vertices_and_edges() {
        assert_eq!(FareyVertex::new(-2, -4).unwrap(), v("1/2"));
        assert_eq!(FareyVertex::new(-3, 0).unwrap(), FareyVertex::infinity());
        assert!(FareyVertex::new(0, 0).is_err());
        assert!(is_edge(&v("0/1"), &v("1/1")));
        assert!(is_edge(&v("0/1"), &v("inf")));
        assert!(is_edge(&v("1/3"), &v("1/2")));
        assert!(!is_edge(&v("1/3"), &v("2/3")));
        assert!(v("-5/2") < v("0") && v("7") < v("inf"));
    }

    #[test]
    fn ptolemy_examples() {
        assert!(ptolemy_check(&v("0/1"), &v("1/2"), &v("1/1"), &v("inf")).unwrap());
        assert!(ptolemy_check(&v("0/1"), &v("1/3"), &v("1/2"), &v("2/1")).unwrap());
        assert!(ptolemy_check(&v("inf"), &v("1/1"), &v("1/2"), &v("0/1")).unwrap());
        assert!(ptolemy_check(&v("1/1"), &v("inf"), &v("0/1"), &v("1/2")).unwrap());
        assert!(matches!(ptolemy_check(&v("0/1"), &v("1/1"), &v("1/2"), &v("inf")), Err(Error::CyclicOrder)));
        assert!(matches!(ptolemy_check(&v("0/1"), &v("0/1"), &v("1/2"), &v("inf")), Err(Error::CyclicOrder)));
    }

    #[test]
    fn crossing_examples() {
        assert_eq!(crossing_count(&v("0/1"), &v("1/1")).unwrap(), BigInt::zero());
        assert_eq!(crossing_count(&v("0/1"), &v("2/3")).unwrap(), BigInt::one());
        // 0 -> 3/7 crosses (1/3, 1/2) and (2/5, 1/2)
        assert_eq!(crossing_count(&v("0/1"), &v("3/7")).unwrap(), BigInt::from(2));
        assert_eq!(crossing_count(&v("inf"), &v("1/2")).unwrap(), BigInt::one());
        assert!(crossing_count(&v("1/2"), &v("2/4")).is_err());
    }

    #[test]
    fn batched_walk_matches_stepwise() {
        let fracs: Vec<FareyVertex> = (1..=13)
            .flat_map(|q| (-2 * q..=2 * q).map(move |p| (p, q)))
            .filter(|(p, q): &(i64, i64)| p.gcd(q) == 1)
            .map(|(p, q)| FareyVertex::new(p, q).unwrap())
            .chain(std::iter::once(FareyVertex::infinity()))
            .collect();
        for a in &fracs {
            for c in &fracs {
                if a == c {
                    continue;
                }
                let n = crossing_count(a, c).unwrap();
                assert_eq!(n, BigInt::from(crossing_count_stepwise(a, c)), "{a} {c}");
                assert_eq!(n, crossing_count(c, a).unwrap(), "{a} {c}");
            }
        }
    }

    #[test]
    fn fibonacci_paths() {
        let path = LatticePath::from_i64(1, 1, Position::new(0, 0), "UR", &[1, 1, 1]).unwrap();
        let t = extend_seed(&path).unwrap();
        let paths = paths_from_tiling(&t, (-3, 4), (-3, 4)).unwrap();
        for i in -3..=4 {
            for j in -3..=4 {
                assert_eq!(tiling_entry_from_paths(&paths.p, &paths.r, i, j).unwrap(), t.entry(Position::new(i, j)).unwrap());
            }
        }
        assert!(paths.p.consecutive_determinants().iter().all(|d| (-d).is_one()));
        assert!(paths.r.consecutive_determinants().iter().all(One::is_one));
        assert_eq!(paths.monodromy.trace(), BigInt::from(3));
        for i in -3..=3 {
            let shifted = paths.monodromy.apply(paths.p.get(i).unwrap());
            assert_eq!(&shifted, paths.p.get(i + 1).unwrap());
        }
        let json = serde_json::to_string(&paths).unwrap();
        assert_eq!(serde_json::from_str::<FareyPaths>(&json).unwrap(), paths);
    }
}
