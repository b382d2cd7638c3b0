//! Quiddity sequences, infinite frieze patterns, growth and monodromy.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tiling::{PeriodicTiling, Position};

/// A periodic sequence of positive integers, indexed by all of ℤ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "QuiddityJson", into = "QuiddityJson")]
pub struct QuidditySequence {
    values: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct QuiddityJson {
    period: usize,
    #[serde(with = "crate::decimal::vec")]
    values: Vec<BigInt>,
}

impl From<QuidditySequence> for QuiddityJson {
    fn from(q: QuidditySequence) -> Self {
        QuiddityJson { period: q.values.len(), values: q.values }
    }
}

impl TryFrom<QuiddityJson> for QuidditySequence {
    type Error = Error;

    fn try_from(j: QuiddityJson) -> Result<Self> {
        if j.period != j.values.len() {
            return Err(Error::Parse(format!("period {} but {} values", j.period, j.values.len())));
        }
        QuidditySequence::new(j.values)
    }
}

impl QuidditySequence {
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Parse("a quiddity sequence needs at least one value".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_positive()) {
            return Err(Error::Parse(format!("quiddity value {v} is not positive")));
        }
        Ok(QuidditySequence { values })
    }

    pub fn from_i64(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn get(&self, k: i64) -> &BigInt {
        &self.values[k.rem_euclid(self.values.len() as i64) as usize]
    }
}

impl fmt::Display for QuidditySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(BigInt::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix2 {
    #[serde(with = "crate::decimal")]
    pub a: BigInt,
    #[serde(with = "crate::decimal")]
    pub b: BigInt,
    #[serde(with = "crate::decimal")]
    pub c: BigInt,
    #[serde(with = "crate::decimal")]
    pub d: BigInt,
}

impl Matrix2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Matrix2 { a, b, c, d }
    }

    pub fn from_i64(rows: [[i64; 2]; 2]) -> Self {
        Matrix2::new(rows[0][0].into(), rows[0][1].into(), rows[1][0].into(), rows[1][1].into())
    }

    pub fn identity() -> Self {
        Matrix2::from_i64([[1, 0], [0, 1]])
    }

    /// `[[a, -1], [1, 0]]`, the step matrix of the recurrence.
    pub fn continuant(a: &BigInt) -> Self {
        Matrix2::new(a.clone(), -BigInt::one(), BigInt::one(), BigInt::zero())
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2 {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn apply(&self, v: &(BigInt, BigInt)) -> (BigInt, BigInt) {
        (&self.a * &v.0 + &self.b * &v.1, &self.c * &v.0 + &self.d * &v.1)
    }

    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_unimodular(&self) -> Matrix2 {
        Matrix2::new(self.d.clone(), -&self.b, -&self.c, self.a.clone())
    }

    pub fn rows(&self) -> [[&BigInt; 2]; 2] {
        [[&self.a, &self.b], [&self.c, &self.d]]
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// `A(a_0) A(a_1) ... A(a_{p-1})` with `A(a) = [[a, -1], [1, 0]]`.
pub fn monodromy(q: &QuidditySequence) -> Matrix2 {
    q.values.iter().fold(Matrix2::identity(), |acc, a| acc.mul(&Matrix2::continuant(a)))
}

pub fn row_quiddity(t: &PeriodicTiling) -> QuidditySequence {
    QuidditySequence { values: t.row_quiddity().to_vec() }
}

pub fn col_quiddity(t: &PeriodicTiling) -> QuidditySequence {
    QuidditySequence { values: t.col_quiddity().to_vec() }
}

/// `(u[i-1][j] + u[i+1][j]) / u[i][j]` (`Row`) or `(u[i][j-1] + u[i][j+1]) / u[i][j]`
/// (`Column`) read at one specific position; errors if not integral.
pub fn quiddity_at(t: &PeriodicTiling, side: Side, p: Position) -> Result<BigInt> {
    let (before, after) = match side {
        Side::Row => (p.shifted(-1, 0), p.shifted(1, 0)),
        Side::Column => (p.shifted(0, -1), p.shifted(0, 1)),
    };
    let num = t.entry(before)? + t.entry(after)?;
    let den = t.entry(p)?;
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::InternalInconsistency(format!("{den} does not divide {num} at {p}")));
    }
    Ok(q)
}

pub fn growth(t: &PeriodicTiling) -> BigInt {
    t.growth()
}

/// The growth coefficient read at an arbitrary position.
pub fn growth_at(t: &PeriodicTiling, p: Position) -> Result<BigInt> {
    let num = t.entry(p.shifted(t.m(), 0))? + t.entry(p.shifted(0, t.n()))?;
    let den = t.entry(p)?;
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::InternalInconsistency(format!("growth at {p} is {num}/{den}")));
    }
    Ok(q)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// The `m`-periodic pattern built from rows.
    Row,
    /// The `n`-periodic pattern built from columns.
    Column,
}

/// `v[k][l]` of the pattern induced on one boundary, read at column (or row) `at`.
pub fn frieze_entry_from_tiling_at(t: &PeriodicTiling, side: Side, k: i64, l: i64, at: i64) -> Result<BigInt> {
    if l < k {
        return Err(Error::IndexOutOfRange(format!("frieze entry ({k},{l}) needs l >= k")));
    }
    let u = |i: i64, j: i64| t.entry(Position::new(i, j));
    Ok(match side {
        Side::Row => u(k, at + 1)? * u(l, at)? - u(k, at)? * u(l, at + 1)?,
        Side::Column => u(at + 1, k)? * u(at, l)? - u(at, k)? * u(at + 1, l)?,
    })
}

pub fn frieze_entry_from_tiling(t: &PeriodicTiling, side: Side, k: i64, l: i64) -> Result<BigInt> {
    frieze_entry_from_tiling_at(t, side, k, l, 0)
}

/// `v[k][l]` for `l >= k`: `v[k][k] = 0`, `v[k][k+1] = 1`,
/// `v[k][l+1] = a_l v[k][l] - v[k][l-1]`, so that `v[k][k+2] = a_{k+1}`.
///
/// Rows are memoized per `(k mod period, l - k)`.
pub struct InfiniteFriezePattern {
    quiddity: QuidditySequence,
    rows: RwLock<HashMap<usize, Vec<BigInt>>>,
}

impl fmt::Debug for InfiniteFriezePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("InfiniteFriezePattern").field("quiddity", &self.quiddity).finish()
    }
}

impl Clone for InfiniteFriezePattern {
    fn clone(&self) -> Self {
        InfiniteFriezePattern { quiddity: self.quiddity.clone(), rows: RwLock::new(HashMap::new()) }
    }
}

/// Periods the positivity certificate may take before giving up.
const CERTIFY_PERIODS: usize = 64;

impl InfiniteFriezePattern {
    pub fn quiddity(&self) -> &QuidditySequence {
        &self.quiddity
    }

    pub fn period(&self) -> usize {
        self.quiddity.period()
    }

    /// Extends the memoized row starting at `k mod p` to offset `depth`.
    fn with_row<R>(&self, k: i64, depth: usize, f: impl FnOnce(&[BigInt]) -> R) -> R {
        let p = self.period();
        let key = k.rem_euclid(p as i64) as usize;
        if let Some(row) = self.rows.read().expect("frieze memo poisoned").get(&key) {
            if row.len() > depth {
                return f(&row[..=depth]);
            }
        }
        let mut memo = self.rows.write().expect("frieze memo poisoned");
        let row = memo.entry(key).or_insert_with(|| vec![BigInt::zero(), BigInt::one()]);
        while row.len() <= depth {
            let d = row.len() - 1;
            let next = self.quiddity.get(key as i64 + d as i64) * &row[d] - &row[d - 1];
            row.push(next);
        }
        f(&row[..=depth])
    }

    pub fn entry(&self, k: i64, l: i64) -> Result<BigInt> {
        if l < k {
            return Err(Error::IndexOutOfRange(format!("frieze entry ({k},{l}) needs l >= k")));
        }
        let d = (l - k) as usize;
        Ok(self.with_row(k, d, |row| row[d].clone()))
    }

    /// `rows[d][k] = v[k][k+d]` for `d < depth` and `k` in `k_min..k_min+width`.
    pub fn rows(&self, depth: usize, k_min: i64, width: usize) -> Vec<Vec<BigInt>> {
        (0..depth)
            .map(|d| (0..width as i64).map(|x| self.with_row(k_min + x, d, |row| row[d].clone())).collect())
            .collect()
    }

    /// Positivity of every `v[k][l]`, `l > k`: rows are checked until
    /// `v[k][l+p] >= v[k][l]` holds along a full period with trace at least
    /// 2, after which the recurrence `x(d+2p) = T x(d+p) - x(d)` keeps the
    /// row increasing.
    fn certify(&self) -> Result<()> {
        let p = self.period();
        let trace = monodromy(&self.quiddity).trace();
        for k in 0..p as i64 {
            let mut certified = false;
            for periods in 1..=CERTIFY_PERIODS {
                let depth = (periods + 1) * p + 1;
                let bad = self.with_row(k, depth, |row| {
                    row.iter().enumerate().skip(1).find(|(_, v)| !v.is_positive()).map(|(d, v)| (d, v.clone()))
                });
                if let Some((d, v)) = bad {
                    return Err(Error::NonPositiveEntry { k, l: k + d as i64, value: v.to_string() });
                }
                if trace >= BigInt::from(2) {
                    let start = (periods - 1) * p + 1;
                    let increasing = self.with_row(k, depth, |row| (start..=start + p).all(|d| row[d + p] >= row[d]));
                    if increasing {
                        certified = true;
                        break;
                    }
                }
            }
            if !certified {
                // trace below 2 makes every row oscillate, so the search above
                // fails before this point in practice
                return Err(Error::NonPositiveEntry {
                    k,
                    l: k + (CERTIFY_PERIODS * p) as i64,
                    value: format!("unbounded positivity not certified (trace {trace})"),
                });
            }
        }
        Ok(())
    }
}

pub fn frieze_from_quiddity(q: &QuidditySequence) -> Result<InfiniteFriezePattern> {
    let f = InfiniteFriezePattern { quiddity: q.clone(), rows: RwLock::new(HashMap::new()) };
    f.certify()?;
    Ok(f)
}

/// `v[i][i+n+1] - v[i+1][i+n]`.
pub fn growth_from_frieze_at(f: &InfiniteFriezePattern, n: i64, i: i64) -> Result<BigInt> {
    Ok(f.entry(i, i + n + 1)? - f.entry(i + 1, i + n)?)
}

pub fn growth_from_frieze(f: &InfiniteFriezePattern, n: i64) -> Result<BigInt> {
    growth_from_frieze_at(f, n, 0)
}
