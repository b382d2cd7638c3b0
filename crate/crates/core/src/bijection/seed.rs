//! Lattice-path seeds and their integrality conditions.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tiling::{check_periods, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    /// `j + 1`
    Right,
    /// `i + 1`
    Up,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::Right => 'R',
            Step::Up => 'U',
        }
    }

    pub fn parse_word(word: &str) -> Result<Vec<Step>> {
        word.chars()
            .map(|c| match c {
                'R' | 'r' => Ok(Step::Right),
                'U' | 'u' => Ok(Step::Up),
                other => Err(Error::Parse(format!("unknown step `{other}` (expected R or U)"))),
            })
            .collect()
    }
}

/// A monotone staircase from `start` to `start + (m, n)` with a positive value
/// at each of its `m + n + 1` points; the first and last values coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PathJson", try_from = "PathJson")]
pub struct LatticePath {
    m: i64,
    n: i64,
    start: Position,
    steps: Vec<Step>,
    values: Vec<BigInt>,
}

impl LatticePath {
    pub fn new(m: i64, n: i64, start: Position, steps: Vec<Step>, values: Vec<BigInt>) -> Result<Self> {
        check_periods(m, n)?;
        let len = (m + n) as usize;
        if steps.len() != len {
            return Err(Error::InvalidPath(format!("expected {len} steps, got {}", steps.len())));
        }
        let ups = steps.iter().filter(|s| **s == Step::Up).count() as i64;
        if ups != m {
            return Err(Error::InvalidPath(format!("expected {m} up-steps and {n} right-steps, got {ups} up-steps")));
        }
        if values.len() != len + 1 {
            return Err(Error::InvalidPath(format!("expected {} values, got {}", len + 1, values.len())));
        }
        if values[0] != values[len] {
            return Err(Error::InvalidPath(format!(
                "periodic closure fails: first value {} differs from last value {}",
                values[0], values[len]
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_positive()) {
            return Err(Error::InvalidPath(format!("value {v} is not positive")));
        }
        Ok(LatticePath { m, n, start, steps, values })
    }

    /// Convenience constructor from a step word such as `"RUU"`.
    pub fn from_i64(m: i64, n: i64, start: Position, word: &str, values: &[i64]) -> Result<Self> {
        Self::new(m, n, start, Step::parse_word(word)?, values.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// All-ones seed along the given steps.
    pub fn unit(m: i64, n: i64, start: Position, steps: Vec<Step>) -> Result<Self> {
        let len = steps.len() + 1;
        Self::new(m, n, start, steps, vec![BigInt::from(1); len])
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn start(&self) -> Position {
        self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn word(&self) -> String {
        self.steps.iter().map(|s| s.letter()).collect()
    }

    /// The `m + n + 1` positions of the path.
    pub fn points(&self) -> Vec<Position> {
        let mut p = self.start;
        let mut out = vec![p];
        for s in &self.steps {
            p = match s {
                Step::Right => p.shifted(0, 1),
                Step::Up => p.shifted(1, 0),
            };
            out.push(p);
        }
        out
    }

    /// Point `k` of the periodic extension (any `k`), with its value.
    pub fn periodic_point(&self, k: i64) -> (Position, &BigInt) {
        let len = self.m + self.n;
        let (q, r) = (k.div_euclid(len), k.rem_euclid(len) as usize);
        let p = self.points()[r];
        (p.shifted(q * self.m, q * self.n), &self.values[r])
    }
}

impl fmt::Display for LatticePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self.values.iter().map(BigInt::to_string).collect();
        write!(f, "{} from {} [{}]", self.word(), self.start, vals.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct PathJson {
    m: i64,
    n: i64,
    start: [i64; 2],
    steps: String,
    values: Vec<String>,
}

impl From<LatticePath> for PathJson {
    fn from(p: LatticePath) -> Self {
        PathJson {
            m: p.m,
            n: p.n,
            start: [p.start.i, p.start.j],
            steps: p.word(),
            values: p.values.iter().map(BigInt::to_string).collect(),
        }
    }
}

impl TryFrom<PathJson> for LatticePath {
    type Error = Error;

    fn try_from(j: PathJson) -> Result<Self> {
        let values = j
            .values
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| Error::Parse(format!("value `{s}`: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        LatticePath::new(j.m, j.n, Position::new(j.start[0], j.start[1]), Step::parse_word(&j.steps)?, values)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PointKind {
    /// Neighbours differ by 0 or 2 in `i`: `(u_prev + u_next) / u` must be integral.
    Straight,
    /// Neighbours differ by 1 in `i`: `(u_prev * u_next + 1) / u` must be integral.
    Corner,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedCondition {
    pub point_index: usize,
    pub kind: PointKind,
    #[serde(with = "crate::decimal")]
    pub numerator: BigInt,
    #[serde(with = "crate::decimal")]
    pub denominator: BigInt,
    pub passes: bool,
}

/// One integrality condition per distinct point of the periodic path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub conditions: Vec<SeedCondition>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.passes)
    }

    pub fn failures(&self) -> impl Iterator<Item = &SeedCondition> {
        self.conditions.iter().filter(|c| !c.passes)
    }
}

/// Evaluates the `m + n` integrality conditions of a seed. The two endpoints
/// of the path are the same point of the periodic staircase, so it is checked
/// once, as point 0, with its neighbours taken from the wrapped path.
pub fn check_seed(path: &LatticePath) -> CheckReport {
    let len = path.m() + path.n();
    let conditions = (0..len)
        .map(|k| {
            let (prev, u_prev) = path.periodic_point(k - 1);
            let (_, u) = path.periodic_point(k);
            let (next, u_next) = path.periodic_point(k + 1);
            let (kind, numerator) = if (next.i - prev.i) % 2 == 0 {
                (PointKind::Straight, u_prev + u_next)
            } else {
                (PointKind::Corner, u_prev * u_next + 1)
            };
            let passes = numerator.is_multiple_of(u) && !u.is_zero();
            SeedCondition { point_index: k as usize, kind, numerator, denominator: u.clone(), passes }
        })
        .collect();
    CheckReport { conditions }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(values: &[i64]) -> LatticePath {
        LatticePath::from_i64(1, 1, Position::new(0, 0), "RU", values).unwrap()
    }

    #[test]
    fn all_ones_passes_with_quotient_two() {
        let r = check_seed(&seed(&[1, 1, 1]));
        assert!(r.all_pass());
        assert_eq!(r.conditions.len(), 2);
        for c in &r.conditions {
            assert_eq!(c.kind, PointKind::Corner);
            assert_eq!(&c.numerator / &c.denominator, BigInt::from(2));
        }
    }

    #[test]
    fn one_two_one_passes() {
        let r = check_seed(&seed(&[1, 2, 1]));
        assert!(r.all_pass());
        assert_eq!((r.conditions[1].numerator.clone(), r.conditions[1].denominator.clone()), (2.into(), 2.into()));
        assert_eq!((r.conditions[0].numerator.clone(), r.conditions[0].denominator.clone()), (5.into(), 1.into()));
    }

    #[test]
    fn two_three_two_fails_at_point_one() {
        let r = check_seed(&seed(&[2, 3, 2]));
        let failing: Vec<&SeedCondition> = r.failures().collect();
        assert_eq!(failing.len(), 1);
        assert_eq!(failing[0].point_index, 1);
        assert_eq!((failing[0].numerator.clone(), failing[0].denominator.clone()), (5.into(), 3.into()));
    }

    #[test]
    fn straight_points_are_detected() {
        let p = LatticePath::from_i64(2, 1, Position::new(0, 0), "UUR", &[1, 1, 1, 1]).unwrap();
        let kinds: Vec<PointKind> = check_seed(&p).conditions.iter().map(|c| c.kind).collect();
        assert_eq!(kinds, vec![PointKind::Corner, PointKind::Straight, PointKind::Corner]);
    }

    #[test]
    fn path_validation() {
        assert!(LatticePath::from_i64(1, 1, Position::new(0, 0), "RR", &[1, 1, 1]).is_err());
        assert!(LatticePath::from_i64(1, 1, Position::new(0, 0), "RU", &[1, 1]).is_err());
        assert!(LatticePath::from_i64(1, 1, Position::new(0, 0), "RU", &[1, 2, 3]).is_err());
        assert!(LatticePath::from_i64(1, 1, Position::new(0, 0), "RU", &[0, 2, 0]).is_err());
        assert!(LatticePath::from_i64(1, 1, Position::new(0, 0), "RX", &[1, 1, 1]).is_err());
    }

    #[test]
    fn json_uses_decimal_strings() {
        let p = LatticePath::from_i64(2, 1, Position::new(3, -1), "URU", &[1, 4, 7, 1]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"m":2,"n":1,"start":[3,-1],"steps":"URU","values":["1","4","7","1"]}"#);
        assert_eq!(serde_json::from_str::<LatticePath>(&s).unwrap(), p);
    }
}
