//! Periodic positive integral SL₂-tilings.
//!
//! Rows are indexed bottom to top and columns left to right. The adjacent
//! minor at `(i, j)` is taken with row `i + 1` above row `i`:
//!
//! ```text
//! u[i+1][j] * u[i][j+1] - u[i][j] * u[i+1][j+1] = 1
//! ```
//!
//! A tiling is stored through its values on the canonical staircase
//! `(0,0), (1,0), ..., (m,0), (m,1), ..., (m,n)`, the fundamental rectangle
//! `[0,m] x [0,n]` filled from it, and the two quiddity sequences. Entries
//! anywhere else are reached with the three-term recurrences.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::bijection::{check_seed, LatticePath, Step};
use crate::error::{Error, Result};
use crate::par::Execution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Position {
    pub i: i64,
    pub j: i64,
}

impl Position {
    pub const fn new(i: i64, j: i64) -> Self {
        Position { i, j }
    }

    pub fn shifted(self, di: i64, dj: i64) -> Self {
        Position::new(self.i + di, self.j + dj)
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

/// Inclusive rectangle of positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub i_min: i64,
    pub i_max: i64,
    pub j_min: i64,
    pub j_max: i64,
}

impl Bounds {
    pub fn new(i_min: i64, i_max: i64, j_min: i64, j_max: i64) -> Result<Self> {
        if i_min > i_max || j_min > j_max {
            return Err(Error::InvalidBounds(format!(
                "empty rectangle rows {i_min}..={i_max}, columns {j_min}..={j_max}"
            )));
        }
        Ok(Bounds { i_min, i_max, j_min, j_max })
    }

    pub fn rows(&self) -> usize {
        (self.i_max - self.i_min + 1) as usize
    }

    pub fn cols(&self) -> usize {
        (self.j_max - self.j_min + 1) as usize
    }
}

/// Parses `i_min,i_max,j_min,j_max`.
impl FromStr for Bounds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("bounds `{s}`: {e}")))?;
        match parts.as_slice() {
            [a, b, c, d] => Bounds::new(*a, *b, *c, *d),
            _ => Err(Error::Parse(format!(
                "bounds `{s}`: expected four comma-separated integers"
            ))),
        }
    }
}

/// Which three-term recurrence to walk when reaching a far entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Walk {
    /// Along a column, varying `i`, with the row quiddity.
    Vertical,
    /// Along a row, varying `j`, with the column quiddity.
    Horizontal,
}

pub struct PeriodicTiling {
    m: i64,
    n: i64,
    seed: LatticePath,
    row_quiddity: Vec<BigInt>,
    col_quiddity: Vec<BigInt>,
    /// `fundamental[i][j] = u[i][j]` for `0 <= i <= m`, `0 <= j <= n`.
    fundamental: Vec<Vec<BigInt>>,
    cache: RwLock<HashMap<Position, BigInt>>,
}

impl Clone for PeriodicTiling {
    fn clone(&self) -> Self {
        PeriodicTiling {
            m: self.m,
            n: self.n,
            seed: self.seed.clone(),
            row_quiddity: self.row_quiddity.clone(),
            col_quiddity: self.col_quiddity.clone(),
            fundamental: self.fundamental.clone(),
            cache: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for PeriodicTiling {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n && self.seed.values() == other.seed.values()
    }
}

impl Eq for PeriodicTiling {}

impl fmt::Debug for PeriodicTiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PeriodicTiling")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("seed", &self.seed.values())
            .field("row_quiddity", &self.row_quiddity)
            .field("col_quiddity", &self.col_quiddity)
            .finish()
    }
}

pub(crate) fn check_periods(m: i64, n: i64) -> Result<()> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidPeriod { m, n });
    }
    Ok(())
}

/// Exact quotient of a positive numerator by a positive denominator.
fn exact_div(num: &BigInt, den: &BigInt, what: impl FnOnce() -> String) -> Result<BigInt> {
    if !den.is_positive() {
        return Err(Error::InternalInconsistency(format!("{}: non-positive divisor {den}", what())));
    }
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::InternalInconsistency(format!("{}: {num} / {den} is not integral", what())));
    }
    if !q.is_positive() {
        return Err(Error::InternalInconsistency(format!("{}: non-positive value {q}", what())));
    }
    Ok(q)
}

impl PeriodicTiling {
    /// The unique tiling agreeing with `path`, whose integrality conditions
    /// must all hold.
    pub fn from_seed(path: &LatticePath) -> Result<Self> {
        let report = check_seed(path);
        if !report.all_pass() {
            return Err(Error::PreconditionViolated(Box::new(report)));
        }
        let values = canonical_staircase_values(path)?;
        Self::from_canonical_values(path.m(), path.n(), values)
    }

    /// Builds a tiling from its values on the canonical staircase
    /// `(0,0) .. (m,0) .. (m,n)` (length `m + n + 1`, first equal to last).
    pub(crate) fn from_canonical_values(m: i64, n: i64, values: Vec<BigInt>) -> Result<Self> {
        check_periods(m, n)?;
        let (mu, nu) = (m as usize, n as usize);
        let mut rect = vec![vec![BigInt::zero(); nu + 1]; mu + 1];
        for i in 0..=mu {
            rect[i][0] = values[i].clone();
        }
        rect[mu].clone_from_slice(&values[mu..]);
        // minor at (i, j) solved for u[i][j+1], sweeping each new column downwards
        for j in 0..nu {
            for i in (0..mu).rev() {
                let num = &rect[i][j] * &rect[i + 1][j + 1] + 1;
                rect[i][j + 1] = exact_div(&num, &rect[i + 1][j], || format!("filling ({i},{})", j + 1))?;
            }
        }

        // u[m+1][n] = u[1][0] and u[m][n+1] = u[0][1] by periodicity
        let mut row_quiddity = vec![BigInt::zero(); mu];
        for i in 1..=mu {
            let above = if i == mu { rect[1][0].clone() } else { rect[i + 1][nu].clone() };
            let num = &rect[i - 1][nu] + above;
            row_quiddity[i % mu] = exact_div(&num, &rect[i][nu], || format!("row quiddity a[{}]", i % mu))?;
        }
        let mut col_quiddity = vec![BigInt::zero(); nu];
        for j in 1..=nu {
            let right = if j == nu { rect[0][1].clone() } else { rect[mu][j + 1].clone() };
            let num = &rect[mu][j - 1] + right;
            col_quiddity[j % nu] = exact_div(&num, &rect[mu][j], || format!("column quiddity b[{}]", j % nu))?;
        }
        // the ratios must agree on the other side of the rectangle too
        for i in 1..mu {
            if &rect[i - 1][0] + &rect[i + 1][0] != &row_quiddity[i] * &rect[i][0] {
                return Err(Error::InternalInconsistency(format!("row quiddity a[{i}] depends on the column")));
            }
        }
        for j in 1..nu {
            if &rect[0][j - 1] + &rect[0][j + 1] != &col_quiddity[j] * &rect[0][j] {
                return Err(Error::InternalInconsistency(format!("column quiddity b[{j}] depends on the row")));
            }
        }

        let steps: Vec<Step> = std::iter::repeat_n(Step::Up, mu).chain(std::iter::repeat_n(Step::Right, nu)).collect();
        let seed = LatticePath::new(m, n, Position::new(0, 0), steps, values)?;
        Ok(PeriodicTiling {
            m,
            n,
            seed,
            row_quiddity,
            col_quiddity,
            fundamental: rect,
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    /// Values on the canonical staircase through the anchor `(0,0)`.
    pub fn seed(&self) -> &LatticePath {
        &self.seed
    }

    /// `a[i] = (u[i-1][j] + u[i+1][j]) / u[i][j]`, period `m`.
    pub fn row_quiddity(&self) -> &[BigInt] {
        &self.row_quiddity
    }

    /// `b[j] = (u[i][j-1] + u[i][j+1]) / u[i][j]`, period `n`.
    pub fn col_quiddity(&self) -> &[BigInt] {
        &self.col_quiddity
    }

    pub fn a(&self, i: i64) -> &BigInt {
        &self.row_quiddity[i.rem_euclid(self.m) as usize]
    }

    pub fn b(&self, j: i64) -> &BigInt {
        &self.col_quiddity[j.rem_euclid(self.n) as usize]
    }

    pub fn entry(&self, p: Position) -> Result<BigInt> {
        if let Some(v) = self.cache.read().expect("tiling cache poisoned").get(&p) {
            return Ok(v.clone());
        }
        let walk = if self.vertical_cost(p) <= self.horizontal_cost(p) {
            Walk::Vertical
        } else {
            Walk::Horizontal
        };
        self.entry_by(p, walk)
    }

    fn vertical_cost(&self, p: Position) -> i64 {
        let k = p.j.div_euclid(self.n);
        let i = p.i - k * self.m;
        (-i).max(i - self.m).max(0)
    }

    fn horizontal_cost(&self, p: Position) -> i64 {
        let k = p.i.div_euclid(self.m);
        let j = p.j - k * self.n;
        (-j).max(j - self.n).max(0)
    }

    /// Computes `u[p]` with one specific recurrence, bypassing the cache.
    pub fn entry_by(&self, p: Position, walk: Walk) -> Result<BigInt> {
        match walk {
            Walk::Vertical => {
                let k = p.j.div_euclid(self.n);
                let (i, j) = (p.i - k * self.m, (p.j - k * self.n) as usize);
                let column: Vec<&BigInt> = self.fundamental.iter().map(|row| &row[j]).collect();
                walk_recurrence(&column, i, |t| self.a(t))
            }
            Walk::Horizontal => {
                let k = p.i.div_euclid(self.m);
                let (i, j) = ((p.i - k * self.m) as usize, p.j - k * self.n);
                let row: Vec<&BigInt> = self.fundamental[i].iter().collect();
                walk_recurrence(&row, j, |t| self.b(t))
            }
        }
    }

    pub fn window(&self, bounds: Bounds) -> Result<Window> {
        self.window_with(bounds, Execution::default())
    }

    /// Dense rectangle of entries; each row is seeded with two far entries
    /// and then swept with the column quiddity.
    pub fn window_with(&self, bounds: Bounds, exec: Execution) -> Result<Window> {
        let rows: Vec<Result<Vec<BigInt>>> =
            exec.map_range(bounds.i_min..bounds.i_max + 1, |i| self.row_segment(i, bounds.j_min, bounds.cols()));
        let rows: Vec<Vec<BigInt>> = rows.into_iter().collect::<Result<_>>()?;
        {
            let mut cache = self.cache.write().expect("tiling cache poisoned");
            if cache.len() + bounds.rows() * bounds.cols() <= CACHE_LIMIT {
                for (di, row) in rows.iter().enumerate() {
                    for (dj, v) in row.iter().enumerate() {
                        cache.insert(Position::new(bounds.i_min + di as i64, bounds.j_min + dj as i64), v.clone());
                    }
                }
            }
        }
        Ok(Window {
            periods: Some((self.m, self.n)),
            i_min: bounds.i_min,
            j_min: bounds.j_min,
            entries: rows,
        })
    }

    fn row_segment(&self, i: i64, j_min: i64, len: usize) -> Result<Vec<BigInt>> {
        let mut out = Vec::with_capacity(len);
        out.push(self.entry(Position::new(i, j_min))?);
        if len > 1 {
            out.push(self.entry(Position::new(i, j_min + 1))?);
        }
        for t in 2..len {
            let j = j_min + t as i64 - 1;
            let next = self.b(j) * &out[t - 1] - &out[t - 2];
            if !next.is_positive() {
                return Err(Error::InternalInconsistency(format!(
                    "column recurrence produced {next} at ({i},{})",
                    j + 1
                )));
            }
            out.push(next);
        }
        Ok(out)
    }

    /// Growth coefficient `(u[i+m][j] + u[i][j+n]) / u[i][j]`, read at the anchor.
    pub fn growth(&self) -> BigInt {
        let (mu, nu) = (self.m as usize, self.n as usize);
        // u[m][0] and u[0][n] both sit in the fundamental rectangle
        (&self.fundamental[mu][0] + &self.fundamental[0][nu]) / &self.fundamental[0][0]
    }
}

const CACHE_LIMIT: usize = 1 << 16;

/// Evaluates `x[target]` for a sequence known on `x[0..=len]` and obeying
/// `x[t-1] + x[t+1] = c(t) * x[t]`.
fn walk_recurrence<'a, F>(known: &[&BigInt], target: i64, coeff: F) -> Result<BigInt>
where
    F: Fn(i64) -> &'a BigInt,
{
    let len = known.len() as i64 - 1;
    if (0..=len).contains(&target) {
        return Ok(known[target as usize].clone());
    }
    let (mut prev, mut cur, mut t, dir) = if target > len {
        (known[len as usize - 1].clone(), known[len as usize].clone(), len, 1)
    } else {
        (known[1].clone(), known[0].clone(), 0, -1)
    };
    while t != target {
        let next = coeff(t) * &cur - &prev;
        t += dir;
        if !next.is_positive() {
            return Err(Error::InternalInconsistency(format!(
                "three-term recurrence produced {next} at offset {t}"
            )));
        }
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// Flips corners of the periodic staircase `path` until it becomes the
/// canonical staircase through the anchor, returning the values there.
///
/// The staircase is kept as one point per anti-diagonal `d = i + j`; a flip
/// moves a corner across its unit square and replaces its value `u` with
/// `(u_prev * u_next + 1) / u`.
pub(crate) fn canonical_staircase_values(path: &LatticePath) -> Result<Vec<BigInt>> {
    let (m, n) = (path.m(), path.n());
    let len = m + n;
    let d0 = path.start().i + path.start().j;
    let points = path.points();
    let mut pos = Vec::with_capacity(len as usize);
    let mut val = Vec::with_capacity(len as usize);
    for d in 0..len {
        let k = d - d0;
        let (q, r) = (k.div_euclid(len), k.rem_euclid(len) as usize);
        pos.push(points[r].shifted(q * m, q * n));
        val.push(path.values()[r].clone());
    }

    let at = |pos: &[Position], d: i64| -> Position {
        let (q, r) = (d.div_euclid(len), d.rem_euclid(len) as usize);
        pos[r].shifted(q * m, q * n)
    };
    let target = |d: i64| -> i64 {
        let (q, r) = (d.div_euclid(len), d.rem_euclid(len));
        let base = if r <= m { r } else { 2 * m - r };
        base + q * (m - n)
    };
    let height = |p: Position| p.i - p.j;

    loop {
        let mut flipped = false;
        for d in 0..len {
            let s = height(pos[d as usize]);
            let t = target(d);
            if s == t {
                continue;
            }
            let (sp, sn) = (height(at(&pos, d - 1)), height(at(&pos, d + 1)));
            let local_min = sp == s + 1 && sn == s + 1;
            let local_max = sp == s - 1 && sn == s - 1;
            if (s < t && local_min) || (s > t && local_max) {
                let prev = &val[(d - 1).rem_euclid(len) as usize];
                let next = &val[(d + 1).rem_euclid(len) as usize];
                let num = prev * next + 1;
                let p = pos[d as usize];
                let new = exact_div(&num, &val[d as usize], || format!("flipping the corner at {p}"))?;
                pos[d as usize] = if local_min { p.shifted(1, -1) } else { p.shifted(-1, 1) };
                val[d as usize] = new;
                flipped = true;
            }
        }
        if !flipped {
            break;
        }
    }
    if (0..len).any(|d| height(pos[d as usize]) != target(d)) {
        return Err(Error::InternalInconsistency("staircase flips stalled before the anchor".into()));
    }
    let mut out = val;
    out.push(out[0].clone());
    Ok(out)
}

/// A finite rectangle of a tiling (or of any candidate table).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "WindowJson", try_from = "WindowJson")]
pub struct Window {
    /// Periods of the tiling this window came from, when known.
    pub periods: Option<(i64, i64)>,
    pub i_min: i64,
    pub j_min: i64,
    /// `entries[di][dj] = u[i_min + di][j_min + dj]` (bottom row first).
    entries: Vec<Vec<BigInt>>,
}

impl Window {
    /// `rows_bottom_up[0]` is row `i_min`.
    pub fn from_rows(i_min: i64, j_min: i64, rows_bottom_up: Vec<Vec<BigInt>>) -> Result<Self> {
        let width = rows_bottom_up.first().map_or(0, Vec::len);
        if width == 0 || rows_bottom_up.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidBounds("window rows must be non-empty and of equal length".into()));
        }
        Ok(Window { periods: None, i_min, j_min, entries: rows_bottom_up })
    }

    pub fn from_i64_rows(i_min: i64, j_min: i64, rows_bottom_up: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            i_min,
            j_min,
            rows_bottom_up.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(),
        )
    }

    pub fn with_periods(mut self, m: i64, n: i64) -> Self {
        self.periods = Some((m, n));
        self
    }

    pub fn i_max(&self) -> i64 {
        self.i_min + self.entries.len() as i64 - 1
    }

    pub fn j_max(&self) -> i64 {
        self.j_min + self.entries[0].len() as i64 - 1
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn bounds(&self) -> Bounds {
        Bounds { i_min: self.i_min, i_max: self.i_max(), j_min: self.j_min, j_max: self.j_max() }
    }

    pub fn contains(&self, p: Position) -> bool {
        (self.i_min..=self.i_max()).contains(&p.i) && (self.j_min..=self.j_max()).contains(&p.j)
    }

    pub fn get(&self, p: Position) -> Option<&BigInt> {
        if !self.contains(p) {
            return None;
        }
        Some(&self.entries[(p.i - self.i_min) as usize][(p.j - self.j_min) as usize])
    }

    pub(crate) fn at(&self, i: i64, j: i64) -> &BigInt {
        &self.entries[(i - self.i_min) as usize][(j - self.j_min) as usize]
    }

    /// Rows in storage order (bottom row first).
    pub fn rows_bottom_up(&self) -> &[Vec<BigInt>] {
        &self.entries
    }

    /// Display order: highest row first.
    pub fn rows_top_down(&self) -> impl Iterator<Item = &Vec<BigInt>> {
        self.entries.iter().rev()
    }

    /// Plain-text grid with a `# m=.. n=.. origin=(i_min,j_min)` header.
    pub fn to_text(&self) -> String {
        let (m, n) = self.periods.map_or(("?".to_string(), "?".to_string()), |(m, n)| (m.to_string(), n.to_string()));
        let mut out = format!("# m={m} n={n} origin=({},{})\n", self.i_min, self.j_min);
        for row in self.rows_top_down() {
            let line: Vec<String> = row.iter().map(BigInt::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    #[serde(default)]
    m: Option<i64>,
    #[serde(default)]
    n: Option<i64>,
    i_min: i64,
    j_min: i64,
    /// Top row first.
    rows: Vec<Vec<String>>,
}

impl From<Window> for WindowJson {
    fn from(w: Window) -> Self {
        WindowJson {
            m: w.periods.map(|p| p.0),
            n: w.periods.map(|p| p.1),
            i_min: w.i_min,
            j_min: w.j_min,
            rows: w.rows_top_down().map(|r| r.iter().map(BigInt::to_string).collect()).collect(),
        }
    }
}

impl TryFrom<WindowJson> for Window {
    type Error = Error;

    fn try_from(j: WindowJson) -> Result<Self> {
        let rows = j
            .rows
            .into_iter()
            .rev()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<BigInt>().map_err(|e| Error::Parse(format!("entry `{s}`: {e}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let w = Window::from_rows(j.i_min, j.j_min, rows)?;
        Ok(match (j.m, j.n) {
            (Some(m), Some(n)) => w.with_periods(m, n),
            _ => w,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Positivity,
    /// Every adjacent 2x2 minor equals 1.
    Minors,
    /// Every adjacent 3x3 determinant vanishes.
    Tameness,
    /// `u[i][j]` divides both its vertical and its horizontal neighbour sums.
    Divisibility,
    /// `u[i][j] = u[i+m][j+n]` on the overlap.
    Periodicity,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub condition: Condition,
    pub passes: bool,
    /// Number of positions the condition was evaluated at.
    pub tested: usize,
    pub first_failure: Option<Position>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<ConditionCheck>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passes)
    }

    pub fn get(&self, condition: Condition) -> &ConditionCheck {
        self.checks.iter().find(|c| c.condition == condition).expect("every condition is reported")
    }
}

fn scan<F>(condition: Condition, i_range: std::ops::RangeInclusive<i64>, j_range: std::ops::RangeInclusive<i64>, ok: F) -> ConditionCheck
where
    F: Fn(i64, i64) -> bool,
{
    let mut tested = 0;
    let mut first_failure = None;
    for i in i_range {
        for j in j_range.clone() {
            tested += 1;
            if first_failure.is_none() && !ok(i, j) {
                first_failure = Some(Position::new(i, j));
            }
        }
    }
    ConditionCheck { condition, passes: first_failure.is_none(), tested, first_failure }
}

fn det3(w: &Window, i: i64, j: i64) -> BigInt {
    let e = |di: i64, dj: i64| w.at(i + di, j + dj);
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

/// Checks positivity, unit minors, tameness, the divisibility corollary and
/// `(m, n)`-periodicity on a window. Failures are report content.
pub fn verify_window(w: &Window, m: i64, n: i64) -> VerificationReport {
    let (i0, i1, j0, j1) = (w.i_min, w.i_max(), w.j_min, w.j_max());
    let positivity = scan(Condition::Positivity, i0..=i1, j0..=j1, |i, j| w.at(i, j).is_positive());
    let minors = scan(Condition::Minors, i0..=i1 - 1, j0..=j1 - 1, |i, j| {
        w.at(i + 1, j) * w.at(i, j + 1) - w.at(i, j) * w.at(i + 1, j + 1) == BigInt::one()
    });
    let tameness = scan(Condition::Tameness, i0..=i1 - 2, j0..=j1 - 2, |i, j| det3(w, i, j).is_zero());
    let divisibility = scan(Condition::Divisibility, i0 + 1..=i1 - 1, j0 + 1..=j1 - 1, |i, j| {
        let u = w.at(i, j);
        !u.is_zero()
            && (w.at(i - 1, j) + w.at(i + 1, j)).is_multiple_of(u)
            && (w.at(i, j - 1) + w.at(i, j + 1)).is_multiple_of(u)
    });
    let periodicity = scan(Condition::Periodicity, i0..=i1 - m, j0..=j1 - n, |i, j| w.at(i, j) == w.at(i + m, j + n));
    VerificationReport { checks: vec![positivity, minors, tameness, divisibility, periodicity] }
}

fn translation_holds(w: &Window, dm: i64, dn: i64) -> bool {
    let (i_lo, i_hi) = (w.i_min.max(w.i_min - dm), w.i_max().min(w.i_max() - dm));
    let (j_lo, j_hi) = (w.j_min.max(w.j_min - dn), w.j_max().min(w.j_max() - dn));
    (i_lo..=i_hi).all(|i| (j_lo..=j_hi).all(|j| w.at(i, j) == w.at(i + dm, j + dn)))
}

/// All `(m, n)` with `1 <= m, n <= search_bound` such that
/// `u[i][j] = u[i+m][j+n]` on the window overlap.
pub fn detect_periods(w: &Window, search_bound: i64) -> Result<Vec<(i64, i64)>> {
    let candidates: Vec<(i64, i64)> = (1..=search_bound)
        .flat_map(|m| (1..=search_bound).map(move |n| (m, n)))
        .filter(|&(m, n)| (w.rows() as i64) > m && (w.cols() as i64) > n)
        .collect();
    if candidates.is_empty() {
        return Err(Error::WindowTooSmall(format!(
            "a {}x{} window cannot test any period up to {search_bound}",
            w.rows(),
            w.cols()
        )));
    }
    Ok(candidates.into_iter().filter(|&(m, n)| translation_holds(w, m, n)).collect())
}

/// Every non-zero translation `(dm, dn)` with `|dm|, |dn| <= bound` that
/// preserves the window, one representative per `±` pair (`dm > 0`, or
/// `dm = 0` and `dn > 0`). Translations whose overlap is empty are skipped.
pub fn detect_translations(w: &Window, bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for dm in 0..=bound {
        for dn in -bound..=bound {
            if dm == 0 && dn <= 0 {
                continue;
            }
            if (w.rows() as i64) <= dm || (w.cols() as i64) <= dn.abs() {
                continue;
            }
            if translation_holds(w, dm, dn) {
                out.push((dm, dn));
            }
        }
    }
    out
}
