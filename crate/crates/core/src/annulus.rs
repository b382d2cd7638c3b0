//! Triangulations of the marked annulus `A(m, n)`.
//!
//! Marked points `P_0 .. P_{m-1}` sit on the outer boundary and
//! `Q_0 .. Q_{n-1}` on the inner one. Arcs live on the universal cover, a
//! strip with lifts `P̂_i`, `Q̂_j` for all integers, where the deck
//! transformation is `(i, j) -> (i + m, j + n)`. A bridging arc `P_p Q_q` is
//! stored through the lift with `0 <= p < m`; the unbounded `q` carries the
//! twisting of the arc around the annulus.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bijection::Step;
use crate::error::{Error, Result};
use crate::tiling::{check_periods, Position};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Boundary {
    P,
    Q,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MarkedAnnulus {
    m: i64,
    n: i64,
}

impl MarkedAnnulus {
    pub fn new(m: i64, n: i64) -> Result<Self> {
        check_periods(m, n)?;
        Ok(MarkedAnnulus { m, n })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn points_on(&self, b: Boundary) -> i64 {
        match b {
            Boundary::P => self.m,
            Boundary::Q => self.n,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arc {
    /// `P̂_p Q̂_q` and all its translates `P̂_{p+km} Q̂_{q+kn}`.
    Bridging { p: i64, q: i64 },
    /// `P̂_from P̂_{from+span}`, with `2 <= span <= m`.
    PeripheralP { from: i64, span: i64 },
    /// `Q̂_from Q̂_{from+span}`, with `2 <= span <= n`.
    PeripheralQ { from: i64, span: i64 },
}

impl Arc {
    pub fn bridging(p: i64, q: i64) -> Self {
        Arc::Bridging { p, q }
    }

    pub fn peripheral(boundary: Boundary, from: i64, span: i64) -> Self {
        match boundary {
            Boundary::P => Arc::PeripheralP { from, span },
            Boundary::Q => Arc::PeripheralQ { from, span },
        }
    }

    pub fn is_bridging(&self) -> bool {
        matches!(self, Arc::Bridging { .. })
    }

    /// Representative lift: `0 <= p < m` for bridging arcs, `0 <= from < m`
    /// (resp. `n`) for peripheral ones.
    pub fn normalized(self, a: &MarkedAnnulus) -> Arc {
        match self {
            Arc::Bridging { p, q } => {
                let k = p.div_euclid(a.m);
                Arc::Bridging { p: p - k * a.m, q: q - k * a.n }
            }
            Arc::PeripheralP { from, span } => Arc::PeripheralP { from: from.rem_euclid(a.m), span },
            Arc::PeripheralQ { from, span } => Arc::PeripheralQ { from: from.rem_euclid(a.n), span },
        }
    }

    pub fn validate(&self, a: &MarkedAnnulus) -> Result<()> {
        let (span, limit, side) = match *self {
            Arc::Bridging { .. } => return Ok(()),
            Arc::PeripheralP { span, .. } => (span, a.m, "P"),
            Arc::PeripheralQ { span, .. } => (span, a.n, "Q"),
        };
        if span < 2 || span > limit {
            return Err(Error::InvalidTriangulation(format!(
                "peripheral {side}-arc span {span} outside [2, {limit}]"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arc::Bridging { p, q } => write!(f, "P{p}-Q{q}"),
            Arc::PeripheralP { from, span } => write!(f, "P{from}-P{}", from + span),
            Arc::PeripheralQ { from, span } => write!(f, "Q{from}-Q{}", from + span),
        }
    }
}

/// Is there an integer strictly between `a/b` and `c/d` (`b, d > 0`)?
fn integer_strictly_between(a: i64, b: i64, c: i64, d: i64) -> bool {
    let (a, b, c, d) = (a as i128, b as i128, c as i128, d as i128);
    let (lo_n, lo_d, hi_n, hi_d) = if a * d <= c * b { (a, b, c, d) } else { (c, d, a, b) };
    let k = lo_n.div_euclid(lo_d) + 1;
    k * hi_d < hi_n
}

/// Strict interleaving of `[f, f + s]` with some translate of `[g, g + t]` by
/// multiples of `period`.
fn intervals_interleave(f: i64, s: i64, g: i64, t: i64, period: i64) -> bool {
    let k_lo = (f - t - g).div_euclid(period) - 1;
    let k_hi = (f + s - g).div_euclid(period) + 1;
    (k_lo..=k_hi).any(|k| {
        let g = g + k * period;
        (f < g && g < f + s && f + s < g + t) || (g < f && f < g + t && g + t < f + s)
    })
}

/// Whether some lifts of the two arcs cross in the interior of the strip.
pub fn crosses(a1: &Arc, a2: &Arc, annulus: &MarkedAnnulus) -> bool {
    let (m, n) = (annulus.m, annulus.n);
    match (*a1, *a2) {
        (Arc::Bridging { p: p1, q: q1 }, Arc::Bridging { p: p2, q: q2 }) => {
            // lifts (p1,q1) and (p2+km, q2+kn) cross iff k lies strictly between dp/m and dq/n
            integer_strictly_between(p1 - p2, m, q1 - q2, n)
        }
        (Arc::PeripheralP { from, span }, Arc::Bridging { p, .. })
        | (Arc::Bridging { p, .. }, Arc::PeripheralP { from, span }) => {
            let r = (p - from).rem_euclid(m);
            0 < r && r < span
        }
        (Arc::PeripheralQ { from, span }, Arc::Bridging { q, .. })
        | (Arc::Bridging { q, .. }, Arc::PeripheralQ { from, span }) => {
            let r = (q - from).rem_euclid(n);
            0 < r && r < span
        }
        (Arc::PeripheralP { from: f, span: s }, Arc::PeripheralP { from: g, span: t }) => {
            intervals_interleave(f, s, g, t, m)
        }
        (Arc::PeripheralQ { from: f, span: s }, Arc::PeripheralQ { from: g, span: t }) => {
            intervals_interleave(f, s, g, t, n)
        }
        (Arc::PeripheralP { .. }, Arc::PeripheralQ { .. }) | (Arc::PeripheralQ { .. }, Arc::PeripheralP { .. }) => false,
    }
}

/// Pairwise non-crossing, valid, distinct, and exactly `m + n` of them.
pub fn is_triangulation(arcs: &[Arc], annulus: &MarkedAnnulus) -> bool {
    triangulation_problem(arcs, annulus).is_none()
}

fn triangulation_problem(arcs: &[Arc], annulus: &MarkedAnnulus) -> Option<String> {
    let expected = (annulus.m + annulus.n) as usize;
    if arcs.len() != expected {
        return Some(format!("{} arcs, a triangulation of A({},{}) has {expected}", arcs.len(), annulus.m, annulus.n));
    }
    for a in arcs {
        if let Err(e) = a.validate(annulus) {
            return Some(e.to_string());
        }
    }
    let normalized: BTreeSet<Arc> = arcs.iter().map(|a| a.normalized(annulus)).collect();
    if normalized.len() != arcs.len() {
        return Some("repeated arc".into());
    }
    for (x, a) in arcs.iter().enumerate() {
        for b in &arcs[x + 1..] {
            if crosses(a, b, annulus) {
                return Some(format!("arcs {a} and {b} cross"));
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triangulation {
    annulus: MarkedAnnulus,
    /// Normalized and sorted.
    arcs: Vec<Arc>,
}

impl PartialOrd for MarkedAnnulus {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MarkedAnnulus {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.m, self.n).cmp(&(other.m, other.n))
    }
}

impl Triangulation {
    pub fn new(annulus: MarkedAnnulus, arcs: Vec<Arc>) -> Result<Self> {
        if let Some(problem) = triangulation_problem(&arcs, &annulus) {
            return Err(Error::InvalidTriangulation(problem));
        }
        let mut arcs: Vec<Arc> = arcs.into_iter().map(|a| a.normalized(&annulus)).collect();
        arcs.sort();
        Ok(Triangulation { annulus, arcs })
    }

    pub fn annulus(&self) -> &MarkedAnnulus {
        &self.annulus
    }

    pub fn m(&self) -> i64 {
        self.annulus.m
    }

    pub fn n(&self) -> i64 {
        self.annulus.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn contains(&self, arc: &Arc) -> bool {
        self.arcs.binary_search(&arc.normalized(&self.annulus)).is_ok()
    }

    pub fn is_all_bridging(&self) -> bool {
        self.arcs.iter().all(Arc::is_bridging)
    }

    /// Number of arc endpoints at a marked point.
    pub fn degree(&self, boundary: Boundary, index: i64) -> usize {
        let a = &self.annulus;
        self.arcs
            .iter()
            .map(|arc| match (*arc, boundary) {
                (Arc::Bridging { p, .. }, Boundary::P) => usize::from((p - index).rem_euclid(a.m) == 0),
                (Arc::Bridging { q, .. }, Boundary::Q) => usize::from((q - index).rem_euclid(a.n) == 0),
                (Arc::PeripheralP { from, span }, Boundary::P) => {
                    usize::from((from - index).rem_euclid(a.m) == 0) + usize::from((from + span - index).rem_euclid(a.m) == 0)
                }
                (Arc::PeripheralQ { from, span }, Boundary::Q) => {
                    usize::from((from - index).rem_euclid(a.n) == 0) + usize::from((from + span - index).rem_euclid(a.n) == 0)
                }
                _ => 0,
            })
            .sum()
    }

    /// For an all-bridging triangulation: the staircase of its lifts starting
    /// at the lowest lift on row `i = 0`.
    pub fn bridging_staircase(&self) -> Option<(Position, Vec<Step>)> {
        if !self.is_all_bridging() {
            return None;
        }
        let (m, n) = (self.m(), self.n());
        let mut lifts: Vec<Position> = self
            .arcs
            .iter()
            .map(|a| match *a {
                Arc::Bridging { p, q } => Position::new(p, q),
                _ => unreachable!(),
            })
            .collect();
        lifts.sort();
        let start = lifts[0];
        lifts.push(start.shifted(m, n));
        let mut steps = Vec::with_capacity(lifts.len() - 1);
        for w in lifts.windows(2) {
            match (w[1].i - w[0].i, w[1].j - w[0].j) {
                (0, 1) => steps.push(Step::Right),
                (1, 0) => steps.push(Step::Up),
                _ => return None,
            }
        }
        Some((start, steps))
    }

    /// Relabels one boundary: every index on it grows by `shift`. Shifting
    /// `Q` by `n` is one Dehn twist.
    pub fn rotate(&self, boundary: Boundary, shift: i64) -> Triangulation {
        let arcs = self
            .arcs
            .iter()
            .map(|arc| match (*arc, boundary) {
                (Arc::Bridging { p, q }, Boundary::P) => Arc::Bridging { p: p + shift, q },
                (Arc::Bridging { p, q }, Boundary::Q) => Arc::Bridging { p, q: q + shift },
                (Arc::PeripheralP { from, span }, Boundary::P) => Arc::PeripheralP { from: from + shift, span },
                (Arc::PeripheralQ { from, span }, Boundary::Q) => Arc::PeripheralQ { from: from + shift, span },
                (other, _) => other,
            })
            .collect();
        Triangulation::new(self.annulus, arcs).expect("relabelling preserves triangulations")
    }

    pub fn dehn_twist(&self, times: i64) -> Triangulation {
        self.rotate(Boundary::Q, times * self.n())
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<String> = self.arcs.iter().map(Arc::to_string).collect();
        write!(f, "A({},{}) {{{}}}", self.m(), self.n(), arcs.join(", "))
    }
}

/// Lexicographically minimal representative: every arc on its normalized
/// lift, arcs sorted.
pub fn canonical_form(t: &Triangulation) -> Triangulation {
    Triangulation::new(t.annulus, t.arcs.clone()).expect("a valid triangulation stays valid")
}

/// The two-fan triangulation with arcs on the staircase
/// `(0,0), (1,0), ..., (m,0), (m,1), ..., (m,n-1)`.
pub fn fan_triangulation(m: i64, n: i64) -> Result<Triangulation> {
    let annulus = MarkedAnnulus::new(m, n)?;
    let arcs = (0..m).map(|i| Arc::bridging(i, 0)).chain((0..n).map(|j| Arc::bridging(m, j))).collect();
    Triangulation::new(annulus, arcs)
}

/// The all-bridging triangulation whose arcs are the points of the periodic
/// staircase starting at `start` with the given steps.
pub fn staircase_triangulation(m: i64, n: i64, start: Position, steps: &[Step]) -> Result<Triangulation> {
    let annulus = MarkedAnnulus::new(m, n)?;
    let mut p = start;
    let mut arcs = Vec::with_capacity(steps.len());
    for s in steps {
        arcs.push(Arc::bridging(p.i, p.j));
        p = match s {
            Step::Right => p.shifted(0, 1),
            Step::Up => p.shifted(1, 0),
        };
    }
    if p != start.shifted(m, n) {
        return Err(Error::InvalidPath(format!("steps do not end at {}", start.shifted(m, n))));
    }
    Triangulation::new(annulus, arcs)
}

/// Marked points all of whose arcs were removed except the two boundary
/// sides of a single triangle, i.e. those bridged by a span-2 peripheral arc.
pub fn ears(t: &Triangulation) -> Vec<(Boundary, i64)> {
    let mut out = Vec::new();
    for boundary in [Boundary::P, Boundary::Q] {
        let k = t.annulus.points_on(boundary);
        if k < 2 {
            continue;
        }
        for idx in 0..k {
            if t.contains(&Arc::peripheral(boundary, idx - 1, 2)) {
                out.push((boundary, idx));
            }
        }
    }
    out
}

/// Data needed to undo an ear removal exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EarRecord {
    pub boundary: Boundary,
    /// Index of the removed point in the larger annulus.
    pub removed_vertex_index: i64,
    /// Index, in the smaller annulus, of the point the ear sits after.
    pub insertion_position: i64,
}

/// Index map from the larger boundary (`k + 1` points) to the smaller one
/// (`k` points) when point `r` is deleted; `idx` must not be a lift of `r`.
fn shrink_index(idx: i64, k_big: i64, r: i64) -> i64 {
    let (q, s) = (idx.div_euclid(k_big), idx.rem_euclid(k_big));
    debug_assert_ne!(s, r);
    q * (k_big - 1) + s - i64::from(s > r)
}

fn grow_index(idx: i64, k_small: i64, r: i64) -> i64 {
    let (q, s) = (idx.div_euclid(k_small), idx.rem_euclid(k_small));
    q * (k_small + 1) + s + i64::from(s >= r)
}

pub fn remove_ear(t: &Triangulation, boundary: Boundary, index: i64) -> Result<(Triangulation, EarRecord)> {
    let k = t.annulus.points_on(boundary);
    if k == 1 {
        return Err(Error::WouldEmptyBoundary(boundary));
    }
    let r = index.rem_euclid(k);
    if !ears(t).contains(&(boundary, r)) {
        return Err(Error::NotAnEar { boundary, index });
    }
    let ear_arc = Arc::peripheral(boundary, r - 1, 2).normalized(&t.annulus);
    let arcs = t
        .arcs
        .iter()
        .filter(|a| **a != ear_arc)
        .map(|arc| match (*arc, boundary) {
            (Arc::Bridging { p, q }, Boundary::P) => Arc::Bridging { p: shrink_index(p, k, r), q },
            (Arc::Bridging { p, q }, Boundary::Q) => Arc::Bridging { p, q: shrink_index(q, k, r) },
            (Arc::PeripheralP { from, span }, Boundary::P) => {
                let f = shrink_index(from, k, r);
                Arc::PeripheralP { from: f, span: shrink_index(from + span, k, r) - f }
            }
            (Arc::PeripheralQ { from, span }, Boundary::Q) => {
                let f = shrink_index(from, k, r);
                Arc::PeripheralQ { from: f, span: shrink_index(from + span, k, r) - f }
            }
            (other, _) => other,
        })
        .collect();
    let small = match boundary {
        Boundary::P => MarkedAnnulus::new(t.m() - 1, t.n())?,
        Boundary::Q => MarkedAnnulus::new(t.m(), t.n() - 1)?,
    };
    let record = EarRecord { boundary, removed_vertex_index: r, insertion_position: (r - 1).rem_euclid(k - 1) };
    Ok((Triangulation::new(small, arcs)?, record))
}

pub fn insert_ear(t: &Triangulation, record: &EarRecord) -> Result<Triangulation> {
    let boundary = record.boundary;
    let k = t.annulus.points_on(boundary);
    let r = record.removed_vertex_index;
    if !(0..=k).contains(&r) {
        return Err(Error::IndexOutOfRange(format!("ear index {r} outside [0, {k}]")));
    }
    if record.insertion_position != (r - 1).rem_euclid(k) {
        return Err(Error::IndexOutOfRange(format!(
            "insertion position {} does not precede ear index {r} on a boundary with {k} points",
            record.insertion_position
        )));
    }
    let mut arcs: Vec<Arc> = t
        .arcs
        .iter()
        .map(|arc| match (*arc, boundary) {
            (Arc::Bridging { p, q }, Boundary::P) => Arc::Bridging { p: grow_index(p, k, r), q },
            (Arc::Bridging { p, q }, Boundary::Q) => Arc::Bridging { p, q: grow_index(q, k, r) },
            (Arc::PeripheralP { from, span }, Boundary::P) => {
                let f = grow_index(from, k, r);
                Arc::PeripheralP { from: f, span: grow_index(from + span, k, r) - f }
            }
            (Arc::PeripheralQ { from, span }, Boundary::Q) => {
                let f = grow_index(from, k, r);
                Arc::PeripheralQ { from: f, span: grow_index(from + span, k, r) - f }
            }
            (other, _) => other,
        })
        .collect();
    arcs.push(Arc::peripheral(boundary, r - 1, 2));
    let big = match boundary {
        Boundary::P => MarkedAnnulus::new(t.m() + 1, t.n())?,
        Boundary::Q => MarkedAnnulus::new(t.m(), t.n() + 1)?,
    };
    Triangulation::new(big, arcs)
}

/// Every way to add one ear to `t`.
pub fn ear_insertions(t: &Triangulation) -> Vec<(EarRecord, Triangulation)> {
    let mut out = Vec::new();
    for boundary in [Boundary::P, Boundary::Q] {
        let k = t.annulus.points_on(boundary);
        for r in 0..=k {
            let record = EarRecord { boundary, removed_vertex_index: r, insertion_position: (r - 1).rem_euclid(k) };
            let big = insert_ear(t, &record).expect("ear insertion positions are always valid");
            out.push((record, big));
        }
    }
    out
}

/// All step words with `m` up-steps and `n` right-steps, in lexicographic
/// order of their letters (`R` before `U`).
pub fn staircase_words(m: i64, n: i64) -> Vec<Vec<Step>> {
    fn go(ups: i64, rights: i64, cur: &mut Vec<Step>, out: &mut Vec<Vec<Step>>) {
        if ups == 0 && rights == 0 {
            out.push(cur.clone());
            return;
        }
        if rights > 0 {
            cur.push(Step::Right);
            go(ups, rights - 1, cur, out);
            cur.pop();
        }
        if ups > 0 {
            cur.push(Step::Up);
            go(ups - 1, rights, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(m, n, &mut Vec::new(), &mut out);
    out
}

/// All-bridging triangulations: the `C(m+n, m)` staircases from `(0, t)` for
/// each offset `t` in `[twist_min, twist_max]`, deduplicated and sorted.
pub fn enumerate_bridging(m: i64, n: i64, twist_min: i64, twist_max: i64) -> Result<Vec<Triangulation>> {
    check_periods(m, n)?;
    if twist_min > twist_max {
        return Err(Error::InvalidBounds(format!("twist range {twist_min}..={twist_max} is empty")));
    }
    let mut out = BTreeSet::new();
    for word in staircase_words(m, n) {
        for t in twist_min..=twist_max {
            out.insert(staircase_triangulation(m, n, Position::new(0, t), &word)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// `base` together with everything reachable by inserting up to `depth` ears.
pub fn with_ear_insertions(base: &[Triangulation], depth: usize) -> Vec<Triangulation> {
    let mut all: BTreeSet<Triangulation> = base.iter().cloned().collect();
    let mut frontier: Vec<Triangulation> = base.to_vec();
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            for (_, big) in ear_insertions(t) {
                if all.insert(big.clone()) {
                    next.push(big);
                }
            }
        }
        frontier = next;
    }
    all.into_iter().collect()
}

#[derive(Serialize, Deserialize)]
struct PeripheralJson {
    boundary: Boundary,
    from: i64,
    span: i64,
}

#[derive(Serialize, Deserialize)]
struct TriangulationJson {
    m: i64,
    n: i64,
    bridging: Vec<[i64; 2]>,
    #[serde(default)]
    peripheral: Vec<PeripheralJson>,
}

impl Serialize for Triangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let canon = canonical_form(self);
        let mut json = TriangulationJson { m: self.m(), n: self.n(), bridging: Vec::new(), peripheral: Vec::new() };
        for arc in canon.arcs {
            match arc {
                Arc::Bridging { p, q } => json.bridging.push([p, q]),
                Arc::PeripheralP { from, span } => json.peripheral.push(PeripheralJson { boundary: Boundary::P, from, span }),
                Arc::PeripheralQ { from, span } => json.peripheral.push(PeripheralJson { boundary: Boundary::Q, from, span }),
            }
        }
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let json = TriangulationJson::deserialize(d)?;
        let annulus = MarkedAnnulus::new(json.m, json.n).map_err(D::Error::custom)?;
        let arcs = json
            .bridging
            .iter()
            .map(|[p, q]| Arc::bridging(*p, *q))
            .chain(json.peripheral.iter().map(|a| Arc::peripheral(a.boundary, a.from, a.span)))
            .collect();
        Triangulation::new(annulus, arcs).map_err(D::Error::custom)
    }
}
