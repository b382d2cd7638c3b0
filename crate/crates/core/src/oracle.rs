//! Brute-force ground truth.
//!
//! [`brute_extend`] fills a window square by square straight from the minor
//! rule and shares nothing with the staircase engine in [`crate::tiling`].
//! The other harnesses sweep whole families of triangulations or random
//! tilings and collect every discrepancy into a report.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::annulus::{canonical_form, ear_insertions, enumerate_bridging, staircase_words, with_ear_insertions, Triangulation};
use crate::bijection::{check_seed, tiling_from_triangulation, triangulation_from_tiling, LatticePath};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::tiling::{detect_translations, verify_window, Bounds, PeriodicTiling, Position, Window};

/// A fraction `(p, q)`; `(1, 0)` stands for ∞.
pub type Fraction = (i64, i64);
pub type FareyEdge = (Fraction, Fraction);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FailureKind {
    NonIntegral,
    NonPositive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BruteOutcome {
    Window(Window),
    Failure { position: Position, kind: FailureKind },
}

impl BruteOutcome {
    pub fn is_success(&self) -> bool {
        matches!(self, BruteOutcome::Window(_))
    }
}

/// Fills rows `i0 ± radius·m`, columns `j0 ± radius·n` around the path start
/// `(i0, j0)`. Every unit square with three known corners determines the
/// fourth through `u[i+1][j] u[i][j+1] - u[i][j] u[i+1][j+1] = 1`; squares
/// are processed first-in first-out, and the first inexact division or
/// non-positive value is reported.
pub fn brute_extend(path: &LatticePath, radius: i64) -> Result<BruteOutcome> {
    if radius < 1 {
        return Err(Error::InvalidBounds(format!("radius {radius} must be at least 1")));
    }
    let (m, n) = (path.m(), path.n());
    let s = path.start();
    let (i_min, j_min) = (s.i - radius * m, s.j - radius * n);
    let (rows, cols) = ((2 * radius * m + 1) as usize, (2 * radius * n + 1) as usize);
    let mut grid: Vec<Vec<Option<BigInt>>> = vec![vec![None; cols]; rows];
    let idx = |i: i64, j: i64| -> Option<(usize, usize)> {
        let (a, b) = (i - i_min, j - j_min);
        (a >= 0 && b >= 0 && (a as usize) < rows && (b as usize) < cols).then_some((a as usize, b as usize))
    };

    let mut p = s;
    let mut points = vec![(p, path.values()[0].clone())];
    for (k, step) in path.steps().iter().enumerate() {
        p = match step {
            crate::bijection::Step::Right => Position::new(p.i, p.j + 1),
            crate::bijection::Step::Up => Position::new(p.i + 1, p.j),
        };
        points.push((p, path.values()[k + 1].clone()));
    }
    for shift in -radius - 1..=radius + 1 {
        for (q, v) in &points {
            if let Some((a, b)) = idx(q.i + shift * m, q.j + shift * n) {
                if !v.is_positive() {
                    return Ok(BruteOutcome::Failure { position: Position::new(q.i, q.j), kind: FailureKind::NonPositive });
                }
                grid[a][b] = Some(v.clone());
            }
        }
    }

    // squares named by their lower-left corner
    let mut queue: VecDeque<(usize, usize)> = (0..rows - 1).flat_map(|a| (0..cols - 1).map(move |b| (a, b))).collect();
    while let Some((a, b)) = queue.pop_front() {
        let corners = [(a, b), (a + 1, b), (a, b + 1), (a + 1, b + 1)];
        let missing: Vec<usize> = (0..4).filter(|&k| grid[corners[k].0][corners[k].1].is_none()).collect();
        if missing.len() != 1 {
            continue;
        }
        let g = |k: usize| grid[corners[k].0][corners[k].1].clone().expect("known corner");
        // corners: 0 = (i,j), 1 = (i+1,j), 2 = (i,j+1), 3 = (i+1,j+1)
        let (num, den): (BigInt, BigInt) = match missing[0] {
            0 => (g(1) * g(2) - 1, g(3)),
            3 => (g(1) * g(2) - 1, g(0)),
            1 => (g(0) * g(3) + 1, g(2)),
            _ => (g(0) * g(3) + 1, g(1)),
        };
        let (ta, tb) = corners[missing[0]];
        let here = Position::new(i_min + ta as i64, j_min + tb as i64);
        let (q, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Ok(BruteOutcome::Failure { position: here, kind: FailureKind::NonIntegral });
        }
        if !q.is_positive() {
            return Ok(BruteOutcome::Failure { position: here, kind: FailureKind::NonPositive });
        }
        grid[ta][tb] = Some(q);
        for (da, db) in [(0, 0), (1, 0), (0, 1), (1, 1)] {
            if ta >= da && tb >= db && ta - da < rows - 1 && tb - db < cols - 1 {
                queue.push_back((ta - da, tb - db));
            }
        }
    }

    let filled: Option<Vec<Vec<BigInt>>> = grid.into_iter().map(|row| row.into_iter().collect()).collect();
    let filled = filled.ok_or_else(|| Error::InternalInconsistency("minor-rule fill left cells unreached".into()))?;
    Ok(BruteOutcome::Window(Window::from_rows(i_min, j_min, filled)?.with_periods(m, n)))
}

/// A uniformly random seed: staircase word, start near the origin, values
/// in `1..=max_value`, with the first value repeated at the end.
pub fn random_seed<R: Rng>(rng: &mut R, m: i64, n: i64, max_value: i64) -> LatticePath {
    let words = staircase_words(m, n);
    let word = words.choose(rng).expect("at least one staircase").clone();
    let start = Position::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2));
    let mut values: Vec<BigInt> = (0..m + n).map(|_| BigInt::from(rng.gen_range(1..=max_value))).collect();
    values.push(values[0].clone());
    LatticePath::new(m, n, start, word, values).expect("generated seeds are well formed")
}

/// A random triangulation: a random all-bridging one with twist offset in
/// `-2..=2`, then up to `max_ears` random ear insertions.
pub fn random_triangulation<R: Rng>(rng: &mut R, m: i64, n: i64, max_ears: usize) -> Triangulation {
    let words = staircase_words(m, n);
    let word = words.choose(rng).expect("at least one staircase");
    let twist = rng.gen_range(-2..=2);
    let mut t = crate::annulus::staircase_triangulation(m, n, Position::new(0, twist), word)
        .expect("staircases are triangulations");
    for _ in 0..rng.gen_range(0..=max_ears) {
        let options = ear_insertions(&t);
        t = options.choose(rng).expect("ears can always be inserted").1.clone();
    }
    t
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BijectionReport {
    pub triangulations: usize,
    /// Number of triangulations per annulus `"m,n"`.
    pub per_annulus: BTreeMap<String, usize>,
    pub roundtrip_failures: Vec<String>,
    /// Pairs of distinct triangulations whose windows coincide.
    pub collisions: Vec<(String, String)>,
    pub verification_failures: Vec<String>,
}

impl BijectionReport {
    pub fn passed(&self) -> bool {
        self.roundtrip_failures.is_empty() && self.collisions.is_empty() && self.verification_failures.is_empty()
    }
}

/// Window of `scale·m` rows and `scale·n` columns centred on the origin.
pub fn centred_bounds(m: i64, n: i64, scale: i64) -> Bounds {
    let (h, w) = (scale * m, scale * n);
    Bounds { i_min: -h / 2, i_max: -h / 2 + h - 1, j_min: -w / 2, j_max: -w / 2 + w - 1 }
}

/// Round trips, injectivity on `scale·m × scale·n` windows and window
/// verification for every all-bridging triangulation of `A(m, n)` with
/// twists in `twists`, plus everything reachable by `ear_depth` ear
/// insertions.
pub fn exhaustive_bijection_check(
    m: i64,
    n: i64,
    twists: (i64, i64),
    ear_depth: usize,
    scale: i64,
    exec: Execution,
) -> Result<BijectionReport> {
    let base = enumerate_bridging(m, n, twists.0, twists.1)?;
    bijection_check(&with_ear_insertions(&base, ear_depth), scale, exec)
}

/// The checks of [`exhaustive_bijection_check`] over an explicit family;
/// windows are compared across the whole family.
pub fn bijection_check(family: &[Triangulation], scale: i64, exec: Execution) -> Result<BijectionReport> {
    let mut all: Vec<Triangulation> = family.iter().map(canonical_form).collect();
    all.sort();
    all.dedup();
    let outcomes = exec.map(&all, |t| -> Result<(Vec<String>, Vec<String>, Window)> {
        let mut roundtrip = Vec::new();
        let mut verification = Vec::new();
        let tiling = tiling_from_triangulation(t)?;
        let back = triangulation_from_tiling(&tiling)?;
        if back != *t {
            roundtrip.push(format!("{t} came back as {back}"));
        }
        let again = tiling_from_triangulation(&back)?;
        if again != tiling {
            roundtrip.push(format!("{t}: tiling changed after a round trip"));
        }
        let w = tiling.window(centred_bounds(t.m(), t.n(), scale))?;
        let report = verify_window(&w, t.m(), t.n());
        if !report.all_pass() {
            let failed: Vec<String> =
                report.checks.iter().filter(|c| !c.passes).map(|c| format!("{:?}", c.condition)).collect();
            verification.push(format!("{t}: {}", failed.join(", ")));
        }
        Ok((roundtrip, verification, w))
    });

    let mut report = BijectionReport { triangulations: all.len(), ..Default::default() };
    let mut seen: HashMap<(i64, i64, Vec<Vec<BigInt>>), &Triangulation> = HashMap::new();
    for (t, outcome) in all.iter().zip(outcomes) {
        let (roundtrip, verification, w) = outcome?;
        *report.per_annulus.entry(format!("{},{}", t.m(), t.n())).or_default() += 1;
        report.roundtrip_failures.extend(roundtrip);
        report.verification_failures.extend(verification);
        let key = (t.m(), t.n(), w.rows_bottom_up().to_vec());
        if let Some(other) = seen.insert(key, t) {
            report.collisions.push((other.to_string(), t.to_string()));
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FalsifyReport {
    pub tilings: usize,
    /// Translations other than multiples of one vector with both
    /// coordinates positive.
    pub violations: Vec<String>,
}

impl FalsifyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the window's symmetries up to `bound` are the multiples of a
/// single primitive translation with both coordinates positive.
pub fn falsify_tiling(t: &PeriodicTiling, bound: i64) -> Result<Vec<String>> {
    let size = 3 * bound + t.m().max(t.n()) + 2;
    let w = t.window(Bounds::new(-size, size, -size, size)?)?;
    let found = detect_translations(&w, bound);
    let mut out = Vec::new();
    let Some(&(pm, pn)) = found.iter().min_by_key(|(a, b)| a.abs() + b.abs()) else {
        return Ok(out);
    };
    for &(dm, dn) in &found {
        if dm * dn <= 0 {
            out.push(format!("A({},{}) tiling is invariant under ({dm},{dn})", t.m(), t.n()));
        } else if dm * pn != dn * pm || dm % pm != 0 {
            out.push(format!("A({},{}) tiling has independent symmetries ({pm},{pn}) and ({dm},{dn})", t.m(), t.n()));
        }
    }
    if (t.m() % pm, t.n() % pn) != (0, 0) || t.m() * pn != t.n() * pm {
        out.push(format!("A({},{}) tiling has primitive symmetry ({pm},{pn})", t.m(), t.n()));
    }
    Ok(out)
}

/// Random tilings from random triangulations with `m, n <= 3`, each
/// scanned with [`falsify_tiling`].
pub fn falsify_bad_periods(trials: usize, bound: i64, seed: u64, exec: Execution) -> Result<FalsifyReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triangulations: Vec<Triangulation> = (0..trials)
        .map(|_| {
            let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
            random_triangulation(&mut rng, m, n, 1)
        })
        .collect();
    let outcomes = exec.map(&triangulations, |t| falsify_tiling(&tiling_from_triangulation(t)?, bound));
    let mut report = FalsifyReport { tilings: trials, violations: Vec::new() };
    for o in outcomes {
        report.violations.extend(o?);
    }
    Ok(report)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedFuzzReport {
    pub trials: usize,
    pub accepted: usize,
    /// Seeds on which the condition check and the brute fill disagree.
    pub disagreements: Vec<LatticePath>,
    /// Accepted seeds whose brute window differs from the extended tiling.
    pub mismatches: Vec<LatticePath>,
}

impl SeedFuzzReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.mismatches.is_empty()
    }
}

/// Random seeds with `m, n <= max_period` and values `<= max_value`:
/// the seed conditions hold exactly when [`brute_extend`] succeeds, and
/// then the brute window matches the extended tiling.
pub fn seed_fuzz(
    trials: usize,
    max_period: i64,
    max_value: i64,
    radius: i64,
    seed: u64,
    exec: Execution,
) -> Result<SeedFuzzReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seeds: Vec<LatticePath> = (0..trials)
        .map(|_| {
            let (m, n) = (rng.gen_range(1..=max_period), rng.gen_range(1..=max_period));
            random_seed(&mut rng, m, n, max_value)
        })
        .collect();
    let outcomes = exec.map(&seeds, |s| -> Result<(bool, bool, bool)> {
        let accepted = check_seed(s).all_pass();
        let brute = brute_extend(s, radius)?;
        let matches = match (&brute, accepted) {
            (BruteOutcome::Window(w), true) => {
                let t = PeriodicTiling::from_seed(s)?;
                t.window(w.bounds())?.rows_bottom_up() == w.rows_bottom_up()
            }
            _ => true,
        };
        Ok((accepted, brute.is_success(), matches))
    });
    let mut report = SeedFuzzReport { trials, ..Default::default() };
    for (s, o) in seeds.into_iter().zip(outcomes) {
        let (accepted, built, matches) = o?;
        report.accepted += usize::from(accepted);
        if accepted != built {
            report.disagreements.push(s.clone());
        }
        if !matches {
            report.mismatches.push(s);
        }
    }
    Ok(report)
}

/// Fractions `p/q` in `[lo, hi]` with `q <= max_den`, in increasing order.
pub fn farey_sequence(lo: i64, hi: i64, max_den: i64) -> Vec<(i64, i64)> {
    let mut out: Vec<(i64, i64)> = (1..=max_den)
        .flat_map(|q| (lo * q..=hi * q).map(move |p| (p, q)))
        .filter(|&(p, q)| p.gcd(&q) == 1)
        .collect();
    out.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    out
}

/// Farey edges with both endpoints in `[lo, hi]` and denominators at most
/// `max_den`, by mediant subdivision of each unit interval, plus the
/// vertical edges `(k, ∞)` encoded with denominator 0.
pub fn farey_edges(lo: i64, hi: i64, max_den: i64) -> Vec<FareyEdge> {
    fn split(l: (i64, i64), r: (i64, i64), max_den: i64, out: &mut Vec<FareyEdge>) {
        out.push((l, r));
        let med = (l.0 + r.0, l.1 + r.1);
        if med.1 <= max_den {
            split(l, med, max_den, out);
            split(med, r, max_den, out);
        }
    }
    let mut out = Vec::new();
    for k in lo..hi {
        split((k, 1), (k + 1, 1), max_den, &mut out);
    }
    for k in lo..=hi {
        out.push(((k, 1), (1, 0)));
    }
    out
}

/// Crossing count by testing every edge of a mediant subdivision that is
/// large enough: an edge crossing the geodesic `(a, c)` has an endpoint
/// strictly inside a Farey interval around `a` or `c`, hence denominators
/// below `max(q_a, q_c)`. Vertices are `(p, q)` with `q >= 0`.
pub fn crossing_count_brute(a: (i64, i64), c: (i64, i64)) -> u64 {
    let max_den = a.1.max(c.1).max(1);
    let finite = |v: (i64, i64)| if v.1 == 0 { None } else { Some(v) };
    let lo = [a, c].iter().filter_map(|&v| finite(v)).map(|(p, q)| Integer::div_floor(&p, &q)).min().unwrap_or(0) - 1;
    let hi = [a, c].iter().filter_map(|&v| finite(v)).map(|(p, q)| Integer::div_ceil(&p, &q)).max().unwrap_or(0) + 1;
    count_crossings(a, c, &farey_edges(lo, hi, max_den))
}

/// Edges strictly interleaving with `{a, c}` on the circle `ℚ ∪ {∞}`.
pub fn count_crossings(a: (i64, i64), c: (i64, i64), edges: &[FareyEdge]) -> u64 {
    // ∞ sorts last
    let cmp = |x: (i64, i64), y: (i64, i64)| -> std::cmp::Ordering {
        match (x.1 == 0, y.1 == 0) {
            (true, true) => std::cmp::Ordering::Equal,
            (true, false) => std::cmp::Ordering::Greater,
            (false, true) => std::cmp::Ordering::Less,
            (false, false) => (x.0 as i128 * y.1 as i128).cmp(&(y.0 as i128 * x.1 as i128)),
        }
    };
    let (lo, hi) = if cmp(a, c).is_lt() { (a, c) } else { (c, a) };
    let inside = |v: (i64, i64)| cmp(lo, v).is_lt() && cmp(v, hi).is_lt();
    let is_end = |v: (i64, i64)| cmp(v, lo).is_eq() || cmp(v, hi).is_eq();
    edges.iter().filter(|&&(u, v)| !is_end(u) && !is_end(v) && inside(u) != inside(v)).count() as u64
}

/// Brute crossing counts for every pair `a < c` of fractions in `[0, 1]`
/// with denominators at most `max_den`. Edges come from mediant subdivision
/// of `[0, 1]` (an edge crossing a geodesic inside `[0, 1]` has an endpoint
/// strictly inside it, so it lies in `[0, 1]` too); interleaving is tested
/// on ranks in the sorted Farey sequence.
pub fn unit_interval_crossings(max_den: i64, exec: Execution) -> Vec<(Fraction, Fraction, u64)> {
    let fracs = farey_sequence(0, 1, max_den);
    let rank: HashMap<(i64, i64), u32> = fracs.iter().enumerate().map(|(r, &f)| (f, r as u32)).collect();
    let edges: Vec<(u32, u32)> = farey_edges(0, 1, max_den)
        .into_iter()
        .filter(|(_, v)| v.1 != 0)
        .map(|(u, v)| {
            let (a, b) = (rank[&u], rank[&v]);
            (a.min(b), a.max(b))
        })
        .collect();
    let firsts: Vec<u32> = (0..fracs.len() as u32).collect();
    exec.map(&firsts, |&ra| {
        (ra + 1..fracs.len() as u32)
            .map(|rc| {
                let count = edges
                    .iter()
                    .filter(|&&(u, v)| {
                        let inside = |x: u32| ra < x && x < rc;
                        u != ra && u != rc && v != ra && v != rc && inside(u) != inside(v)
                    })
                    .count() as u64;
                (fracs[ra as usize], fracs[rc as usize], count)
            })
            .collect::<Vec<_>>()
    })
    .into_iter()
    .flatten()
    .collect()
}
