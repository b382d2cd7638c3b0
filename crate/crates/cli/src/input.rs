//! Reading input files and classifying failures into exit codes.

use std::fs;
use std::io::Read;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{json, Value};
use sl2tile::annulus::Triangulation;
use sl2tile::bijection::{extend_seed, tiling_from_triangulation, LatticePath, Step};
use sl2tile::tiling::{detect_periods, verify_window, PeriodicTiling, Position, Window};

pub enum Failure {
    /// Malformed input: exit 2.
    Parse(String),
    /// Well-formed input the mathematics rejects: exit 1, report on stderr.
    Domain(Value),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Parse(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

impl From<sl2tile::Error> for Failure {
    fn from(e: sl2tile::Error) -> Self {
        match e {
            sl2tile::Error::Parse(msg) => Failure::Parse(msg),
            sl2tile::Error::PreconditionViolated(report) => {
                Failure::Domain(json!({ "error": "seed conditions violated", "report": report }))
            }
            other => Failure::Domain(json!({ "error": other.to_string() })),
        }
    }
}

pub type CliResult<T> = Result<T, Failure>;

/// File contents, or standard input for `-`.
fn read_source(path: &Path) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| Failure::Parse(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn parse_value(path: &Path) -> CliResult<Value> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn from_value<T: DeserializeOwned>(v: Value, what: &str) -> CliResult<T> {
    serde_json::from_value(v).map_err(|e| Failure::Parse(format!("not a {what}: {e}")))
}

pub fn load<T: DeserializeOwned>(path: &Path, what: &str) -> CliResult<T> {
    from_value(parse_value(path)?, what)
}

/// A tiling from a triangulation, a seed path or a window file, told apart
/// by their keys.
pub fn load_tiling(path: &Path) -> CliResult<PeriodicTiling> {
    let v = parse_value(path)?;
    let has = |k: &str| v.get(k).is_some();
    if has("bridging") || has("peripheral") {
        let t: Triangulation = from_value(v, "triangulation")?;
        Ok(tiling_from_triangulation(&t)?)
    } else if has("steps") {
        let p: LatticePath = from_value(v, "lattice path")?;
        Ok(extend_seed(&p)?)
    } else if has("rows") {
        let w: Window = from_value(v, "window")?;
        tiling_from_window(&w)
    } else {
        Err(Failure::Parse("expected a triangulation, lattice path or window".into()))
    }
}

/// Reads the staircase `U^m R^n` from the window's lower-left corner and
/// checks that its extension reproduces the whole window.
fn tiling_from_window(w: &Window) -> CliResult<PeriodicTiling> {
    let (m, n) = match w.periods {
        Some(p) => p,
        None => {
            let bound = (w.rows().min(w.cols()) as i64 - 1) / 2;
            *detect_periods(w, bound.max(1))?
                .first()
                .ok_or_else(|| Failure::Domain(json!({ "error": "window has no period (m, n) with m, n >= 1" })))?
        }
    };
    let rep = verify_window(w, m, n);
    if !rep.all_pass() {
        return Err(Failure::Domain(json!({ "error": "window is not a tiling window", "report": rep })));
    }
    let start = Position::new(w.i_min, w.j_min);
    let steps: Vec<Step> =
        std::iter::repeat_n(Step::Up, m as usize).chain(std::iter::repeat_n(Step::Right, n as usize)).collect();
    let mut p = start;
    let mut values = Vec::new();
    for s in std::iter::once(None).chain(steps.iter().map(Some)) {
        match s {
            Some(Step::Up) => p = p.shifted(1, 0),
            Some(Step::Right) => p = p.shifted(0, 1),
            None => {}
        }
        let v = w.get(p).ok_or_else(|| {
            Failure::Domain(json!({ "error": format!("window is smaller than one period ({m}, {n})") }))
        })?;
        values.push(v.clone());
    }
    let t = extend_seed(&LatticePath::new(m, n, start, steps, values)?)?;
    if t.window(w.bounds())?.rows_bottom_up() != w.rows_bottom_up() {
        return Err(Failure::Domain(json!({ "error": "window is not determined by its periods" })));
    }
    Ok(t)
}
