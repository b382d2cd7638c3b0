mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};
use sl2tile::annulus::{enumerate_bridging, with_ear_insertions, Triangulation};
use sl2tile::bijection::{check_seed, extend_seed, reduction_chain, LatticePath};
use sl2tile::farey::paths_from_tiling;
use sl2tile::frieze::{
    col_quiddity, frieze_from_quiddity, growth_from_frieze, monodromy, row_quiddity, QuidditySequence,
};
use sl2tile::oracle::{centred_bounds, exhaustive_bijection_check, seed_fuzz};
use sl2tile::tiling::{verify_window, Bounds, PeriodicTiling, Window};
use sl2tile::Execution;

use input::{load, load_tiling, CliResult, Failure};

/// Periodic SL2-tilings, triangulated annuli, friezes and Farey paths.
#[derive(Parser)]
#[command(name = "sl2tile", version)]
struct Cli {
    /// Run batch loops on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Row,
    Column,
}

#[derive(Args)]
struct Source {
    /// Triangulation, lattice path or window JSON (`-` for stdin).
    #[arg(long = "tiling-from", alias = "from-tiling", value_name = "FILE")]
    tiling_from: PathBuf,
}

#[derive(Args)]
struct Output {
    /// Rows i_min,i_max and columns j_min,j_max.
    #[arg(long, value_name = "I_MIN,I_MAX,J_MIN,J_MAX", allow_hyphen_values = true)]
    window: Option<Bounds>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Tiling window of a triangulation.
    Generate {
        #[arg(long, value_name = "FILE")]
        triangulation: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Tiling window extending a seed path, or its failed conditions.
    Extend {
        #[arg(long, value_name = "FILE")]
        path: PathBuf,
        #[command(flatten)]
        out: Output,
    },
    /// Integrality conditions of a seed path.
    Check {
        #[arg(long, value_name = "FILE")]
        path: PathBuf,
    },
    /// Line removals down to a tiling without quiddity entries 1.
    Reduce(Source),
    /// Row and column quiddity sequences.
    Quiddity(Source),
    /// Growth coefficient, computed three ways.
    Growth(Source),
    /// Rows of the infinite frieze on one side of a tiling, or of a quiddity.
    Frieze {
        #[arg(long = "tiling-from", alias = "from-tiling", value_name = "FILE", conflicts_with = "quiddity")]
        tiling_from: Option<PathBuf>,
        /// Comma-separated quiddity sequence.
        #[arg(long, value_delimiter = ',', required_unless_present = "tiling_from")]
        quiddity: Option<Vec<BigInt>>,
        #[arg(long, value_enum, default_value = "row")]
        side: SideArg,
        #[arg(long, default_value_t = 6)]
        rows: usize,
        #[arg(long, default_value_t = 8)]
        width: usize,
    },
    /// Farey paths P (rows) and R (columns) and the monodromy.
    Farey {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "I_MIN,I_MAX,J_MIN,J_MAX", allow_hyphen_values = true)]
        window: Bounds,
    },
    /// All-bridging triangulations of A(m,n) up to a twist range, plus ears.
    Enumerate {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[arg(long, value_name = "MIN,MAX", value_parser = parse_pair, default_value = "0,0", allow_hyphen_values = true)]
        twists: (i64, i64),
        #[arg(long, default_value_t = 0)]
        ears: usize,
    },
    /// Window of a tiling given by any supported file.
    Window {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: Output,
    },
    /// Invariant checks on a window, the exhaustive bijection check, or the seed fuzz.
    Verify(Verify),
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "mode")]
struct VerifyMode {
    /// Window JSON to check.
    #[arg(long, value_name = "FILE")]
    window: Option<PathBuf>,
    /// Exhaustive bijection check on A(m,n).
    #[arg(long, value_name = "M,N", value_parser = parse_pair, allow_hyphen_values = true)]
    exhaustive: Option<(i64, i64)>,
    /// Number of random seeds to compare against the brute fill.
    #[arg(long, value_name = "TRIALS")]
    fuzz: Option<usize>,
}

#[derive(Args)]
struct Verify {
    #[command(flatten)]
    mode: VerifyMode,
    /// Periods of the window, when not recorded in the file.
    #[arg(long, value_name = "M,N", value_parser = parse_pair, allow_hyphen_values = true)]
    periods: Option<(i64, i64)>,
    #[arg(long, value_name = "MIN,MAX", value_parser = parse_pair, default_value = "-2,2", allow_hyphen_values = true)]
    twists: (i64, i64),
    #[arg(long, default_value_t = 1)]
    ears: usize,
    #[arg(long, default_value_t = 9)]
    scale: i64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 3)]
    max_period: i64,
    #[arg(long, default_value_t = 5)]
    max_value: i64,
    #[arg(long, default_value_t = 3)]
    radius: i64,
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected `a,b`, got `{s}`"))?;
    let p = |x: &str| x.trim().parse::<i64>().map_err(|e| format!("`{x}`: {e}"));
    Ok((p(a)?, p(b)?))
}

/// Writes to stdout, ignoring a closed pipe (`sl2tile ... | head`).
fn write_out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(BigInt::to_string).collect()
}

fn emit_window(w: &Window, format: Format) -> CliResult<Value> {
    match format {
        Format::Json => Ok(serde_json::to_value(w).expect("windows serialize")),
        Format::Text => {
            write_out(&w.to_text());
            Ok(Value::Null)
        }
    }
}

fn tiling_window(t: &PeriodicTiling, out: &Output, exec: Execution) -> CliResult<Value> {
    let bounds = out.window.unwrap_or_else(|| centred_bounds(t.m(), t.n(), 3));
    let w = t.window_with(bounds, exec)?.with_periods(t.m(), t.n());
    emit_window(&w, out.format)
}

fn run(cli: Cli) -> CliResult<Value> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.command {
        Command::Generate { triangulation, out } => {
            let tri: Triangulation = load(&triangulation, "triangulation")?;
            let t = sl2tile::bijection::tiling_from_triangulation(&tri)?;
            tiling_window(&t, &out, exec)
        }
        Command::Extend { path, out } => {
            let p: LatticePath = load(&path, "lattice path")?;
            tiling_window(&extend_seed(&p)?, &out, exec)
        }
        Command::Check { path } => {
            let p: LatticePath = load(&path, "lattice path")?;
            let rep = check_seed(&p);
            let v = serde_json::to_value(&rep).expect("reports serialize");
            if rep.all_pass() {
                Ok(v)
            } else {
                Err(Failure::Domain(v))
            }
        }
        Command::Reduce(src) => {
            let t = load_tiling(&src.tiling_from)?;
            let (base, records) = reduction_chain(&t)?;
            Ok(json!({
                "m": t.m(),
                "n": t.n(),
                "removed": records,
                "base": { "m": base.m(), "n": base.n(), "seed": base.seed() },
            }))
        }
        Command::Quiddity(src) => {
            let t = load_tiling(&src.tiling_from)?;
            Ok(json!({ "rows": row_quiddity(&t), "columns": col_quiddity(&t) }))
        }
        Command::Growth(src) => {
            let t = load_tiling(&src.tiling_from)?;
            let (rq, cq) = (row_quiddity(&t), col_quiddity(&t));
            let by_frieze = growth_from_frieze(&frieze_from_quiddity(&rq)?, t.m())?;
            Ok(json!({
                "growth": t.growth().to_string(),
                "frieze_difference": by_frieze.to_string(),
                "row_monodromy_trace": monodromy(&rq).trace().to_string(),
                "column_monodromy_trace": monodromy(&cq).trace().to_string(),
            }))
        }
        Command::Frieze { tiling_from, quiddity, side, rows, width } => {
            let q = match (tiling_from, quiddity) {
                (Some(path), _) => {
                    let t = load_tiling(&path)?;
                    match side {
                        SideArg::Row => row_quiddity(&t),
                        SideArg::Column => col_quiddity(&t),
                    }
                }
                (None, Some(values)) => QuidditySequence::new(values)?,
                (None, None) => unreachable!("clap requires one source"),
            };
            let f = frieze_from_quiddity(&q)?;
            let table: Vec<Vec<String>> = f.rows(rows, 0, width).iter().map(|r| strings(r)).collect();
            Ok(json!({ "quiddity": q, "rows": table }))
        }
        Command::Farey { source, window } => {
            let t = load_tiling(&source.tiling_from)?;
            let paths = paths_from_tiling(&t, (window.i_min, window.i_max), (window.j_min, window.j_max))?;
            Ok(serde_json::to_value(&paths).expect("paths serialize"))
        }
        Command::Enumerate { m, n, twists, ears } => {
            let base = enumerate_bridging(m, n, twists.0, twists.1)?;
            let all = with_ear_insertions(&base, ears);
            Ok(serde_json::to_value(&all).expect("triangulations serialize"))
        }
        Command::Window { source, out } => {
            let t = load_tiling(&source.tiling_from)?;
            tiling_window(&t, &out, exec)
        }
        Command::Verify(v) => verify(v, exec),
    }
}

fn verify(v: Verify, exec: Execution) -> CliResult<Value> {
    let (passed, report) = if let Some(path) = &v.mode.window {
        let w: Window = load(path, "window")?;
        let (m, n) = v
            .periods
            .or(w.periods)
            .ok_or_else(|| Failure::Parse("window has no recorded periods; pass --periods m,n".into()))?;
        let rep = verify_window(&w, m, n);
        (rep.all_pass(), serde_json::to_value(&rep))
    } else if let Some((m, n)) = v.mode.exhaustive {
        let rep = exhaustive_bijection_check(m, n, v.twists, v.ears, v.scale, exec)?;
        (rep.passed(), serde_json::to_value(&rep))
    } else {
        let trials = v.mode.fuzz.expect("clap requires one mode");
        let rep = seed_fuzz(trials, v.max_period, v.max_value, v.radius, v.seed, exec)?;
        (rep.passed(), serde_json::to_value(&rep))
    };
    let report = report.expect("reports serialize");
    if passed {
        Ok(report)
    } else {
        Err(Failure::Domain(report))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Value::Null) => ExitCode::SUCCESS,
        Ok(v) => {
            write_out(&(serde_json::to_string_pretty(&v).expect("values serialize") + "\n"));
            ExitCode::SUCCESS
        }
        Err(f) => {
            let code = f.code();
            match f {
                Failure::Parse(msg) => eprintln!("error: {msg}"),
                Failure::Domain(v) => eprintln!("{}", serde_json::to_string_pretty(&v).expect("values serialize")),
            }
            ExitCode::from(code)
        }
    }
}
