//! Subcommands of the `ncw` binary. `run` returns the exit code and the text
//! to print so the whole front end can be tested in-process.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ncw_bv::{bv_operator, curvature_trace, torsion, torsion_mismatches, BvError, Connection};
use ncw_calculus::{double_bracket, necklace_cobracket, target_shift, wheeled_bracket, NecklaceSym};
use ncw_core::{parse_scalar, Quiver, Q};
use ncw_diffops::{apply_op, symbol_data};
use ncw_rep::{ev_wheel, DimVector, RepPoint, WheelValue};
use ncw_wheel::WheelElement;
use serde_json::{json, Value as Json};

use crate::expr::{as_ncpoly, eval_str, Value};
use crate::suites::{run_suite, Params};

#[derive(Parser, Debug)]
#[command(name = "ncw", version, about = "Exact wheeled noncommutative calculus on quiver path algebras")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Quiver spec as JSON; overrides --loops.
    #[arg(long, global = true)]
    quiver: Option<String>,
    /// One-vertex quiver with these loops.
    #[arg(long, global = true, default_value = "x", value_delimiter = ',')]
    loops: Vec<String>,
    /// Parity of the star arrows: 1 for the odd (BV) regime, 0 for the even one.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    parity: u8,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Connection spec as JSON; defaults to the trivial connection.
    #[arg(long, global = true)]
    connection: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Wheeled bracket {A, B}.
    Bracket { a: String, b: String },
    /// Double bracket of two path polynomials.
    Dbracket { a: String, b: String },
    /// Necklace cobracket of a combination of necklaces.
    Cobracket { a: String },
    /// BV operator of the connection.
    Bv { a: String },
    /// Torsion of the connection.
    Torsion,
    /// Curvature trace of the connection.
    Curvtrace,
    /// Degree-N symbol datum of an operator.
    Symbol { op: String, n: usize },
    /// Applies an operator to a wheel element.
    Apply { op: String, a: String },
    /// Evaluates in the representation functor.
    Ev {
        a: String,
        /// Dimension vector, e.g. `v=2,w=3` or a single number.
        #[arg(long, default_value = "2")]
        dim: String,
        /// JSON object mapping arrow names to matrices.
        #[arg(long)]
        point: Option<String>,
    },
    /// Runs an identity-check suite.
    Check {
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[arg(long, default_value_t = 3)]
        max_deg: usize,
        #[arg(long, default_value_t = 24)]
        cases: usize,
        /// Matrix sizes for the oracle suite.
        #[arg(long, default_value = "2,3", value_delimiter = ',')]
        dims: Vec<usize>,
    },
}

struct Failure(i32, String);

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure(2, format!("error: {e}\n"))
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code with the report.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match execute(&cli) {
        Ok((code, out)) => (code, out),
        Err(Failure(code, msg)) => (code, msg),
    }
}

fn read(path: &str) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))
}

fn load_quiver(g: &Global) -> Result<Quiver, Failure> {
    match &g.quiver {
        Some(path) => Quiver::from_json(&read(path)?).map_err(usage),
        None => {
            let names: Vec<&str> = g.loops.iter().map(String::as_str).collect();
            Ok(Quiver::loops(&names, g.parity))
        }
    }
}

fn load_connection(q: &Quiver, g: &Global) -> Result<Connection, Failure> {
    let Some(path) = &g.connection else { return Ok(Connection::trivial()) };
    Connection::from_json_with(q, &read(path)?, |s| {
        let u = eval_str(q, s).and_then(Value::into_wheel).map_err(|e| BvError::BadConnection(format!("{s:?}: {e}")))?;
        as_ncpoly(&u).map_err(|e| BvError::BadConnection(format!("{s:?}: {e}")))
    })
    .map_err(usage)
}

fn wheel(q: &Quiver, text: &str) -> Result<WheelElement, Failure> {
    eval_str(q, text).and_then(Value::into_wheel).map_err(|e| usage(format!("{text:?}: {e}")))
}

fn value(q: &Quiver, text: &str) -> Result<Value, Failure> {
    eval_str(q, text).map_err(|e| usage(format!("{text:?}: {e}")))
}

fn report(format: Format, command: &str, inputs: Json, output: String) -> (i32, String) {
    match format {
        Format::Text => (0, format!("{output}\n")),
        Format::Json => (0, format!("{}\n", json!({"command": command, "inputs": inputs, "output": output}))),
    }
}

fn execute(cli: &Cli) -> Result<(i32, String), Failure> {
    let g = &cli.global;
    let q = load_quiver(g)?;
    let fmt = g.format;
    Ok(match &cli.command {
        Command::Bracket { a, b } => {
            let out = wheeled_bracket(&q, &wheel(&q, a)?, &wheel(&q, b)?);
            report(fmt, "bracket", json!([a, b]), out.render(&q))
        }
        Command::Dbracket { a, b } => {
            let poly = |t: &str| wheel(&q, t).and_then(|u| as_ncpoly(&u).map_err(|e| usage(format!("{t:?}: {e}"))));
            let out = double_bracket(&q, &poly(a)?, &poly(b)?);
            report(fmt, "dbracket", json!([a, b]), out.render(&q))
        }
        Command::Cobracket { a } => {
            let u = wheel(&q, a)?;
            let mut out = NecklaceSym::<Q>::zero(target_shift(&q));
            for (t, c) in u.terms() {
                match t.loops.as_slice() {
                    [w] if t.degree() == 0 => out.add_scaled(c, &necklace_cobracket(&q, w)),
                    _ => return Err(usage(format!("{a:?}: expected a combination of single necklaces"))),
                }
            }
            report(fmt, "cobracket", json!([a]), out.render(&q))
        }
        Command::Bv { a } => {
            let conn = load_connection(&q, g)?;
            let out = bv_operator(&q, &conn, &wheel(&q, a)?);
            report(fmt, "bv", json!({"element": a, "connection": conn.to_json(&q)}), out.render(&q))
        }
        Command::Torsion => {
            let conn = load_connection(&q, g)?;
            let bad = torsion_mismatches(&q, &conn).map_err(usage)?;
            if !bad.is_empty() {
                return Err(Failure(1, format!("torsion formula disagrees on {} generator pairs\n", bad.len())));
            }
            report(fmt, "torsion", json!({"connection": conn.to_json(&q)}), torsion(&q, &conn).render(&q))
        }
        Command::Curvtrace => {
            let conn = load_connection(&q, g)?;
            let out = curvature_trace(&q, &conn).map_err(usage)?;
            report(fmt, "curvtrace", json!({"connection": conn.to_json(&q)}), out.render(&q))
        }
        Command::Symbol { op, n } => {
            let d = value(&q, op)?.into_op(&q).map_err(usage)?;
            report(fmt, "symbol", json!({"operator": op, "n": n}), symbol_data(&q, &d, *n).render(&q))
        }
        Command::Apply { op, a } => {
            let d = value(&q, op)?.into_op(&q).map_err(usage)?;
            report(fmt, "apply", json!([op, a]), apply_op(&q, &d, &wheel(&q, a)?).render(&q))
        }
        Command::Ev { a, dim, point } => {
            let pt = match point {
                Some(path) => load_point(&q, &read(path)?)?,
                None => RepPoint::generic(DimVector::parse(&q, dim).map_err(usage)?),
            };
            let v = ev_wheel(&q, &pt, &wheel(&q, a)?).map_err(usage)?;
            report(fmt, "ev", json!({"element": a, "dim": dim, "point": point}), render_value(&q, &v))
        }
        Command::Check { suite, seed, max_len, max_deg, cases, dims } => {
            let params = Params { seed: *seed, max_len: *max_len, max_deg: *max_deg, cases: *cases, dims: dims.clone() };
            if dims.is_empty() || dims.contains(&0) {
                return Err(usage("--dims needs positive sizes"));
            }
            let reports = run_suite(suite, &params)
                .ok_or_else(|| usage(format!("unknown suite {suite:?}; expected one of {}, all", crate::suites::SUITE_NAMES.join(", "))))?;
            let ok = reports.iter().all(|r| r.passed());
            let out = match fmt {
                Format::Text => {
                    let mut s = String::new();
                    for r in &reports {
                        let status = if r.passed() { "PASS" } else { "FAIL" };
                        s += &format!("{status} {}/{} ({} cases)\n", r.suite, r.check, r.cases);
                        if let Some(c) = &r.counterexample {
                            s += &format!("  counterexample: {c}\n");
                        }
                    }
                    s
                }
                Format::Json => {
                    let j = json!({
                        "command": "check",
                        "inputs": {"suite": suite, "seed": seed, "max_len": max_len, "max_deg": max_deg, "cases": cases, "dims": dims},
                        "checks": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
                        "passed": ok,
                    });
                    format!("{j}\n")
                }
            };
            (if ok { 0 } else { 1 }, out)
        }
    })
}

fn load_point(q: &Quiver, text: &str) -> Result<RepPoint, Failure> {
    let v: Json = serde_json::from_str(text).map_err(|e| usage(format!("point file: {e}")))?;
    let obj = v.as_object().ok_or_else(|| usage("point file must map arrow names to matrices"))?;
    let entry = |x: &Json| -> Option<Q> {
        match x {
            Json::String(s) => parse_scalar(s),
            Json::Number(n) => parse_scalar(&n.as_i64()?.to_string()),
            _ => None,
        }
    };
    let mut mats = BTreeMap::new();
    for (name, m) in obj {
        let a = q.arrow_id(name).ok_or_else(|| usage(format!("point file: unknown arrow {name:?}")))?;
        let rows = m
            .as_array()
            .and_then(|rows| rows.iter().map(|r| r.as_array()?.iter().map(entry).collect::<Option<Vec<Q>>>()).collect::<Option<Vec<_>>>())
            .ok_or_else(|| usage(format!("point file: {name} must be a list of rows of integers or \"p/q\" strings")))?;
        mats.insert(a, rows);
    }
    RepPoint::numeric(q, mats).map_err(usage)
}

fn render_value(q: &Quiver, v: &WheelValue) -> String {
    if let Some(p) = v.as_poly() {
        return p.render(q);
    }
    if let Some(m) = v.as_matrix() {
        return m.render(q);
    }
    let parts: Vec<String> = v.entries().map(|((ins, outs), p)| format!("{ins:?} -> {outs:?}: {}", p.render(q))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join("\n")
    }
}
