//! The `webcalc` command line.
//!
//! Exit codes: 0 success, 1 an identity or suite failed, 2 usage, parse or
//! mode errors, 3 boundary errors.

use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use webcalc_core::eval::{EvalConfig, Evaluator, SparseOperator};
use webcalc_core::projectors::ProjectorKind;
use webcalc_core::scalars::Mode;
use webcalc_core::suites::{describe, suite_items, SuiteParams, SUITES};
use webcalc_core::symfun::character;

use crate::cache::{projector_operator, OperatorCache};
use crate::dsl::{parse_web, print_boundary, DslError, WebFile};
use crate::opfile::dump;
use crate::report::run_suite;

#[derive(Parser, Debug)]
#[command(
    name = "webcalc",
    version,
    about = "Exact evaluation and identity checking for gl(N) webs"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Rank N, or an inclusive range `a..b` for `suite`.
    #[arg(long = "N", global = true, value_name = "N|a..b")]
    pub n: Option<String>,
    /// Evaluation mode: q, zeta or formalX.
    #[arg(long, global = true, value_parser = parse_mode)]
    pub mode: Option<Mode>,
    /// Worker threads for `suite` (default: available parallelism).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate a web file (or a named projector) and print its operator.
    Eval {
        file: Option<PathBuf>,
        /// A projector key such as `T:3`, `Vclasp:2`, `part:2+1` (mode zeta).
        #[arg(long, conflicts_with = "file")]
        projector: Option<String>,
    },
    /// Decide whether two web files evaluate to the same operator.
    Check { a: PathBuf, b: PathBuf },
    /// Run a named identity suite (`list` shows the names).
    Suite {
        name: String,
        /// Clasp sizes for the Newton isomorphism, `a..b` or a single k.
        #[arg(long, value_name = "k|a..b")]
        k: Option<String>,
        /// Largest m for extremal projectors and characters.
        #[arg(long, default_value_t = 5)]
        max_m: usize,
    },
    /// Character of an idempotent (a web file or projector key), mode zeta.
    Char { input: String },
    /// List suites and projector keys.
    List,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::from_keyword(s).ok_or_else(|| format!("unknown mode `{s}` (expected q, zeta or formalX)"))
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<webcalc_core::Error> for Failure {
    fn from(e: webcalc_core::Error) -> Self {
        let code = if matches!(e, webcalc_core::Error::Boundary(_)) {
            3
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<DslError> for Failure {
    fn from(e: DslError) -> Self {
        match e {
            DslError::Web(w) => w.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

/// Output of a successful (or cleanly failing) command.
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

/// Parses `a..b`, `a..=b` or `a` into an inclusive range.
pub fn parse_range(s: &str) -> Option<Vec<u32>> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (
            a.trim().parse::<u32>().ok()?,
            b.trim()
                .trim_start_matches('=')
                .trim()
                .parse::<u32>()
                .ok()?,
        );
        (a <= b).then(|| (a..=b).collect())
    } else {
        Some(vec![s.parse().ok()?])
    }
}

fn single_n(g: &Global, default: u32) -> Result<u32, Failure> {
    match &g.n {
        None => Ok(default),
        Some(s) => match parse_range(s).as_deref() {
            Some([n]) => Ok(*n),
            _ => Err(Failure::usage(format!(
                "--N must be a single rank here, got `{s}`"
            ))),
        },
    }
}

fn read_web(path: &Path, g: &Global) -> Result<WebFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let f = parse_web(&text).map_err(|e| {
        let f: Failure = e.into();
        Failure {
            code: f.code,
            message: format!("{}: {}", path.display(), f.message),
        }
    })?;
    if let Some(n) = &g.n {
        if single_n(g, 0)? != f.header.n {
            return Err(Failure::usage(format!(
                "{}: file declares N={}, but --N {n} was given",
                path.display(),
                f.header.n
            )));
        }
    }
    if let Some(m) = g.mode {
        if m != f.header.mode {
            return Err(Failure::usage(format!(
                "{}: file declares mode={}, but --mode {m} was given",
                path.display(),
                f.header.mode
            )));
        }
    }
    Ok(f)
}

fn operator_json(ev: &Evaluator, op: &SparseOperator) -> serde_json::Value {
    let b = ev.basis();
    let entries: Vec<_> = op
        .entries()
        .map(|(r, c, v)| json!({"target": b.render(op.target(), r), "source": b.render(op.source(), c), "value": v.to_string()}))
        .collect();
    let (rows, cols) = op.shape();
    json!({
        "N": ev.n(), "mode": ev.mode().keyword(),
        "source": print_boundary(op.source()), "target": print_boundary(op.target()),
        "rows": rows, "cols": cols, "nnz": op.nnz(), "entries": entries,
    })
}

fn cmd_eval(g: &Global, file: Option<&Path>, projector: Option<&str>) -> Result<Outcome, Failure> {
    let (ev, op) = match (file, projector) {
        (Some(path), _) => {
            let f = read_web(path, g)?;
            let ev = Evaluator::new(EvalConfig::new(f.header.n, f.header.mode));
            let op = ev.evaluate_expr(&f.expr)?;
            (ev, op)
        }
        (None, Some(key)) => {
            let mode = g.mode.unwrap_or(Mode::Zeta);
            if mode != Mode::Zeta {
                return Err(Failure::usage(
                    "named projectors are evaluated in mode zeta",
                ));
            }
            let ev = Evaluator::new(EvalConfig::new(single_n(g, 2)?, mode));
            let kind = ProjectorKind::parse(key)?;
            let op = projector_operator(OperatorCache::from_env().as_ref(), &kind, &ev)?;
            (ev, op)
        }
        (None, None) => return Err(Failure::usage("eval needs a web file or --projector")),
    };
    let text = match g.format {
        Format::Text => dump(ev.basis(), &op),
        Format::Json => {
            serde_json::to_string_pretty(&operator_json(&ev, &op)).expect("json") + "\n"
        }
    };
    Ok(Outcome { code: 0, text })
}

fn cmd_check(g: &Global, a: &Path, b: &Path) -> Result<Outcome, Failure> {
    let (fa, fb) = (read_web(a, g)?, read_web(b, g)?);
    if (fa.header.n, fa.header.mode) != (fb.header.n, fb.header.mode) {
        return Err(Failure::usage(format!(
            "files disagree: N={} mode={} vs N={} mode={}",
            fa.header.n, fa.header.mode, fb.header.n, fb.header.mode
        )));
    }
    let (ea, eb) = (&fa.expr, &fb.expr);
    if ea.source() != eb.source() || ea.target() != eb.target() {
        return Err(Failure {
            code: 3,
            message: format!(
                "boundaries differ: {} -> {} vs {} -> {}",
                ea.source(),
                ea.target(),
                eb.source(),
                eb.target()
            ),
        });
    }
    let ev = Evaluator::new(EvalConfig::new(fa.header.n, fa.header.mode));
    let (oa, ob) = (ev.evaluate_expr(ea)?, ev.evaluate_expr(eb)?);
    let diff = oa.first_difference(&ob)?;
    let b = ev.basis();
    let (code, text) = match (&diff, g.format) {
        (None, Format::Text) => (0, "equal\n".to_string()),
        (Some(d), Format::Text) => (
            1,
            format!(
                "not equal: first difference at target {} source {}: {} vs {}\n{}",
                b.render(oa.target(), d.row),
                b.render(oa.source(), d.col),
                d.left,
                d.right,
                webcalc_core::check::dump_diff(b, &oa, &ob)
            ),
        ),
        (_, Format::Json) => {
            let first = diff.as_ref().map(|d| {
                json!({"target": b.render(oa.target(), d.row), "source": b.render(oa.source(), d.col),
                       "left": d.left.to_string(), "right": d.right.to_string()})
            });
            let v = json!({"equal": diff.is_none(), "first_difference": first,
                           "diff": diff.as_ref().map(|_| webcalc_core::check::dump_diff(b, &oa, &ob))});
            (
                i32::from(diff.is_some()),
                serde_json::to_string_pretty(&v).expect("json") + "\n",
            )
        }
    };
    Ok(Outcome { code, text })
}

fn cmd_suite(g: &Global, name: &str, k: Option<&str>, max_m: usize) -> Result<Outcome, Failure> {
    let ns = match &g.n {
        None => vec![2],
        Some(s) => parse_range(s).ok_or_else(|| Failure::usage(format!("bad --N `{s}`")))?,
    };
    if g.mode.is_some() {
        return Err(Failure::usage("suites choose their own modes; drop --mode"));
    }
    let newton_ks = match k {
        None => SuiteParams::default().newton_ks,
        Some(s) => parse_range(s)
            .filter(|v| v.iter().all(|&k| k >= 2))
            .ok_or_else(|| Failure::usage(format!("bad --k `{s}` (clasp sizes start at 2)")))?
            .into_iter()
            .map(|k| k as usize)
            .collect(),
    };
    let params = SuiteParams { newton_ks, max_m };
    let items = suite_items(name, &ns, &params).map_err(|e| Failure::usage(e.to_string()))?;
    let jobs = g
        .jobs
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let report = run_suite(name, &ns, &params, items, jobs);
    let text = match g.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
    };
    Ok(Outcome {
        code: if report.summary.passed { 0 } else { 1 },
        text,
    })
}

fn cmd_char(g: &Global, input: &str) -> Result<Outcome, Failure> {
    if let Some(m) = g.mode {
        if m != Mode::Zeta {
            return Err(Failure::usage("char requires mode zeta"));
        }
    }
    let path = Path::new(input);
    let (ev, op, what) = if path.exists() || !input.contains(':') {
        let f = read_web(path, g)?;
        if f.header.mode != Mode::Zeta {
            return Err(Failure::usage(format!(
                "char requires mode zeta, {input} declares {}",
                f.header.mode
            )));
        }
        let ev = Evaluator::new(EvalConfig::new(f.header.n, Mode::Zeta));
        let op = ev.evaluate_expr(&f.expr)?;
        (ev, op, input.to_string())
    } else {
        let kind = ProjectorKind::parse(input)?;
        let ev = Evaluator::new(EvalConfig::new(single_n(g, 2)?, Mode::Zeta));
        let op = projector_operator(OperatorCache::from_env().as_ref(), &kind, &ev)?;
        (ev, op, kind.key())
    };
    let ch = character(&ev, &op)?;
    let poly = ch.to_poly().to_string();
    let e_form = ch.to_sym().and_then(|s| s.render_e());
    let text = match g.format {
        Format::Text => {
            let lead = format!("ch({what}) ");
            let mut t = format!("{lead}= {poly}\n");
            if let Some(e) = &e_form {
                t.push_str(&format!("{:w$}= {e}\n", "", w = lead.chars().count()));
            }
            t.push_str(&format!("rank {}\n", ch.total()));
            t
        }
        Format::Json => {
            let mult: serde_json::Map<String, serde_json::Value> = ch
                .multiplicities
                .iter()
                .map(|(w, m)| (format!("{w:?}"), json!(m)))
                .collect();
            let v = json!({"input": what, "N": ev.n(), "character": poly, "e_expansion": e_form,
                           "rank": ch.total(), "multiplicities": mult});
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
    };
    Ok(Outcome { code: 0, text })
}

fn cmd_list(g: &Global) -> Outcome {
    let text = match g.format {
        Format::Text => {
            let mut t = String::from("suites:\n");
            for s in SUITES {
                t.push_str(&format!("  {s:<9} {}\n", describe(s).unwrap_or("")));
            }
            t.push_str("  all       every suite above\n");
            t.push_str("projector keys: P:k  T:m  Pclasp:m  Vclasp:m  O:n  part:a+b+…\n");
            t.push_str("modes: q  zeta  formalX\n");
            t
        }
        Format::Json => {
            let suites: Vec<_> = SUITES
                .iter()
                .map(|s| json!({"name": s, "description": describe(s)}))
                .collect();
            serde_json::to_string_pretty(
                &json!({"suites": suites, "modes": ["q", "zeta", "formalX"]}),
            )
            .expect("json")
                + "\n"
        }
    };
    Outcome { code: 0, text }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Eval { file, projector } => cmd_eval(g, file.as_deref(), projector.as_deref()),
        Command::Check { a, b } => cmd_check(g, a, b),
        Command::Suite { name, k, max_m } => cmd_suite(g, name, k.as_deref(), *max_m),
        Command::Char { input } => cmd_char(g, input),
        Command::List => Ok(cmd_list(g)),
    }
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.global.out {
                Some(p) => std::fs::write(p, &out.text),
                None => std::io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("webcalc: cannot write output: {e}");
                return 2;
            }
            out.code
        }
        Err(f) => {
            eprintln!("webcalc: {}", f.message);
            f.code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("2..4"), Some(vec![2, 3, 4]));
        assert_eq!(parse_range("2..=3"), Some(vec![2, 3]));
        assert_eq!(parse_range("3"), Some(vec![3]));
        assert_eq!(parse_range("4..2"), None);
        assert_eq!(parse_range("x"), None);
    }

    #[test]
    fn arguments_parse() {
        let cli = Cli::try_parse_from(["webcalc", "suite", "newton", "--N", "2..3", "--k", "2..4"])
            .unwrap();
        assert_eq!(cli.global.n.as_deref(), Some("2..3"));
        assert!(
            matches!(cli.command, Command::Suite { ref k, .. } if k.as_deref() == Some("2..4"))
        );
        assert!(Cli::try_parse_from(["webcalc", "--mode", "nope", "list"]).is_err());
    }
}
