//! Operator dumps and the textual operator file format.
//!
//! The *dump* is for people: one nonzero entry per line,
//! `target <tab> source <tab> scalar`, with basis vectors rendered as
//! `{1,3}|{2}*` (a star marks a dual strand), in row-major order.
//!
//! The *operator file* is for machines; it stores an exact operator
//! without any binary encoding:
//!
//! ```text
//! webcalc-operator 1
//! N=2 mode=zeta
//! source=1^,1^
//! target=1^,1^
//! 0 0 1/2
//! 0 3 1/2
//! ```
//!
//! Lines after the header are `row <tab> column <tab> scalar` (shown with
//! spaces above; the separators are single tab characters) with 0-based
//! indices and scalars in the textual scalar syntax; zero entries are
//! never written.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;
use webcalc_core::eval::{Basis, SparseOperator};
use webcalc_core::scalars::{parse_scalar, Mode, Scalar};

use crate::dsl::{parse_boundary, print_boundary};

pub const MAGIC: &str = "webcalc-operator 1";

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("operator file, line {line}: {message}")]
pub struct OpFileError {
    pub line: usize,
    pub message: String,
}

/// Human-readable dump, with a one-line shape header.
pub fn dump(basis: &Basis, op: &SparseOperator) -> String {
    let (rows, cols) = op.shape();
    let mut out = format!(
        "# {} -> {}, {}x{}, {} nonzero\n",
        op.source(),
        op.target(),
        rows,
        cols,
        op.nnz()
    );
    out.push_str(&op.dump(basis));
    out
}

/// Serializes an operator evaluated in `mode`.
pub fn write_operator(mode: Mode, op: &SparseOperator) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "N={} mode={}", op.n(), mode.keyword());
    let _ = writeln!(out, "source={}", print_boundary(op.source()));
    let _ = writeln!(out, "target={}", print_boundary(op.target()));
    for (r, c, v) in op.entries() {
        let _ = writeln!(out, "{r}\t{c}\t{v}");
    }
    out
}

/// Reads an operator file, returning its mode and operator.
pub fn read_operator(text: &str) -> Result<(Mode, SparseOperator), OpFileError> {
    let mut lines = text.lines().enumerate();
    let mut next = |what: &str| -> Result<(usize, &str), OpFileError> {
        lines.next().map(|(i, l)| (i + 1, l)).ok_or(OpFileError {
            line: 0,
            message: format!("missing {what}"),
        })
    };
    let err = |line: usize, message: String| OpFileError { line, message };
    let (l, magic) = next("magic line")?;
    if magic.trim() != MAGIC {
        return Err(err(l, format!("expected `{MAGIC}`")));
    }
    let (l, params) = next("parameters")?;
    let mut n = None;
    let mut mode = None;
    for field in params.split_whitespace() {
        match field.split_once('=') {
            Some(("N", v)) => n = v.parse::<u32>().ok(),
            Some(("mode", v)) => mode = Mode::from_keyword(v),
            _ => return Err(err(l, format!("unexpected field `{field}`"))),
        }
    }
    let (n, mode) = n
        .zip(mode)
        .ok_or_else(|| err(l, "expected `N=<int> mode=<mode>`".into()))?;
    let mut boundary = |key: &str| -> Result<_, OpFileError> {
        let (l, line) = next(key)?;
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .and_then(parse_boundary)
            .ok_or_else(|| err(l, format!("expected `{key}=<boundary>`")))
    };
    let source = boundary("source")?;
    let target = boundary("target")?;
    let basis = Basis::new(n);
    let (rows, cols) = (basis.dim(&target), basis.dim(&source));
    let mut data: Vec<BTreeMap<usize, Scalar>> = vec![BTreeMap::new(); rows];
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.splitn(3, '\t');
        let (Some(r), Some(c), Some(v)) = (parts.next(), parts.next(), parts.next()) else {
            return Err(err(i + 1, "expected `row<TAB>column<TAB>scalar`".into()));
        };
        let (r, c) = match (r.parse::<usize>(), c.parse::<usize>()) {
            (Ok(r), Ok(c)) if r < rows && c < cols => (r, c),
            _ => {
                return Err(err(
                    i + 1,
                    format!("entry ({r}, {c}) outside the {rows}x{cols} shape"),
                ))
            }
        };
        let v = parse_scalar(v, mode, n).map_err(|e| err(i + 1, format!("bad scalar: {e}")))?;
        data[r].insert(c, v);
    }
    Ok((
        mode,
        SparseOperator::from_rows(n, source, target, cols, data),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use webcalc_core::eval::{EvalConfig, Evaluator};
    use webcalc_core::projectors::{extremal, points};
    use webcalc_core::scalars::rat;
    use webcalc_core::web::{Gen, Term, WebWord};

    #[test]
    fn operator_files_round_trip() {
        for (n, mode) in [(2, Mode::Zeta), (3, Mode::Zeta), (2, Mode::FormalX)] {
            let ev = Evaluator::new(EvalConfig::new(n, mode));
            let t = if mode == Mode::Zeta {
                extremal(n, 2).unwrap()
            } else {
                let w = WebWord::single(n, &points(2), 0, Gen::Wrap(1))
                    .unwrap()
                    .into_annular();
                let id = Term::identity(n, mode, points(2));
                Term::sum(vec![
                    (Scalar::int(3), Term::word(mode, w)),
                    (Scalar::rational(rat(-1, 2)), id),
                ])
                .unwrap()
            };
            let op = ev.evaluate(&t).unwrap();
            let text = write_operator(mode, &op);
            let (m, back) = read_operator(&text).unwrap();
            assert_eq!(m, mode);
            assert_eq!(back, op);
        }
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(read_operator("nope").is_err());
        let bad = format!("{MAGIC}\nN=2 mode=zeta\nsource=1^\ntarget=1^\n5\t0\t1\n");
        assert_eq!(read_operator(&bad).unwrap_err().line, 5);
    }
}
