//! The textual web format.
//!
//! A file starts with a header line and continues with one expression,
//! which may span several lines:
//!
//! ```text
//! # T_2 for N = 2
//! N=2 mode=zeta annular=1 source=1^,1^
//! (1/2)*[id(1^) id(1^)] + (1/2)*[wrap@1(-1) ; wrap@2(1)]
//! ```
//!
//! * An expression is `coef*[word] + coef*[word] + …`. A coefficient may be
//!   omitted (it is then 1) and a summand may be negated with `-`. The
//!   literal `0` is the zero morphism and needs `target=` in the header.
//! * A word is `slice ; slice ; …`, read bottom to top.
//! * A slice lists generators left to right: `id(k^)`, `id(kv)`,
//!   `cupL(k)`, `capL(k)`, `cupR(k)`, `capR(k)`, `merge(k,l)`, `split(k,l)`,
//!   `x(k,l,+)`, `x(k,l,-)`, `wrap(p)` and `rot(p)`. A generator written as
//!   `merge@i(k,l)` sits at the 1-based strand position `i` of the slice's
//!   input; strands not covered by any generator are filled in with
//!   identities.
//! * Header fields are `N=<int>`, `mode=<q|zeta|formalX>`,
//!   `annular=<0|1>`, and optionally `source=` / `target=` with a
//!   comma-separated strand list such as `1^,2v` (`()` is the empty
//!   boundary). Without `source=` the source is read off the first slice,
//!   which then has to name the input of every generator (no `@`, no
//!   `wrap` or `rot`; merges and crossings are taken as upward).
//! * `#` starts a comment line.

use std::fmt::Write as _;

use thiserror::Error;
use webcalc_core::scalars::{int, parse_scalar, Mode, Scalar};
use webcalc_core::web::{slice_output, Boundary, Gen, Sign, Slice, Strand, WebExpr, WebWord};

/// A syntax error with its 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Failure to read a web file.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("syntax error at {0}")]
    Syntax(#[from] SyntaxError),
    /// Slices do not chain, or summands disagree on their boundaries.
    #[error("{0}")]
    Web(#[from] webcalc_core::Error),
}

/// The header fields of a web file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Header {
    pub n: u32,
    pub mode: Mode,
    pub annular: bool,
    pub source: Option<Boundary>,
    pub target: Option<Boundary>,
}

/// A parsed web file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebFile {
    pub header: Header,
    pub expr: WebExpr,
}

struct Source<'a> {
    text: &'a str,
}

impl Source<'_> {
    fn error(&self, offset: usize, message: impl Into<String>) -> SyntaxError {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before
            .rfind('\n')
            .map_or(before.chars().count(), |i| before[i + 1..].chars().count())
            + 1;
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }
}

fn parse_strand(s: &str) -> Option<Strand> {
    let s = s.trim();
    let (num, orient) = s.split_at(s.len().checked_sub(1)?);
    let label: u32 = num.trim().parse().ok()?;
    if label == 0 {
        return None;
    }
    match orient {
        "^" => Some(Strand::up(label)),
        "v" => Some(Strand::down(label)),
        _ => None,
    }
}

/// Parses `1^,2v` (or `()` / the empty string for the empty boundary).
pub fn parse_boundary(s: &str) -> Option<Boundary> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s);
    if inner.trim().is_empty() {
        return Some(Boundary::empty());
    }
    inner
        .split(',')
        .map(parse_strand)
        .collect::<Option<Vec<_>>>()
        .map(Boundary)
}

/// Renders a boundary as accepted by [`parse_boundary`].
pub fn print_boundary(b: &Boundary) -> String {
    if b.is_empty() {
        return "()".into();
    }
    b.strands()
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn parse_header(src: &Source, offset: usize, line: &str) -> Result<Header, SyntaxError> {
    let (mut n, mut mode, mut annular, mut source, mut target) = (None, None, None, None, None);
    for (at, field) in tokens(line, offset) {
        let (key, value) = field
            .split_once('=')
            .ok_or_else(|| src.error(at, format!("expected key=value, found `{field}`")))?;
        let bad = |what: &str| src.error(at, format!("bad {what} `{value}`"));
        match key {
            "N" => {
                n = Some(
                    value
                        .parse::<u32>()
                        .ok()
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| bad("rank"))?,
                )
            }
            "mode" => mode = Some(Mode::from_keyword(value).ok_or_else(|| bad("mode"))?),
            "annular" => {
                annular = Some(match value {
                    "0" => false,
                    "1" => true,
                    _ => return Err(bad("annular flag")),
                })
            }
            "source" => source = Some(parse_boundary(value).ok_or_else(|| bad("boundary"))?),
            "target" => target = Some(parse_boundary(value).ok_or_else(|| bad("boundary"))?),
            _ => return Err(src.error(at, format!("unknown header field `{key}`"))),
        }
    }
    let missing = |what: &str| src.error(offset, format!("header lacks `{what}=`"));
    let mode = mode.ok_or_else(|| missing("mode"))?;
    Ok(Header {
        n: n.ok_or_else(|| missing("N"))?,
        mode,
        annular: annular.unwrap_or(mode != Mode::QGeneric),
        source,
        target,
    })
}

/// A generator as written, with its optional 1-based position.
struct Placed {
    gen: Gen,
    pos: Option<usize>,
    offset: usize,
}

fn parse_generator(src: &Source, offset: usize, tok: &str) -> Result<Placed, SyntaxError> {
    let err = |m: String| src.error(offset, m);
    let open = tok
        .find('(')
        .ok_or_else(|| err(format!("expected `(` in `{tok}`")))?;
    let args = tok[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| err(format!("expected `)` at the end of `{tok}`")))?;
    let (name, pos) = match tok[..open].split_once('@') {
        Some((name, p)) => {
            let p: usize = p
                .parse()
                .ok()
                .filter(|&p| p >= 1)
                .ok_or_else(|| err(format!("bad position `@{p}`")))?;
            (name, Some(p))
        }
        None => (&tok[..open], None),
    };
    let parts: Vec<&str> = args.split(',').map(str::trim).collect();
    let label = |s: &str| -> Result<u32, SyntaxError> {
        s.parse::<u32>()
            .ok()
            .filter(|&k| k >= 1)
            .ok_or_else(|| err(format!("bad label `{s}` in `{tok}`")))
    };
    let power = |s: &str| -> Result<i64, SyntaxError> {
        s.parse::<i64>()
            .map_err(|_| err(format!("bad power `{s}` in `{tok}`")))
    };
    let arity = |k: usize| -> Result<(), SyntaxError> {
        if parts.len() == k {
            Ok(())
        } else {
            Err(err(format!("`{name}` takes {k} argument(s)")))
        }
    };
    let gen = match name {
        "id" => {
            arity(1)?;
            Gen::Id(
                parse_strand(parts[0]).ok_or_else(|| err(format!("bad strand `{}`", parts[0])))?,
            )
        }
        "cupL" | "capL" | "cupR" | "capR" => {
            arity(1)?;
            let k = label(parts[0])?;
            match name {
                "cupL" => Gen::CupL(k),
                "capL" => Gen::CapL(k),
                "cupR" => Gen::CupR(k),
                _ => Gen::CapR(k),
            }
        }
        "merge" | "split" => {
            arity(2)?;
            let (k, l) = (label(parts[0])?, label(parts[1])?);
            if name == "merge" {
                Gen::Merge(k, l)
            } else {
                Gen::Split(k, l)
            }
        }
        "x" => {
            arity(3)?;
            let sign = match parts[2] {
                "+" => Sign::Pos,
                "-" => Sign::Neg,
                s => return Err(err(format!("crossing sign must be + or -, found `{s}`"))),
            };
            Gen::Cross(label(parts[0])?, label(parts[1])?, sign)
        }
        "wrap" => {
            arity(1)?;
            Gen::Wrap(power(parts[0])?)
        }
        "rot" => {
            arity(1)?;
            if pos.is_some() {
                return Err(err(
                    "`rot` acts on the whole boundary and takes no position".into(),
                ));
            }
            Gen::Rotate(power(parts[0])?)
        }
        _ => return Err(err(format!("unknown generator `{name}`"))),
    };
    Ok(Placed { gen, pos, offset })
}

/// Splits on whitespace outside parentheses, keeping byte offsets.
fn tokens(text: &str, base: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                out.push((base + s, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((base + s, &text[s..]));
    }
    // Whitespace inside parentheses is insignificant.
    out
}

fn compact(tok: &str) -> String {
    tok.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Input of the first slice when every generator names its input.
fn implied_source(slice: &[Placed]) -> Option<Boundary> {
    let mut out = Vec::new();
    for p in slice {
        if p.pos.is_some() {
            return None;
        }
        match p.gen {
            Gen::Id(s) => out.push(s),
            Gen::CapL(k) => out.extend([Strand::down(k), Strand::up(k)]),
            Gen::CapR(k) => out.extend([Strand::up(k), Strand::down(k)]),
            Gen::Merge(k, l) | Gen::Cross(k, l, _) => out.extend([Strand::up(k), Strand::up(l)]),
            Gen::Split(k, l) => out.push(Strand::up(k + l)),
            Gen::CupL(_) | Gen::CupR(_) => {}
            Gen::Wrap(_) | Gen::Rotate(_) => return None,
        }
    }
    Some(Boundary(out))
}

/// Places the generators of one slice on `input`, padding with identities.
fn layout(src: &Source, slice: &[Placed], input: &Boundary) -> Result<Slice, SyntaxError> {
    if let [Placed {
        gen: Gen::Rotate(_),
        ..
    }] = slice
    {
        return Ok(vec![slice[0].gen]);
    }
    let mut out = Vec::new();
    let mut at = 0usize;
    for p in slice {
        if let Gen::Rotate(_) = p.gen {
            return Err(src.error(p.offset, "`rot` must be alone in its slice"));
        }
        if let Some(pos) = p.pos {
            let want = pos - 1;
            if want < at {
                return Err(src.error(
                    p.offset,
                    format!("position @{pos} overlaps the previous generator"),
                ));
            }
            if want > input.len() {
                return Err(src.error(
                    p.offset,
                    format!(
                        "position @{pos} is beyond the {} input strands",
                        input.len()
                    ),
                ));
            }
            out.extend(input.strands()[at..want].iter().map(|&s| Gen::Id(s)));
            at = want;
        }
        at += p.gen.arity().unwrap_or(0);
        out.push(p.gen);
    }
    if at < input.len() {
        out.extend(input.strands()[at..].iter().map(|&s| Gen::Id(s)));
    }
    Ok(out)
}

fn parse_word(
    src: &Source,
    header: &Header,
    offset: usize,
    text: &str,
) -> Result<WebWord, DslError> {
    let mut raw: Vec<Vec<Placed>> = Vec::new();
    let mut at = offset;
    for part in text.split(';') {
        let toks = tokens(part, at);
        at += part.len() + 1;
        if toks.is_empty() {
            if text.trim().is_empty() {
                continue;
            }
            return Err(src.error(at - 1, "empty slice").into());
        }
        raw.push(
            toks.into_iter()
                .map(|(o, t)| parse_generator(src, o, &compact(t)))
                .collect::<Result<_, _>>()?,
        );
    }
    let source = match (&header.source, raw.first()) {
        (Some(b), _) => b.clone(),
        (None, None) => Boundary::empty(),
        (None, Some(first)) => implied_source(first).ok_or_else(|| {
            src.error(
                offset,
                "cannot infer the source boundary; add `source=` to the header",
            )
        })?,
    };
    let mut cur = source.clone();
    let mut slices = Vec::new();
    for (i, sl) in raw.iter().enumerate() {
        let laid = layout(src, sl, &cur)?;
        cur = slice_output(&laid, &cur).map_err(|e| match e {
            webcalc_core::Error::Boundary(m) => {
                webcalc_core::Error::Boundary(format!("slice {}: {m}", i + 1))
            }
            other => other,
        })?;
        slices.push(laid);
    }
    Ok(WebWord::new(header.n, source, slices, header.annular)?)
}

/// Parses a complete web file.
pub fn parse_web(text: &str) -> Result<WebFile, DslError> {
    let src = Source { text };
    let mut header: Option<Header> = None;
    let mut body_start = text.len();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            offset += line.len();
            continue;
        }
        if header.is_none() {
            let lead = line.len() - line.trim_start().len();
            header = Some(parse_header(&src, offset + lead, line.trim_end())?);
            offset += line.len();
            body_start = offset;
            continue;
        }
        break;
    }
    let header =
        header.ok_or_else(|| src.error(0, "missing header line `N=… mode=… annular=…`"))?;
    let body: String = text[body_start..]
        .split_inclusive('\n')
        .map(|l| {
            if l.trim_start().starts_with('#') {
                " ".repeat(l.len())
            } else {
                l.to_string()
            }
        })
        .collect();
    let expr = parse_body(&src, &header, body_start, &body)?;
    Ok(WebFile { header, expr })
}

fn parse_body(src: &Source, header: &Header, base: usize, body: &str) -> Result<WebExpr, DslError> {
    let trimmed = body.trim();
    let lead = body.len() - body.trim_start().len();
    if trimmed == "0" {
        let (Some(s), Some(t)) = (&header.source, &header.target) else {
            return Err(src
                .error(
                    base + lead,
                    "the zero morphism needs `source=` and `target=` in the header",
                )
                .into());
        };
        return Ok(WebExpr::zero(
            header.n,
            header.mode,
            s.clone(),
            t.clone(),
            header.annular,
        ));
    }
    let mut terms: Vec<(Scalar, WebWord)> = Vec::new();
    let mut rest_start = 0usize;
    loop {
        let rest = &body[rest_start..];
        let Some(open) = rest.find('[') else {
            if !rest.trim().is_empty() {
                let at = base + rest_start + (rest.len() - rest.trim_start().len());
                return Err(src.error(at, "trailing text after the last summand").into());
            }
            break;
        };
        let close = rest[open..]
            .find(']')
            .map(|c| c + open)
            .ok_or_else(|| src.error(base + rest_start + open, "unclosed `[`"))?;
        let coef_text = rest[..open].trim();
        let coef_at = base + rest_start + (rest.len() - rest.trim_start().len());
        let (negate, coef_text) = match (terms.is_empty(), coef_text.chars().next()) {
            (_, Some('+')) if !terms.is_empty() => (false, coef_text[1..].trim()),
            (_, Some('-')) => (true, coef_text[1..].trim()),
            (true, _) => (false, coef_text),
            (false, _) => {
                return Err(src
                    .error(coef_at, "expected `+` or `-` between summands")
                    .into())
            }
        };
        let coef = if coef_text.is_empty() {
            Scalar::one()
        } else {
            let c = coef_text.strip_suffix('*').ok_or_else(|| {
                src.error(
                    coef_at,
                    format!("expected `*` between coefficient `{coef_text}` and `[`"),
                )
            })?;
            parse_scalar(c.trim(), header.mode, header.n).map_err(|e| {
                src.error(
                    coef_at,
                    format!("bad coefficient `{}`: {}", c.trim(), e.message),
                )
            })?
        };
        let coef = if negate { coef.neg() } else { coef };
        let word = parse_word(
            src,
            header,
            base + rest_start + open + 1,
            &rest[open + 1..close],
        )?;
        terms.push((coef, word));
        rest_start += close + 1;
    }
    let Some((_, first)) = terms.first() else {
        return Err(src
            .error(base + lead, "expected at least one summand `coef*[word]`")
            .into());
    };
    let (s, t) = (first.source().clone(), first.target().clone());
    if let Some(ht) = &header.target {
        if ht != &t {
            return Err(webcalc_core::Error::Boundary(format!(
                "target {t} does not match header target {ht}"
            ))
            .into());
        }
    }
    Ok(WebExpr::from_terms(header.n, header.mode, s, t, terms)?)
}

fn print_gen(g: &Gen, pos: usize, explicit: bool) -> String {
    if explicit || matches!(g, Gen::Rotate(_)) {
        return g.to_string();
    }
    let s = g.to_string();
    let open = s.find('(').unwrap_or(s.len());
    format!("{}@{}{}", &s[..open], pos + 1, &s[open..])
}

fn print_slice(slice: &Slice) -> String {
    if slice.iter().all(Gen::is_identity) {
        return slice
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(" ");
    }
    let mut parts = Vec::new();
    let mut pos = 0;
    for g in slice {
        if !g.is_identity() {
            parts.push(print_gen(g, pos, false));
        }
        pos += g.arity().unwrap_or(0);
    }
    parts.join(" ")
}

/// Prints a word body (without brackets).
pub fn print_word(w: &WebWord) -> String {
    w.slices()
        .iter()
        .map(print_slice)
        .collect::<Vec<_>>()
        .join(" ; ")
}

/// Prints an expression with its header; the output parses back to an
/// equal expression.
pub fn print_web(e: &WebExpr) -> String {
    let mut out = String::new();
    let _ = write!(
        out,
        "N={} mode={} annular={} source={}",
        e.n(),
        e.mode().keyword(),
        u8::from(e.is_annular()),
        print_boundary(e.source())
    );
    if e.terms().is_empty() || e.source() != e.target() {
        let _ = write!(out, " target={}", print_boundary(e.target()));
    }
    out.push('\n');
    if e.terms().is_empty() {
        out.push_str("0\n");
        return out;
    }
    for (i, (c, w)) in e.terms().iter().enumerate() {
        let (neg, mag) = match c.as_rational() {
            Some(r) if *r < int(0) => (true, c.neg()),
            _ => (false, c.clone()),
        };
        let sep = match (i, neg) {
            (0, false) => "",
            (0, true) => "-",
            (_, false) => " + ",
            (_, true) => " - ",
        };
        out.push_str(sep);
        if !mag.is_one() {
            let _ = write!(out, "({mag})*");
        }
        let _ = write!(out, "[{}]", print_word(w));
    }
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strands_and_boundaries() {
        assert_eq!(
            parse_boundary("1^,2v"),
            Some(Boundary(vec![Strand::up(1), Strand::down(2)]))
        );
        assert_eq!(parse_boundary("()"), Some(Boundary::empty()));
        assert_eq!(parse_boundary("0^"), None);
        assert_eq!(print_boundary(&Boundary::from_labels(&[1, 2])), "1^,2^");
    }

    #[test]
    fn positions_are_padded_with_identities() {
        let f =
            parse_web("N=2 mode=q annular=0 source=1^,1^\n[merge@1(1,1) ; split@1(1,1)]").unwrap();
        let w = &f.expr.terms()[0].1;
        assert_eq!(w.slices().len(), 2);
        assert_eq!(w.target(), &Boundary::from_labels(&[1, 1]));
        let f = parse_web("N=3 mode=q annular=0 source=1^,1^,1^\n[merge@2(1,1)]").unwrap();
        assert_eq!(
            f.expr.terms()[0].1.slices()[0],
            vec![Gen::Id(Strand::up(1)), Gen::Merge(1, 1)]
        );
    }

    #[test]
    fn source_is_inferred_from_a_full_first_slice() {
        let f = parse_web("N=2 mode=q annular=0\n[id(1^) id(1^) ; x(1,1,+)]").unwrap();
        assert_eq!(f.expr.source(), &Boundary::from_labels(&[1, 1]));
        let e = parse_web("N=2 mode=q annular=0\n[merge@1(1,1)]").unwrap_err();
        assert!(matches!(e, DslError::Syntax(_)));
    }

    #[test]
    fn errors_carry_positions() {
        let e =
            parse_web("N=2 mode=q annular=0 source=1^\n[id(1^)] +\n  (2)*[frob(1)]").unwrap_err();
        let DslError::Syntax(s) = e else {
            panic!("expected a syntax error")
        };
        assert_eq!((s.line, s.column), (3, 8));
        let e = parse_web("N=2 mode=q annular=0 source=1^,1^\n[split(1,1)]").unwrap_err();
        assert!(matches!(e, DslError::Web(webcalc_core::Error::Boundary(_))));
    }

    #[test]
    fn empty_word_and_zero() {
        let f = parse_web("N=2 mode=q annular=0\n[]").unwrap();
        assert!(f.expr.source().is_empty());
        let f = parse_web("N=2 mode=q annular=0 source=1^ target=1^\n0").unwrap();
        assert!(f.expr.terms().is_empty());
        assert_eq!(parse_web(&print_web(&f.expr)).unwrap().expr, f.expr);
    }

    #[test]
    fn print_parse_fixpoint() {
        let text = "N=2 mode=zeta annular=1 source=1^,1^\n(1/2)*[id(1^) id(1^)] + (1/2)*[wrap@1(-1) ; wrap@2(1)]";
        let f = parse_web(text).unwrap();
        let printed = print_web(&f.expr);
        let again = parse_web(&printed).unwrap();
        assert_eq!(again.expr, f.expr);
        assert_eq!(print_web(&again.expr), printed);
        let neg =
            parse_web("N=2 mode=q annular=0 source=1^,1^\n[id(1^) id(1^)] - (q+q^-1)*[x@1(1,1,-)]")
                .unwrap();
        assert_eq!(parse_web(&print_web(&neg.expr)).unwrap().expr, neg.expr);
    }
}
