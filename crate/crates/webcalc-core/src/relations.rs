//! The defining local relations of the web category, the braiding moves and
//! the annular (wrap, rotation, essential circle) identities, as checkable
//! pairs of web expressions.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::{Check, CheckList};
use crate::error::Result;
use crate::eval::{EvalConfig, Evaluator};
use crate::scalars::{
    elementary_symmetric_at_zeta, quantum_binomial, quantum_integer, Mode, Scalar,
};
use crate::web::{
    essential_circle, Boundary, Gen, Orient, Sign, Sketch, Strand, WebExpr, WebWord, WordBuilder,
};

/// An identity `lhs = rhs` between two web expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub lhs: WebExpr,
    pub rhs: WebExpr,
}

type WordMap = fn(&WebWord) -> Result<WebWord>;

impl Relation {
    pub fn new(name: impl Into<String>, lhs: WebExpr, rhs: WebExpr) -> Relation {
        Relation {
            name: name.into(),
            lhs,
            rhs,
        }
    }

    /// Evaluates both sides and compares them.
    pub fn check(&self, ev: &Evaluator) -> Check {
        let r = (|| {
            let a = ev.evaluate_expr(&self.lhs)?;
            let b = ev.evaluate_expr(&self.rhs)?;
            Ok(Check::equal(self.name.clone(), ev.basis(), &a, &b))
        })();
        Check::from_result(self.name.clone(), r)
    }

    fn map(&self, tag: &str, f: impl Fn(&WebWord) -> Result<WebWord>) -> Result<Relation> {
        Ok(Relation {
            name: format!("{} [{tag}]", self.name),
            lhs: self.lhs.try_map_words(&f)?,
            rhs: self.rhs.try_map_words(&f)?,
        })
    }

    /// The relation together with its left–right reflection, top–bottom
    /// reflection and orientation reversal (and their composites), with
    /// duplicates removed.
    pub fn with_symmetries(self) -> Result<Vec<Relation>> {
        let mut out = vec![self];
        let ops: [(&str, WordMap); 3] = [
            ("mirror", |w| w.mirrored()),
            ("flip", |w| w.flipped()),
            ("reverse", |w| Ok(w.reversed())),
        ];
        for (tag, f) in ops {
            let mut more = Vec::new();
            for r in &out {
                let m = r.map(tag, f)?;
                if !out
                    .iter()
                    .chain(more.iter())
                    .any(|x: &Relation| x.lhs == m.lhs && x.rhs == m.rhs)
                {
                    more.push(m);
                }
            }
            out.extend(more);
        }
        Ok(out)
    }
}

fn q_binom(n: i64, t: i64) -> Scalar {
    Scalar::from_q(quantum_binomial(n, t))
}

fn expr(w: WebWord) -> WebExpr {
    WebExpr::word(Mode::QGeneric, w)
}

fn scaled(c: Scalar, w: WebWord) -> Result<WebExpr> {
    WebExpr::from_terms(
        w.n(),
        Mode::QGeneric,
        w.source().clone(),
        w.target().clone(),
        vec![(c, w)],
    )
}

fn ups(labels: &[u32]) -> Boundary {
    Boundary::from_labels(labels)
}

// ----- the defining relations ------------------------------------------------

/// Bigon: `merge ∘ split = [k+l choose k] · id`.
pub fn bigon(n: u32, k: u32, l: u32) -> Result<Relation> {
    let w = Sketch::new(n, ups(&[k + l]))
        .split(0, k, l)?
        .merge(0)?
        .build();
    let id = WebWord::identity(n, ups(&[k + l]), false);
    Ok(Relation::new(
        format!("bigon k={k} l={l}"),
        expr(w),
        scaled(q_binom((k + l) as i64, k as i64), id)?,
    ))
}

/// Blister: an `l`-labeled loop attached to a `k`-strand is `[N−k choose l]`.
pub fn blister(n: u32, k: u32, l: u32) -> Result<Relation> {
    let w = Sketch::new(n, ups(&[k]))
        .cup(1, l, true)?
        .merge(0)?
        .split(0, k, l)?
        .cap(1)?
        .build();
    let id = WebWord::identity(n, ups(&[k]), false);
    Ok(Relation::new(
        format!("blister k={k} l={l}"),
        expr(w),
        scaled(q_binom(n as i64 - k as i64, l as i64), id)?,
    ))
}

/// Associativity of merges.
pub fn associativity(n: u32, k: u32, l: u32, m: u32) -> Result<Relation> {
    let b = ups(&[k, l, m]);
    let lhs = Sketch::new(n, b.clone()).merge(0)?.merge(0)?.build();
    let rhs = Sketch::new(n, b).merge(1)?.merge(0)?.build();
    Ok(Relation::new(
        format!("associativity ({k},{l},{m})"),
        expr(lhs),
        expr(rhs),
    ))
}

/// Ladder on two upward rails `(k, l)`: a lower rung of label `lower.1`
/// flowing left-to-right if `lower.0`, then an upper rung. `None` if some
/// edge label would be negative.
fn ladder(
    n: u32,
    k: u32,
    l: u32,
    lower: (bool, u32),
    upper: (bool, u32),
) -> Result<Option<WebWord>> {
    let mut sk = Sketch::new(n, ups(&[k, l]));
    for (left_to_right, r) in [lower, upper] {
        let (a, b) = (sk.strands()[0].label, sk.strands()[1].label);
        if left_to_right {
            if r > a {
                return Ok(None);
            }
            sk = sk.split(0, a - r, r)?.merge(1)?;
        } else {
            if r > b {
                return Ok(None);
            }
            sk = sk.split(1, r, b - r)?.merge(0)?;
        }
    }
    Ok(Some(sk.build()))
}

/// Square switch: commuting a left-to-right rung `b` past a right-to-left
/// rung `a` produces a sum over `t` with coefficients `[k−l+a−b choose t]`.
pub fn square_switch(n: u32, k: u32, l: u32, a: u32, b: u32) -> Result<Option<Relation>> {
    let Some(lhs) = ladder(n, k, l, (true, b), (false, a))? else {
        return Ok(None);
    };
    let mut terms = Vec::new();
    for t in 0..=a.min(b) {
        if let Some(w) = ladder(n, k, l, (false, a - t), (true, b - t))? {
            let c = q_binom(k as i64 - l as i64 + a as i64 - b as i64, t as i64);
            terms.push((c, w));
        }
    }
    let rhs = WebExpr::from_terms(
        n,
        Mode::QGeneric,
        lhs.source().clone(),
        lhs.target().clone(),
        terms,
    )?;
    Ok(Some(Relation::new(
        format!("square switch k={k} l={l} a={a} b={b}"),
        expr(lhs),
        rhs,
    )))
}

/// The relation between oppositely oriented rails `(k^, lv)` joined by two
/// 1-labeled rungs in either order, with correction `[N−k−l]·id`.
pub fn dual_pairing(n: u32, k: u32, l: u32) -> Result<Relation> {
    let b = Boundary(vec![Strand::up(k), Strand::down(l)]);
    let lhs = Sketch::new(n, b.clone())
        .cup(1, 1, true)?
        .merge(0)?
        .merge(1)?
        .split(0, k, 1)?
        .split(2, 1, l)?
        .cap(1)?
        .build();
    let first = Sketch::new(n, b.clone())
        .split(0, k - 1, 1)?
        .split(2, 1, l - 1)?
        .cap(1)?
        .cup(1, 1, true)?
        .merge(0)?
        .merge(1)?
        .build();
    let id = WebWord::identity(n, b.clone(), false);
    let c = Scalar::from_q(quantum_integer(n as i64 - k as i64 - l as i64));
    let rhs = WebExpr::from_terms(
        n,
        Mode::QGeneric,
        b.clone(),
        b,
        vec![(Scalar::one(), first), (c, id)],
    )?;
    Ok(Relation::new(
        format!("dual pairing k={k} l={l}"),
        expr(lhs),
        rhs,
    ))
}

/// Closed `k`-labeled circles of either orientation evaluate to `[N choose k]`.
pub fn circles(n: u32, k: u32) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for (tag, left) in [("counterclockwise", true), ("clockwise", false)] {
        let w = Sketch::new(n, Boundary::empty())
            .cup(0, k, left)?
            .cap(0)?
            .build();
        let id = WebWord::identity(n, Boundary::empty(), false);
        out.push(Relation::new(
            format!("{tag} circle k={k}"),
            expr(w),
            scaled(q_binom(n as i64, k as i64), id)?,
        ));
    }
    Ok(out)
}

/// `id` on `(N^, Nv)` factors through the unit object.
pub fn top_label_pair(n: u32) -> Result<Relation> {
    let b = Boundary(vec![Strand::up(n), Strand::down(n)]);
    let w = Sketch::new(n, b.clone()).cap(0)?.cup(0, n, true)?.build();
    Ok(Relation::new(
        "N-labeled pair through the unit",
        expr(WebWord::identity(n, b, false)),
        expr(w),
    ))
}

/// `id` on `(k^, Nv)` factors through a single `(N−k)`-labeled edge.
pub fn top_label_absorption(n: u32, k: u32) -> Result<Relation> {
    let b = Boundary(vec![Strand::up(k), Strand::down(n)]);
    let w = Sketch::new(n, b.clone())
        .split(1, k, n - k)?
        .cap(0)?
        .cup(0, k, true)?
        .merge(1)?
        .build();
    Ok(Relation::new(
        format!("(k,N) pair through N−k, k={k}"),
        expr(WebWord::identity(n, b, false)),
        expr(w),
    ))
}

/// All planar relations whose boundary label total is at most `N + 2`,
/// with their reflections and orientation reversals.
pub fn planar_relations(n: u32) -> Result<Vec<Relation>> {
    let max = n + 2;
    let mut base = Vec::new();
    for k in 1..=max {
        for l in 1..=max - k {
            base.push(bigon(n, k, l)?);
        }
    }
    for k in 1..=max {
        for l in 1..=n + 1 {
            base.push(blister(n, k, l)?);
        }
    }
    for k in 1..=max {
        for l in 1..=max - k {
            for m in 1..=max.saturating_sub(k + l) {
                base.push(associativity(n, k, l, m)?);
            }
        }
    }
    for k in 1..=max {
        for l in 1..=max - k {
            for a in 1..=n {
                for b in 1..=n {
                    if let Some(r) = square_switch(n, k, l, a, b)? {
                        base.push(r);
                    }
                }
            }
        }
    }
    for k in 1..=max {
        for l in 1..=max - k {
            base.push(dual_pairing(n, k, l)?);
        }
    }
    for k in 1..=n {
        base.extend(circles(n, k)?);
    }
    base.push(top_label_pair(n)?);
    for k in 1..n.min(3) {
        base.push(top_label_absorption(n, k)?);
    }
    let mut out = Vec::new();
    for r in base {
        out.extend(r.with_symmetries()?);
    }
    Ok(out)
}

/// Checks every planar relation in generic-`q` mode.
pub fn webrel_suite(n: u32) -> CheckList {
    let mut out = CheckList::new();
    let ev = Evaluator::new(EvalConfig::new(n, Mode::QGeneric));
    match planar_relations(n) {
        Ok(rels) => {
            for r in rels {
                out.push(r.check(&ev));
            }
        }
        Err(e) => out.push(Check::fail(
            format!("N={n} planar relation library"),
            format!("error: {e}"),
        )),
    }
    out
}

/// Three crossings at the given strand positions, bottom to top.
type CrossingRow = [(usize, Sign); 3];

// ----- braiding ------------------------------------------------------------

/// A curl on strand `s`: the strand crosses itself through a loop on the
/// right (`right = true`) or left side.
pub fn curl(n: u32, s: Strand, sign: Sign, right: bool) -> Result<WebWord> {
    let b = Boundary(vec![s]);
    let up = s.orient == Orient::Up;
    let sk = if right {
        Sketch::new(n, b)
            .cup(1, s.label, up)?
            .cross(0, sign)?
            .cap(1)?
    } else {
        Sketch::new(n, b)
            .cup(0, s.label, !up)?
            .cross(1, sign)?
            .cap(0)?
    };
    Ok(sk.build())
}

/// Exponent `e` with `curl = q^e · id` on a `k`-labeled strand: `∓k(N+1−2k)`
/// for a positive / negative self-crossing.
pub fn curl_exponent(n: u32, k: u32, sign: Sign) -> i64 {
    let (n, k) = (n as i64, k as i64);
    let e = k * (n + 1 - 2 * k);
    match sign {
        Sign::Pos => -e,
        Sign::Neg => e,
    }
}

fn strands_up_to(max_label: u32) -> Vec<Strand> {
    let mut v = Vec::new();
    for k in 1..=max_label {
        v.push(Strand::up(k));
        v.push(Strand::down(k));
    }
    v
}

fn signed(sign: Sign) -> &'static str {
    match sign {
        Sign::Pos => "+",
        Sign::Neg => "-",
    }
}

/// Reidemeister-type moves for strands with labels up to `max_label`.
pub fn braid_relations(n: u32, max_label: u32) -> Result<Vec<Relation>> {
    let max_label = max_label.min(n);
    let strands = strands_up_to(max_label);
    let mut out = Vec::new();
    for &s in &strands {
        for sign in [Sign::Pos, Sign::Neg] {
            for right in [true, false] {
                let w = curl(n, s, sign, right)?;
                let c = Scalar::q_pow(curl_exponent(n, s.label, sign));
                let id = WebWord::identity(n, Boundary(vec![s]), false);
                let side = if right { "right" } else { "left" };
                out.push(Relation::new(
                    format!("RI {side} {} on {s}", signed(sign)),
                    expr(w),
                    scaled(c, id)?,
                ));
            }
        }
    }
    for &a in &strands {
        for &b in &strands {
            let src = Boundary(vec![a, b]);
            for sign in [Sign::Pos, Sign::Neg] {
                let w = Sketch::new(n, src.clone())
                    .cross(0, sign)?
                    .cross(0, sign.flip())?
                    .build();
                let id = WebWord::identity(n, src.clone(), false);
                out.push(Relation::new(
                    format!("RII {}{} on ({a},{b})", signed(sign), signed(sign.flip())),
                    expr(w),
                    expr(id),
                ));
            }
        }
    }
    let patterns: [(&str, CrossingRow, CrossingRow); 3] = [
        (
            "+++",
            [(0, Sign::Pos), (1, Sign::Pos), (0, Sign::Pos)],
            [(1, Sign::Pos), (0, Sign::Pos), (1, Sign::Pos)],
        ),
        (
            "---",
            [(0, Sign::Neg), (1, Sign::Neg), (0, Sign::Neg)],
            [(1, Sign::Neg), (0, Sign::Neg), (1, Sign::Neg)],
        ),
        (
            "++-",
            [(0, Sign::Pos), (1, Sign::Pos), (0, Sign::Neg)],
            [(1, Sign::Neg), (0, Sign::Pos), (1, Sign::Pos)],
        ),
    ];
    for &a in &strands {
        for &b in &strands {
            for &c in &strands {
                let src = Boundary(vec![a, b, c]);
                for (tag, lhs, rhs) in &patterns {
                    let build = |moves: &[(usize, Sign); 3]| -> Result<WebWord> {
                        let mut sk = Sketch::new(n, src.clone());
                        for &(i, s) in moves {
                            sk = sk.cross(i, s)?;
                        }
                        Ok(sk.build())
                    };
                    out.push(Relation::new(
                        format!("RIII {tag} on ({a},{b},{c})"),
                        expr(build(lhs)?),
                        expr(build(rhs)?),
                    ));
                }
            }
        }
    }
    for &m in &strands {
        for o in [Orient::Up, Orient::Down] {
            for k in 1..=max_label {
                for l in 1..=max_label {
                    for sign in [Sign::Pos, Sign::Neg] {
                        let trunk = Strand {
                            label: k + l,
                            orient: o,
                        };
                        let src = Boundary(vec![m, trunk]);
                        let lhs = Sketch::new(n, src.clone())
                            .split(1, k, l)?
                            .cross(0, sign)?
                            .cross(1, sign)?
                            .build();
                        let rhs = Sketch::new(n, src).cross(0, sign)?.split(0, k, l)?.build();
                        let r = Relation::new(
                            format!(
                                "forkslide {} {m} past split of {trunk} into ({k},{l})",
                                signed(sign)
                            ),
                            expr(lhs),
                            expr(rhs),
                        );
                        out.extend(r.with_symmetries()?);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Checks the braiding moves for labels 1 and 2 in generic-`q` mode.
pub fn reid_suite(n: u32) -> CheckList {
    let mut out = CheckList::new();
    let ev = Evaluator::new(EvalConfig::new(n, Mode::QGeneric));
    match braid_relations(n, 2) {
        Ok(rels) => {
            for r in rels {
                out.push(r.check(&ev));
            }
        }
        Err(e) => out.push(Check::fail(
            format!("N={n} braid relation library"),
            format!("error: {e}"),
        )),
    }
    out
}

// ----- annular identities ----------------------------------------------------

/// Slides a cap (or cup) joining the first and last boundary strands around
/// the base segment in both directions; the two words must agree.
pub fn cap_slide(n: u32, first: Strand, middle: &[Strand]) -> Result<(Relation, Relation)> {
    let mut b = vec![first];
    b.extend_from_slice(middle);
    b.push(first.dual());
    let src = Boundary(b);
    let m = middle.len();
    // Cap: rotate the first strand to the end, or the last strand to the front.
    let a = WordBuilder::new(n, src.clone()).at(0, Gen::Rotate(1))?;
    let a = Sketch::from_builder(a).cap(m)?.build();
    let b2 = WordBuilder::new(n, src).at(0, Gen::Rotate(-1))?;
    let b2 = Sketch::from_builder(b2).cap(0)?.build();
    let cap = Relation::new(
        format!("cap slide ({first}, …{m}…, {})", first.dual()),
        WebExpr::word(Mode::Zeta, a),
        WebExpr::word(Mode::Zeta, b2),
    );
    // Cup: create the pair at one end and rotate its far leg around.
    let mid = Boundary(middle.to_vec());
    let left = first.orient == Orient::Down;
    let c1 = Sketch::new(n, mid.clone())
        .cup(m, first.label, left)?
        .into_builder()
        .at(0, Gen::Rotate(-1))?
        .build();
    let c2 = Sketch::new(n, mid)
        .cup(0, first.label, left)?
        .into_builder()
        .at(0, Gen::Rotate(1))?
        .build();
    let cup = Relation::new(
        format!("cup slide ({}, …{m}…, {first})", first.dual()),
        WebExpr::word(Mode::Zeta, c1),
        WebExpr::word(Mode::Zeta, c2),
    );
    Ok((cap, cup))
}

/// Annular identities in the root-of-unity and formal-eigenvalue regimes.
pub fn annular_suite(n: u32) -> CheckList {
    let mut out = CheckList::new();
    let zeta = Evaluator::new(EvalConfig::new(n, Mode::Zeta));
    let formal = Evaluator::new(EvalConfig::new(n, Mode::FormalX));
    let field = zeta.field().expect("zeta field").clone();
    for k in 1..=n {
        let name = format!("essential circle k={k}");
        let w = essential_circle(n, k);
        out.record(
            name.clone(),
            (|| {
                let op = zeta.evaluate_word(&w)?;
                let want = if k < n {
                    Scalar::zero()
                } else {
                    Scalar::int(if n % 2 == 1 { 1 } else { -1 })
                };
                let got = op.get(0, 0);
                let e_k = Scalar::from_cyc(elementary_symmetric_at_zeta(n, k));
                Ok(Check::holds(
                    name.clone(),
                    got == want && got == e_k,
                    || format!("value {got}, expected {want}"),
                ))
            })(),
        );
        let name = format!("essential circle k={k} (formal)");
        out.record(
            name.clone(),
            (|| {
                let got = formal.evaluate_word(&w)?.get(0, 0);
                let want = Scalar::from_x(crate::symfun::elementary(n as usize, k as usize));
                Ok(Check::holds(name.clone(), got == want, || {
                    format!("value {got}, expected {want}")
                }))
            })(),
        );
        out.push(Check::holds(
            format!("essential circle k={k} winding grade"),
            w.winding_grade() == k as i64,
            || format!("grade {}", w.winding_grade()),
        ));
    }
    for s in [Strand::up(1), Strand::down(1)] {
        let name = format!("D^N = id on {s}");
        out.record(
            name.clone(),
            (|| {
                let b = Boundary(vec![s]);
                let d = zeta.rotate(&b, 1)?;
                let mut acc = zeta.identity(&b);
                for _ in 0..n {
                    acc = d.compose(&acc)?;
                }
                Ok(Check::equal(
                    name.clone(),
                    zeta.basis(),
                    &acc,
                    &zeta.identity(&b),
                ))
            })(),
        );
    }
    let _ = field;
    for m in 2..=3usize {
        let name = format!("wrap = crossings ∘ rotation on {m} strands");
        out.record(
            name.clone(),
            (|| {
                let b = Boundary::ups(1, m);
                let wrap = WebWord::single(n, &b, 0, Gen::Wrap(1))?;
                let mut wb = WordBuilder::new(n, b).at(0, Gen::Rotate(1))?;
                for i in (0..m - 1).rev() {
                    wb = wb.cross(i, Sign::Pos)?;
                }
                let a = zeta.evaluate_word(&wrap)?;
                let c = zeta.evaluate_word(&wb.build())?;
                Ok(Check::equal(name.clone(), zeta.basis(), &a, &c))
            })(),
        );
    }
    let middles: Vec<Vec<Strand>> = vec![
        vec![],
        vec![Strand::up(1)],
        vec![Strand::down(1)],
        vec![Strand::up(1), Strand::down(1)],
        vec![Strand::up(2.min(n))],
    ];
    for k in 1..=2.min(n) {
        for first in [Strand::up(k), Strand::down(k)] {
            for mid in &middles {
                match cap_slide(n, first, mid) {
                    Ok((cap, cup)) => {
                        out.push(cap.check(&zeta));
                        out.push(cup.check(&zeta));
                        let fcap = Relation::new(
                            format!("{} (formal)", cap.name),
                            with_mode(&cap.lhs, Mode::FormalX),
                            with_mode(&cap.rhs, Mode::FormalX),
                        );
                        out.push(fcap.check(&formal));
                    }
                    Err(e) => out.push(Check::fail(
                        format!("cap slide on {first}"),
                        format!("error: {e}"),
                    )),
                }
            }
        }
    }
    out
}

fn with_mode(e: &WebExpr, mode: Mode) -> WebExpr {
    let terms = e.terms().to_vec();
    WebExpr::from_terms(e.n(), mode, e.source().clone(), e.target().clone(), terms)
        .expect("coefficients are rational")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_dimension_of_circles() {
        let ev = Evaluator::new(EvalConfig::new(3, Mode::QGeneric));
        for r in circles(3, 2).unwrap() {
            assert!(r.check(&ev).passed, "{}", r.name);
        }
    }

    #[test]
    fn symmetries_are_deduplicated() {
        let r = bigon(3, 1, 1).unwrap().with_symmetries().unwrap();
        // Mirror and flip map the bigon to a bigon; only reversal is new.
        assert!(r.len() >= 2 && r.len() <= 4);
    }
}
