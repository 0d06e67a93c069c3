//! Structure special to `N = 2`: the `gl(2)` web relations at generic `q`,
//! the partial trace `pTr` with its splitter and merge webs `S_n`, `M_n`,
//! the decomposition `T_m ⊗ T_n = T_{m+n} + e_{m,n}` and the dimension
//! counts behind the skeleton of the Karoubi envelope.
//!
//! The pictures defining `S_n` and `M_n` leave the path of the travelling
//! strand under-determined, so the convention is chosen by calibration:
//! every candidate is tried against `pTr_1(T_2) = λ(T_1)` and
//! `pTr_2(T_2) = 2·λ²(∅)`, and the survivors must agree as operators.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::check::{Check, CheckList};
use crate::error::{Error, Result};
use crate::eval::{EvalConfig, Evaluator, SparseOperator};
use crate::linalg::{linear_span_dim, operator_equal, rank};
use crate::projectors::{
    diagonal_projection, dumbbell, extremal, id, lambda, permutation, permutations, points,
    rotation, wrap,
};
use crate::relations::{bigon, circles, Relation};
use crate::scalars::{rat, Mode, Scalar};
use crate::symfun::character;
use crate::web::{Boundary, Gen, Sign, Sketch, Strand, Term, WebExpr, WebWord};

const N: u32 = 2;

// ----- relations at generic q ------------------------------------------------------

fn expr(w: WebWord) -> WebExpr {
    WebExpr::word(Mode::QGeneric, w)
}

fn identity(b: Boundary) -> WebExpr {
    expr(WebWord::identity(N, b, false))
}

/// The circle, bigon and square relations of `gl(2)` webs, closed under
/// reflections and orientation reversal.
pub fn gl2_relations() -> Result<Vec<Relation>> {
    let one = Boundary::from_labels(&[1]);
    let mut base = Vec::new();
    base.extend(circles(N, 1)?);
    base.extend(circles(N, 2)?);
    base.push(bigon(N, 1, 1)?);
    // A 1-labeled strand with a bigon made of a 1-labeled edge and a double edge.
    let right = Sketch::new(N, one.clone())
        .cup(0, 1, false)?
        .merge(1)?
        .split(1, 1, 1)?
        .cap(0)?
        .build();
    base.push(Relation::new(
        "1-strand bigon, double edge on the right",
        expr(right),
        identity(one.clone()),
    ));
    let left = Sketch::new(N, one.clone())
        .cup(1, 1, true)?
        .merge(0)?
        .split(0, 1, 1)?
        .cap(1)?
        .build();
    base.push(Relation::new(
        "1-strand bigon, double edge on the left",
        expr(left),
        identity(one),
    ));
    // Squares between a double and a single strand.
    let b = Boundary::from_labels(&[2, 1]);
    let sq = Sketch::new(N, b.clone())
        .split(0, 1, 1)?
        .merge(1)?
        .split(1, 1, 1)?
        .merge(0)?
        .build();
    base.push(Relation::new("square (2,1)", expr(sq), identity(b)));
    let b = Boundary::from_labels(&[1, 2]);
    let sq = Sketch::new(N, b.clone())
        .split(1, 1, 1)?
        .merge(0)?
        .split(0, 1, 1)?
        .merge(1)?
        .build();
    base.push(Relation::new("square (1,2)", expr(sq), identity(b)));
    // Oppositely oriented double strands factor through the empty object.
    for (tag, pair, left) in [
        ("(2^,2v)", [Strand::up(2), Strand::down(2)], true),
        ("(2v,2^)", [Strand::down(2), Strand::up(2)], false),
    ] {
        let b = Boundary(pair.to_vec());
        let w = Sketch::new(N, b.clone()).cap(0)?.cup(0, 2, left)?.build();
        base.push(Relation::new(
            format!("double pair {tag} through the unit"),
            identity(b),
            expr(w),
        ));
    }
    let mut out = Vec::new();
    for r in base {
        out.extend(r.with_symmetries()?);
    }
    Ok(out)
}

/// The `gl2rel` suite.
pub fn gl2rel_suite() -> CheckList {
    let mut out = CheckList::new();
    let ev = Evaluator::new(EvalConfig::new(N, Mode::QGeneric));
    match gl2_relations() {
        Ok(rels) => {
            for r in rels {
                out.push(r.check(&ev));
            }
        }
        Err(e) => out.push(Check::fail("gl(2) relations", format!("error: {e}"))),
    }
    out
}

// ----- the partial trace ----------------------------------------------------------------

/// Which output of the splitting vertex travels to the right end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Leg {
    First,
    Second,
}

/// A convention for the splitter and merge webs `S_n`, `M_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartialTraceConvention {
    /// The output of each split that travels to the right end.
    pub leg: Leg,
    /// Wrap applied to each travelling strand once it reaches the right end.
    pub wrap: i64,
    /// Whether the travelling strand enters its merge as the first input
    /// (after crossing its partner) rather than the second.
    pub traveling_first: bool,
}

impl fmt::Display for PartialTraceConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let leg = match self.leg {
            Leg::First => "first",
            Leg::Second => "second",
        };
        let order = if self.traveling_first {
            "first"
        } else {
            "second"
        };
        write!(
            f,
            "travelling leg {leg}, wrap {:+}, merged as {order} input",
            self.wrap
        )
    }
}

/// All candidate conventions, the planar one without wrap first.
pub fn conventions() -> Vec<PartialTraceConvention> {
    let mut out = Vec::new();
    for wrap in [0, 1, -1] {
        for leg in [Leg::Second, Leg::First] {
            for traveling_first in [false, true] {
                out.push(PartialTraceConvention {
                    leg,
                    wrap,
                    traveling_first,
                });
            }
        }
    }
    out
}

fn zword(w: WebWord) -> Term {
    Term::word(Mode::Zeta, w.into_annular())
}

/// `id` on `k` upward double strands.
pub fn doubles(k: usize) -> Term {
    Term::identity(N, Mode::Zeta, Boundary::ups(2, k))
}

impl PartialTraceConvention {
    /// `S_n: (2^)^n → (1^)^{2n}`; the `i`-th double strand splits into the
    /// `i`-th strand and the `i`-th strand from the right.
    pub fn splitter(&self, n: usize) -> Result<Term> {
        let mut sk = Sketch::new(N, Boundary::ups(2, n));
        for k in 0..n {
            sk = sk.split(k, 1, 1)?;
            if self.leg == Leg::First {
                sk = sk.cross(k, Sign::Pos)?;
            }
            for c in k + 1..n {
                sk = sk.cross(c, Sign::Pos)?;
            }
            sk = sk.wrap(n, self.wrap)?;
        }
        Ok(zword(sk.build()))
    }

    /// `M_n: (1^)^{2n} → (2^)^n`, undoing the layout of [`Self::splitter`].
    pub fn merger(&self, n: usize) -> Result<Term> {
        let mut sk = Sketch::new(N, points(2 * n));
        for k in (0..n).rev() {
            for c in (k + 1..n).rev() {
                sk = sk.cross(c, Sign::Pos)?;
            }
            if self.traveling_first {
                sk = sk.cross(k, Sign::Pos)?;
            }
            sk = sk.merge(k)?;
        }
        Ok(zword(sk.build()))
    }

    /// `pTr_n(W) = (id ⊗ M_n)(W ⊗ id_n)(id ⊗ S_n)`; the last `n` source and
    /// target strands of `W` must be upward 1-labeled.
    pub fn ptr(&self, n: usize, w: &Term) -> Result<Term> {
        let (s, t) = (w.source(), w.target());
        let tail_ok =
            |b: &Boundary| b.len() >= n && b.0[b.len() - n..].iter().all(|x| *x == Strand::up(1));
        if !tail_ok(s) || !tail_ok(t) {
            return Err(Error::Boundary(format!(
                "pTr_{n} needs {n} trailing 1-labeled strands on {s} -> {t}"
            )));
        }
        let pad = |b: &Boundary, f: Term| -> Result<Term> {
            let head = Boundary(b.0[..b.len() - n].to_vec());
            if head.is_empty() {
                Ok(f)
            } else {
                Term::identity(N, Mode::Zeta, head).tensor(&f)
            }
        };
        let split = pad(s, self.splitter(n)?)?;
        let merge = pad(t, self.merger(n)?)?;
        Term::chain(&[merge, w.tensor(&id(N, n))?, split])
    }
}

fn zeta() -> Evaluator {
    Evaluator::new(EvalConfig::new(N, Mode::Zeta))
}

/// `λ^k(T_m)`, with `T_0 = id_∅`.
pub fn lambda_t(m: usize, k: usize) -> Result<Term> {
    let base = if m == 0 { doubles(0) } else { extremal(N, m)? };
    let mut acc = base;
    for _ in 0..k {
        acc = lambda(&acc)?;
    }
    Ok(acc)
}

/// `pTr_n(T_m)` against `λ^n(T_{m−n})` (times 2 when `n = m`).
fn tptr_pair(
    conv: &PartialTraceConvention,
    ev: &Evaluator,
    m: usize,
    n: usize,
) -> Result<(SparseOperator, SparseOperator)> {
    let lhs = ev.evaluate(&conv.ptr(n, &extremal(N, m)?)?)?;
    let mut rhs = ev.evaluate(&lambda_t(m - n, n)?)?;
    if n == m {
        rhs = rhs.scale(&Scalar::int(2));
    }
    Ok((lhs, rhs))
}

/// Outcome of the calibration of the partial trace.
#[derive(Clone, Debug)]
pub struct PtrCalibration {
    pub chosen: PartialTraceConvention,
    /// Every candidate with the outcome of the two pinning identities.
    pub log: Vec<(PartialTraceConvention, bool, bool)>,
}

/// Tries every convention against `pTr_1(T_2) = λ(T_1)` and
/// `pTr_2(T_2) = 2·λ²(∅)`. All survivors must induce the same partial
/// trace (equal `S_n ⊗ M_n` for `n = 1, 2`); the first one is returned.
pub fn calibrate_ptr() -> Result<PtrCalibration> {
    let ev = zeta();
    let mut log = Vec::new();
    let mut survivors = Vec::new();
    for conv in conventions() {
        let holds = |n: usize| -> Result<bool> {
            let (a, b) = tptr_pair(&conv, &ev, 2, n)?;
            Ok(a.first_difference(&b)?.is_none())
        };
        let (one, two) = (holds(1)?, holds(2)?);
        log.push((conv, one, two));
        if one && two {
            survivors.push(conv);
        }
    }
    let Some(&chosen) = survivors.first() else {
        return Err(Error::Calibration(format!(
            "no partial trace convention satisfies pTr(T_2): {log:?}"
        )));
    };
    let fingerprint = |c: &PartialTraceConvention| -> Result<Vec<SparseOperator>> {
        (1..=2)
            .map(|n| {
                Ok(ev
                    .evaluate(&c.splitter(n)?)?
                    .tensor(&ev.evaluate(&c.merger(n)?)?))
            })
            .collect()
    };
    let reference = fingerprint(&chosen)?;
    for c in &survivors[1..] {
        if !fingerprint(c)?
            .iter()
            .zip(&reference)
            .all(|(a, b)| operator_equal(a, b).unwrap_or(false))
        {
            return Err(Error::Calibration(format!(
                "inequivalent partial trace conventions both satisfy pTr(T_2): {chosen} and {c}"
            )));
        }
    }
    Ok(PtrCalibration { chosen, log })
}

fn eq(
    out: &mut CheckList,
    ev: &Evaluator,
    name: String,
    a: Result<SparseOperator>,
    b: Result<SparseOperator>,
) {
    let r = (|| Ok(Check::equal(name.clone(), ev.basis(), &a?, &b?)))();
    out.record(name, r);
}

fn vanishes(out: &mut CheckList, name: String, a: Result<SparseOperator>) {
    let r = a.map(|o| {
        Check::holds(name.clone(), o.is_zero(), || {
            format!("{} nonzero entries", o.nnz())
        })
    });
    out.record(name, r);
}

/// The `gl2ptr` suite: calibration, and `pTr_n(T_m) = λ^n(T_{m−n})` for
/// `1 ≤ n ≤ m ≤ max_m`.
pub fn gl2ptr_suite(max_m: usize) -> CheckList {
    let mut out = CheckList::new();
    let cal = match calibrate_ptr() {
        Ok(c) => c,
        Err(e) => {
            out.push(Check::fail("pTr calibration", format!("{e}")));
            return out;
        }
    };
    let survivors = cal.log.iter().filter(|(_, a, b)| *a && *b).count();
    out.push(Check::pass(format!(
        "pTr calibrated: {} ({survivors} of {} candidates agree)",
        cal.chosen,
        cal.log.len()
    )));
    let wrapped_fail = cal
        .log
        .iter()
        .filter(|(c, _, _)| c.wrap != 0)
        .all(|(_, a, b)| !(*a && *b));
    out.push(Check::holds(
        "candidates with a wrap on the travelling strand fail the pinning identities",
        wrapped_fail,
        || "a wrapped candidate satisfies them".into(),
    ));
    let ev = zeta();
    let conv = cal.chosen;
    for m in 1..=max_m {
        for n in 1..=m {
            let name = if n == m {
                format!("pTr_{n}(T_{m}) = 2·λ^{n}(∅)")
            } else {
                format!("pTr_{n}(T_{m}) = λ^{n}(T_{})", m - n)
            };
            let r = (|| {
                let (a, b) = tptr_pair(&conv, &ev, m, n)?;
                Ok(Check::equal(name.clone(), ev.basis(), &a, &b))
            })();
            out.record(name, r);
        }
    }
    out
}

// ----- the idempotents e_{m,n} ------------------------------------------------------------

/// `T_m ⊗ T_n`.
pub fn tt(m: usize, n: usize) -> Result<Term> {
    extremal(N, m)?.tensor(&extremal(N, n)?)
}

/// `e_{1,1} = u_1/2 + D^{−1} u_1 D/2` and
/// `e_{m,n} = (T_m ⊗ T_n) u_m (T_m ⊗ T_n)` otherwise.
pub fn emn(m: usize, n: usize) -> Result<Term> {
    if m == 1 && n == 1 {
        let (first, second) = e11_summands()?;
        return Term::sum(vec![(Scalar::one(), first), (Scalar::one(), second)]);
    }
    let t = tt(m, n)?;
    Term::chain(&[t.clone(), dumbbell(N, m + n, m)?, t])
}

/// The two summands `u_1/2` and `D^{−1} u_1 D/2` of `e_{1,1}`.
pub fn e11_summands() -> Result<(Term, Term)> {
    let half = Scalar::rational(rat(1, 2));
    let u = dumbbell(N, 2, 1)?;
    let conj = Term::chain(&[rotation(N, 2, -1)?, u.clone(), rotation(N, 2, 1)?])?;
    Ok((u.scale(half.clone()), conj.scale(half)))
}

/// `id_k ⊗ f ⊗ id_j` for a term on 1-labeled points.
fn pad(f: Term, k: usize, j: usize) -> Result<Term> {
    crate::projectors::padded(N, k, &f, j)
}

/// `T_k`, with `T_0` the empty identity (for padding).
fn t_or_empty(k: usize) -> Result<Option<Term>> {
    if k == 0 {
        Ok(None)
    } else {
        extremal(N, k).map(Some)
    }
}

fn tensor_opt(parts: &[Option<Term>]) -> Result<Term> {
    let mut acc: Option<Term> = None;
    for p in parts.iter().flatten() {
        acc = Some(match acc {
            None => p.clone(),
            Some(a) => a.tensor(p)?,
        });
    }
    acc.ok_or_else(|| Error::Invalid("empty tensor product".into()))
}

/// Moves the `k` double strands at the right end of `(1^)^a (2^)^k` to the
/// left end by crossings.
fn doubles_to_front(a: usize, k: usize) -> Result<Term> {
    let mut sk = Sketch::new(N, Boundary::ups(1, a).concat(&Boundary::ups(2, k)));
    for d in 0..k {
        // The double strand now at position a + d moves to position d.
        for pos in (d..a + d).rev() {
            sk = sk.cross(pos, Sign::Pos)?;
        }
    }
    Ok(zword(sk.build()))
}

/// The `gl2emn` suite for `m + n ≤ max_total`.
pub fn gl2emn_suite(conv: &PartialTraceConvention, max_total: usize) -> CheckList {
    let mut out = CheckList::new();
    let ev = zeta();
    let op = |t: Result<Term>| -> Result<SparseOperator> { ev.evaluate(&t?) };
    for total in 2..=max_total {
        for m in 1..total {
            let n = total - m;
            let tag = format!("({m},{n})");
            let e = op(emn(m, n));
            let t_sum = op(extremal(N, m + n));
            let tmn = op(tt(m, n));
            eq(
                &mut out,
                &ev,
                format!("e_{tag} idempotent"),
                e.clone().and_then(|e| e.compose(&e)),
                e.clone(),
            );
            eq(
                &mut out,
                &ev,
                format!("T_{m} ⊗ T_{n} = T_{} + e_{tag}", m + n),
                tmn.clone(),
                (|| t_sum.clone()?.add(&e.clone()?))(),
            );
            vanishes(
                &mut out,
                format!("e_{tag} T_{} = 0", m + n),
                (|| e.clone()?.compose(&t_sum.clone()?))(),
            );
            vanishes(
                &mut out,
                format!("T_{} e_{tag} = 0", m + n),
                (|| t_sum.clone()?.compose(&e.clone()?))(),
            );
            if total >= 3 {
                // With r = m = n the sandwich only sees one of the two summands of
                // e_{m,m}; that case is covered in `parprod2`.
                let top = if m == n { m - 1 } else { m.min(n) };
                for r in 1..=top {
                    let alt = (|| {
                        let sm = Term::chain(&[conv.splitter(r)?, conv.merger(r)?])?;
                        let middle =
                            tensor_opt(&[t_or_empty(m - r)?, Some(sm), t_or_empty(n - r)?])?;
                        let t = tt(m, n)?;
                        ev.evaluate(&Term::chain(&[t.clone(), middle, t])?)
                    })();
                    eq(
                        &mut out,
                        &ev,
                        format!("e_{tag} via S_{r} M_{r}"),
                        alt,
                        e.clone(),
                    );
                }
            }
            if n <= m {
                // (id_{m−n} ⊗ M_n)(T_m ⊗ T_n)(id_{m−n} ⊗ S_n) = λ^n(T_{m−n}), T_0 = 2.
                let lhs = (|| {
                    let s = pad(conv.splitter(n)?, 0, 0)?;
                    let (s, mm) = if m > n {
                        (
                            id(N, m - n).tensor(&s)?,
                            id(N, m - n).tensor(&conv.merger(n)?)?,
                        )
                    } else {
                        (s, conv.merger(n)?)
                    };
                    ev.evaluate(&Term::chain(&[mm, tt(m, n)?, s])?)
                })();
                let rhs = (|| {
                    let r = ev.evaluate(&lambda_t(m - n, n)?)?;
                    Ok(if m == n { r.scale(&Scalar::int(2)) } else { r })
                })();
                eq(&mut out, &ev, format!("kariso {tag}"), lhs, rhs);
            }
            if m > n {
                // e_{m,n} ≅ λ^n(T_{m−n}) ≅ e_{n,m}.
                let maps: Result<[Result<SparseOperator>; 4]> = (|| {
                    let tm = t_or_empty(m - n)?.ok_or_else(|| Error::Invalid("m > n".into()))?;
                    let phi = Term::chain(&[tt(m, n)?, tm.tensor(&conv.splitter(n)?)?])?;
                    let psi = Term::chain(&[tm.tensor(&conv.merger(n)?)?, tt(m, n)?])?;
                    let swap = doubles_to_front(m - n, n)?;
                    let back = swapped_back(m - n, n)?;
                    let phi2 = Term::chain(&[tt(n, m)?, conv.splitter(n)?.tensor(&tm)?, swap])?;
                    let psi2 = Term::chain(&[back, conv.merger(n)?.tensor(&tm)?, tt(n, m)?])?;
                    Ok([phi, psi, phi2, psi2].map(|t| ev.evaluate(&t)))
                })();
                match maps {
                    Err(err) => out.push(Check::fail(
                        format!("parprod {tag} maps"),
                        format!("error: {err}"),
                    )),
                    Ok([phi, psi, phi2, psi2]) => {
                        let lam = op(lambda_t(m - n, n));
                        let comp = |a: &Result<SparseOperator>,
                                    b: &Result<SparseOperator>|
                         -> Result<SparseOperator> {
                            a.clone()?.compose(&b.clone()?)
                        };
                        eq(
                            &mut out,
                            &ev,
                            format!("parprod {tag}: ψφ = λ^{n}(T_{})", m - n),
                            comp(&psi, &phi),
                            lam.clone(),
                        );
                        eq(
                            &mut out,
                            &ev,
                            format!("parprod {tag}: φψ = e_{tag}"),
                            comp(&phi, &psi),
                            e.clone(),
                        );
                        eq(
                            &mut out,
                            &ev,
                            format!("parprod ({n},{m}): ψφ = λ^{n}(T_{})", m - n),
                            comp(&psi2, &phi2),
                            lam,
                        );
                        eq(
                            &mut out,
                            &ev,
                            format!("parprod ({n},{m}): φψ = e_({n},{m})"),
                            comp(&phi2, &psi2),
                            op(emn(n, m)),
                        );
                    }
                }
            }
            if m == n {
                parprod2(&mut out, &ev, conv, m, e.clone());
            }
        }
    }
    // The two summands of e_{1,1} are conjugate under the rotation and have equal ranks.
    let r = (|| {
        let (a, b) = e11_summands()?;
        let (a, b) = (ev.evaluate(&a)?, ev.evaluate(&b)?);
        let d = ev.evaluate(&rotation(N, 2, 1)?)?;
        let dinv = ev.evaluate(&rotation(N, 2, -1)?)?;
        let conj = dinv.compose(&a)?.compose(&d)?;
        let (ra, rb) = (rank(&a)?, rank(&b)?);
        Ok(Check::holds(
            "e_(1,1) summands: D^-1 (u/2) D and equal ranks",
            conj == b && ra == rb,
            || format!("conjugate: {}, ranks {ra} and {rb}", conj == b),
        ))
    })();
    out.record("e_(1,1) summands conjugate", r);
    out
}

/// Inverse of [`doubles_to_front`]: `(2^)^k (1^)^a → (1^)^a (2^)^k`.
fn swapped_back(a: usize, k: usize) -> Result<Term> {
    let b = Boundary::ups(2, k).concat(&Boundary::ups(1, a));
    let mut sk = Sketch::new(N, b);
    for d in (0..k).rev() {
        for pos in d..a + d {
            sk = sk.cross(pos, Sign::Pos)?;
        }
    }
    Ok(zword(sk.build()))
}

/// `e_{m,m} ≅ λ^m(∅) ⊕ wλ^m(∅)` through `φ_1 = (T_m ⊗ T_m) S_m`,
/// `ψ_1 = M_m (T_m ⊗ T_m)/2`, `φ_2 = (T_m ⊗ T_m) D^{−1}(S_{m−1} ⊗ S_1)`,
/// `ψ_2 = (M_{m−1} ⊗ M_1) D (T_m ⊗ T_m)/2`.
fn parprod2(
    out: &mut CheckList,
    ev: &Evaluator,
    conv: &PartialTraceConvention,
    m: usize,
    e: Result<SparseOperator>,
) {
    let tag = format!("parprod2 m={m}");
    let maps: Result<[SparseOperator; 4]> = (|| {
        let half = Scalar::rational(rat(1, 2));
        let t = tt(m, m)?;
        let (s_pair, m_pair) = if m == 1 {
            (conv.splitter(1)?, conv.merger(1)?)
        } else {
            (
                conv.splitter(m - 1)?.tensor(&conv.splitter(1)?)?,
                conv.merger(m - 1)?.tensor(&conv.merger(1)?)?,
            )
        };
        let d = rotation(N, 2 * m, 1)?;
        let dinv = rotation(N, 2 * m, -1)?;
        let phi1 = Term::chain(&[t.clone(), conv.splitter(m)?])?;
        let psi1 = Term::chain(&[conv.merger(m)?, t.clone()])?.scale(half.clone());
        let phi2 = Term::chain(&[t.clone(), dinv, s_pair])?;
        let psi2 = Term::chain(&[m_pair, d, t])?.scale(half);
        Ok([
            ev.evaluate(&phi1)?,
            ev.evaluate(&psi1)?,
            ev.evaluate(&phi2)?,
            ev.evaluate(&psi2)?,
        ])
    })();
    let [phi1, psi1, phi2, psi2] = match maps {
        Ok(x) => x,
        Err(err) => {
            out.push(Check::fail(format!("{tag} maps"), format!("error: {err}")));
            return;
        }
    };
    let id_doubles = ev.evaluate(&doubles(m));
    eq(
        out,
        ev,
        format!("{tag}: ψ1φ1 = λ^{m}(∅)"),
        psi1.compose(&phi1),
        id_doubles.clone(),
    );
    eq(
        out,
        ev,
        format!("{tag}: ψ2φ2 = λ^{m}(∅)"),
        psi2.compose(&phi2),
        id_doubles,
    );
    vanishes(out, format!("{tag}: ψ1φ2 = 0"), psi1.compose(&phi2));
    vanishes(out, format!("{tag}: ψ2φ1 = 0"), psi2.compose(&phi1));
    let sum = (|| phi1.compose(&psi1)?.add(&phi2.compose(&psi2)?))();
    eq(out, ev, format!("{tag}: φ1ψ1 + φ2ψ2 = e_({m},{m})"), sum, e);
    let sandwich = (|| {
        let t = tt(m, m)?;
        ev.evaluate(&Term::chain(&[
            t.clone(),
            conv.splitter(m)?,
            conv.merger(m)?,
            t,
        ])?)
    })();
    let twice = phi1.compose(&psi1).map(|p| p.scale(&Scalar::int(2)));
    eq(
        out,
        ev,
        format!("{tag}: (T_{m} ⊗ T_{m}) S_{m} M_{m} (T_{m} ⊗ T_{m}) = 2φ1ψ1"),
        sandwich,
        twice,
    );
}

// ----- skeleton dimensions ------------------------------------------------------------------

/// Restriction of an endomorphism of `m` points to the constant-colour
/// vectors (the image of `T_m`), as an operator with all other rows and
/// columns removed.
fn restrict_to_extremal(ev: &Evaluator, m: usize, op: &SparseOperator) -> Result<SparseOperator> {
    let p = diagonal_projection(ev, m, |c| c.iter().all(|x| *x == c[0]));
    p.compose(op)?.compose(&p)
}

/// The `gl2skel` suite: independence of `D^j T_m` (`|j| ≤ J`) with formal
/// eigenvalues, one-dimensional degree-zero endomorphisms of `T_m` at the
/// root of unity, vanishing homs between distinct simples, and the rank
/// bookkeeping of the decomposition of `id_m`.
pub fn gl2skel_suite(max_m: usize, j_bound: i64) -> CheckList {
    let mut out = CheckList::new();
    let formal = Evaluator::new(EvalConfig::new(N, Mode::FormalX));
    let ev = zeta();
    for m in 1..=max_m.min(3) {
        let name = format!(
            "span of D^j T_{m} (|j| ≤ {j_bound}), formal eigenvalues = {}",
            2 * j_bound + 1
        );
        let r = (|| {
            let ops = (-j_bound..=j_bound)
                .map(|j| {
                    let d = Term::word(
                        Mode::FormalX,
                        WebWord::single(N, &points(m), 0, Gen::Rotate(j))?.into_annular(),
                    );
                    restrict_to_extremal(&formal, m, &formal.evaluate(&d)?)
                })
                .collect::<Result<Vec<_>>>()?;
            let dim = linear_span_dim(&ops)?;
            Ok(Check::holds(
                name.clone(),
                dim == (2 * j_bound + 1) as usize,
                || format!("dimension {dim}"),
            ))
        })();
        out.record(name, r);
    }
    for m in 1..=max_m.min(3) {
        // Degree-zero webs on m points: a permutation and wraps of total degree ≡ 0 mod N.
        let name = format!("degree-zero End(T_{m}) at the root of unity has dimension 1");
        let r = (|| {
            let t = ev.evaluate(&extremal(N, m)?)?;
            let mut ops = Vec::new();
            for perm in permutations(m) {
                let p = ev.evaluate(&permutation(N, &perm)?)?;
                for code in 0..(N as usize).pow(m as u32) {
                    let powers: Vec<i64> = (0..m)
                        .map(|i| ((code / (N as usize).pow(i as u32)) % N as usize) as i64)
                        .collect();
                    if powers.iter().sum::<i64>() % N as i64 != 0 {
                        continue;
                    }
                    let mut w = p.clone();
                    for (i, &a) in powers.iter().enumerate() {
                        if a != 0 {
                            w = ev.evaluate(&wrap(N, m, i, a)?)?.compose(&w)?;
                        }
                    }
                    ops.push(t.compose(&w)?.compose(&t)?);
                }
            }
            let dim = linear_span_dim(&ops)?;
            Ok(Check::holds(name.clone(), dim == 1, || {
                format!("dimension {dim}")
            }))
        })();
        out.record(name, r);
    }
    // Homs between λ^k(T_a) and λ^l(T_b) with a + 2k = b + 2l: weight-preserving
    // maps between the images, counted from the characters.
    for total in 2..=max_m {
        let objects: Vec<(usize, usize)> = (0..=total / 2).map(|k| (total - 2 * k, k)).collect();
        for &(a, k) in &objects {
            for &(b, l) in &objects {
                let name = format!("dim Hom(λ^{k}(T_{a}), λ^{l}(T_{b}))");
                let r = (|| {
                    let x = character(&ev, &ev.evaluate(&lambda_t(a, k)?)?)?;
                    let y = character(&ev, &ev.evaluate(&lambda_t(b, l)?)?)?;
                    let dim: usize = x
                        .multiplicities
                        .iter()
                        .map(|(w, m1)| m1 * y.multiplicities.get(w).copied().unwrap_or(0))
                        .sum();
                    let want = if (a, k) == (b, l) {
                        if a == 0 {
                            1
                        } else {
                            N as usize
                        }
                    } else {
                        0
                    };
                    Ok(Check::holds(name.clone(), dim == want, || {
                        format!("dimension {dim}, expected {want}")
                    }))
                })();
                out.record(name, r);
            }
        }
    }
    // Hom(T_2, λ(∅)) through the merge vertex.
    let r = (|| {
        let merge = zword(Sketch::new(N, points(2)).merge(0)?.build());
        let c = ev.evaluate(&Term::chain(&[merge, extremal(N, 2)?])?)?;
        Ok(Check::holds("merge ∘ T_2 = 0", c.is_zero(), || {
            "nonzero".into()
        }))
    })();
    out.record("merge ∘ T_2 = 0", r);

    // Rank bookkeeping of id_m ≅ ⊕ λ^k(T_j) ⊕ wλ^{m/2}(∅).
    for m in 1..=max_m {
        let name = format!("decomposition of id_{m}: ranks sum to 2^{m}");
        let r = (|| {
            let pieces = decomposition(m);
            let mut total = 0;
            for p in &pieces {
                let (j, k) = match *p {
                    Piece::Lambda { j, k } => (j, k),
                    Piece::Shifted { k } => (0, k),
                };
                total += rank(&ev.evaluate(&lambda_t(j, k)?)?)?;
            }
            Ok(Check::holds(name.clone(), total == 1 << m, || {
                format!("ranks sum to {total} over {pieces:?}")
            }))
        })();
        out.record(name, r);
    }
    out
}

/// A summand in the decomposition of `id_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    /// `λ^k(T_j)` (`j = 0` is `λ^k(∅)`).
    Lambda { j: usize, k: usize },
    /// `wλ^k(∅)`.
    Shifted { k: usize },
}

/// The branching `id_{m+1} = id_m ⊗ id_1` of the parallel product formulas.
pub fn decomposition(m: usize) -> Vec<Piece> {
    let mut pieces = vec![Piece::Lambda { j: 1, k: 0 }];
    for _ in 1..m {
        let mut next = Vec::new();
        for p in pieces {
            match p {
                Piece::Lambda { j: 0, k } | Piece::Shifted { k } => {
                    next.push(Piece::Lambda { j: 1, k })
                }
                Piece::Lambda { j: 1, k } => {
                    next.push(Piece::Lambda { j: 2, k });
                    next.push(Piece::Lambda { j: 0, k: k + 1 });
                    next.push(Piece::Shifted { k: k + 1 });
                }
                Piece::Lambda { j, k } => {
                    next.push(Piece::Lambda { j: j + 1, k });
                    next.push(Piece::Lambda { j: j - 1, k: k + 1 });
                }
            }
        }
        pieces = next;
    }
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_candidates() {
        assert_eq!(conventions().len(), 12);
        assert_eq!(
            conventions()[0],
            PartialTraceConvention {
                leg: Leg::Second,
                wrap: 0,
                traveling_first: false
            }
        );
    }

    #[test]
    fn decomposition_counts() {
        // id_2 = λ^0(T_2) ⊕ λ(∅) ⊕ wλ(∅).
        assert_eq!(decomposition(2).len(), 3);
        // id_3 = λ^0(T_3) ⊕ 3·λ(T_1).
        assert_eq!(decomposition(3).len(), 4);
        assert_eq!(decomposition(4).len(), 11);
    }

    #[test]
    fn splitter_shapes() {
        let c = conventions()[0];
        let s = c.splitter(2).unwrap();
        assert_eq!(s.source(), &Boundary::ups(2, 2));
        assert_eq!(s.target(), &points(4));
        let m = c.merger(2).unwrap();
        assert_eq!(m.source(), &points(4));
        assert_eq!(m.target(), &Boundary::ups(2, 2));
    }
}
