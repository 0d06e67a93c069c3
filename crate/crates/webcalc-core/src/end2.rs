//! The endomorphism algebra of a 2-labeled point and its two-strand
//! shadow: the elements `E_k`, `D_2`, `B_1`, `A_k` on the 2-strand, the
//! dumbbells `u`, `v` and their products `R_{2k−1}`, `S_x`, `X_n`, `Y_n` on
//! two 1-labeled points, and the identities leading to the absorption of
//! crossings by `T_2`.

use alloc::borrow::ToOwned;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::{Check, CheckList};
use crate::error::{Error, Result};
use crate::eval::{EvalConfig, Evaluator, SparseOperator};
use crate::projectors::{crossing, rotation, t2};
use crate::scalars::{elementary_symmetric_at_zeta, Mode, Scalar};
use crate::web::{Boundary, Gen, Strand, Term, WebWord, WordBuilder};

const MODE: Mode = Mode::Zeta;

fn word(w: WebWord) -> Term {
    Term::word(MODE, w.into_annular())
}

/// The 2-labeled upward point.
pub fn two() -> Boundary {
    Boundary(vec![Strand::up(2)])
}

fn pair() -> Boundary {
    Boundary::ups(1, 2)
}

/// `f^p` (`p ≥ 0`) as a composite; `f^0` is the identity.
fn power(f: &Term, p: usize) -> Result<Term> {
    if p == 0 {
        return Ok(Term::identity(f.n(), f.mode(), f.source().clone()));
    }
    Term::chain(&vec![f.clone(); p])
}

fn zero(n: u32, b: Boundary) -> Term {
    Term::identity(n, MODE, b).scale(Scalar::zero())
}

/// One candidate realization of `B_1`: split, act on the legs, merge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct B1Candidate {
    pub name: String,
    pub middle: Gen,
    pub pos: usize,
}

/// Candidates for `B_1`, in the order in which calibration tries them: one
/// leg wrapped once around the annulus in either direction, or the two legs
/// rotated past each other around the seam.
pub fn b1_candidates() -> Vec<B1Candidate> {
    let mut out = Vec::new();
    for pos in 0..2 {
        for p in [1, -1] {
            out.push(B1Candidate {
                name: format!("wrap({p}) on leg {}", pos + 1),
                middle: Gen::Wrap(p),
                pos,
            });
        }
    }
    for p in [1, -1] {
        out.push(B1Candidate {
            name: format!("rot({p}) of the legs"),
            middle: Gen::Rotate(p),
            pos: 0,
        });
    }
    out
}

impl B1Candidate {
    pub fn term(&self, n: u32) -> Result<Term> {
        let w = WordBuilder::new(n, two())
            .at(0, Gen::Split(1, 1))?
            .at(self.pos, self.middle)?
            .at(0, Gen::Merge(1, 1))?
            .build();
        Ok(word(w))
    }
}

/// The algebra for a fixed `N`, with `B_1` calibrated.
pub struct End2 {
    n: u32,
    ev: Evaluator,
    b1: Term,
    b1_choice: B1Candidate,
}

impl End2 {
    /// Builds the generators and calibrates `B_1` against `vu = D^{−1} S B_1 M`.
    pub fn new(n: u32) -> Result<End2> {
        let ev = Evaluator::new(EvalConfig::new(n, MODE));
        let mut partial = End2 {
            n,
            ev,
            b1: zero(n, two()),
            b1_choice: b1_candidates()[0].clone(),
        };
        let target = partial.op(&Term::chain(&[partial.v()?, partial.u()?])?)?;
        let mut found: Option<(B1Candidate, Term, SparseOperator)> = None;
        for cand in b1_candidates() {
            let b1 = cand.term(n)?;
            let lhs = Term::chain(&[
                partial.d(-1)?,
                partial.split()?,
                b1.clone(),
                partial.merge()?,
            ])?;
            if partial.op(&lhs)?.first_difference(&target)?.is_some() {
                continue;
            }
            let b1_op = partial.op(&b1)?;
            match &found {
                None => found = Some((cand, b1, b1_op)),
                Some((first, _, op)) => {
                    if op.first_difference(&b1_op)?.is_some() {
                        return Err(Error::Calibration(format!(
                            "B_1 candidates `{}` and `{}` both satisfy vu = D^-1 S B_1 M but differ",
                            first.name, cand.name
                        )));
                    }
                }
            }
        }
        let (choice, b1, _) = found.ok_or_else(|| {
            Error::Calibration(format!(
                "no B_1 candidate satisfies vu = D^-1 S B_1 M for N = {n}"
            ))
        })?;
        partial.b1 = b1;
        partial.b1_choice = choice;
        Ok(partial)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.ev
    }

    /// The candidate selected for `B_1`.
    pub fn b1_choice(&self) -> &B1Candidate {
        &self.b1_choice
    }

    pub fn op(&self, t: &Term) -> Result<SparseOperator> {
        self.ev.evaluate(t)
    }

    // ----- on the 2-labeled point -----

    pub fn id2(&self) -> Term {
        Term::identity(self.n, MODE, two())
    }

    /// `E_k`: a `k`-labeled essential circle around the strand, which at
    /// `q = 1` is the scalar `e_k(γ)` times the identity.
    pub fn e(&self, k: u32) -> Term {
        if k == 0 || k > self.n {
            return zero(self.n, two());
        }
        self.id2()
            .scale(Scalar::from_cyc(elementary_symmetric_at_zeta(self.n, k)))
    }

    /// `D_2^p`: the 2-labeled strand wrapped `p` times.
    pub fn d2(&self, p: i64) -> Result<Term> {
        Ok(word(WebWord::single(self.n, &two(), 0, Gen::Rotate(p))?))
    }

    pub fn b1(&self) -> &Term {
        &self.b1
    }

    /// `A_k` from `A_1 = 0`, `A_2 = id` and `A_k = B_1 A_{k−1} − A_{k−2} D_2`;
    /// the recursion holds for `k ≤ N + 1`, and `A_k = 0` for `k ≥ N + 2`
    /// (an edge label above `N`). That the recursion yields `A_{N+1} = 0` is
    /// one of the verified identities.
    pub fn a(&self, k: u32) -> Result<Term> {
        if k >= self.n + 2 {
            return Ok(zero(self.n, two()));
        }
        let mut prev = zero(self.n, two());
        let mut cur = self.id2();
        match k {
            0 => return Err(Error::Invalid("A_k needs k ≥ 1".into())),
            1 => return Ok(prev),
            _ => {}
        }
        for _ in 3..=k {
            let next = Term::chain(&[self.b1.clone(), cur.clone()])?
                .sub(&Term::chain(&[prev, self.d2(1)?])?)?;
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// `B_k`: `B_1`, `B_2 = D_2` and `B_k = A_k D_2` for `k ≥ 3`.
    pub fn b(&self, k: u32) -> Result<Term> {
        match k {
            0 => Err(Error::Invalid("B_k needs k ≥ 1".into())),
            1 => Ok(self.b1.clone()),
            2 => self.d2(1),
            _ => Term::chain(&[self.a(k)?, self.d2(1)?]),
        }
    }

    // ----- on two 1-labeled points -----

    pub fn id_pair(&self) -> Term {
        Term::identity(self.n, MODE, pair())
    }

    pub fn merge(&self) -> Result<Term> {
        Ok(word(WebWord::single(self.n, &pair(), 0, Gen::Merge(1, 1))?))
    }

    pub fn split(&self) -> Result<Term> {
        Ok(word(WebWord::single(self.n, &two(), 0, Gen::Split(1, 1))?))
    }

    /// The rotation `D^p` of two points.
    pub fn d(&self, p: i64) -> Result<Term> {
        rotation(self.n, 2, p)
    }

    /// The crossing `s`.
    pub fn s(&self) -> Result<Term> {
        crossing(self.n, 2, 1)
    }

    /// `t = D^{−1} s D`.
    pub fn t(&self) -> Result<Term> {
        crossing(self.n, 2, 2)
    }

    /// The dumbbell `u = S M`.
    pub fn u(&self) -> Result<Term> {
        Term::chain(&[self.split()?, self.merge()?])
    }

    /// `v = id − t`.
    pub fn v(&self) -> Result<Term> {
        self.id_pair().sub(&self.t()?)
    }

    fn one_minus(&self, x: Term) -> Result<Term> {
        self.id_pair().sub(&x)
    }

    /// `R_{2k−1} = (id−v)(id−u)⋯(id−v)` with `2k−1` factors.
    pub fn r(&self, k: usize) -> Result<Term> {
        if k == 0 {
            return Err(Error::Invalid("R_{2k-1} needs k ≥ 1".into()));
        }
        let iv = self.one_minus(self.v()?)?;
        let iu = self.one_minus(self.u()?)?;
        let mut factors = vec![iv.clone()];
        for _ in 1..k {
            factors.push(iu.clone());
            factors.push(iv.clone());
        }
        Term::chain(&factors)
    }

    /// `S_x = Σ_{k=1}^x R_{2k−1}` (zero for `x = 0`).
    pub fn s_sum(&self, x: usize) -> Result<Term> {
        if x == 0 {
            return Ok(zero(self.n, pair()));
        }
        Term::sum(
            (1..=x)
                .map(|k| Ok((Scalar::one(), self.r(k)?)))
                .collect::<Result<_>>()?,
        )
    }

    /// `X_n = D^{1−n} S A_{n+1} M`.
    pub fn x(&self, n: u32) -> Result<Term> {
        Term::chain(&[
            self.d(1 - n as i64)?,
            self.split()?,
            self.a(n + 1)?,
            self.merge()?,
        ])
    }

    /// `Y_n`: `u − R_{n−1}u − u S_{n/2−1} u` (even `n`), `u − u S_{(n−1)/2} u` (odd `n`).
    pub fn y(&self, n: u32) -> Result<Term> {
        let u = self.u()?;
        let n = n as usize;
        if n.is_multiple_of(2) {
            let a = Term::chain(&[self.r(n / 2)?, u.clone()])?;
            let b = Term::chain(&[u.clone(), self.s_sum(n / 2 - 1)?, u.clone()])?;
            Term::sum(vec![
                (Scalar::one(), u),
                (Scalar::int(-1), a),
                (Scalar::int(-1), b),
            ])
        } else {
            let b = Term::chain(&[u.clone(), self.s_sum((n - 1) / 2)?, u.clone()])?;
            u.sub(&b)
        }
    }

    /// The alternating product `⋯vuvu` with `k` factors.
    pub fn alternating(&self, k: usize) -> Result<Term> {
        let (u, v) = (self.u()?, self.v()?);
        let factors: Vec<Term> = (0..k)
            .rev()
            .map(|i| if i % 2 == 0 { u.clone() } else { v.clone() })
            .collect();
        Term::chain(&factors)
    }
}

/// The identities of the 2-strand algebra for one `N`.
pub fn end2_suite(n: u32) -> CheckList {
    let mut out = CheckList::new();
    let alg = match End2::new(n) {
        Ok(a) => a,
        Err(e) => {
            out.push(Check::fail(
                format!("N={n} B_1 calibration"),
                format!("error: {e}"),
            ));
            return out;
        }
    };
    out.push(Check::pass(format!(
        "B_1 calibrated as {}",
        alg.b1_choice().name
    )));
    let ev = alg.evaluator();
    let eq = |out: &mut CheckList, name: String, a: Result<Term>, b: Result<Term>| {
        let r = (|| {
            Ok(Check::equal(
                name.clone(),
                ev.basis(),
                &alg.op(&a?)?,
                &alg.op(&b?)?,
            ))
        })();
        out.record(name, r);
    };
    let nn = n as usize;
    let c_n = Scalar::int(if n % 2 == 1 { 1 } else { -1 });

    for k in 1..n {
        let name = format!("E_{k} = 0");
        let r = alg
            .op(&alg.e(k))
            .map(|o| Check::holds(name.clone(), o.is_zero(), || "nonzero".into()));
        out.record(name, r);
    }
    eq(
        &mut out,
        "E_N = c_N".into(),
        Ok(alg.e(n)),
        Ok(alg.id2().scale(c_n.clone())),
    );
    eq(
        &mut out,
        "D_2 D_2^-1 = id".into(),
        Term::chain(&[alg.d2(1).unwrap(), alg.d2(-1).unwrap()]),
        Ok(alg.id2()),
    );
    eq(
        &mut out,
        "D_2 central: D_2 B_1 = B_1 D_2".into(),
        alg.d2(1).and_then(|d| Term::chain(&[d, alg.b1().clone()])),
        alg.d2(1).and_then(|d| Term::chain(&[alg.b1().clone(), d])),
    );
    for k in 2..=n + 1 {
        // B_1 A_k = −E_{k−1} + A_{k−1} D_2 + A_{k+1}
        let rhs = (|| {
            Term::sum(vec![
                (Scalar::int(-1), alg.e(k - 1)),
                (Scalar::one(), Term::chain(&[alg.a(k - 1)?, alg.d2(1)?])?),
                (Scalar::one(), alg.a(k + 1)?),
            ])
        })();
        eq(
            &mut out,
            format!("B_1 A_{k} = -E_{} + A_{} D_2 + A_{}", k - 1, k - 1, k + 1),
            alg.a(k).and_then(|a| Term::chain(&[alg.b1().clone(), a])),
            rhs,
        );
    }
    let name = format!("A_{} = 0", n + 1);
    let r = alg
        .a(n + 1)
        .and_then(|a| alg.op(&a))
        .map(|o| Check::holds(name.clone(), o.is_zero(), || "nonzero".into()));
    out.record(name, r);
    eq(
        &mut out,
        "A_N = c_N D_2^-1".into(),
        alg.a(n),
        alg.d2(-1).map(|d| d.scale(c_n.clone())),
    );
    eq(
        &mut out,
        "B_N = c_N".into(),
        alg.b(n),
        Ok(alg.id2().scale(c_n.clone())),
    );
    if n >= 3 {
        let a4 = (|| Term::chain(&[alg.b1().clone(), alg.b1().clone()])?.sub(&alg.d2(1)?))();
        eq(&mut out, "A_4 = B_1^2 - D_2".into(), alg.a(4), a4);
    }

    // Two points.
    let u = alg.u();
    eq(
        &mut out,
        "u u = 2u".into(),
        u.clone().and_then(|u| power(&u, 2)),
        u.clone().map(|u| u.scale(Scalar::int(2))),
    );
    eq(
        &mut out,
        "u = id - s".into(),
        u.clone(),
        alg.s().and_then(|s| alg.id_pair().sub(&s)),
    );
    for k in 2..=nn + 1 {
        let rhs = (|| {
            Term::chain(&[
                alg.d(1 - k as i64)?,
                alg.split()?,
                power(alg.b1(), k - 1)?,
                alg.merge()?,
            ])
        })();
        eq(
            &mut out,
            format!(
                "alternating product of {k} dumbbells = D^{} S B_1^{} M",
                1 - k as i64,
                k - 1
            ),
            alg.alternating(k),
            rhs,
        );
    }
    for m in 2..=n {
        eq(&mut out, format!("X_{m} = Y_{m}"), alg.x(m), alg.y(m));
    }
    let name = "X_N = 0".to_owned();
    let r = alg
        .x(n)
        .and_then(|x| alg.op(&x))
        .map(|o| Check::holds(name.clone(), o.is_zero(), || "nonzero".into()));
    out.record(name, r);
    let ntu = (|| Ok(Term::chain(&[t2(n)?, alg.u()?])?.scale(Scalar::int(n as i64))))();
    let name = "N T_2 u = 0".to_owned();
    let r = ntu
        .and_then(|t| alg.op(&t))
        .map(|o| Check::holds(name.clone(), o.is_zero(), || "nonzero".into()));
    out.record(name, r);

    let ts_form = (|| {
        let ts = Term::chain(&[alg.t()?, alg.s()?])?;
        let inv = Scalar::rational(crate::scalars::rat(1, n as i64));
        Term::sum(
            (0..nn)
                .map(|k| Ok((inv.clone(), power(&ts, k)?)))
                .collect::<Result<_>>()?,
        )
    })();
    eq(&mut out, "T_2 = (1/N) Σ (ts)^k".into(), t2(n), ts_form);
    let vu_form = (|| {
        let f = Term::chain(&[alg.one_minus(alg.v()?)?, alg.one_minus(alg.u()?)?])?;
        let inv = Scalar::rational(crate::scalars::rat(1, n as i64));
        Term::sum(
            (0..nn)
                .map(|k| Ok((inv.clone(), power(&f, k)?)))
                .collect::<Result<_>>()?,
        )
    })();
    eq(
        &mut out,
        "T_2 = (1/N) Σ ((id-v)(id-u))^k".into(),
        t2(n),
        vu_form,
    );
    eq(
        &mut out,
        "s T_2 = T_2".into(),
        (|| Term::chain(&[alg.s()?, t2(n)?]))(),
        t2(n),
    );
    eq(
        &mut out,
        "T_2 s = T_2".into(),
        (|| Term::chain(&[t2(n)?, alg.s()?]))(),
        t2(n),
    );
    eq(
        &mut out,
        "D^-1 T_2 D = T_2".into(),
        (|| Term::chain(&[alg.d(-1)?, t2(n)?, alg.d(1)?]))(),
        t2(n),
    );
    for k in 1..nn {
        let rhs = (|| {
            let iu = alg.one_minus(alg.u()?)?;
            Term::chain(&[iu.clone(), alg.r(nn - k)?, iu])
        })();
        eq(
            &mut out,
            format!("R_{} = (id-u) R_{} (id-u)", 2 * k - 1, 2 * (nn - k) - 1),
            alg.r(k),
            rhs,
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn calibration_is_deterministic() {
        let a = End2::new(3).unwrap();
        let b = End2::new(3).unwrap();
        assert_eq!(a.b1_choice(), b.b1_choice());
    }
}
