//! The categorified Newton identity: the zig-zag of maps between the
//! idempotents `V_{k−l} ⊗ T_l` on `k` points, certified to be an
//! isomorphism
//!
//! `⊕_{l odd} (k, V_{k−l} ⊗ T_l) ≅ ⊕_{l even, l ≥ 2} (k, V_{k−l} ⊗ T_l) ⊕ k·(k, V_k)`,
//!
//! and the decomposition of the bottom summand into `k` copies of the
//! antisymmetric clasp.
//!
//! Isomorphisms of idempotent images are certified directly: a map `f` from
//! the image of `e` to the image of `e'` must satisfy `e' f e = f`, and a
//! pair `f, g` is inverse when `g f = e` and `f g = e'`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::check::{Check, CheckList};
use crate::error::{Error, Result};
use crate::eval::basis::elements;
use crate::eval::basis::subsets;
use crate::eval::{EvalConfig, Evaluator, SparseOperator};
use crate::linalg::rank;
use crate::projectors::{clasp_anti, eigenprojector, extremal, points, wrap};
use crate::scalars::{Mode, Scalar};

const MODE: Mode = Mode::Zeta;

fn factorial(m: usize) -> i64 {
    (1..=m as i64).product()
}

/// The idempotent `V_{k−l} ⊗ T_l` on `k` points; `l = 0` is the clasp `V_k`
/// and `l = k` the extremal weight projector `T_k`.
pub fn summand(n: u32, k: usize, l: usize) -> Result<crate::web::Term> {
    if l > k || k == 0 {
        return Err(Error::Invalid(format!(
            "no summand V_{{{}}} ⊗ T_{l} on {k} points",
            k as i64 - l as i64
        )));
    }
    match l {
        0 => clasp_anti(n, k),
        _ if l == k => extremal(n, k),
        _ => clasp_anti(n, k - l)?.tensor(&extremal(n, l)?),
    }
}

/// A summand of either side of the isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Slot {
    /// `(k, V_{k−l} ⊗ T_l)` with `l ≥ 1`.
    Block(usize),
    /// The `j`-th copy (`1 ≤ j ≤ k`) of `(k, V_k)`.
    Copy(usize),
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Block(l) => write!(f, "[l={l}]"),
            Slot::Copy(j) => write!(f, "[V_k #{j}]"),
        }
    }
}

/// One map of the zig-zag, already evaluated.
#[derive(Clone, Debug)]
pub struct ZigZagMap {
    pub source: Slot,
    pub target: Slot,
    /// Scalar prefactor of the map (for display; already included in `op`).
    pub coefficient: i64,
    pub op: SparseOperator,
}

/// All ingredients of the Newton isomorphism for one `(N, k)`.
pub struct Newton {
    n: u32,
    k: usize,
    ev: Evaluator,
    /// `e[l] = V_{k−l} ⊗ T_l`, `l = 0..=k`.
    e: Vec<SparseOperator>,
    /// Eigenprojectors `P_1, …, P_N` on one point.
    p: Vec<SparseOperator>,
}

impl Newton {
    pub fn new(n: u32, k: usize) -> Result<Newton> {
        if k < 2 {
            return Err(Error::Invalid(format!(
                "the Newton isomorphism needs k ≥ 2, got {k}"
            )));
        }
        let ev = Evaluator::new(EvalConfig::new(n, MODE));
        let e = (0..=k)
            .map(|l| ev.evaluate(&summand(n, k, l)?))
            .collect::<Result<Vec<_>>>()?;
        let p = (1..=n)
            .map(|c| ev.evaluate(&eigenprojector(n, c)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(Newton { n, k, ev, e, p })
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.ev
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// The idempotent `V_{k−l} ⊗ T_l`.
    pub fn e(&self, l: usize) -> &SparseOperator {
        &self.e[l]
    }

    /// The idempotent of a slot.
    pub fn idempotent(&self, s: Slot) -> &SparseOperator {
        match s {
            Slot::Block(l) => &self.e[l],
            Slot::Copy(_) => &self.e[0],
        }
    }

    /// Summands of the odd side.
    pub fn left(&self) -> Vec<Slot> {
        (1..=self.k)
            .filter(|l| l % 2 == 1)
            .map(Slot::Block)
            .collect()
    }

    /// Summands of the even side, the `k` clasp copies included.
    pub fn right(&self) -> Vec<Slot> {
        let mut out: Vec<Slot> = (2..=self.k)
            .filter(|l| l % 2 == 0)
            .map(Slot::Block)
            .collect();
        out.extend((1..=self.k).map(Slot::Copy));
        out
    }

    fn chain(&self, ops: &[&SparseOperator]) -> Result<SparseOperator> {
        let (last, rest) = ops
            .split_last()
            .ok_or_else(|| Error::Invalid("empty composite".into()))?;
        let mut acc = (*last).clone();
        for o in rest.iter().rev() {
            acc = o.compose(&acc)?;
        }
        Ok(acc)
    }

    /// `P_{c_1} ⊗ ⋯ ⊗ P_{c_m}` for colors `c_i ∈ 1..=N`.
    pub fn decoration(&self, colors: &[u32]) -> SparseOperator {
        let mut acc = self.p[colors[0] as usize - 1].clone();
        for &c in &colors[1..] {
            acc = acc.tensor(&self.p[c as usize - 1]);
        }
        acc
    }

    /// `Σ_A P_{A∖x} ⊗ P_x` over `k`-element color sets `A` whose `j`-th
    /// largest element is `x`, the other colors in increasing order.
    fn decorations(&self, j: usize) -> Result<Option<SparseOperator>> {
        let mut acc: Option<SparseOperator> = None;
        for mask in subsets(self.n, self.k as u32) {
            let mut a = elements(mask);
            a.sort_unstable();
            let x = a.remove(a.len() - j);
            a.push(x);
            let d = self.decoration(&a);
            acc = Some(match acc {
                None => d,
                Some(s) => s.add(&d)?,
            });
        }
        Ok(acc)
    }

    fn zero(&self) -> SparseOperator {
        let b = points(self.k);
        SparseOperator::zero(self.ev.basis(), b.clone(), b)
    }

    /// The maps `(k, V_{k−1} ⊗ id) ⇄ (k, V_k)` onto the `j`-th clasp copy:
    /// `(k−1)! Σ_A V_k (P_{A∖x} ⊗ P_x) (V_{k−1} ⊗ id)` and
    /// `k! Σ_A (V_{k−1} ⊗ id)(P_{A∖x} ⊗ P_x) V_k`.
    pub fn bottom_maps(&self, j: usize) -> Result<(SparseOperator, SparseOperator)> {
        let Some(d) = self.decorations(j)? else {
            return Ok((self.zero(), self.zero()));
        };
        let (v, e1) = (&self.e[0], &self.e[1]);
        let f = self
            .chain(&[v, &d, e1])?
            .scale(&Scalar::int(factorial(self.k - 1)));
        let g = self
            .chain(&[e1, &d, v])?
            .scale(&Scalar::int(factorial(self.k)));
        Ok((f, g))
    }

    /// The `j`-th idempotent of the bottom decomposition,
    /// `(k−1)! Σ_A (V_{k−1} ⊗ id)(P_{A∖x} ⊗ P_x)(V_{k−1} ⊗ id)`.
    pub fn bottom_idempotent(&self, j: usize) -> Result<SparseOperator> {
        let Some(d) = self.decorations(j)? else {
            return Ok(self.zero());
        };
        let e1 = &self.e[1];
        Ok(self
            .chain(&[e1, &d, e1])?
            .scale(&Scalar::int(factorial(self.k - 1))))
    }

    /// Every map of the zig-zag: between neighbouring blocks `l` (odd) and
    /// `l ± 1` (even), and between the block `l = 1` and the clasp copies.
    pub fn zigzag_maps(&self) -> Result<Vec<ZigZagMap>> {
        let k = self.k;
        let mut out = Vec::new();
        let mut push = |source: Slot,
                        target: Slot,
                        coefficient: i64,
                        ops: [&SparseOperator; 2]|
         -> Result<()> {
            let op = ops[0].compose(ops[1])?.scale(&Scalar::int(coefficient));
            out.push(ZigZagMap {
                source,
                target,
                coefficient,
                op,
            });
            Ok(())
        };
        for l in (1..=k).filter(|l| l % 2 == 1) {
            let (b, e) = (Slot::Block(l), &self.e[l]);
            if l < k {
                let up = &self.e[l + 1];
                push(b, Slot::Block(l + 1), (k - l) as i64, [up, e])?;
                push(Slot::Block(l + 1), b, 1, [e, up])?;
            }
            if l >= 3 {
                let down = &self.e[l - 1];
                push(b, Slot::Block(l - 1), 1, [down, e])?;
                push(Slot::Block(l - 1), b, (k - l + 1) as i64, [e, down])?;
            }
        }
        for j in 1..=k {
            let (f, g) = self.bottom_maps(j)?;
            out.push(ZigZagMap {
                source: Slot::Block(1),
                target: Slot::Copy(j),
                coefficient: factorial(k - 1),
                op: f,
            });
            out.push(ZigZagMap {
                source: Slot::Copy(j),
                target: Slot::Block(1),
                coefficient: factorial(k),
                op: g,
            });
        }
        Ok(out)
    }
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

/// Sum of the composites `target ← via ← source` over all intermediate slots.
fn composite(
    maps: &[ZigZagMap],
    source: Slot,
    target: Slot,
    zero: &SparseOperator,
) -> Result<SparseOperator> {
    let mut acc = zero.clone();
    for f in maps.iter().filter(|m| m.source == source) {
        for g in maps
            .iter()
            .filter(|m| m.source == f.target && m.target == target)
        {
            acc = acc.add(&g.op.compose(&f.op)?)?;
        }
    }
    Ok(acc)
}

/// Certifies the zig-zag isomorphism for one `(N, k)`: the local identities
/// of the proof, the bottom decomposition, every map intertwining its
/// idempotents, and both block composites equal to the identity.
pub fn verify_newton_iso(n: u32, k: usize) -> CheckList {
    let mut out = CheckList::new();
    let tag = format!("N={n} k={k}");
    let nw = match Newton::new(n, k) {
        Ok(x) => x,
        Err(e) => {
            out.push(Check::fail(format!("{tag} setup"), format!("error: {e}")));
            return out;
        }
    };
    let ev = nw.evaluator();
    let e = |l: usize| nw.e(l);

    for l in 0..=k {
        let name = format!("{tag} V_{} ⊗ T_{l} idempotent", k - l);
        eq(&mut out, ev, name, e(l).compose(e(l)), Ok(e(l).clone()));
    }

    // Composites through two steps in the same direction vanish.
    for l in 1..=k.saturating_sub(2) {
        vanishes(
            &mut out,
            format!("{tag} e_{} e_{} e_{l} = 0", l + 2, l + 1),
            nw.chain(&[e(l + 2), e(l + 1), e(l)]),
        );
        vanishes(
            &mut out,
            format!("{tag} e_{l} e_{} e_{} = 0", l + 1, l + 2),
            nw.chain(&[e(l), e(l + 1), e(l + 2)]),
        );
    }

    // Diagonal identity (k−l)·e_l e_{l+1} e_l + (k−l+1)·e_l e_{l−1} e_l = e_l for l ≥ 2.
    for l in 2..=k {
        let lhs = (|| {
            let mut acc = nw
                .chain(&[e(l), e(l - 1), e(l)])?
                .scale(&Scalar::int((k - l + 1) as i64));
            if l < k {
                acc = acc.add(
                    &nw.chain(&[e(l), e(l + 1), e(l)])?
                        .scale(&Scalar::int((k - l) as i64)),
                )?;
            }
            Ok(acc)
        })();
        eq(
            &mut out,
            ev,
            format!("{tag} diagonal identity at l={l}"),
            lhs,
            Ok(e(l).clone()),
        );
    }

    // The bottom decomposition V_{k−1} ⊗ id = Σ_j Q_j + (k−1)·e_1 e_2 e_1.
    let bottom: Result<_> = (|| {
        let qs = (1..=k)
            .map(|j| nw.bottom_idempotent(j))
            .collect::<Result<Vec<_>>>()?;
        let rest = nw
            .chain(&[e(1), e(2), e(1)])?
            .scale(&Scalar::int(k as i64 - 1));
        Ok((qs, rest))
    })();
    match bottom {
        Err(err) => out.push(Check::fail(
            format!("{tag} bottom decomposition"),
            format!("error: {err}"),
        )),
        Ok((qs, rest)) => {
            let total = qs.iter().try_fold(rest.clone(), |acc, q| acc.add(q));
            eq(
                &mut out,
                ev,
                format!("{tag} V_{} ⊗ id = Σ_j Q_j + (k−1) e_1 e_2 e_1", k - 1),
                total,
                Ok(e(1).clone()),
            );
            let mut parts: Vec<(String, &SparseOperator)> = qs
                .iter()
                .enumerate()
                .map(|(i, q)| (format!("Q_{}", i + 1), q))
                .collect();
            parts.push(("(k−1) e_1 e_2 e_1".into(), &rest));
            for (a, (na, qa)) in parts.iter().enumerate() {
                for (nb, qb) in &parts[a..] {
                    let name = format!("{tag} {na} {nb}");
                    if na == nb {
                        eq(
                            &mut out,
                            ev,
                            format!("{name} = {na}"),
                            qa.compose(qa),
                            Ok((*qa).clone()),
                        );
                    } else {
                        vanishes(&mut out, format!("{name} = 0"), qa.compose(qb));
                        vanishes(&mut out, format!("{tag} {nb} {na} = 0"), qb.compose(qa));
                    }
                }
            }
            let want = rank(e(0));
            for (j, q) in qs.iter().enumerate() {
                let name = format!("{tag} rank Q_{} = rank V_{k}", j + 1);
                let r = (|| {
                    let (got, want) = (rank(q)?, want.clone()?);
                    Ok(Check::holds(name.clone(), got == want, || {
                        format!("rank {got}, expected {want}")
                    }))
                })();
                out.record(name, r);
            }
        }
    }

    let maps = match nw.zigzag_maps() {
        Ok(m) => m,
        Err(err) => {
            out.push(Check::fail(
                format!("{tag} zig-zag maps"),
                format!("error: {err}"),
            ));
            return out;
        }
    };
    for m in &maps {
        let name = format!("{tag} map {} -> {} intertwines", m.source, m.target);
        let r = nw.chain(&[nw.idempotent(m.target), &m.op, nw.idempotent(m.source)]);
        eq(&mut out, ev, name, r, Ok(m.op.clone()));
    }
    let zero = nw.zero();
    for (from, to) in [(nw.left(), nw.right()), (nw.right(), nw.left())] {
        for &a in &from {
            for &b in &from {
                let want = if a == b {
                    nw.idempotent(a).clone()
                } else {
                    zero.clone()
                };
                let name = format!(
                    "{tag} composite {a} -> {} -> {b}",
                    if to == nw.right() {
                        "even side"
                    } else {
                        "odd side"
                    }
                );
                eq(&mut out, ev, name, composite(&maps, a, b, &zero), Ok(want));
            }
        }
    }

    // Both sides have the same total rank.
    let r = (|| {
        let side = |slots: Vec<Slot>| {
            slots
                .into_iter()
                .map(|s| rank(nw.idempotent(s)))
                .sum::<Result<usize>>()
        };
        let (l, r) = (side(nw.left())?, side(nw.right())?);
        Ok(Check::holds(
            format!("{tag} ranks: odd side {l}, even side {r}"),
            l == r,
            || "ranks differ".into(),
        ))
    })();
    out.record(format!("{tag} ranks"), r);
    out
}

/// The `k = N` refinement: the bottom idempotents are the conjugates
/// `(id_{N−1} ⊗ D^{−x}) V_N (id_{N−1} ⊗ D^x)`, and
/// `V_N (id_{N−1} ⊗ D^{a−b}) V_N = δ_{a,b} V_N`.
pub fn verify_kn_remark(n: u32) -> CheckList {
    let mut out = CheckList::new();
    let tag = format!("N={n} k=N");
    let k = n as usize;
    let setup: Result<_> = (|| {
        let nw = Newton::new(n, k)?;
        let d = (-(k as i64)..=k as i64)
            .map(|p| nw.evaluator().evaluate(&wrap(n, k, k - 1, p)?))
            .collect::<Result<Vec<_>>>()?;
        Ok((nw, d))
    })();
    let (nw, d) = match setup {
        Ok(x) => x,
        Err(e) => {
            out.push(Check::fail(format!("{tag} setup"), format!("error: {e}")));
            return out;
        }
    };
    let ev = nw.evaluator();
    let dpow = |p: i64| &d[(p + k as i64) as usize];
    let v = nw.e(0);
    let conj = (1..=k as i64)
        .map(|x| nw.chain(&[dpow(-x), v, dpow(x)]))
        .collect::<Result<Vec<_>>>();
    let conj = match conj {
        Ok(c) => c,
        Err(e) => {
            out.push(Check::fail(
                format!("{tag} conjugates"),
                format!("error: {e}"),
            ));
            return out;
        }
    };
    let total = conj
        .iter()
        .skip(1)
        .try_fold(conj[0].clone(), |acc, c| acc.add(c));
    let expanded: Result<_> = (|| {
        let mut acc = nw.zero();
        for j in 1..=k {
            acc = acc.add(&nw.bottom_idempotent(j)?)?;
        }
        Ok(acc)
    })();
    eq(
        &mut out,
        ev,
        format!("{tag} Σ_x D^-x V_N D^x = Σ_j Q_j"),
        total,
        expanded,
    );
    let want = rank(v);
    for (i, c) in conj.iter().enumerate() {
        let x = i + 1;
        eq(
            &mut out,
            ev,
            format!("{tag} D^-{x} V_N D^{x} idempotent"),
            c.compose(c),
            Ok(c.clone()),
        );
        let name = format!("{tag} rank D^-{x} V_N D^{x} = rank V_N");
        let r = (|| {
            let (got, want) = (rank(c)?, want.clone()?);
            Ok(Check::holds(name.clone(), got == want, || {
                format!("rank {got}, expected {want}")
            }))
        })();
        out.record(name, r);
        for (i2, c2) in conj.iter().enumerate().skip(i + 1) {
            vanishes(
                &mut out,
                format!("{tag} conjugates {x} and {} orthogonal", i2 + 1),
                c.compose(c2),
            );
        }
    }
    for a in 1..=k as i64 {
        for b in 1..=k as i64 {
            let name = format!("{tag} V_N D^({a}−{b}) V_N");
            let lhs = nw.chain(&[v, dpow(a - b), v]);
            let want = if a == b { v.clone() } else { nw.zero() };
            eq(&mut out, ev, name, lhs, Ok(want));
        }
    }
    out
}

/// The `newton` suite: the isomorphism for each `k` in `ks`, and the
/// `k = N` remark.
pub fn newton_suite(n: u32, ks: &[usize]) -> CheckList {
    let mut out = CheckList::new();
    for &k in ks {
        out.extend(verify_newton_iso(n, k));
    }
    out.extend(verify_kn_remark(n));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn sides_list_their_summands() {
        let nw = Newton::new(2, 4).unwrap();
        assert_eq!(nw.left(), vec![Slot::Block(1), Slot::Block(3)]);
        assert_eq!(
            nw.right(),
            vec![
                Slot::Block(2),
                Slot::Block(4),
                Slot::Copy(1),
                Slot::Copy(2),
                Slot::Copy(3),
                Slot::Copy(4)
            ]
        );
    }

    #[test]
    fn k_two_ranks() {
        // N = 2, k = 2: id_2 (rank 4) against T_2 (rank 2) and two copies of V_2 (rank 1).
        let nw = Newton::new(2, 2).unwrap();
        assert_eq!(rank(nw.e(1)).unwrap(), 4);
        assert_eq!(rank(nw.e(2)).unwrap(), 2);
        assert_eq!(rank(nw.e(0)).unwrap(), 1);
    }
}
