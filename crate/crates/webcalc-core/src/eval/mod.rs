//! The evaluation functor: exact operators for generators, words,
//! expressions and terms.

pub mod basis;
pub mod operator;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

pub use basis::Basis;
pub use operator::{Difference, SparseOperator};

use crate::error::{Error, Result};
use crate::scalars::{CycloField, LaurentX, Mode, Rational, Scalar};
use crate::web::{Boundary, Gen, Orient, Sign, Strand, Term, TermView, WebExpr, WebWord};
use basis::{elements, eps_pair, eps_single};

/// The rank `N` and the evaluation regime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct EvalConfig {
    pub n: u32,
    pub mode: Mode,
}

impl EvalConfig {
    pub fn new(n: u32, mode: Mode) -> EvalConfig {
        EvalConfig { n, mode }
    }
}

type GenKey = (Gen, Vec<Strand>);

/// Evaluates webs for one configuration.
///
/// Generator matrices are memoized per evaluator; the cache is not shared
/// between threads (use one evaluator per worker).
pub struct Evaluator {
    cfg: EvalConfig,
    basis: Arc<Basis>,
    field: Option<Arc<CycloField>>,
    cache: RefCell<BTreeMap<GenKey, Arc<SparseOperator>>>,
}

impl Evaluator {
    pub fn new(cfg: EvalConfig) -> Evaluator {
        assert!(cfg.n >= 1, "N must be positive");
        let field = (cfg.mode == Mode::Zeta).then(|| CycloField::new(cfg.n.max(2)));
        Evaluator {
            cfg,
            basis: Arc::new(Basis::new(cfg.n)),
            field,
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn config(&self) -> EvalConfig {
        self.cfg
    }

    pub fn n(&self) -> u32 {
        self.cfg.n
    }

    pub fn mode(&self) -> Mode {
        self.cfg.mode
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// The cyclotomic field in ZETA mode.
    pub fn field(&self) -> Option<&Arc<CycloField>> {
        self.field.as_ref()
    }

    // ----- scalars -------------------------------------------------------

    /// `q^e`, or 1 when `q` is specialized.
    pub fn q_pow(&self, e: i64) -> Scalar {
        match self.cfg.mode {
            Mode::QGeneric => Scalar::q_pow(e),
            _ => Scalar::one(),
        }
    }

    /// `(−q)^e`.
    pub fn neg_q_pow(&self, e: i64) -> Scalar {
        let s = self.q_pow(e);
        if e.rem_euclid(2) == 1 {
            s.neg()
        } else {
            s
        }
    }

    /// `(∏_{i∈S} γ_i)^p` for the wrap eigenvalues `γ_i`.
    pub fn gamma_pow(&self, mask: u32, p: i64) -> Result<Scalar> {
        let els = elements(mask);
        match self.cfg.mode {
            Mode::Zeta => {
                let field = self.field.as_ref().expect("zeta field");
                let k: i64 = els.iter().map(|&i| i as i64).sum();
                Ok(Scalar::zeta(field, k * p))
            }
            Mode::FormalX => {
                let mut e = vec![0i64; self.cfg.n as usize];
                for i in els {
                    e[i as usize - 1] += p;
                }
                Ok(Scalar::from_x(LaurentX::monomial(
                    e,
                    Rational::from_integer(1.into()),
                )))
            }
            Mode::QGeneric => Err(Error::Mode(
                "annular generators need mode zeta or formalX".into(),
            )),
        }
    }

    // ----- elementary operators -------------------------------------------

    pub fn identity(&self, b: &Boundary) -> SparseOperator {
        SparseOperator::identity(&self.basis, b.clone())
    }

    fn blank(&self, source: Boundary, target: Boundary) -> SparseOperator {
        SparseOperator::zero(&self.basis, source, target)
    }

    /// `∅ → (k^, kv)`: `1 ↦ Σ v_S ⊗ v_S*`.
    pub fn cup_l(&self, k: u32) -> SparseOperator {
        let t = Boundary(vec![Strand::up(k), Strand::down(k)]);
        let mut op = self.blank(Boundary::empty(), t.clone());
        for &s in self.basis.subsets(k) {
            op.add_entry(self.basis.encode(&t, &[s, s]), 0, &Scalar::one());
        }
        op
    }

    /// `(kv, k^) → ∅`: `v_S* ⊗ v_T ↦ δ_{S,T}`.
    pub fn cap_l(&self, k: u32) -> SparseOperator {
        let s = Boundary(vec![Strand::down(k), Strand::up(k)]);
        let mut op = self.blank(s.clone(), Boundary::empty());
        for &m in self.basis.subsets(k) {
            op.add_entry(0, self.basis.encode(&s, &[m, m]), &Scalar::one());
        }
        op
    }

    /// `∅ → (kv, k^)`: `1 ↦ Σ q^{−ε_S} v_S* ⊗ v_S`.
    pub fn cup_r(&self, k: u32) -> SparseOperator {
        let t = Boundary(vec![Strand::down(k), Strand::up(k)]);
        let mut op = self.blank(Boundary::empty(), t.clone());
        for &m in self.basis.subsets(k) {
            op.add_entry(
                self.basis.encode(&t, &[m, m]),
                0,
                &self.q_pow(eps_single(self.cfg.n, m)),
            );
        }
        op
    }

    /// `(k^, kv) → ∅`: `v_S ⊗ v_T* ↦ δ_{S,T} q^{ε_S}`.
    pub fn cap_r(&self, k: u32) -> SparseOperator {
        let s = Boundary(vec![Strand::up(k), Strand::down(k)]);
        let mut op = self.blank(s.clone(), Boundary::empty());
        for &m in self.basis.subsets(k) {
            op.add_entry(
                0,
                self.basis.encode(&s, &[m, m]),
                &self.q_pow(-eps_single(self.cfg.n, m)),
            );
        }
        op
    }

    /// Merge `(k, l) → (k+l)` on strands of orientation `o`.
    pub fn merge(&self, k: u32, l: u32, o: Orient) -> SparseOperator {
        let s = Boundary(vec![
            Strand {
                label: k,
                orient: o,
            },
            Strand {
                label: l,
                orient: o,
            },
        ]);
        let t = Boundary(vec![Strand {
            label: k + l,
            orient: o,
        }]);
        let mut op = self.blank(s.clone(), t.clone());
        let sign_kl = if (k * l) % 2 == 1 {
            Scalar::int(-1)
        } else {
            Scalar::one()
        };
        for &a in self.basis.subsets(k) {
            for &b in self.basis.subsets(l) {
                if a & b != 0 {
                    continue;
                }
                let e = eps_pair(a, b);
                let v = match o {
                    Orient::Up => self.neg_q_pow(e),
                    Orient::Down => sign_kl.mul(&self.neg_q_pow(-e)),
                };
                op.add_entry(
                    self.basis.encode(&t, &[a | b]),
                    self.basis.encode(&s, &[a, b]),
                    &v,
                );
            }
        }
        op
    }

    /// Split `(k+l) → (k, l)` on a strand of orientation `o`.
    pub fn split(&self, k: u32, l: u32, o: Orient) -> SparseOperator {
        let s = Boundary(vec![Strand {
            label: k + l,
            orient: o,
        }]);
        let t = Boundary(vec![
            Strand {
                label: k,
                orient: o,
            },
            Strand {
                label: l,
                orient: o,
            },
        ]);
        let mut op = self.blank(s.clone(), t.clone());
        let sign_kl = if (k * l) % 2 == 1 {
            Scalar::int(-1)
        } else {
            Scalar::one()
        };
        for &a in self.basis.subsets(k) {
            for &b in self.basis.subsets(l) {
                if a & b != 0 {
                    continue;
                }
                // T = a, S \ T = b
                let e = eps_pair(b, a);
                let v = match o {
                    Orient::Up => sign_kl.mul(&self.neg_q_pow(-e)),
                    Orient::Down => self.neg_q_pow(e),
                };
                op.add_entry(
                    self.basis.encode(&t, &[a, b]),
                    self.basis.encode(&s, &[a | b]),
                    &v,
                );
            }
        }
        op
    }

    /// Diagonal `p`-fold wrap of one strand.
    pub fn wrap(&self, s: Strand, p: i64) -> Result<SparseOperator> {
        let b = Boundary(vec![s]);
        let mut op = self.blank(b.clone(), b);
        for (i, &m) in self.basis.subsets(s.label).iter().enumerate() {
            op.add_entry(i, i, &self.gamma_pow(m, p * s.orient.sign())?);
        }
        Ok(op)
    }

    /// One step of the global rotation: `+1` moves the first strand to the
    /// end (`v_S ⊗ w ↦ γ_S^{±1} w ⊗ v_S`), `−1` the last strand to the front.
    fn rotate_step(&self, b: &Boundary, forward: bool) -> Result<SparseOperator> {
        let target = b.rotated(if forward { 1 } else { -1 });
        let mut op = self.blank(b.clone(), target.clone());
        if b.is_empty() {
            return Ok(self.identity(b));
        }
        let dim = self.basis.dim(b);
        for idx in 0..dim {
            let mut masks = self.basis.decode(b, idx);
            let phase = if forward {
                let s = b.strands()[0];
                let m = masks.remove(0);
                masks.push(m);
                self.gamma_pow(m, s.orient.sign())?
            } else {
                let s = b.strands()[b.len() - 1];
                let m = masks.pop().expect("nonempty");
                masks.insert(0, m);
                self.gamma_pow(m, -s.orient.sign())?
            };
            op.add_entry(self.basis.encode(&target, &masks), idx, &phase);
        }
        Ok(op)
    }

    /// `p`-fold global rotation of `b`.
    pub fn rotate(&self, b: &Boundary, p: i64) -> Result<SparseOperator> {
        let mut acc = self.identity(b);
        let mut cur = b.clone();
        for _ in 0..p.unsigned_abs() {
            let step = self.rotate_step(&cur, p > 0)?;
            cur = step.target().clone();
            acc = step.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Crossing of two upward strands `(k, l) → (l, k)` via the ladder
    /// expansion `(−q)^{kl} Σ_{b−a=k−l} (−q)^{b−k} L(a, b)`, with `q`
    /// inverted in the coefficients for a negative crossing.
    fn crossing_up(&self, k: u32, l: u32, sign: Sign) -> Result<SparseOperator> {
        let src = Boundary::from_labels(&[k, l]);
        let tgt = Boundary::from_labels(&[l, k]);
        let mut acc = self.blank(src, tgt);
        let up = Orient::Up;
        let id = |j: u32| self.identity(&Boundary::from_labels(&[j]));
        for b in k.saturating_sub(l)..=k {
            let a = b + l - k;
            let e = (k * l) as i64 + b as i64 - k as i64;
            let coef = match sign {
                Sign::Pos => self.neg_q_pow(e),
                Sign::Neg => self.neg_q_pow(-e),
            };
            let s1 = self.split(k - b, b, up).tensor(&id(l));
            let s2 = id(k - b).tensor(&self.merge(b, l, up));
            let s3 = id(k - b).tensor(&self.split(a, l + b - a, up));
            let s4 = self.merge(k - b, a, up).tensor(&id(l + b - a));
            let ladder = s4.compose(&s3.compose(&s2.compose(&s1)?)?)?;
            acc = acc.add(&ladder.scale(&coef))?;
        }
        Ok(acc)
    }

    /// Crossing of arbitrary orientations; non-upward cases are obtained by
    /// rotating an upward (or mixed) crossing with cups and caps.
    pub fn crossing(&self, s1: Strand, s2: Strand, sign: Sign) -> Result<SparseOperator> {
        let key = (Gen::Cross(s1.label, s2.label, sign), vec![s1, s2]);
        if let Some(op) = self.cache.borrow().get(&key) {
            return Ok((**op).clone());
        }
        let (k, l) = (s1.label, s2.label);
        let b = |v: &[Strand]| Boundary(v.to_vec());
        let op = match (s1.orient, s2.orient) {
            (Orient::Up, Orient::Up) => self.crossing_up(k, l, sign)?,
            (Orient::Up, Orient::Down) => {
                // (k^, lv) → (lv, k^)
                let y = self.crossing(Strand::up(l), Strand::up(k), sign.flip())?;
                let bottom = self.cup_r(l).tensor(&self.identity(&b(&[s1, s2])));
                let mid = self
                    .identity(&b(&[Strand::down(l)]))
                    .tensor(&y)
                    .tensor(&self.identity(&b(&[s2])));
                let top = self
                    .identity(&b(&[Strand::down(l), Strand::up(k)]))
                    .tensor(&self.cap_r(l));
                top.compose(&mid.compose(&bottom)?)?
            }
            (Orient::Down, Orient::Up) => {
                // (kv, l^) → (l^, kv)
                let y = self.crossing(Strand::up(l), Strand::up(k), sign.flip())?;
                let bottom = self.identity(&b(&[s1, s2])).tensor(&self.cup_l(k));
                let mid = self
                    .identity(&b(&[s1]))
                    .tensor(&y)
                    .tensor(&self.identity(&b(&[Strand::down(k)])));
                let top = self
                    .cap_l(k)
                    .tensor(&self.identity(&b(&[Strand::up(l), Strand::down(k)])));
                top.compose(&mid.compose(&bottom)?)?
            }
            (Orient::Down, Orient::Down) => {
                // (kv, lv) → (lv, kv)
                let x = self.crossing(Strand::up(l), Strand::down(k), sign.flip())?;
                let bottom = self.cup_r(l).tensor(&self.identity(&b(&[s1, s2])));
                let mid = self
                    .identity(&b(&[Strand::down(l)]))
                    .tensor(&x)
                    .tensor(&self.identity(&b(&[s2])));
                let top = self
                    .identity(&b(&[Strand::down(l), Strand::down(k)]))
                    .tensor(&self.cap_r(l));
                top.compose(&mid.compose(&bottom)?)?
            }
        };
        self.cache.borrow_mut().insert(key, Arc::new(op.clone()));
        Ok(op)
    }

    /// The matrix of a generator acting on the given input strands.
    pub fn generator_matrix(&self, g: &Gen, input: &[Strand]) -> Result<SparseOperator> {
        g.output(input)?;
        if g.is_annular() && self.cfg.mode == Mode::QGeneric {
            return Err(Error::Mode(format!("{g} is not available in mode q")));
        }
        Ok(match *g {
            Gen::Id(s) => self.identity(&Boundary(vec![s])),
            Gen::CupL(k) => self.cup_l(k),
            Gen::CapL(k) => self.cap_l(k),
            Gen::CupR(k) => self.cup_r(k),
            Gen::CapR(k) => self.cap_r(k),
            Gen::Merge(k, l) => self.merge(k, l, input[0].orient),
            Gen::Split(k, l) => self.split(k, l, input[0].orient),
            Gen::Cross(_, _, sign) => self.crossing(input[0], input[1], sign)?,
            Gen::Wrap(p) => self.wrap(input[0], p)?,
            Gen::Rotate(p) => self.rotate(&Boundary(input.to_vec()), p)?,
        })
    }

    fn slice_operator(&self, input: &Boundary, slice: &[Gen]) -> Result<Option<SparseOperator>> {
        if slice.iter().all(Gen::is_identity) {
            return Ok(None);
        }
        if let [g @ Gen::Rotate(_)] = slice {
            return self.generator_matrix(g, input.strands()).map(Some);
        }
        let mut pos = 0;
        let mut acc: Option<SparseOperator> = None;
        for g in slice {
            let a = g.arity().expect("validated slice");
            let m = self.generator_matrix(g, &input.strands()[pos..pos + a])?;
            pos += a;
            acc = Some(match acc {
                None => m,
                Some(x) => x.tensor(&m),
            });
        }
        Ok(acc)
    }

    fn check_n(&self, n: u32) -> Result<()> {
        if n != self.cfg.n {
            return Err(Error::Invalid(format!(
                "a web for N={n} evaluated with N={}",
                self.cfg.n
            )));
        }
        Ok(())
    }

    pub fn evaluate_word(&self, w: &WebWord) -> Result<SparseOperator> {
        self.check_n(w.n())?;
        let mut acc = self.identity(w.source());
        for (input, slice) in w.layers() {
            if let Some(op) = self.slice_operator(&input, slice)? {
                acc = op.compose(&acc)?;
            }
        }
        Ok(acc)
    }

    pub fn evaluate_expr(&self, e: &WebExpr) -> Result<SparseOperator> {
        self.check_n(e.n())?;
        if e.mode() != self.cfg.mode {
            return Err(Error::Mode(format!(
                "a {} expression evaluated in mode {}",
                e.mode(),
                self.cfg.mode
            )));
        }
        let mut acc = self.blank(e.source().clone(), e.target().clone());
        for (c, w) in e.terms() {
            acc = acc.add(&self.evaluate_word(w)?.scale(c))?;
        }
        Ok(acc)
    }

    pub fn evaluate(&self, t: &Term) -> Result<SparseOperator> {
        match t.view() {
            TermView::Expr(e) => self.evaluate_expr(e),
            TermView::Compose(fs) => {
                let mut it = fs.iter().rev();
                let mut acc = self.evaluate(it.next().expect("nonempty composite"))?;
                for f in it {
                    acc = self.evaluate(f)?.compose(&acc)?;
                }
                Ok(acc)
            }
            TermView::Tensor(fs) => {
                let mut it = fs.iter();
                let mut acc = self.evaluate(it.next().expect("nonempty tensor"))?;
                for f in it {
                    acc = acc.tensor(&self.evaluate(f)?);
                }
                Ok(acc)
            }
            TermView::Sum(ts) => {
                let mut acc = self.blank(t.source().clone(), t.target().clone());
                for (c, s) in ts {
                    acc = acc.add(&self.evaluate(s)?.scale(c))?;
                }
                Ok(acc)
            }
        }
    }
}
