//! Idempotents on strands of 1-labeled points: wrap eigenprojectors `P_k`,
//! extremal weight projectors `T_m`, symmetric and antisymmetric clasps,
//! the orbit projectors `O_n` and the partition idempotents built from them.
//!
//! Everything is assembled as a lazy [`Term`] in root-of-unity mode, so that
//! products such as `T_m = F_{m−2} ∘ ⋯ ∘ F_0` are evaluated factor by factor
//! instead of being expanded into `N^{m−1}` words.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::OnceCell;

use alloc::collections::BTreeMap;

use crate::check::{Check, CheckList};
use crate::error::{Error, Result};
use crate::eval::basis::elements;
use crate::eval::{EvalConfig, Evaluator, SparseOperator};
use crate::linalg::{linear_span_dim, rank};
use crate::scalars::{rat, CycloField, Mode, Scalar};
use crate::web::{Boundary, Gen, Sign, Sketch, Strand, Term, WebWord, WordBuilder};

const MODE: Mode = Mode::Zeta;

/// `m` upward 1-labeled points.
pub fn points(m: usize) -> Boundary {
    Boundary::ups(1, m)
}

/// Identity on `m` points.
pub fn id(n: u32, m: usize) -> Term {
    Term::identity(n, MODE, points(m))
}

fn word(w: WebWord) -> Term {
    Term::word(MODE, w.into_annular())
}

fn field(n: u32) -> Arc<CycloField> {
    CycloField::new(n.max(2))
}

/// `id_i ⊗ t ⊗ id_j`.
pub fn padded(n: u32, i: usize, t: &Term, j: usize) -> Result<Term> {
    let mut acc = t.clone();
    if i > 0 {
        acc = id(n, i).tensor(&acc)?;
    }
    if j > 0 {
        acc = acc.tensor(&id(n, j))?;
    }
    Ok(acc)
}

/// `D^p` on strand `i` of `m` points.
pub fn wrap(n: u32, m: usize, i: usize, p: i64) -> Result<Term> {
    Ok(word(WebWord::single(n, &points(m), i, Gen::Wrap(p))?))
}

/// The global rotation `p` steps forward on `m` points.
pub fn rotation(n: u32, m: usize, p: i64) -> Result<Term> {
    Ok(word(WebWord::single(n, &points(m), 0, Gen::Rotate(p))?))
}

/// The crossing `s_i` (1-based) of `m` points; `s_m` crosses the last and
/// first strand around the seam and is `D^{−1} s_{m−1} D`.
pub fn crossing(n: u32, m: usize, i: usize) -> Result<Term> {
    if m < 2 || i == 0 || i > m {
        return Err(Error::Invalid(format!("no crossing s_{i} on {m} points")));
    }
    if i < m {
        return Ok(word(WebWord::single(
            n,
            &points(m),
            i - 1,
            Gen::Cross(1, 1, Sign::Pos),
        )?));
    }
    Term::chain(&[
        rotation(n, m, -1)?,
        crossing(n, m, m - 1)?,
        rotation(n, m, 1)?,
    ])
}

/// The dumbbell `u_i = id − s_i`.
pub fn dumbbell(n: u32, m: usize, i: usize) -> Result<Term> {
    id(n, m).sub(&crossing(n, m, i)?)
}

/// The planar dumbbell on strands `i, i+1` (0-based) of `m` points: merge
/// into a 2-labeled edge and split again.
fn planar_dumbbell(n: u32, m: usize, i: usize) -> Result<Term> {
    Ok(word(
        Sketch::new(n, points(m)).merge(i)?.split(i, 1, 1)?.build(),
    ))
}

/// The permutation web moving input strand `i` to output position `dest[i]`.
pub fn permutation(n: u32, dest: &[usize]) -> Result<Term> {
    let m = dest.len();
    let mut sorted = dest.to_vec();
    sorted.sort_unstable();
    if sorted != (0..m).collect::<Vec<_>>() {
        return Err(Error::Invalid(format!("{dest:?} is not a permutation")));
    }
    // Bubble sort the strands by destination, one crossing per swap.
    let mut cur = dest.to_vec();
    let mut b = WordBuilder::new(n, points(m));
    let mut swapped = true;
    while swapped {
        swapped = false;
        for j in 0..m.saturating_sub(1) {
            if cur[j] > cur[j + 1] {
                cur.swap(j, j + 1);
                b = b.cross(j, Sign::Pos)?;
                swapped = true;
            }
        }
    }
    Ok(word(b.build()))
}

fn inverse(dest: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; dest.len()];
    for (i, &d) in dest.iter().enumerate() {
        inv[d] = i;
    }
    inv
}

// ----- eigenprojectors and extremal weight projectors ---------------------

/// `P_k(D) = (1/N) Σ_j ζ^{−kj} D^j`: the projector onto the `ζ^k`
/// eigenspace of the wrap, on a single point.
pub fn eigenprojector(n: u32, k: u32) -> Result<Term> {
    if k == 0 || k > n {
        return Err(Error::Invalid(format!("P_{k} needs 1 ≤ k ≤ N = {n}")));
    }
    let f = field(n);
    let inv_n = Scalar::rational(rat(1, n as i64));
    let terms = (0..n as i64)
        .map(|j| {
            Ok((
                Scalar::zeta(&f, -(k as i64) * j).mul(&inv_n),
                wrap(n, 1, 0, j)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Term::sum(terms)
}

/// `P_k` applied to strand `i` of `m` points.
pub fn eigenprojector_at(n: u32, m: usize, i: usize, k: u32) -> Result<Term> {
    padded(n, i, &eigenprojector(n, k)?, m - i - 1)
}

/// `T_2 = (1/N) Σ_k D^{−k} ⊗ D^k`.
pub fn t2(n: u32) -> Result<Term> {
    let inv_n = Scalar::rational(rat(1, n as i64));
    let terms = (0..n as i64)
        .map(|k| {
            let w = WordBuilder::new(n, points(2))
                .at(0, Gen::Wrap(-k))?
                .at(1, Gen::Wrap(k))?
                .build();
            Ok((inv_n.clone(), word(w)))
        })
        .collect::<Result<Vec<_>>>()?;
    Term::sum(terms)
}

/// The extremal weight projector `T_m`, via
/// `T_{m+1} = (id_{m−1} ⊗ T_2)(T_m ⊗ id_1)`.
pub fn extremal(n: u32, m: usize) -> Result<Term> {
    match m {
        0 => Err(Error::Invalid("T_m needs m ≥ 1".into())),
        1 => Ok(id(n, 1)),
        _ => {
            let t = t2(n)?;
            let factors = (0..m - 1)
                .rev()
                .map(|i| padded(n, i, &t, m - 2 - i))
                .collect::<Result<Vec<_>>>()?;
            Term::chain(&factors)
        }
    }
}

/// `T_m` via the alternative recursion
/// `T_m = (T_{m−1} ⊗ id_1) s_{m−1} (T_{m−1} ⊗ id_1)`, starting from `T_2`.
pub fn extremal_alt(n: u32, m: usize) -> Result<Term> {
    if m <= 2 {
        return extremal(n, m);
    }
    let prev = extremal_alt(n, m - 1)?.tensor(&id(n, 1))?;
    Term::chain(&[prev.clone(), crossing(n, m, m - 1)?, prev])
}

// ----- clasps --------------------------------------------------------------

/// The symmetric clasp
/// `P_{m+1} = P_m ⊗ id − m/(m+1) (P_m ⊗ id)(id_{m−1} ⊗ u)(P_m ⊗ id)`.
pub fn clasp_sym(n: u32, m: usize) -> Result<Term> {
    match m {
        0 => Err(Error::Invalid("clasps need m ≥ 1".into())),
        1 => Ok(id(n, 1)),
        _ => {
            let k = m - 1;
            let p = clasp_sym(n, k)?.tensor(&id(n, 1))?;
            let mid = Term::chain(&[p.clone(), planar_dumbbell(n, m, k - 1)?, p.clone()])?;
            Term::sum(vec![
                (Scalar::one(), p),
                (Scalar::rational(rat(-(k as i64), m as i64)), mid),
            ])
        }
    }
}

/// The antisymmetric clasp `V_m = (1/m!) · (split ∘ merge through an m-labeled edge)`.
pub fn clasp_anti(n: u32, m: usize) -> Result<Term> {
    if m == 0 {
        return Err(Error::Invalid("clasps need m ≥ 1".into()));
    }
    let mut sk = Sketch::new(n, points(m));
    for _ in 1..m {
        sk = sk.merge(0)?;
    }
    for j in (1..m).rev() {
        sk = sk.split(0, j as u32, 1)?;
    }
    let fact: i64 = (1..=m as i64).product();
    Ok(word(sk.build()).scale(Scalar::rational(rat(1, fact))))
}

/// The mixed recursions relating the two clasp families: each of `P_{m+1}`
/// and `V_{m+1}` equals its predecessor tensored with `id_1` minus
/// `2m/(m+1)` times the predecessor sandwiching the other family's 2-clasp.
pub fn clasp_mixed(n: u32, m: usize, symmetric: bool) -> Result<Term> {
    let (prev, two) = if symmetric {
        (clasp_sym(n, m)?, clasp_anti(n, 2)?)
    } else {
        (clasp_anti(n, m)?, clasp_sym(n, 2)?)
    };
    let p = prev.tensor(&id(n, 1))?;
    let mid = Term::chain(&[p.clone(), padded(n, m - 1, &two, 0)?, p.clone()])?;
    Term::sum(vec![
        (Scalar::one(), p),
        (Scalar::rational(rat(-2 * m as i64, m as i64 + 1)), mid),
    ])
}

// ----- orbit projectors -------------------------------------------------------

/// `O_1 = id`, `O_2 = id − T_2`,
/// `O_{k+1} = s_1 (id_1 ⊗ O_k) s_1 (id_1 ⊗ O_k)(O_k ⊗ id_1)`.
pub fn orbit(n: u32, k: usize) -> Result<Term> {
    match k {
        0 => Err(Error::Invalid("O_n needs n ≥ 1".into())),
        1 => Ok(id(n, 1)),
        2 => id(n, 2).sub(&t2(n)?),
        _ => {
            let o = orbit(n, k - 1)?;
            let right = id(n, 1).tensor(&o)?;
            let left = o.tensor(&id(n, 1))?;
            let s = crossing(n, k, 1)?;
            Term::chain(&[s.clone(), right.clone(), s, right, left])
        }
    }
}

/// The idempotent attached to a composition `parts` of `n`: `T`-blocks, a
/// permutation bringing the last strand of each block to the right end,
/// `id ⊗ O_k` there, the inverse permutation and the `T`-blocks again.
pub fn partition_idempotent(n: u32, parts: &[usize]) -> Result<Term> {
    let k = parts.len();
    if k == 0 || parts.contains(&0) {
        return Err(Error::Invalid(format!("{parts:?} is not a partition")));
    }
    if k > n as usize {
        return Err(Error::Invalid(format!(
            "partition {parts:?} has more than N = {n} parts"
        )));
    }
    let total: usize = parts.iter().sum();
    let mut blocks = extremal(n, parts[0])?;
    for &p in &parts[1..] {
        blocks = blocks.tensor(&extremal(n, p)?)?;
    }
    if k == 1 {
        return Ok(blocks);
    }
    let mut reps = Vec::new();
    let mut acc = 0;
    for &p in parts {
        acc += p;
        reps.push(acc - 1);
    }
    // Representatives go to the last k positions, the others keep their order.
    let mut dest = vec![0; total];
    let mut next = 0;
    for (i, d) in dest.iter_mut().enumerate() {
        if let Some(r) = reps.iter().position(|&x| x == i) {
            *d = total - k + r;
        } else {
            *d = next;
            next += 1;
        }
    }
    let sigma = permutation(n, &dest)?;
    let sigma_inv = permutation(n, &inverse(&dest))?;
    let middle = padded(n, total - k, &orbit(n, k)?, 0)?;
    Term::chain(&[blocks.clone(), sigma_inv, middle, sigma, blocks])
}

// ----- shift functors ---------------------------------------------------------

/// `λ(e) = e ⊗ id_{N↑}`.
pub fn lambda(e: &Term) -> Result<Term> {
    e.tensor(&Term::identity(
        e.n(),
        e.mode(),
        Boundary(vec![Strand::up(e.n())]),
    ))
}

/// `λ*(e) = e ⊗ id_{N↓}`.
pub fn lambda_star(e: &Term) -> Result<Term> {
    e.tensor(&Term::identity(
        e.n(),
        e.mode(),
        Boundary(vec![Strand::down(e.n())]),
    ))
}

/// The unit `e → λ*λ(e)` on boundary `b`: an `N`-labeled cup on the right.
pub fn lambda_unit(n: u32, mode: Mode, b: &Boundary) -> Result<Term> {
    let w = WordBuilder::new(n, b.clone())
        .at(b.len(), Gen::CupL(n))?
        .build();
    Ok(Term::word(mode, w.into_annular()))
}

/// The counit `λ*λ(e) → e`: the matching cap.
pub fn lambda_counit(n: u32, mode: Mode, b: &Boundary) -> Result<Term> {
    let src = b.concat(&Boundary(vec![Strand::up(n), Strand::down(n)]));
    let w = WordBuilder::new(n, src).at(b.len(), Gen::CapR(n))?.build();
    Ok(Term::word(mode, w.into_annular()))
}

// ----- the spanning set ---------------------------------------------------------

/// The minimal permutation with `ε'_{σ(i)} = ε_i`, chosen greedily.
pub fn greedy_permutation(eps: &[u32], eps_prime: &[u32]) -> Option<Vec<usize>> {
    let mut used = vec![false; eps_prime.len()];
    let mut sigma = Vec::with_capacity(eps.len());
    for &e in eps {
        let r = (0..eps_prime.len()).find(|&r| !used[r] && eps_prime[r] == e)?;
        used[r] = true;
        sigma.push(r);
    }
    (eps.len() == eps_prime.len()).then_some(sigma)
}

/// `φ_ε^{ε'} = σ P_{ε_n}(w_n) ⋯ P_{ε_1}(w_1)`; `None` if the contents differ.
pub fn spanning_element(n: u32, eps: &[u32], eps_prime: &[u32]) -> Result<Option<Term>> {
    let Some(sigma) = greedy_permutation(eps, eps_prime) else {
        return Ok(None);
    };
    let m = eps.len();
    let mut factors = vec![permutation(n, &sigma)?];
    for i in (0..m).rev() {
        factors.push(eigenprojector_at(n, m, i, eps[i])?);
    }
    Ok(Some(Term::chain(&factors)?))
}

/// All color tuples `{1..N}^m`.
pub fn tuples(n: u32, m: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=n).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    out
}

// ----- named projectors -----------------------------------------------------------

/// The kinds of named projectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjectorKind {
    /// Wrap eigenprojector `P_k` on one point.
    Eigen(u32),
    /// Extremal weight projector `T_m`.
    Extremal(usize),
    /// Symmetric clasp on `m` points.
    ClaspSym(usize),
    /// Antisymmetric clasp on `m` points.
    ClaspAnti(usize),
    /// Orbit projector `O_n`.
    Orbit(usize),
    /// Partition idempotent.
    Partition(Vec<usize>),
}

impl ProjectorKind {
    /// Parses keys such as `T:3`, `P:2`, `Vclasp:2`, `Pclasp:3`, `O:3`, `part:2+1`.
    pub fn parse(key: &str) -> Result<ProjectorKind> {
        let (kind, arg) = key
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("projector key `{key}` has no `:`")))?;
        let num = |s: &str| -> Result<usize> {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Invalid(format!("bad projector parameter `{s}` in `{key}`")))
        };
        Ok(match kind.trim() {
            "P" => ProjectorKind::Eigen(num(arg)? as u32),
            "T" => ProjectorKind::Extremal(num(arg)?),
            "Pclasp" => ProjectorKind::ClaspSym(num(arg)?),
            "Vclasp" => ProjectorKind::ClaspAnti(num(arg)?),
            "O" => ProjectorKind::Orbit(num(arg)?),
            "part" => ProjectorKind::Partition(arg.split('+').map(num).collect::<Result<_>>()?),
            other => return Err(Error::Invalid(format!("unknown projector kind `{other}`"))),
        })
    }

    pub fn key(&self) -> String {
        match self {
            ProjectorKind::Eigen(k) => format!("P:{k}"),
            ProjectorKind::Extremal(m) => format!("T:{m}"),
            ProjectorKind::ClaspSym(m) => format!("Pclasp:{m}"),
            ProjectorKind::ClaspAnti(m) => format!("Vclasp:{m}"),
            ProjectorKind::Orbit(m) => format!("O:{m}"),
            ProjectorKind::Partition(p) => {
                let parts: Vec<String> = p.iter().map(|x| format!("{x}")).collect();
                format!("part:{}", parts.join("+"))
            }
        }
    }

    /// Builds the projector as a lazy term.
    pub fn term(&self, n: u32) -> Result<Term> {
        match self {
            ProjectorKind::Eigen(k) => eigenprojector(n, *k),
            ProjectorKind::Extremal(m) => extremal(n, *m),
            ProjectorKind::ClaspSym(m) => clasp_sym(n, *m),
            ProjectorKind::ClaspAnti(m) => clasp_anti(n, *m),
            ProjectorKind::Orbit(m) => orbit(n, *m),
            ProjectorKind::Partition(p) => partition_idempotent(n, p),
        }
    }
}

/// A named projector with its operator, certified idempotent on first use.
pub struct Projector {
    pub kind: ProjectorKind,
    pub n: u32,
    pub term: Term,
    op: OnceCell<SparseOperator>,
}

impl Projector {
    pub fn new(n: u32, kind: ProjectorKind) -> Result<Projector> {
        let term = kind.term(n)?;
        Ok(Projector {
            kind,
            n,
            term,
            op: OnceCell::new(),
        })
    }

    /// The root-of-unity operator; fails if it is not idempotent.
    pub fn operator(&self, ev: &Evaluator) -> Result<&SparseOperator> {
        if ev.mode() != MODE || ev.n() != self.n {
            return Err(Error::Mode(format!(
                "{} is certified in mode zeta with N = {}",
                self.kind.key(),
                self.n
            )));
        }
        if let Some(op) = self.op.get() {
            return Ok(op);
        }
        let op = ev.evaluate(&self.term)?;
        if op.compose(&op)?.first_difference(&op)?.is_some() {
            return Err(Error::Invalid(format!(
                "{} is not idempotent",
                self.kind.key()
            )));
        }
        Ok(self.op.get_or_init(|| op))
    }
}

// ----- verification suites -------------------------------------------------------

/// Colors of the basis vector `idx` of `m` points.
pub fn colors(ev: &Evaluator, m: usize, idx: usize) -> Vec<u32> {
    ev.basis()
        .decode(&points(m), idx)
        .iter()
        .map(|&mask| elements(mask)[0])
        .collect()
}

/// The diagonal projection onto the basis vectors whose colors satisfy `keep`.
pub fn diagonal_projection(
    ev: &Evaluator,
    m: usize,
    keep: impl Fn(&[u32]) -> bool,
) -> SparseOperator {
    let b = points(m);
    let mut op = SparseOperator::zero(ev.basis(), b.clone(), b.clone());
    for idx in 0..ev.basis().dim(&b) {
        if keep(&colors(ev, m, idx)) {
            op.add_entry(idx, idx, &Scalar::one());
        }
    }
    op
}

fn all_distinct(c: &[u32]) -> bool {
    c.iter().enumerate().all(|(i, x)| !c[..i].contains(x))
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..m {
            let mut q: Vec<usize> = p
                .iter()
                .map(|&x| if x >= pos { x + 1 } else { x })
                .collect();
            q.insert(0, pos);
            out.push(q);
        }
    }
    out.sort();
    out
}

fn sign_of(p: &[usize]) -> i64 {
    let inversions = (0..p.len())
        .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(1/m!) Σ_σ (±1)^σ σ` as a sum of crossing webs.
pub fn permutation_average(n: u32, m: usize, signed: bool) -> Result<Term> {
    let perms = permutations(m);
    let inv = rat(1, perms.len() as i64);
    let terms = perms
        .iter()
        .map(|p| {
            let s = if signed { sign_of(p) } else { 1 };
            Ok((
                Scalar::rational(inv.clone() * crate::scalars::int(s)),
                permutation(n, p)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Term::sum(terms)
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn falling(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).map(|i| n - i).product()
}

struct Ops<'a> {
    ev: &'a Evaluator,
    out: CheckList,
}

impl Ops<'_> {
    fn op(&self, t: &Term) -> Result<SparseOperator> {
        self.ev.evaluate(t)
    }

    fn equal(&mut self, name: String, a: Result<SparseOperator>, b: Result<SparseOperator>) {
        let r = (|| Ok(Check::equal(name.clone(), self.ev.basis(), &a?, &b?)))();
        self.out.record(name, r);
    }

    fn rank(&mut self, name: String, a: Result<SparseOperator>, want: usize) {
        let r = (|| {
            let got = rank(&a?)?;
            Ok(Check::holds(name.clone(), got == want, || {
                format!("rank {got}, expected {want}")
            }))
        })();
        self.out.record(name, r);
    }

    fn idempotent(&mut self, name: String, a: Result<SparseOperator>) {
        let r = (|| {
            let a = a?;
            Ok(Check::equal(
                name.clone(),
                self.ev.basis(),
                &a.compose(&a)?,
                &a,
            ))
        })();
        self.out.record(name, r);
    }
}

fn compose(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    a.compose(b)
}

/// Extremal weight projectors, eigenprojectors, clasps, orbit and partition
/// idempotents and the shift functors, for strand counts up to `max_m`.
pub fn tm_suite(n: u32, max_m: usize) -> CheckList {
    let ev = Evaluator::new(EvalConfig::new(n, MODE));
    let mut c = Ops {
        ev: &ev,
        out: CheckList::new(),
    };
    let nn = n as usize;

    // Eigenprojectors.
    let ps: Vec<Result<SparseOperator>> = (1..=n)
        .map(|k| eigenprojector(n, k).and_then(|t| c.op(&t)))
        .collect();
    let sum = (|| {
        let mut acc = SparseOperator::zero(ev.basis(), points(1), points(1));
        for p in &ps {
            acc = acc.add(p.as_ref().map_err(Clone::clone)?)?;
        }
        Ok(acc)
    })();
    c.equal("Σ_k P_k = id".into(), sum, Ok(ev.identity(&points(1))));
    for k in 1..=n {
        for l in 1..=n {
            let name = format!("P_{k} P_{l} = δ P_{k}");
            let pk = ps[k as usize - 1].clone();
            let pl = ps[l as usize - 1].clone();
            let want = if k == l {
                pk.clone()
            } else {
                pk.clone().map(|p| p.scale(&Scalar::zero()))
            };
            c.equal(name, pk.and_then(|a| compose(&a, &pl?)), want);
        }
        let want = diagonal_projection(&ev, 1, |col| col[0] == k);
        c.equal(
            format!("P_{k} projects onto v_{k}"),
            ps[k as usize - 1].clone(),
            Ok(want),
        );
    }

    // Extremal weight projectors.
    let ts: Vec<Result<SparseOperator>> = (0..=max_m)
        .map(|m| {
            if m == 0 {
                Ok(ev.identity(&points(0)))
            } else {
                extremal(n, m).and_then(|t| c.op(&t))
            }
        })
        .collect();
    let t = |m: usize| ts[m].clone();
    for m in 1..=max_m {
        c.idempotent(format!("T_{m} idempotent"), t(m));
        c.rank(format!("rank T_{m} = N"), t(m), nn);
        let want = diagonal_projection(&ev, m, |col| col.iter().all(|&x| x == col[0]));
        c.equal(
            format!("T_{m} projects onto the extremal weight space"),
            t(m),
            Ok(want),
        );
        // Absorption of smaller projectors placed anywhere.
        for len in 1..m {
            for k in 0..=m - len {
                let name = format!("T_{m} (id_{k} ⊗ T_{len} ⊗ id_{}) = T_{m}", m - len - k);
                let small = extremal(n, len)
                    .and_then(|s| padded(n, k, &s, m - len - k))
                    .and_then(|s| c.op(&s));
                c.equal(name, t(m).and_then(|a| compose(&a, &small?)), t(m));
            }
        }
        // Overlapping projectors combine.
        for k in 2..m {
            for l in 2..m {
                if k + l > m {
                    let name = format!("(T_{k} ⊗ id)(id ⊗ T_{l}) = T_{m}");
                    let a = extremal(n, k)
                        .and_then(|x| padded(n, 0, &x, m - k))
                        .and_then(|x| c.op(&x));
                    let b = extremal(n, l)
                        .and_then(|x| padded(n, m - l, &x, 0))
                        .and_then(|x| c.op(&x));
                    c.equal(name, a.and_then(|a| compose(&a, &b?)), t(m));
                }
            }
        }
        if m >= 2 {
            for i in 1..=m {
                let s = crossing(n, m, i).and_then(|x| c.op(&x));
                let u = dumbbell(n, m, i).and_then(|x| c.op(&x));
                c.equal(
                    format!("T_{m} s_{i} = T_{m}"),
                    t(m).and_then(|a| compose(&a, s.as_ref().map_err(Clone::clone)?)),
                    t(m),
                );
                c.equal(
                    format!("s_{i} T_{m} = T_{m}"),
                    s.and_then(|s| compose(&s, &t(m)?)),
                    t(m),
                );
                let zero = t(m).map(|a| a.scale(&Scalar::zero()));
                c.equal(
                    format!("T_{m} u_{i} = 0"),
                    t(m).and_then(|a| compose(&a, &u?)),
                    zero,
                );
            }
            let rot = (|| {
                let r = c.op(&rotation(n, m, 1)?)?;
                let ri = c.op(&rotation(n, m, -1)?)?;
                ri.compose(&t(m)?)?.compose(&r)
            })();
            c.equal(format!("D^{{-1}} T_{m} D = T_{m}"), rot, t(m));
        }
        if m >= 3 {
            c.equal(
                format!("T_{m} via the alternative recursion"),
                extremal_alt(n, m).and_then(|x| c.op(&x)),
                t(m),
            );
        }
        let expand = (|| {
            let mut acc = SparseOperator::zero(ev.basis(), points(m), points(m));
            for k in 1..=n {
                let pk = c.op(&eigenprojector(n, k)?)?;
                let mut tensor = pk.clone();
                for _ in 1..m {
                    tensor = tensor.tensor(&pk);
                }
                acc = acc.add(&tensor)?;
            }
            Ok(acc)
        })();
        c.equal(format!("T_{m} = Σ_k P_k^⊗{m}"), t(m), expand);
    }
    // Linked projectors.
    for a in 1..max_m {
        for b in 1..=max_m - a {
            if a + b >= 3 {
                let name = format!("(T_{a} ⊗ T_{b}) s_{a} (T_{a} ⊗ T_{b}) = T_{}", a + b);
                let r = (|| {
                    let tt = t(a)?.tensor(&t(b)?);
                    let s = c.op(&crossing(n, a + b, a)?)?;
                    tt.compose(&s)?.compose(&tt)
                })();
                c.equal(name, r, t(a + b));
            }
        }
    }
    // T_2 in terms of eigenprojectors.
    let pp = |a: u32, b: u32| -> Result<SparseOperator> {
        Ok(ps[a as usize - 1]
            .clone()?
            .tensor(&ps[b as usize - 1].clone()?))
    };
    if max_m >= 2 {
        for a in 1..=n {
            for b in 1..=n {
                let want = if a == b {
                    pp(a, b)
                } else {
                    pp(a, b).map(|x| x.scale(&Scalar::zero()))
                };
                c.equal(
                    format!("(P_{a} ⊗ P_{b}) T_2 = δ (P_{a} ⊗ P_{b})"),
                    pp(a, b).and_then(|x| compose(&x, &t(2)?)),
                    want,
                );
            }
            let s = crossing(n, 2, 1).and_then(|x| c.op(&x));
            c.equal(
                format!("s (P_{a} ⊗ P_{a}) = P_{a} ⊗ P_{a}"),
                s.and_then(|s| compose(&s, &pp(a, a)?)),
                pp(a, a),
            );
        }
        let sum = (|| {
            let mut acc = SparseOperator::zero(ev.basis(), points(2), points(2));
            for k in 1..=n {
                acc = acc.add(&pp(k, k)?)?;
            }
            Ok(acc)
        })();
        c.equal("T_2 = Σ_k P_k ⊗ P_k".into(), t(2), sum);
    }

    // Clasps.
    for m in 1..=max_m.min(4) {
        let sym = clasp_sym(n, m).and_then(|x| c.op(&x));
        let anti = clasp_anti(n, m).and_then(|x| c.op(&x));
        c.equal(
            format!("symmetric clasp {m} = symmetrizer"),
            sym.clone(),
            permutation_average(n, m, false).and_then(|x| c.op(&x)),
        );
        c.equal(
            format!("antisymmetric clasp {m} = antisymmetrizer"),
            anti.clone(),
            permutation_average(n, m, true).and_then(|x| c.op(&x)),
        );
        c.rank(
            format!("rank of antisymmetric clasp {m} = C(N,{m})"),
            anti,
            binom(n as u64, m as u64) as usize,
        );
        c.rank(
            format!("rank of symmetric clasp {m} = C(N+{m}-1,{m})"),
            sym.clone(),
            binom(n as u64 + m as u64 - 1, m as u64) as usize,
        );
        if m >= 2 {
            let k = m - 1;
            c.equal(
                format!("symmetric clasp {m} via the 2-antisymmetric insertion"),
                clasp_mixed(n, k, true).and_then(|x| c.op(&x)),
                sym,
            );
            c.equal(
                format!("antisymmetric clasp {m} via the 2-symmetric insertion"),
                clasp_mixed(n, k, false).and_then(|x| c.op(&x)),
                clasp_anti(n, m).and_then(|x| c.op(&x)),
            );
        }
    }
    let over = clasp_anti(n, nn + 1).and_then(|x| c.op(&x));
    let r = over.map(|o| {
        Check::holds(
            format!("antisymmetric clasp {} = 0", nn + 1),
            o.is_zero(),
            || "nonzero".into(),
        )
    });
    c.out
        .record(format!("antisymmetric clasp {} = 0", nn + 1), r);

    // Orbit projectors.
    for k in 1..=nn.min(max_m) {
        let o = orbit(n, k).and_then(|x| c.op(&x));
        c.idempotent(format!("O_{k} idempotent"), o.clone());
        c.rank(
            format!("rank O_{k} = N!/(N-{k})!"),
            o.clone(),
            falling(n as u64, k as u64) as usize,
        );
        c.equal(
            format!("O_{k} projects onto distinct colors"),
            o,
            Ok(diagonal_projection(&ev, k, all_distinct)),
        );
    }

    // Partition idempotents.
    for total in 1..=max_m {
        for parts in compositions(total) {
            if parts.len() > nn || parts.windows(2).any(|w| w[0] < w[1]) {
                continue;
            }
            let key = ProjectorKind::Partition(parts.clone()).key();
            let p = partition_idempotent(n, &parts).and_then(|x| c.op(&x));
            c.idempotent(format!("{key} idempotent"), p.clone());
            let blocks = parts.clone();
            let want = diagonal_projection(&ev, total, move |col| {
                let mut start = 0;
                let mut reps = Vec::new();
                for &len in &blocks {
                    let block = &col[start..start + len];
                    if block.iter().any(|&x| x != block[0]) {
                        return false;
                    }
                    reps.push(block[0]);
                    start += len;
                }
                all_distinct(&reps)
            });
            c.equal(
                format!("{key} projects onto the orbit of distinct block colors"),
                p.clone(),
                Ok(want),
            );
            c.rank(
                format!("rank {key} = N!/(N-k)!"),
                p,
                falling(n as u64, parts.len() as u64) as usize,
            );
            if parts.len() == 1 {
                c.equal(
                    format!("{key} = T_{total}"),
                    partition_idempotent(n, &parts).and_then(|x| c.op(&x)),
                    t(total),
                );
            }
        }
    }

    // Shift functors.
    let samples: Vec<(String, Result<Term>)> = vec![
        ("id_1".into(), Ok(id(n, 1))),
        ("D".into(), wrap(n, 1, 0, 1)),
        ("T_2".into(), t2(n)),
        ("s_2 on 2 points".into(), crossing(n, 2, 2)),
    ];
    for (name, e) in samples {
        let r = (|| {
            let e = e?;
            let b = e.source().clone();
            let l = lambda(&e)?;
            let mut want = b.clone();
            want.0.push(Strand::up(n));
            if l.target() != &want {
                return Ok(Check::fail(
                    format!("λ({name}) target"),
                    format!("target {}", l.target()),
                ));
            }
            let ll = lambda_star(&l)?;
            let unit = c.op(&lambda_unit(n, MODE, &b)?)?;
            let counit = c.op(&lambda_counit(n, MODE, &b)?)?;
            let back = counit.compose(&c.op(&ll)?)?.compose(&unit)?;
            let first = Check::equal(
                format!("counit ∘ λ*λ({name}) ∘ unit = {name}"),
                ev.basis(),
                &back,
                &c.op(&e)?,
            );
            if !first.passed {
                return Ok(first);
            }
            let round = unit.compose(&counit)?;
            Ok(Check::equal(
                format!("unit ∘ counit = id on λ*λ of {name}"),
                ev.basis(),
                &round,
                &ev.identity(ll.source()),
            ))
        })();
        c.out.record(format!("shift functors on {name}"), r);
    }
    c.out
}

/// Compositions of `total` (ordered, positive parts).
pub fn compositions(total: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=total {
        for mut rest in compositions(total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The spanning set `{φ_ε^{ε'}}` on `m ≤ max_m` points spans a space of
/// dimension `Σ_μ (number of tuples of content μ)²`.
pub fn spanning_suite(n: u32, max_m: usize) -> CheckList {
    let ev = Evaluator::new(EvalConfig::new(n, MODE));
    let mut out = CheckList::new();
    for m in 1..=max_m {
        let name = format!("spanning set on {m} points");
        let r = (|| {
            let all = tuples(n, m);
            let mut ops = Vec::new();
            for e in &all {
                for f in &all {
                    if let Some(t) = spanning_element(n, e, f)? {
                        ops.push(ev.evaluate(&t)?);
                    }
                }
            }
            let mut by_content: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
            for e in &all {
                let mut c = e.clone();
                c.sort_unstable();
                *by_content.entry(c).or_default() += 1;
            }
            let want: u64 = by_content.values().map(|c| c * c).sum();
            let got = linear_span_dim(&ops)?;
            Ok(Check::holds(
                name.clone(),
                got as u64 == want && ops.len() as u64 == want,
                || {
                    format!(
                        "{} elements spanning dimension {got}, expected {want}",
                        ops.len()
                    )
                },
            ))
        })();
        out.record(name, r);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_round_trip() {
        for key in ["T:3", "P:2", "Vclasp:2", "Pclasp:4", "O:3", "part:2+1"] {
            assert_eq!(ProjectorKind::parse(key).unwrap().key(), key);
        }
        assert!(ProjectorKind::parse("Q:1").is_err());
        assert!(ProjectorKind::parse("T").is_err());
    }

    #[test]
    fn greedy_permutation_takes_first_free_match() {
        assert_eq!(
            greedy_permutation(&[1, 2, 1], &[1, 1, 2]),
            Some(vec![0, 2, 1])
        );
        assert_eq!(greedy_permutation(&[1, 1], &[1, 2]), None);
    }

    #[test]
    fn projector_certification() {
        let ev = Evaluator::new(EvalConfig::new(2, Mode::Zeta));
        let p = Projector::new(2, ProjectorKind::Extremal(3)).unwrap();
        assert_eq!(p.operator(&ev).unwrap().shape(), (8, 8));
        assert!(Projector::new(2, ProjectorKind::Partition(vec![1, 1, 1])).is_err());
    }
}
