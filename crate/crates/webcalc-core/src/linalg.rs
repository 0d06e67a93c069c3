//! Exact linear algebra over the scalar fields: rank and span dimension.
//!
//! Everything is reduced to rank computations over `Q`. A vector with
//! entries in `Q(ζ_N)` is replaced by the `d = φ(N)` rational vectors
//! `ζ^j·v` (`0 ≤ j < d`), written in the power basis; the `Q`-rank of the
//! expanded family is `d` times the `Q(ζ_N)`-rank of the original one.
//! Formal `X` values are treated coordinatewise in the monomial basis.
//!
//! Elimination is fraction free: rows are scaled to primitive integer
//! vectors and combined as `r ← a·r − b·p`, then divided by their content.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::eval::SparseOperator;
use crate::scalars::{CycloField, Cyclotomic, Mode, Rational, Scalar};

type IntRow = BTreeMap<usize, BigInt>;

/// Incremental row echelon form over `Z` (equivalently `Q`).
#[derive(Default)]
struct Echelon {
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    /// Adds a row; returns whether it increased the rank.
    fn insert(&mut self, row: BTreeMap<usize, Rational>) -> bool {
        let mut r = primitive(row);
        while let Some((&c, _)) = r.iter().next() {
            let Some(p) = self.pivots.get(&c) else {
                self.pivots.insert(c, r);
                return true;
            };
            let a = p[&c].clone();
            let b = r[&c].clone();
            let mut out = IntRow::new();
            for (&j, v) in &r {
                let x = v * &a;
                if !x.is_zero() {
                    out.insert(j, x);
                }
            }
            for (&j, v) in p {
                let e = out.entry(j).or_insert_with(BigInt::zero);
                *e -= v * &b;
                if e.is_zero() {
                    out.remove(&j);
                }
            }
            r = normalize(out);
        }
        false
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Clears denominators and divides by the content.
fn primitive(row: BTreeMap<usize, Rational>) -> IntRow {
    let l = row
        .values()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let ints = row
        .into_iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(j, v)| (j, v.numer() * (&l / v.denom())))
        .collect();
    normalize(ints)
}

fn normalize(mut row: IntRow) -> IntRow {
    let g = row.values().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
    if row.values().next().is_some_and(|v| v.is_negative()) {
        for v in row.values_mut() {
            *v = -&*v;
        }
    }
    row
}

/// How scalars of one mode are laid out as rational coordinates.
enum Coords {
    /// Rational constants: one coordinate.
    Plain,
    /// `Q(ζ_N)` in the power basis.
    Cyclo(Arc<CycloField>),
    /// Formal `X`: one coordinate per monomial (indexed on the fly).
    Monomial(BTreeMap<Vec<i64>, usize>),
}

impl Coords {
    fn for_mode(mode: Mode, n: u32) -> Coords {
        match mode {
            Mode::Zeta => Coords::Cyclo(CycloField::new(n.max(2))),
            Mode::FormalX => Coords::Monomial(BTreeMap::new()),
            Mode::QGeneric => Coords::Plain,
        }
    }

    /// Number of rational vectors produced per field vector.
    fn multiplicity(&self) -> usize {
        match self {
            Coords::Cyclo(f) => f.degree(),
            _ => 1,
        }
    }

    /// Expands a sparse vector of scalars into rational rows.
    fn expand(&mut self, v: &[(usize, Scalar)]) -> Result<Vec<BTreeMap<usize, Rational>>> {
        match self {
            Coords::Plain => {
                let mut row = BTreeMap::new();
                for (i, s) in v {
                    let c = s.as_rational().ok_or_else(|| {
                        Error::Mode(format!("rank over Q(q) is not supported (entry {s})"))
                    })?;
                    row.insert(*i, c.clone());
                }
                Ok(alloc::vec![row])
            }
            Coords::Cyclo(field) => {
                let d = field.degree();
                let vals: Vec<(usize, Cyclotomic)> = v
                    .iter()
                    .map(|(i, s)| Ok((*i, to_cyclotomic(field, s)?)))
                    .collect::<Result<_>>()?;
                let mut rows = Vec::with_capacity(d);
                for j in 0..d {
                    let z = Cyclotomic::zeta(field, j as i64);
                    let mut row = BTreeMap::new();
                    for (i, x) in &vals {
                        for (c, a) in z.mul(x).coeffs().iter().enumerate() {
                            if !a.is_zero() {
                                row.insert(i * d + c, a.clone());
                            }
                        }
                    }
                    rows.push(row);
                }
                Ok(rows)
            }
            Coords::Monomial(index) => {
                let mut row = BTreeMap::new();
                for (i, s) in v {
                    let terms: Vec<(Vec<i64>, Rational)> = match s {
                        Scalar::Const(c) => alloc::vec![(Vec::new(), c.clone())],
                        Scalar::X(p) => p.terms().map(|(e, c)| (e.to_vec(), c.clone())).collect(),
                        other => {
                            return Err(Error::Mode(format!("{other} is not a formal X value")))
                        }
                    };
                    for (e, c) in terms {
                        let next = index.len();
                        let m = *index.entry(e).or_insert(next);
                        row.insert((*i, m), c);
                    }
                }
                // Interleave (position, monomial) pairs into one index space.
                Ok(alloc::vec![row
                    .into_iter()
                    .map(|((i, m), c)| (pair_index(i, m), c))
                    .collect()])
            }
        }
    }
}

/// Cantor pairing; injective on `N × N`.
fn pair_index(i: usize, m: usize) -> usize {
    (i + m) * (i + m + 1) / 2 + m
}

fn to_cyclotomic(field: &Arc<CycloField>, s: &Scalar) -> Result<Cyclotomic> {
    match s {
        Scalar::Const(c) => Ok(Cyclotomic::constant(field, c.clone())),
        Scalar::Cyc(z) if z.order() == field.order() => Ok(z.clone()),
        other => Err(Error::Mode(format!(
            "{other} is not in Q(ζ_{})",
            field.order()
        ))),
    }
}

/// Dimension of the span of a family of sparse vectors with entries in the
/// field of `mode` (rank `N` selects the cyclotomic field in ZETA mode).
///
/// In FORMAL_X mode monomials are independent coordinates and the span is
/// taken over `Q`; in Q_GENERIC mode only rational entries are accepted.
pub fn vectors_span_dim(mode: Mode, n: u32, vectors: &[Vec<(usize, Scalar)>]) -> Result<usize> {
    let mut coords = Coords::for_mode(mode, n);
    let mut ech = Echelon::default();
    for v in vectors {
        for row in coords.expand(v)? {
            ech.insert(row);
        }
    }
    Ok(ech.rank() / coords.multiplicity())
}

/// Mode of an operator's entries (`None` if every entry is rational).
fn operator_mode(op: &SparseOperator) -> Option<Mode> {
    op.entries().find_map(|(_, _, s)| s.mode())
}

/// Exact rank of an operator over its scalar field.
///
/// Accepts ZETA-mode operators and operators whose entries are all rational;
/// FORMAL_X and non-constant generic-`q` entries are rejected.
pub fn rank(op: &SparseOperator) -> Result<usize> {
    let mode = operator_mode(op).unwrap_or(Mode::QGeneric);
    if mode == Mode::FormalX {
        return Err(Error::Mode(
            "rank needs a field; formal X values do not form one".into(),
        ));
    }
    let rows: Vec<Vec<(usize, Scalar)>> = op
        .rows()
        .iter()
        .map(|r| r.iter().map(|(&c, s)| (c, s.clone())).collect())
        .collect();
    vectors_span_dim(mode, op.n(), &rows)
}

/// Exact entrywise equality, after checking that boundaries agree.
pub fn operator_equal(a: &SparseOperator, b: &SparseOperator) -> Result<bool> {
    Ok(a.first_difference(b)?.is_none())
}

/// Dimension of the linear span of a family of operators with common
/// boundaries. FORMAL_X values are expanded in the monomial basis.
pub fn linear_span_dim(ops: &[SparseOperator]) -> Result<usize> {
    let Some(first) = ops.first() else {
        return Ok(0);
    };
    let mut mode = None;
    for op in ops {
        if op.source() != first.source() || op.target() != first.target() {
            return Err(Error::Boundary(format!(
                "span of operators {} → {} and {} → {}",
                first.source(),
                first.target(),
                op.source(),
                op.target()
            )));
        }
        mode = mode.or(operator_mode(op));
    }
    let cols = first.shape().1;
    let vectors: Vec<Vec<(usize, Scalar)>> = ops
        .iter()
        .map(|op| {
            op.entries()
                .map(|(r, c, s)| (r * cols + c, s.clone()))
                .collect()
        })
        .collect();
    vectors_span_dim(mode.unwrap_or(Mode::QGeneric), first.n(), &vectors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::{EvalConfig, Evaluator};
    use crate::scalars::int;
    use crate::web::{Boundary, Strand};

    #[test]
    fn identity_and_zero_ranks() {
        let ev = Evaluator::new(EvalConfig::new(2, Mode::Zeta));
        let b = Boundary::ups(1, 2);
        assert_eq!(rank(&ev.identity(&b)).unwrap(), 4);
        assert_eq!(rank(&ev.identity(&b).scale(&Scalar::zero())).unwrap(), 0);
    }

    #[test]
    fn cyclotomic_rank_is_over_the_field() {
        // Rows (1, ζ) and (ζ, ζ²) are proportional over Q(ζ_5).
        let ev = Evaluator::new(EvalConfig::new(5, Mode::Zeta));
        let f = ev.field().unwrap().clone();
        let v1 = alloc::vec![(0, Scalar::one()), (1, Scalar::zeta(&f, 1))];
        let v2 = alloc::vec![(0, Scalar::zeta(&f, 1)), (1, Scalar::zeta(&f, 2))];
        assert_eq!(
            vectors_span_dim(Mode::Zeta, 5, &[v1.clone(), v2]).unwrap(),
            1
        );
        let v3 = alloc::vec![(0, Scalar::one()), (1, Scalar::one())];
        assert_eq!(vectors_span_dim(Mode::Zeta, 5, &[v1, v3]).unwrap(), 2);
    }

    #[test]
    fn formal_rank_rejected_but_span_supported() {
        let ev = Evaluator::new(EvalConfig::new(2, Mode::FormalX));
        let s = Strand::up(1);
        let d: Vec<_> = (-3..=3).map(|j| ev.wrap(s, j).unwrap()).collect();
        assert!(rank(&d[4]).is_err());
        assert_eq!(linear_span_dim(&d).unwrap(), 7);
        let dup = alloc::vec![d[0].clone(), d[0].scale(&Scalar::int(3))];
        assert_eq!(linear_span_dim(&dup).unwrap(), 1);
    }

    #[test]
    fn rational_elimination() {
        let rows = alloc::vec![
            alloc::vec![(0, Scalar::int(2)), (1, Scalar::int(4))],
            alloc::vec![
                (0, Scalar::rational(int(1) / int(3))),
                (1, Scalar::rational(int(2) / int(3)))
            ],
            alloc::vec![(1, Scalar::int(1))],
        ];
        assert_eq!(vectors_span_dim(Mode::QGeneric, 2, &rows).unwrap(), 2);
    }
}
