//! Laurent polynomials with rational coefficients: in one variable `q`, and
//! in `N` variables `X_1, …, X_N`. Zero coefficients are never stored.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::render;
use super::Rational;

fn insert_add<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, c: Rational) {
    use alloc::collections::btree_map::Entry;
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Laurent polynomial in `q`.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct LaurentQ {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ::default()
    }

    pub fn one() -> Self {
        LaurentQ::monomial(0, Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentQ::monomial(0, c)
    }

    /// `c·q^e`.
    pub fn monomial(e: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        insert_add(&mut terms, e, c);
        LaurentQ { terms }
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        LaurentQ::monomial(e, Rational::one())
    }

    /// `(−q)^e`.
    pub fn neg_q_pow(e: i64) -> Self {
        let sign = if e.rem_euclid(2) == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        LaurentQ::monomial(e, sign)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if this is a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            insert_add(&mut terms, *e, c.clone());
        }
        LaurentQ { terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentQ {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return LaurentQ::zero();
        }
        LaurentQ {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                insert_add(&mut terms, e1 + e2, c1 * c2);
            }
        }
        LaurentQ { terms }
    }

    /// Inverse, available only for nonzero monomials.
    pub fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().expect("one term");
        Some(LaurentQ::monomial(-e, Rational::one() / c))
    }

    /// The substitution `q ↦ q^{-1}`.
    pub fn bar(&self) -> Self {
        LaurentQ {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// The value at `q = 1`.
    pub fn at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }
}

impl fmt::Display for LaurentQ {
    /// Highest power first, e.g. `q^2 + 1 + q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| (c.clone(), render::power("q", *e)))
            .collect();
        render::write_terms(f, &terms)
    }
}

/// The quantum integer `[m] = (q^m − q^{−m}) / (q − q^{−1})`.
pub fn quantum_integer(m: i64) -> LaurentQ {
    if m < 0 {
        return quantum_integer(-m).neg();
    }
    let mut out = LaurentQ::zero();
    let mut e = m - 1;
    while e >= -(m - 1) && m > 0 {
        out = out.add(&LaurentQ::q_pow(e));
        e -= 2;
    }
    out
}

/// The quantum binomial `[n choose t]`, balanced so that it is invariant
/// under `q ↦ q^{-1}`. Negative `n` uses `[n choose t] = (−1)^t [t−n−1 choose t]`.
pub fn quantum_binomial(n: i64, t: i64) -> LaurentQ {
    if t < 0 {
        return LaurentQ::zero();
    }
    if n < 0 {
        let b = quantum_binomial(t - n - 1, t);
        return if t % 2 == 0 { b } else { b.neg() };
    }
    if t > n {
        return LaurentQ::zero();
    }
    // Pascal: [n, t] = q^{-t}[n-1, t] + q^{n-t}[n-1, t-1]
    let n = n as usize;
    let t = t as usize;
    let mut row: Vec<LaurentQ> = vec![LaurentQ::one()];
    for m in 1..=n {
        let mut next = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut v = LaurentQ::zero();
            if j < m {
                v = v.add(&row[j].mul(&LaurentQ::q_pow(-(j as i64))));
            }
            if j > 0 {
                v = v.add(&row[j - 1].mul(&LaurentQ::q_pow((m - j) as i64)));
            }
            next.push(v);
        }
        row = next;
    }
    row.swap_remove(t)
}

/// Laurent polynomial in `X_1, …, X_N`; monomials are exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LaurentX {
    nvars: usize,
    terms: BTreeMap<Vec<i64>, Rational>,
}

impl LaurentX {
    pub fn zero(nvars: usize) -> Self {
        LaurentX {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        LaurentX::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        LaurentX::monomial(vec![0; nvars], c)
    }

    /// `c·X^exps`.
    pub fn monomial(exps: Vec<i64>, c: Rational) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        insert_add(&mut terms, exps, c);
        LaurentX { nvars, terms }
    }

    /// The variable `X_i` (1-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!((1..=nvars).contains(&i), "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i - 1] = 1;
        LaurentX::monomial(exps, Rational::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().expect("one term");
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.nvars, other.nvars,
            "Laurent polynomials in different variable counts"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            insert_add(&mut terms, e.clone(), c.clone());
        }
        LaurentX {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentX {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        if k.is_zero() {
            return LaurentX::zero(self.nvars);
        }
        LaurentX {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut terms = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                insert_add(&mut terms, e, c1 * c2);
            }
        }
        LaurentX {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = LaurentX::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Inverse, available only for nonzero monomials.
    pub fn inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().expect("one term");
        Some(LaurentX::monomial(
            e.iter().map(|x| -x).collect(),
            Rational::one() / c,
        ))
    }

    /// Applies a permutation of the variables: `X_i ↦ X_{perm[i]}` (0-based).
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, x) in e.iter().enumerate() {
                ne[perm[i]] = *x;
            }
            insert_add(&mut terms, ne, c.clone());
        }
        LaurentX {
            nvars: self.nvars,
            terms,
        }
    }

    /// Invariance under all transpositions of adjacent variables.
    pub fn is_symmetric(&self) -> bool {
        (0..self.nvars.saturating_sub(1)).all(|i| {
            let mut perm: Vec<usize> = (0..self.nvars).collect();
            perm.swap(i, i + 1);
            self.permute(&perm) == *self
        })
    }

    /// Total degree of the leading monomial set, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<i64>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }
}

impl fmt::Display for LaurentX {
    /// Monomials in decreasing lexicographic order of exponent vectors,
    /// e.g. `X1^2 + X1*X2 + X2^2`, `X1*X2^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, String)> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let factors: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, x)| **x != 0)
                    .map(|(i, x)| render::power(&format!("X{}", i + 1), *x))
                    .collect();
                (c.clone(), factors.join("*"))
            })
            .collect();
        render::write_terms(f, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;
    use alloc::string::ToString;

    #[test]
    fn quantum_numbers() {
        assert_eq!(quantum_integer(2).to_string(), "q + q^-1");
        assert_eq!(quantum_integer(3).to_string(), "q^2 + 1 + q^-2");
        assert_eq!(quantum_integer(0), LaurentQ::zero());
        assert_eq!(quantum_binomial(2, 1), quantum_integer(2));
        assert_eq!(
            quantum_binomial(4, 2).to_string(),
            "q^4 + q^2 + 2 + q^-2 + q^-4"
        );
        assert_eq!(quantum_binomial(3, 0), LaurentQ::one());
        assert_eq!(quantum_binomial(2, 3), LaurentQ::zero());
        assert_eq!(quantum_binomial(-1, 1), LaurentQ::constant(int(-1)));
        for n in 0..7 {
            for t in 0..=n {
                assert_eq!(quantum_binomial(n, t).bar(), quantum_binomial(n, t));
                assert_eq!(
                    quantum_binomial(n, t).at_one(),
                    int(num_integer::binomial(n, t))
                );
            }
        }
    }

    #[test]
    fn render_x() {
        let a = LaurentX::var(2, 1).mul(&LaurentX::var(2, 2).inv().unwrap());
        assert_eq!(a.to_string(), "X1*X2^-1");
        let h2 = LaurentX::var(2, 1)
            .pow(2)
            .add(&LaurentX::var(2, 1).mul(&LaurentX::var(2, 2)))
            .add(&LaurentX::var(2, 2).pow(2));
        assert_eq!(h2.to_string(), "X1^2 + X1*X2 + X2^2");
        assert!(h2.is_symmetric());
        assert!(!a.is_symmetric());
    }
}
