//! Dense univariate polynomials over the rationals.
//!
//! Only the handful of operations needed for cyclotomic arithmetic are
//! provided: multiplication, Euclidean division and the extended Euclidean
//! algorithm (for inverses modulo the cyclotomic polynomial).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::Rational;

/// Polynomial with rational coefficients, stored low degree first.
///
/// The representation is kept trimmed: the leading coefficient is never zero,
/// and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// `x^n`.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        QPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        QPoly::from_coeffs(
            coeffs
                .iter()
                .map(|&c| Rational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &QPoly) -> (QPoly, QPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (QPoly::zero(), QPoly::zero());
        };
        if sd < dd {
            return (QPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (dd..=sd).rev() {
            let c = &rem[i] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] -= &c * d;
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        (QPoly::from_coeffs(quot), QPoly::from_coeffs(rem))
    }

    /// Extended Euclid: returns `(g, s)` with `g = gcd(self, m)` (monic) and
    /// `s * self ≡ g (mod m)`.
    pub fn gcd_ext(&self, m: &QPoly) -> (QPoly, QPoly) {
        let (mut r0, mut r1) = (m.clone(), self.clone());
        let (mut s0, mut s1) = (QPoly::zero(), QPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = s0.sub(&q.mul(&s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s2);
        }
        match r0.degree() {
            None => (QPoly::zero(), QPoly::zero()),
            Some(d) => {
                let inv = Rational::one() / &r0.coeffs[d];
                (r0.scale(&inv), s0.scale(&inv))
            }
        }
    }
}

impl fmt::Display for QPoly {
    /// Renders in the variable `x`, highest degree first (e.g. `x^2 - x + 1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, alloc::string::String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), super::render::power("x", i as i64)))
            .collect();
        super::render::write_terms(f, &terms)
    }
}

/// The `n`-th cyclotomic polynomial, obtained by dividing `x^n - 1` by every
/// `Φ_d` with `d` a proper divisor of `n`.
pub fn cyclotomic_polynomial(n: u32) -> QPoly {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    let mut cache: Vec<Option<QPoly>> = vec![None; n as usize + 1];
    cyclotomic_rec(n, &mut cache)
}

fn cyclotomic_rec(n: u32, cache: &mut Vec<Option<QPoly>>) -> QPoly {
    if let Some(p) = &cache[n as usize] {
        return p.clone();
    }
    let mut p = QPoly::monomial(n as usize).sub(&QPoly::one());
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_rec(d, cache);
            let (q, r) = p.div_rem(&phi_d);
            debug_assert!(r.is_zero());
            p = q;
        }
    }
    cache[n as usize] = Some(p.clone());
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_polynomial(1), QPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), QPoly::from_i64(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), QPoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6).to_string(), "x^2 - x + 1");
    }

    #[test]
    fn inverse_mod_phi() {
        let phi = cyclotomic_polynomial(5);
        let a = QPoly::from_i64(&[2, 0, 1]);
        let (g, s) = a.gcd_ext(&phi);
        assert_eq!(g, QPoly::one());
        let (_, r) = a.mul(&s).div_rem(&phi);
        assert_eq!(r, QPoly::one());
    }
}
