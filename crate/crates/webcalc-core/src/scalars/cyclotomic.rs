//! The cyclotomic field `Q(ζ_N)`.
//!
//! Elements are polynomials in `ζ` reduced modulo the cyclotomic polynomial
//! `Φ_N`, stored as a coefficient vector of length `deg Φ_N`. Reduction is
//! canonical, so equality of values is equality of coefficient vectors.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use super::poly::{cyclotomic_polynomial, QPoly};
use super::render;
use super::Rational;

/// Precomputed data for `Q(ζ_N)`: the modulus and the reductions of the
/// powers `x^j` needed by multiplication.
#[derive(Debug)]
pub struct CycloField {
    order: u32,
    phi: QPoly,
    degree: usize,
    /// `x^j mod Φ_N` for `0 <= j < max(N, 2·deg)`.
    powers: Vec<Vec<Rational>>,
}

impl CycloField {
    /// The field of `N`-th roots of unity. Panics if `N < 2`.
    pub fn new(order: u32) -> Arc<CycloField> {
        assert!(order >= 2, "cyclotomic field needs order >= 2");
        let phi = cyclotomic_polynomial(order);
        let degree = phi.degree().expect("cyclotomic polynomial is nonzero");
        let count = (order as usize).max(2 * degree);
        let mut powers = Vec::with_capacity(count);
        let mut cur = vec![Rational::zero(); degree];
        cur[0] = Rational::one();
        for _ in 0..count {
            powers.push(cur.clone());
            // multiply by x and reduce: x^degree = -(phi_0 + ... + phi_{d-1} x^{d-1})
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = Rational::zero();
            if !top.is_zero() {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c -= &top * phi.coeff(i);
                }
            }
        }
        Arc::new(CycloField {
            order,
            phi,
            degree,
            powers,
        })
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `φ(N)`, the dimension of the field over the rationals.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> &QPoly {
        &self.phi
    }
}

/// An element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    coeffs: Vec<Rational>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Cyclotomic {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree],
        }
    }

    pub fn constant(field: &Arc<CycloField>, c: Rational) -> Self {
        let mut z = Cyclotomic::zero(field);
        z.coeffs[0] = c;
        z
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Cyclotomic::constant(field, Rational::one())
    }

    /// Reduces an arbitrary polynomial in `ζ` (low degree first).
    pub fn from_poly(field: &Arc<CycloField>, poly: &[Rational]) -> Self {
        let mut coeffs = vec![Rational::zero(); field.degree];
        for (j, a) in poly.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if j < field.degree {
                coeffs[j] += a;
            } else {
                let red = field.power(j);
                for (c, r) in coeffs.iter_mut().zip(red.iter()) {
                    if !r.is_zero() {
                        *c += a * r;
                    }
                }
            }
        }
        Cyclotomic {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Coefficients with respect to the power basis `1, ζ, …, ζ^{d−1}`.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.field.order, other.field.order,
            "cyclotomic elements of different orders cannot be combined"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Cyclotomic {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let d = self.field.degree;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Cyclotomic::from_poly(&self.field, &prod)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Cyclotomic::constant(&self.field, Rational::one() / r));
        }
        let a = QPoly::from_coeffs(self.coeffs.clone());
        let (g, s) = a.gcd_ext(&self.field.phi);
        debug_assert_eq!(g, QPoly::one(), "Φ_N is irreducible");
        Some(Cyclotomic::from_poly(&self.field, s.coeffs()))
    }

    /// `ζ^k` (any integer `k`).
    pub fn zeta(field: &Arc<CycloField>, k: i64) -> Self {
        let n = field.order as i64;
        let j = k.rem_euclid(n) as usize;
        Cyclotomic {
            field: field.clone(),
            coeffs: field.power(j).to_vec(),
        }
    }
}

impl CycloField {
    fn power(&self, j: usize) -> &[Rational] {
        if j < self.powers.len() {
            &self.powers[j]
        } else {
            // ζ^N = 1, so only residues mod N matter
            &self.powers[j % self.order as usize]
        }
    }
}

/// `ζ_N^k` in a freshly constructed field of order `N`.
pub fn zeta_power(n: u32, k: i64) -> Cyclotomic {
    Cyclotomic::zeta(&CycloField::new(n), k)
}

/// The elementary symmetric polynomial `e_k` evaluated at `ζ, ζ², …, ζ^N`.
pub fn elementary_symmetric_at_zeta(n: u32, k: u32) -> Cyclotomic {
    assert!(k <= n, "e_k needs k <= N");
    let field = CycloField::new(n);
    // e[j] = e_j of the roots processed so far
    let mut e: Vec<Cyclotomic> = vec![Cyclotomic::zero(&field); k as usize + 1];
    e[0] = Cyclotomic::one(&field);
    for i in 1..=n as i64 {
        let root = Cyclotomic::zeta(&field, i);
        for j in (1..=k as usize).rev() {
            e[j] = e[j].add(&e[j - 1].mul(&root));
        }
    }
    e.swap_remove(k as usize)
}

impl fmt::Display for Cyclotomic {
    /// Renders in the variable `z` (for `ζ`), highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(Rational, alloc::string::String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (c.clone(), render::power("z", i as i64)))
            .collect();
        render::write_terms(f, &terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};
    use alloc::string::ToString;

    #[test]
    fn zeta_examples() {
        assert_eq!(zeta_power(2, 1).as_rational(), Some(&int(-1)));
        assert_eq!(zeta_power(3, 3).as_rational(), Some(&int(1)));
        assert_eq!(zeta_power(3, 2).to_string(), "-z - 1");
        assert_eq!(zeta_power(5, -1), zeta_power(5, 4));
    }

    #[test]
    fn e_k_at_zeta() {
        for n in 2..=8u32 {
            for k in 0..=n {
                let v = elementary_symmetric_at_zeta(n, k);
                let expected = if k == 0 {
                    int(1)
                } else if k < n {
                    int(0)
                } else if n % 2 == 1 {
                    int(1)
                } else {
                    int(-1)
                };
                assert_eq!(v.as_rational(), Some(&expected), "N={n} k={k}");
            }
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f = CycloField::new(7);
        let a = Cyclotomic::from_poly(&f, &[int(2), rat(1, 3), int(0), int(-5)]);
        let b = a.inv().unwrap();
        assert_eq!(a.mul(&b), Cyclotomic::one(&f));
    }

    #[test]
    fn render() {
        let f = CycloField::new(5);
        let a = Cyclotomic::from_poly(&f, &[int(-1), int(0), rat(3, 2)]);
        assert_eq!(a.to_string(), "3/2*z^2 - 1");
    }
}
