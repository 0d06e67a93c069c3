//! The mode-tagged scalar type used by operators.

use alloc::format;
use alloc::sync::Arc;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{CycloField, Cyclotomic, LaurentQ, LaurentX, Mode, Rational};
use crate::error::{Error, Result};

/// An exact scalar. Values that happen to be rational constants are always
/// normalized to [`Scalar::Const`], so structural equality is value equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Const(Rational),
    Cyc(Cyclotomic),
    Q(LaurentQ),
    X(LaurentX),
}

/// A ring homomorphism applied by [`Scalar::specialize`].
#[derive(Clone, Debug)]
pub enum Assignment {
    /// `q ↦ 1`: generic-`q` values to rational constants.
    QToOne,
    /// `X_i ↦ ζ^i`: formal eigenvalues to the cyclotomic field.
    XToZeta(Arc<CycloField>),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Const(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Const(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Const(Rational::from_integer(n.into()))
    }

    pub fn rational(r: Rational) -> Self {
        Scalar::Const(r)
    }

    /// `q^e` in the generic regime.
    pub fn q_pow(e: i64) -> Self {
        Scalar::from_q(LaurentQ::q_pow(e))
    }

    /// `ζ^k`.
    pub fn zeta(field: &Arc<CycloField>, k: i64) -> Self {
        Scalar::from_cyc(Cyclotomic::zeta(field, k))
    }

    /// The formal variable `X_i` (1-based) among `nvars`.
    pub fn x_var(nvars: usize, i: usize) -> Self {
        Scalar::X(LaurentX::var(nvars, i))
    }

    pub fn from_q(p: LaurentQ) -> Self {
        match p.as_constant() {
            Some(c) => Scalar::Const(c),
            None => Scalar::Q(p),
        }
    }

    pub fn from_cyc(z: Cyclotomic) -> Self {
        match z.as_rational() {
            Some(c) => Scalar::Const(c.clone()),
            None => Scalar::Cyc(z),
        }
    }

    pub fn from_x(p: LaurentX) -> Self {
        match p.as_constant() {
            Some(c) => Scalar::Const(c),
            None => Scalar::X(p),
        }
    }

    /// The mode this value forces, or `None` for rational constants.
    pub fn mode(&self) -> Option<Mode> {
        match self {
            Scalar::Const(_) => None,
            Scalar::Cyc(_) => Some(Mode::Zeta),
            Scalar::Q(_) => Some(Mode::QGeneric),
            Scalar::X(_) => Some(Mode::FormalX),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Const(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Const(c) if c.is_one())
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Const(c) => Some(c),
            _ => None,
        }
    }

    fn combine(
        &self,
        other: &Self,
        fc: impl Fn(&Rational, &Rational) -> Rational,
        fz: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic,
        fq: impl Fn(&LaurentQ, &LaurentQ) -> LaurentQ,
        fx: impl Fn(&LaurentX, &LaurentX) -> LaurentX,
    ) -> Self {
        use Scalar::*;
        match (self, other) {
            (Const(a), Const(b)) => Const(fc(a, b)),
            (Cyc(a), Cyc(b)) => Scalar::from_cyc(fz(a, b)),
            (Cyc(a), Const(b)) => {
                Scalar::from_cyc(fz(a, &Cyclotomic::constant(a.field(), b.clone())))
            }
            (Const(a), Cyc(b)) => {
                Scalar::from_cyc(fz(&Cyclotomic::constant(b.field(), a.clone()), b))
            }
            (Q(a), Q(b)) => Scalar::from_q(fq(a, b)),
            (Q(a), Const(b)) => Scalar::from_q(fq(a, &LaurentQ::constant(b.clone()))),
            (Const(a), Q(b)) => Scalar::from_q(fq(&LaurentQ::constant(a.clone()), b)),
            (X(a), X(b)) => Scalar::from_x(fx(a, b)),
            (X(a), Const(b)) => Scalar::from_x(fx(a, &LaurentX::constant(a.nvars(), b.clone()))),
            (Const(a), X(b)) => Scalar::from_x(fx(&LaurentX::constant(b.nvars(), a.clone()), b)),
            (a, b) => panic!(
                "scalars of different modes combined: {:?} vs {:?}",
                a.mode(),
                b.mode()
            ),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(
            other,
            |a, b| a + b,
            Cyclotomic::add,
            LaurentQ::add,
            LaurentX::add,
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(
            other,
            |a, b| a - b,
            Cyclotomic::sub,
            LaurentQ::sub,
            LaurentX::sub,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        // fast paths for the very common constant factors
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        match (self, other) {
            (Scalar::Const(a), Scalar::Cyc(b)) | (Scalar::Cyc(b), Scalar::Const(a)) => {
                Scalar::Cyc(b.scale(a))
            }
            (Scalar::Const(a), Scalar::Q(b)) | (Scalar::Q(b), Scalar::Const(a)) => {
                Scalar::Q(b.scale(a))
            }
            (Scalar::Const(a), Scalar::X(b)) | (Scalar::X(b), Scalar::Const(a)) => {
                Scalar::X(b.scale(a))
            }
            _ => self.combine(
                other,
                |a, b| a * b,
                Cyclotomic::mul,
                LaurentQ::mul,
                LaurentX::mul,
            ),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Scalar::Const(c) => Scalar::Const(-c),
            Scalar::Cyc(z) => Scalar::Cyc(z.neg()),
            Scalar::Q(p) => Scalar::Q(p.neg()),
            Scalar::X(p) => Scalar::X(p.neg()),
        }
    }

    pub fn scale(&self, r: &Rational) -> Self {
        self.mul(&Scalar::Const(r.clone()))
    }

    /// Multiplicative inverse where it exists in the ring: every nonzero
    /// constant or cyclotomic value, and monomials in the Laurent rings.
    pub fn try_inv(&self) -> Option<Self> {
        match self {
            Scalar::Const(c) => (!c.is_zero()).then(|| Scalar::Const(Rational::one() / c)),
            Scalar::Cyc(z) => z.inv().map(Scalar::from_cyc),
            Scalar::Q(p) => p.inv().map(Scalar::from_q),
            Scalar::X(p) => p.inv().map(Scalar::from_x),
        }
    }

    /// Integer power; negative exponents require an invertible value.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.try_inv().expect("negative power of a non-unit")
        } else {
            self.clone()
        };
        let mut out = Scalar::one();
        let mut sq = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        out
    }

    /// The substitution `q ↦ q^{-1}` (identity on the other rings).
    pub fn bar(&self) -> Self {
        match self {
            Scalar::Q(p) => Scalar::Q(p.bar()),
            other => other.clone(),
        }
    }

    /// Applies a ring homomorphism between regimes.
    pub fn specialize(&self, a: &Assignment) -> Result<Scalar> {
        match (a, self) {
            (_, Scalar::Const(c)) => Ok(Scalar::Const(c.clone())),
            (Assignment::QToOne, Scalar::Q(p)) => Ok(Scalar::Const(p.at_one())),
            (Assignment::XToZeta(field), Scalar::X(p)) => {
                let mut acc = Cyclotomic::zero(field);
                for (e, c) in p.terms() {
                    let k: i64 = e.iter().enumerate().map(|(i, x)| (i as i64 + 1) * x).sum();
                    acc = acc.add(&Cyclotomic::zeta(field, k).scale(c));
                }
                Ok(Scalar::from_cyc(acc))
            }
            (a, s) => Err(Error::Mode(format!(
                "assignment {} does not apply to a {} value",
                match a {
                    Assignment::QToOne => "q=1",
                    Assignment::XToZeta(_) => "X_i=zeta^i",
                },
                s.mode().map(Mode::keyword).unwrap_or("constant")
            ))),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Const(c) => super::render::write_rational(f, c),
            Scalar::Cyc(z) => z.fmt(f),
            Scalar::Q(p) => p.fmt(f),
            Scalar::X(p) => p.fmt(f),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Const(r)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar::add(self, rhs)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar::sub(self, rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        Scalar::mul(self, rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = Scalar::add(self, rhs);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};
    use alloc::string::ToString;

    #[test]
    fn normalization() {
        let f = CycloField::new(2);
        assert_eq!(Scalar::zeta(&f, 1), Scalar::int(-1));
        let q = Scalar::q_pow(1);
        assert_eq!(q.mul(&q.try_inv().unwrap()), Scalar::one());
        assert_eq!(q.sub(&q), Scalar::zero());
    }

    #[test]
    fn specialization_examples() {
        let circle = Scalar::q_pow(1).add(&Scalar::q_pow(-1));
        assert_eq!(
            circle.specialize(&Assignment::QToOne).unwrap(),
            Scalar::int(2)
        );
        let f = CycloField::new(2);
        let x1x2 = Scalar::x_var(2, 1).mul(&Scalar::x_var(2, 2));
        assert_eq!(
            x1x2.specialize(&Assignment::XToZeta(f.clone())).unwrap(),
            Scalar::int(-1)
        );
        assert!(Scalar::q_pow(1)
            .specialize(&Assignment::XToZeta(f))
            .is_err());
        assert_eq!(
            Scalar::zero().specialize(&Assignment::QToOne).unwrap(),
            Scalar::zero()
        );
    }

    #[test]
    fn display() {
        assert_eq!(Scalar::Const(rat(-3, 2)).to_string(), "-3/2");
        assert_eq!(Scalar::Const(int(0)).to_string(), "0");
        let x = Scalar::x_var(2, 1).mul(&Scalar::x_var(2, 2).try_inv().unwrap());
        assert_eq!(x.to_string(), "X1*X2^-1");
    }

    #[test]
    fn powers() {
        let f = CycloField::new(5);
        let z = Scalar::zeta(&f, 1);
        assert_eq!(z.pow(5), Scalar::one());
        assert_eq!(z.pow(-2), Scalar::zeta(&f, 3));
    }
}
