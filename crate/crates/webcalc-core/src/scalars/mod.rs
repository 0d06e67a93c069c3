//! Exact coefficient rings.
//!
//! Three evaluation regimes are supported, selected once per run by [`Mode`]:
//!
//! * [`Mode::QGeneric`]: Laurent polynomials in `q` over the rationals,
//! * [`Mode::Zeta`]: the cyclotomic field `Q(ζ_N)` (with `q = 1`),
//! * [`Mode::FormalX`]: Laurent polynomials in `X_1, …, X_N` (with `q = 1`).
//!
//! All values are immutable; arithmetic is exact and equality is decidable.

mod cyclotomic;
mod laurent;
mod parse;
mod poly;
pub(crate) mod render;
mod scalar;

pub use cyclotomic::{elementary_symmetric_at_zeta, zeta_power, CycloField, Cyclotomic};
pub use laurent::{quantum_binomial, quantum_integer, LaurentQ, LaurentX};
pub use parse::{parse_scalar, ScalarParseError};
pub use poly::{cyclotomic_polynomial, QPoly};
pub use scalar::{Assignment, Scalar};

use core::fmt;

/// Arbitrary-precision rational numbers (always kept in lowest terms).
pub type Rational = num_rational::BigRational;

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// The evaluation regime; fixed for a whole run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Generic quantum parameter `q`; annular generators are not available.
    QGeneric,
    /// `q = 1`, wrap eigenvalues `γ_i = ζ^i`.
    Zeta,
    /// `q = 1`, wrap eigenvalues are the formal variables `X_i`.
    FormalX,
}

impl Mode {
    /// The keyword used in file headers and on the command line.
    pub fn keyword(self) -> &'static str {
        match self {
            Mode::QGeneric => "q",
            Mode::Zeta => "zeta",
            Mode::FormalX => "formalX",
        }
    }

    pub fn from_keyword(s: &str) -> Option<Mode> {
        match s {
            "q" => Some(Mode::QGeneric),
            "zeta" => Some(Mode::Zeta),
            "formalX" | "formalx" => Some(Mode::FormalX),
            _ => None,
        }
    }

    /// Whether `q` is specialized to 1 in this regime.
    pub fn is_classical(self) -> bool {
        !matches!(self, Mode::QGeneric)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}
