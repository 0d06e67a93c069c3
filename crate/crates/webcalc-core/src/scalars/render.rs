//! Shared helpers for the canonical textual rendering of scalars.

use alloc::format;
use alloc::string::String;
use core::fmt;

use num_traits::{One, Signed};

use super::Rational;

/// `var^e`, with the exponent omitted when it is 1 and the whole factor
/// omitted (empty string) when it is 0.
pub fn power(var: &str, e: i64) -> String {
    match e {
        0 => String::new(),
        1 => String::from(var),
        _ => format!("{var}^{e}"),
    }
}

/// Writes `c1*m1 + c2*m2 - ...`; an empty monomial denotes a constant term.
/// Unit coefficients are suppressed in front of non-constant monomials.
pub fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Rational, String)]) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (c, mono)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let a = c.abs();
        if mono.is_empty() {
            write_rational(f, &a)?;
        } else if a.is_one() {
            f.write_str(mono)?;
        } else {
            write_rational(f, &a)?;
            f.write_str("*")?;
            f.write_str(mono)?;
        }
    }
    Ok(())
}

/// Rationals render as `n` or `n/d`.
pub fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}
