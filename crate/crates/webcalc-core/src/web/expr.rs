//! Formal scalar-linear combinations of web words.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{Boundary, WebWord};
use crate::error::{Error, Result};
use crate::scalars::{Mode, Scalar};

/// `Σ c_i · w_i` with all words sharing source, target and annular flag.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebExpr {
    n: u32,
    mode: Mode,
    source: Boundary,
    target: Boundary,
    annular: bool,
    terms: Vec<(Scalar, WebWord)>,
}

fn check_mode(mode: Mode, c: &Scalar) -> Result<()> {
    match c.mode() {
        Some(m) if m != mode => Err(Error::Mode(format!(
            "a {} coefficient in a {} expression",
            m.keyword(),
            mode.keyword()
        ))),
        _ => Ok(()),
    }
}

impl WebExpr {
    /// The single word `w` with coefficient 1.
    pub fn word(mode: Mode, w: WebWord) -> WebExpr {
        WebExpr {
            n: w.n(),
            mode,
            source: w.source().clone(),
            target: w.target().clone(),
            annular: w.is_annular(),
            terms: vec![(Scalar::one(), w)],
        }
    }

    /// The zero morphism between two boundaries.
    pub fn zero(n: u32, mode: Mode, source: Boundary, target: Boundary, annular: bool) -> WebExpr {
        WebExpr {
            n,
            mode,
            source,
            target,
            annular,
            terms: Vec::new(),
        }
    }

    /// Builds `Σ c_i w_i`, checking that boundaries and modes agree.
    /// Words are promoted to annular if any summand is annular.
    pub fn from_terms(
        n: u32,
        mode: Mode,
        source: Boundary,
        target: Boundary,
        terms: Vec<(Scalar, WebWord)>,
    ) -> Result<WebExpr> {
        let annular = terms.iter().any(|(_, w)| w.is_annular());
        for (i, (c, w)) in terms.iter().enumerate() {
            check_mode(mode, c)?;
            if w.n() != n {
                return Err(Error::Invalid(format!(
                    "summand {} is a word for N={}",
                    i + 1,
                    w.n()
                )));
            }
            if w.source() != &source || w.target() != &target {
                return Err(Error::Boundary(format!(
                    "summand {} has boundary {} -> {}, expected {} -> {}",
                    i + 1,
                    w.source(),
                    w.target(),
                    source,
                    target
                )));
            }
        }
        let terms = terms
            .into_iter()
            .map(|(c, w)| (c, if annular { w.into_annular() } else { w }))
            .collect();
        Ok(WebExpr {
            n,
            mode,
            source,
            target,
            annular,
            terms,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn source(&self) -> &Boundary {
        &self.source
    }

    pub fn target(&self) -> &Boundary {
        &self.target
    }

    pub fn is_annular(&self) -> bool {
        self.annular
    }

    pub fn terms(&self) -> &[(Scalar, WebWord)] {
        &self.terms
    }

    /// Applies a boundary-changing transformation to every word; the new
    /// boundaries are read off the transformed words.
    pub fn try_map_words(&self, f: impl Fn(&WebWord) -> Result<WebWord>) -> Result<WebExpr> {
        let terms: Vec<(Scalar, WebWord)> = self
            .terms
            .iter()
            .map(|(c, w)| Ok((c.clone(), f(w)?)))
            .collect::<Result<_>>()?;
        let (source, target) = match terms.first() {
            Some((_, w)) => (w.source().clone(), w.target().clone()),
            None => {
                return Err(Error::Invalid(
                    "cannot transform an expression without summands".into(),
                ))
            }
        };
        WebExpr::from_terms(self.n, self.mode, source, target, terms)
    }

    fn check_compatible(&self, other: &WebExpr) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::Mode(format!(
                "cannot combine {} and {} expressions",
                self.mode, other.mode
            )));
        }
        if self.n != other.n {
            return Err(Error::Invalid("expressions for different N".into()));
        }
        Ok(())
    }

    /// `self ∘ other`, expanded bilinearly (no simplification).
    pub fn compose(&self, other: &WebExpr) -> Result<WebExpr> {
        self.check_compatible(other)?;
        if other.target != self.source {
            return Err(Error::Boundary(format!(
                "cannot compose: target {} does not match source {}",
                other.target, self.source
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                terms.push((a.mul(b), f.compose(g)?));
            }
        }
        Ok(WebExpr {
            n: self.n,
            mode: self.mode,
            source: other.source.clone(),
            target: self.target.clone(),
            annular: self.annular || other.annular,
            terms,
        })
    }

    /// `self ⊗ other`, expanded bilinearly.
    pub fn tensor(&self, other: &WebExpr) -> Result<WebExpr> {
        self.check_compatible(other)?;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (a, f) in &self.terms {
            for (b, g) in &other.terms {
                terms.push((a.mul(b), f.tensor(g)?));
            }
        }
        Ok(WebExpr {
            n: self.n,
            mode: self.mode,
            source: self.source.concat(&other.source),
            target: self.target.concat(&other.target),
            annular: self.annular || other.annular,
            terms,
        })
    }

    /// `self + other`.
    pub fn add(&self, other: &WebExpr) -> Result<WebExpr> {
        self.check_compatible(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        WebExpr::from_terms(
            self.n,
            self.mode,
            self.source.clone(),
            self.target.clone(),
            terms,
        )
    }

    /// `c · self`.
    pub fn scale(&self, c: &Scalar) -> Result<WebExpr> {
        check_mode(self.mode, c)?;
        let mut e = self.clone();
        for (a, _) in &mut e.terms {
            *a = a.mul(c);
        }
        Ok(e)
    }

    /// Collects equal words and drops zero coefficients; summands are put
    /// in a canonical order.
    pub fn simplified(&self) -> WebExpr {
        let mut out: Vec<(Scalar, WebWord)> = Vec::new();
        for (c, w) in &self.terms {
            match out.iter_mut().find(|(_, v)| v == w) {
                Some((d, _)) => *d = d.add(c),
                None => out.push((c.clone(), w.clone())),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        let mut e = self.clone();
        e.terms = out;
        e
    }

    /// Flow winding grades of the summands, if they all agree.
    pub fn winding_grade(&self) -> Option<i64> {
        let mut it = self.terms.iter().map(|(_, w)| w.winding_grade());
        let g = it.next().unwrap_or(0);
        it.all(|x| x == g).then_some(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{rat, Scalar};
    use crate::web::Gen;

    fn t2(n: u32) -> WebExpr {
        let one = Boundary::ups(1, 1);
        let mut terms = Vec::new();
        for k in 0..n as i64 {
            let a = WebWord::single(n, &one, 0, Gen::Wrap(-k)).unwrap();
            let b = WebWord::single(n, &one, 0, Gen::Wrap(k)).unwrap();
            terms.push((Scalar::rational(rat(1, n as i64)), a.tensor(&b).unwrap()));
        }
        let b2 = Boundary::ups(1, 2);
        WebExpr::from_terms(n, Mode::Zeta, b2.clone(), b2, terms).unwrap()
    }

    #[test]
    fn composition_counts() {
        for n in 2..5 {
            let t = t2(n);
            assert_eq!(t.compose(&t).unwrap().terms().len(), (n * n) as usize);
            assert_eq!(t.winding_grade(), Some(0));
        }
    }

    #[test]
    fn mode_mismatch_rejected() {
        let t = t2(2);
        let w = WebWord::identity(2, Boundary::ups(1, 2), false);
        let q = WebExpr::word(Mode::QGeneric, w);
        assert!(matches!(t.tensor(&q), Err(Error::Mode(_))));
    }
}
