//! Unexpanded morphism expressions.
//!
//! Expanding products of sums as [`WebExpr`](super::WebExpr)s multiplies
//! the number of summands, so larger constructions (projector recursions and
//! the like) are kept as trees whose leaves are expressions; the evaluator
//! multiplies operators instead of expanding words.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{Boundary, WebExpr, WebWord};
use crate::error::{Error, Result};
use crate::scalars::{Mode, Scalar};

#[derive(Clone, Debug)]
enum Node {
    Expr(WebExpr),
    /// Factors listed outermost first: `[f, g, h]` is `f ∘ g ∘ h`.
    Compose(Vec<Term>),
    Tensor(Vec<Term>),
    Sum(Vec<(Scalar, Term)>),
}

/// A morphism built from web expressions by composition, tensor products
/// and linear combinations.
#[derive(Clone, Debug)]
pub struct Term {
    node: Arc<Node>,
    n: u32,
    mode: Mode,
    source: Boundary,
    target: Boundary,
}

impl Term {
    pub fn expr(e: WebExpr) -> Term {
        Term {
            n: e.n(),
            mode: e.mode(),
            source: e.source().clone(),
            target: e.target().clone(),
            node: Arc::new(Node::Expr(e)),
        }
    }

    pub fn word(mode: Mode, w: WebWord) -> Term {
        Term::expr(WebExpr::word(mode, w))
    }

    pub fn identity(n: u32, mode: Mode, b: Boundary) -> Term {
        Term::word(mode, WebWord::identity(n, b, false))
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

    fn check(&self, other: &Term) -> Result<()> {
        if self.mode != other.mode {
            return Err(Error::Mode(format!(
                "cannot combine {} and {} morphisms",
                self.mode, other.mode
            )));
        }
        if self.n != other.n {
            return Err(Error::Invalid("morphisms for different N".into()));
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn then_after(&self, other: &Term) -> Result<Term> {
        self.check(other)?;
        if other.target != self.source {
            return Err(Error::Boundary(format!(
                "cannot compose: target {} does not match source {}",
                other.target, self.source
            )));
        }
        let mut factors = Vec::new();
        for t in [self, other] {
            match &*t.node {
                Node::Compose(fs) => factors.extend(fs.iter().cloned()),
                _ => factors.push(t.clone()),
            }
        }
        Ok(Term {
            n: self.n,
            mode: self.mode,
            source: other.source.clone(),
            target: self.target.clone(),
            node: Arc::new(Node::Compose(factors)),
        })
    }

    /// Composite of a chain listed outermost first: `[f, g, h]` gives `f ∘ g ∘ h`.
    pub fn chain(factors: &[Term]) -> Result<Term> {
        let (last, rest) = factors
            .split_last()
            .ok_or_else(|| Error::Invalid("empty composite".into()))?;
        let mut acc = last.clone();
        for f in rest.iter().rev() {
            acc = f.then_after(&acc)?;
        }
        Ok(acc)
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &Term) -> Result<Term> {
        self.check(other)?;
        let mut factors = Vec::new();
        for t in [self, other] {
            match &*t.node {
                Node::Tensor(fs) => factors.extend(fs.iter().cloned()),
                _ => factors.push(t.clone()),
            }
        }
        Ok(Term {
            n: self.n,
            mode: self.mode,
            source: self.source.concat(&other.source),
            target: self.target.concat(&other.target),
            node: Arc::new(Node::Tensor(factors)),
        })
    }

    /// `Σ c_i t_i`; all summands must share their boundaries.
    pub fn sum(terms: Vec<(Scalar, Term)>) -> Result<Term> {
        let (_, first) = terms
            .first()
            .ok_or_else(|| Error::Invalid("empty sum".into()))?;
        let first = first.clone();
        for (c, t) in &terms {
            first.check(t)?;
            if let Some(m) = c.mode() {
                if m != first.mode {
                    return Err(Error::Mode(format!(
                        "a {m} coefficient in a {} sum",
                        first.mode
                    )));
                }
            }
            if t.source != first.source || t.target != first.target {
                return Err(Error::Boundary(format!(
                    "summands {} -> {} and {} -> {} differ",
                    first.source, first.target, t.source, t.target
                )));
            }
        }
        Ok(Term {
            n: first.n,
            mode: first.mode,
            source: first.source.clone(),
            target: first.target.clone(),
            node: Arc::new(Node::Sum(terms)),
        })
    }

    pub fn scale(&self, c: Scalar) -> Term {
        Term::sum(vec![(c, self.clone())]).expect("single summand")
    }

    pub fn add(&self, other: &Term) -> Result<Term> {
        Term::sum(vec![
            (Scalar::one(), self.clone()),
            (Scalar::one(), other.clone()),
        ])
    }

    pub fn sub(&self, other: &Term) -> Result<Term> {
        Term::sum(vec![
            (Scalar::one(), self.clone()),
            (Scalar::int(-1), other.clone()),
        ])
    }

    /// Fully expands into a linear combination of words.
    pub fn expand(&self) -> Result<WebExpr> {
        match &*self.node {
            Node::Expr(e) => Ok(e.clone()),
            Node::Compose(fs) => {
                let mut it = fs.iter().rev();
                let mut acc = it.next().expect("nonempty composite").expand()?;
                for f in it {
                    acc = f.expand()?.compose(&acc)?;
                }
                Ok(acc)
            }
            Node::Tensor(fs) => {
                let mut it = fs.iter();
                let mut acc = it.next().expect("nonempty tensor").expand()?;
                for f in it {
                    acc = acc.tensor(&f.expand()?)?;
                }
                Ok(acc)
            }
            Node::Sum(ts) => {
                let mut acc = WebExpr::zero(
                    self.n,
                    self.mode,
                    self.source.clone(),
                    self.target.clone(),
                    false,
                );
                for (c, t) in ts {
                    acc = acc.add(&t.expand()?.scale(c)?)?;
                }
                Ok(acc)
            }
        }
    }

    /// The top-level structure of this term.
    pub fn view(&self) -> TermView<'_> {
        match &*self.node {
            Node::Expr(e) => TermView::Expr(e),
            Node::Compose(fs) => TermView::Compose(fs),
            Node::Tensor(fs) => TermView::Tensor(fs),
            Node::Sum(ts) => TermView::Sum(ts),
        }
    }
}

/// Borrowed view of a [`Term`]'s top-level node.
pub enum TermView<'a> {
    Expr(&'a WebExpr),
    /// Outermost factor first.
    Compose(&'a [Term]),
    Tensor(&'a [Term]),
    Sum(&'a [(Scalar, Term)]),
}
