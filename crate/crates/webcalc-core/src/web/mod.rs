//! Boundary objects, elementary web generators and composable web words.
//!
//! A [`WebWord`] is a stack of [`Slice`]s read bottom to top; each slice is a
//! horizontal juxtaposition of generators whose inputs concatenate exactly to
//! the slice's input boundary. Orientations of merges, splits, crossings and
//! wraps are not stored: they are read off the boundary the generator acts on.
//! Formal linear combinations of words with a common boundary are
//! [`WebExpr`]s; [`Term`] adds unexpanded composition and tensor products.

mod expr;
mod sketch;
mod term;

pub use expr::WebExpr;
pub use sketch::Sketch;
pub use term::{Term, TermView};

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Orientation of a boundary point: upward (`^`, the space `⋀^k V`) or
/// downward (`v`, its dual).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orient {
    Up,
    Down,
}

impl Orient {
    pub fn flip(self) -> Orient {
        match self {
            Orient::Up => Orient::Down,
            Orient::Down => Orient::Up,
        }
    }

    /// `+1` for upward, `-1` for downward.
    pub fn sign(self) -> i64 {
        match self {
            Orient::Up => 1,
            Orient::Down => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Orient::Up => '^',
            Orient::Down => 'v',
        }
    }
}

/// A labeled, oriented boundary point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strand {
    pub label: u32,
    pub orient: Orient,
}

impl Strand {
    pub const fn up(label: u32) -> Strand {
        Strand {
            label,
            orient: Orient::Up,
        }
    }

    pub const fn down(label: u32) -> Strand {
        Strand {
            label,
            orient: Orient::Down,
        }
    }

    pub fn dual(self) -> Strand {
        Strand {
            label: self.label,
            orient: self.orient.flip(),
        }
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, self.orient.symbol())
    }
}

/// An ordered sequence of strands; the empty sequence is the tensor unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Boundary(pub Vec<Strand>);

impl Boundary {
    pub fn empty() -> Boundary {
        Boundary(Vec::new())
    }

    /// `m` upward strands of label `k`.
    pub fn ups(k: u32, m: usize) -> Boundary {
        Boundary(vec![Strand::up(k); m])
    }

    pub fn from_labels(labels: &[u32]) -> Boundary {
        Boundary(labels.iter().map(|&k| Strand::up(k)).collect())
    }

    pub fn strands(&self) -> &[Strand] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Boundary) -> Boundary {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Boundary(v)
    }

    /// The boundary with the first `p` strands moved to the end (negative
    /// `p` moves the last strands to the front).
    pub fn rotated(&self, p: i64) -> Boundary {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let r = p.rem_euclid(v.len() as i64) as usize;
            v.rotate_left(r);
        }
        Boundary(v)
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

/// Over/under information of a crossing: `Pos` when the strand entering at
/// the bottom left passes over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// Elementary web generators.
///
/// Caps and cups name their orientation explicitly (`L`: the arc points
/// leftwards, `R`: rightwards). All other generators infer orientation from
/// their input strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    /// Identity on one strand.
    Id(Strand),
    /// `∅ → (k^, kv)`.
    CupL(u32),
    /// `(kv, k^) → ∅`.
    CapL(u32),
    /// `∅ → (kv, k^)`.
    CupR(u32),
    /// `(k^, kv) → ∅`.
    CapR(u32),
    /// `(k, l) → (k+l)`, both inputs with the same orientation.
    Merge(u32, u32),
    /// `(k+l) → (k, l)`.
    Split(u32, u32),
    /// `(k, l) → (l, k)`; labels are those of the two input strands.
    Cross(u32, u32, Sign),
    /// `p`-fold wrap of one strand around the annulus (annular only).
    Wrap(i64),
    /// `p`-fold global rotation of all strands (annular only); fills a slice alone.
    Rotate(i64),
}

impl Gen {
    /// Number of input strands (`None` for `Rotate`, which takes all).
    pub fn arity(&self) -> Option<usize> {
        Some(match self {
            Gen::Id(_) | Gen::Split(..) | Gen::Wrap(_) => 1,
            Gen::CupL(_) | Gen::CupR(_) => 0,
            Gen::CapL(_) | Gen::CapR(_) | Gen::Merge(..) | Gen::Cross(..) => 2,
            Gen::Rotate(_) => return None,
        })
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, Gen::Id(_))
    }

    pub fn is_annular(&self) -> bool {
        matches!(self, Gen::Wrap(_) | Gen::Rotate(_))
    }

    /// The output strands for the given input strands, validating labels
    /// and orientations.
    pub fn output(&self, input: &[Strand]) -> Result<Vec<Strand>> {
        let bad = |what: &str| {
            Err(Error::Boundary(
                format!("{} cannot act on {}", self, Boundary(input.to_vec())) + what,
            ))
        };
        if let Some(a) = self.arity() {
            if input.len() != a {
                return bad("");
            }
        }
        match *self {
            Gen::Id(s) => {
                if input[0] != s {
                    return bad("");
                }
                Ok(vec![s])
            }
            Gen::CupL(k) => Ok(vec![Strand::up(k), Strand::down(k)]),
            Gen::CupR(k) => Ok(vec![Strand::down(k), Strand::up(k)]),
            Gen::CapL(k) => {
                if input != [Strand::down(k), Strand::up(k)] {
                    return bad("");
                }
                Ok(vec![])
            }
            Gen::CapR(k) => {
                if input != [Strand::up(k), Strand::down(k)] {
                    return bad("");
                }
                Ok(vec![])
            }
            Gen::Merge(k, l) => {
                let (a, b) = (input[0], input[1]);
                if a.label != k || b.label != l || a.orient != b.orient {
                    return bad("");
                }
                Ok(vec![Strand {
                    label: k + l,
                    orient: a.orient,
                }])
            }
            Gen::Split(k, l) => {
                let a = input[0];
                if a.label != k + l {
                    return bad("");
                }
                Ok(vec![
                    Strand {
                        label: k,
                        orient: a.orient,
                    },
                    Strand {
                        label: l,
                        orient: a.orient,
                    },
                ])
            }
            Gen::Cross(k, l, _) => {
                let (a, b) = (input[0], input[1]);
                if a.label != k || b.label != l {
                    return bad("");
                }
                Ok(vec![b, a])
            }
            Gen::Wrap(_) => Ok(vec![input[0]]),
            Gen::Rotate(p) => Ok(Boundary(input.to_vec()).rotated(p).0),
        }
    }

    /// Flow-winding contribution of this generator acting on `input`.
    pub fn winding(&self, input: &[Strand]) -> i64 {
        match *self {
            Gen::Wrap(p) => p * input[0].label as i64 * input[0].orient.sign(),
            Gen::Rotate(p) => {
                let mut b = Boundary(input.to_vec());
                let mut total = 0;
                if b.is_empty() {
                    return 0;
                }
                for _ in 0..p.unsigned_abs() {
                    if p > 0 {
                        let s = b.0[0];
                        total += s.label as i64 * s.orient.sign();
                        b = b.rotated(1);
                    } else {
                        let s = b.0[b.len() - 1];
                        total -= s.label as i64 * s.orient.sign();
                        b = b.rotated(-1);
                    }
                }
                total
            }
            _ => 0,
        }
    }
}

impl fmt::Display for Gen {
    /// DSL spelling without position.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::Id(s) => write!(f, "id({s})"),
            Gen::CupL(k) => write!(f, "cupL({k})"),
            Gen::CapL(k) => write!(f, "capL({k})"),
            Gen::CupR(k) => write!(f, "cupR({k})"),
            Gen::CapR(k) => write!(f, "capR({k})"),
            Gen::Merge(k, l) => write!(f, "merge({k},{l})"),
            Gen::Split(k, l) => write!(f, "split({k},{l})"),
            Gen::Cross(k, l, s) => write!(f, "x({k},{l},{})", s.symbol()),
            Gen::Wrap(p) => write!(f, "wrap({p})"),
            Gen::Rotate(p) => write!(f, "rot({p})"),
        }
    }
}

/// One horizontal layer of a word.
pub type Slice = Vec<Gen>;

/// A composable word in elementary generators, read bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WebWord {
    n: u32,
    source: Boundary,
    target: Boundary,
    slices: Vec<Slice>,
    annular: bool,
}

/// Output of a slice acting on `input`, checking that the generators'
/// domains concatenate exactly to it.
pub fn slice_output(slice: &[Gen], input: &Boundary) -> Result<Boundary> {
    if let [Gen::Rotate(_)] = slice {
        return Ok(Boundary(slice[0].output(&input.0)?));
    }
    let mut pos = 0;
    let mut out = Vec::new();
    for g in slice {
        let a = g
            .arity()
            .ok_or_else(|| Error::Boundary("rot must fill a slice alone".into()))?;
        if pos + a > input.len() {
            return Err(Error::Boundary(format!("slice overruns its input {input}")));
        }
        out.extend(g.output(&input.0[pos..pos + a])?);
        pos += a;
    }
    if pos != input.len() {
        return Err(Error::Boundary(format!(
            "slice covers {pos} of the {} input strands",
            input.len()
        )));
    }
    Ok(Boundary(out))
}

impl WebWord {
    /// Validates slice chaining and computes the target.
    pub fn new(n: u32, source: Boundary, slices: Vec<Slice>, annular: bool) -> Result<WebWord> {
        for s in &source.0 {
            if s.label == 0 {
                return Err(Error::Invalid("strand labels must be positive".into()));
            }
        }
        let mut cur = source.clone();
        for (i, sl) in slices.iter().enumerate() {
            for g in sl {
                if g.is_annular() && !annular {
                    return Err(Error::Invalid(format!("{g} requires an annular word")));
                }
                let zero = match *g {
                    Gen::Wrap(p) | Gen::Rotate(p) => p == 0,
                    Gen::CupL(k) | Gen::CapL(k) | Gen::CupR(k) | Gen::CapR(k) => k == 0,
                    Gen::Merge(k, l) | Gen::Split(k, l) => k == 0 || l == 0,
                    _ => false,
                };
                if zero {
                    return Err(Error::Invalid(format!(
                        "{g}: labels and powers must be nonzero"
                    )));
                }
            }
            cur = slice_output(sl, &cur)
                .map_err(|e| Error::Boundary(format!("slice {}: {}", i + 1, e)))?;
        }
        Ok(WebWord {
            n,
            source,
            target: cur,
            slices,
            annular,
        })
    }

    pub fn identity(n: u32, b: Boundary, annular: bool) -> WebWord {
        WebWord {
            n,
            source: b.clone(),
            target: b,
            slices: Vec::new(),
            annular,
        }
    }

    /// A single generator at strand position `pos` (0-based), padded with
    /// identities on both sides of `source`.
    pub fn single(n: u32, source: &Boundary, pos: usize, g: Gen) -> Result<WebWord> {
        let annular = g.is_annular();
        if let Gen::Wrap(0) | Gen::Rotate(0) = g {
            return Ok(WebWord::identity(n, source.clone(), true));
        }
        if let Gen::Rotate(_) = g {
            return WebWord::new(n, source.clone(), vec![vec![g]], true);
        }
        let a = g.arity().expect("non-rotate generator");
        if pos + a > source.len() {
            return Err(Error::Boundary(format!(
                "{g} at position {} does not fit {source}",
                pos + 1
            )));
        }
        let mut sl: Slice = source.0[..pos].iter().map(|&s| Gen::Id(s)).collect();
        sl.push(g);
        sl.extend(source.0[pos + a..].iter().map(|&s| Gen::Id(s)));
        WebWord::new(n, source.clone(), vec![sl], annular)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn source(&self) -> &Boundary {
        &self.source
    }

    pub fn target(&self) -> &Boundary {
        &self.target
    }

    pub fn slices(&self) -> &[Slice] {
        &self.slices
    }

    pub fn is_annular(&self) -> bool {
        self.annular
    }

    /// Marks a planar word as annular (no-op if already annular).
    pub fn into_annular(mut self) -> WebWord {
        self.annular = true;
        self
    }

    /// `self ∘ other` (first `other`, then `self`).
    pub fn compose(&self, other: &WebWord) -> Result<WebWord> {
        if self.n != other.n {
            return Err(Error::Invalid("words for different N".into()));
        }
        if other.target != self.source {
            return Err(Error::Boundary(format!(
                "cannot compose: target {} does not match source {}",
                other.target, self.source
            )));
        }
        let mut slices = other.slices.clone();
        slices.extend(self.slices.iter().cloned());
        Ok(WebWord {
            n: self.n,
            source: other.source.clone(),
            target: self.target.clone(),
            slices,
            annular: self.annular || other.annular,
        })
    }

    /// Side-by-side juxtaposition, layers aligned from the bottom and padded
    /// with identities. Global rotations cannot be tensored.
    pub fn tensor(&self, other: &WebWord) -> Result<WebWord> {
        if self.n != other.n {
            return Err(Error::Invalid("words for different N".into()));
        }
        if self.has_rotate() || other.has_rotate() {
            return Err(Error::Invalid(
                "rot cannot appear in a tensor factor".into(),
            ));
        }
        let depth = self.slices.len().max(other.slices.len());
        let (mut cur_a, mut cur_b) = (self.source.clone(), other.source.clone());
        let mut slices = Vec::with_capacity(depth);
        for i in 0..depth {
            let mut sl: Slice = match self.slices.get(i) {
                Some(s) => s.clone(),
                None => cur_a.0.iter().map(|&s| Gen::Id(s)).collect(),
            };
            let sb: Slice = match other.slices.get(i) {
                Some(s) => s.clone(),
                None => cur_b.0.iter().map(|&s| Gen::Id(s)).collect(),
            };
            if let Some(s) = self.slices.get(i) {
                cur_a = slice_output(s, &cur_a)?;
            }
            if let Some(s) = other.slices.get(i) {
                cur_b = slice_output(s, &cur_b)?;
            }
            sl.extend(sb);
            slices.push(sl);
        }
        Ok(WebWord {
            n: self.n,
            source: self.source.concat(&other.source),
            target: self.target.concat(&other.target),
            slices,
            annular: self.annular || other.annular,
        })
    }

    /// Left–right reflection of a planar word. Crossings change sign.
    pub fn mirrored(&self) -> Result<WebWord> {
        self.planar_only("mirror")?;
        let source = Boundary(self.source.0.iter().rev().copied().collect());
        let slices = self
            .slices
            .iter()
            .map(|sl| {
                sl.iter()
                    .rev()
                    .map(|g| match *g {
                        Gen::CupL(k) => Gen::CupR(k),
                        Gen::CupR(k) => Gen::CupL(k),
                        Gen::CapL(k) => Gen::CapR(k),
                        Gen::CapR(k) => Gen::CapL(k),
                        Gen::Merge(k, l) => Gen::Merge(l, k),
                        Gen::Split(k, l) => Gen::Split(l, k),
                        Gen::Cross(k, l, s) => Gen::Cross(l, k, s.flip()),
                        other => other,
                    })
                    .collect()
            })
            .collect();
        WebWord::new(self.n, source, slices, false)
    }

    /// Reverses the orientation of every edge.
    pub fn reversed(&self) -> WebWord {
        let source = Boundary(self.source.0.iter().map(|s| s.dual()).collect());
        let slices = self
            .slices
            .iter()
            .map(|sl| {
                sl.iter()
                    .map(|g| match *g {
                        Gen::Id(s) => Gen::Id(s.dual()),
                        Gen::CupL(k) => Gen::CupR(k),
                        Gen::CupR(k) => Gen::CupL(k),
                        Gen::CapL(k) => Gen::CapR(k),
                        Gen::CapR(k) => Gen::CapL(k),
                        other => other,
                    })
                    .collect()
            })
            .collect();
        WebWord::new(self.n, source, slices, self.annular)
            .expect("orientation reversal preserves validity")
    }

    /// Top–bottom reflection of a planar word. Edge orientations follow the
    /// geometry, so upward strands become downward ones; crossings change sign.
    pub fn flipped(&self) -> Result<WebWord> {
        self.planar_only("flip")?;
        let source = Boundary(self.target.0.iter().map(|s| s.dual()).collect());
        let slices = self
            .slices
            .iter()
            .rev()
            .map(|sl| {
                sl.iter()
                    .map(|g| match *g {
                        Gen::Id(s) => Gen::Id(s.dual()),
                        Gen::CupL(k) => Gen::CapL(k),
                        Gen::CupR(k) => Gen::CapR(k),
                        Gen::CapL(k) => Gen::CupL(k),
                        Gen::CapR(k) => Gen::CupR(k),
                        Gen::Merge(k, l) => Gen::Split(k, l),
                        Gen::Split(k, l) => Gen::Merge(k, l),
                        Gen::Cross(k, l, s) => Gen::Cross(l, k, s.flip()),
                        other => other,
                    })
                    .collect()
            })
            .collect();
        WebWord::new(self.n, source, slices, false)
    }

    fn planar_only(&self, what: &str) -> Result<()> {
        if self.annular {
            return Err(Error::Invalid(format!(
                "{what} is only defined for planar words"
            )));
        }
        Ok(())
    }

    pub fn has_rotate(&self) -> bool {
        self.slices
            .iter()
            .flatten()
            .any(|g| matches!(g, Gen::Rotate(_)))
    }

    /// Iterates `(slice input boundary, slice)` from bottom to top.
    pub fn layers(&self) -> impl Iterator<Item = (Boundary, &Slice)> {
        let mut cur = self.source.clone();
        self.slices.iter().map(move |sl| {
            let input = cur.clone();
            cur = slice_output(sl, &cur).expect("validated word");
            (input, sl)
        })
    }

    /// The flow winding number: wraps count `±p·k` (negative on downward
    /// strands) and every unit of global rotation counts the strand it moves
    /// across the base segment.
    pub fn winding_grade(&self) -> i64 {
        let mut total = 0;
        for (input, sl) in self.layers() {
            if let [g @ Gen::Rotate(_)] = sl.as_slice() {
                total += g.winding(&input.0);
                continue;
            }
            let mut pos = 0;
            for g in sl {
                let a = g.arity().expect("non-rotate generator");
                total += g.winding(&input.0[pos..pos + a]);
                pos += a;
            }
        }
        total
    }
}

/// Incremental construction of a word, one generator per slice.
#[derive(Clone, Debug)]
pub struct WordBuilder {
    n: u32,
    source: Boundary,
    cur: Boundary,
    slices: Vec<Slice>,
    annular: bool,
}

impl WordBuilder {
    pub fn new(n: u32, source: Boundary) -> WordBuilder {
        WordBuilder {
            n,
            cur: source.clone(),
            source,
            slices: Vec::new(),
            annular: false,
        }
    }

    /// Appends a slice with `g` at strand position `pos` (0-based).
    pub fn at(mut self, pos: usize, g: Gen) -> Result<WordBuilder> {
        let w = WebWord::single(self.n, &self.cur, pos, g)?;
        self.annular |= w.annular;
        self.cur = w.target.clone();
        self.slices.extend(w.slices);
        Ok(self)
    }

    /// Crossing of the strands at `pos` and `pos + 1`.
    pub fn cross(self, pos: usize, sign: Sign) -> Result<WordBuilder> {
        let (k, l) = self.pair(pos)?;
        self.at(pos, Gen::Cross(k, l, sign))
    }

    /// Merge of the strands at `pos` and `pos + 1`.
    pub fn merge(self, pos: usize) -> Result<WordBuilder> {
        let (k, l) = self.pair(pos)?;
        self.at(pos, Gen::Merge(k, l))
    }

    /// Appends `g` at `pos` unless it is a zero-label merge or split, which
    /// stands for the identity.
    pub fn at_nonzero(self, pos: usize, g: Gen) -> Result<WordBuilder> {
        match g {
            Gen::Merge(0, _) | Gen::Merge(_, 0) | Gen::Split(0, _) | Gen::Split(_, 0) => Ok(self),
            _ => self.at(pos, g),
        }
    }

    fn pair(&self, pos: usize) -> Result<(u32, u32)> {
        match (self.cur.0.get(pos), self.cur.0.get(pos + 1)) {
            (Some(a), Some(b)) => Ok((a.label, b.label)),
            _ => Err(Error::Boundary(format!(
                "no strands at positions {} and {} of {}",
                pos + 1,
                pos + 2,
                self.cur
            ))),
        }
    }

    /// Appends a full slice.
    pub fn slice(mut self, sl: Slice) -> Result<WordBuilder> {
        self.annular |= sl.iter().any(Gen::is_annular);
        self.cur = slice_output(&sl, &self.cur)?;
        self.slices.push(sl);
        Ok(self)
    }

    pub fn current(&self) -> &Boundary {
        &self.cur
    }

    pub fn build(self) -> WebWord {
        WebWord::new(self.n, self.source, self.slices, self.annular)
            .expect("slices validated while building")
    }
}

/// The essential circle of label `k`: cup, one wrap, cap.
pub fn essential_circle(n: u32, k: u32) -> WebWord {
    WebWord::new(
        n,
        Boundary::empty(),
        vec![
            vec![Gen::CupL(k)],
            vec![Gen::Wrap(1), Gen::Id(Strand::down(k))],
            vec![Gen::CapR(k)],
        ],
        true,
    )
    .expect("well-formed essential circle")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chaining_and_grades() {
        let b = Boundary::ups(1, 2);
        let u = WebWord::new(
            2,
            b.clone(),
            vec![vec![Gen::Merge(1, 1)], vec![Gen::Split(1, 1)]],
            false,
        )
        .unwrap();
        assert_eq!(u.target(), &b);
        assert_eq!(u.winding_grade(), 0);
        let w = WebWord::single(2, &Boundary::ups(1, 1), 0, Gen::Wrap(1)).unwrap();
        assert_eq!(w.winding_grade(), 1);
        assert_eq!(essential_circle(3, 3).winding_grade(), 3);
        let bad = WebWord::new(2, b, vec![vec![Gen::Merge(1, 2)]], false);
        assert!(matches!(bad, Err(Error::Boundary(_))));
    }

    #[test]
    fn tensor_pads_and_rejects_rotation() {
        let one = Boundary::ups(1, 1);
        let a = WebWord::single(3, &one, 0, Gen::Wrap(-1)).unwrap();
        let b = WebWord::single(3, &one, 0, Gen::Wrap(1)).unwrap();
        let t = a.tensor(&b).unwrap();
        assert_eq!(t.slices().len(), 1);
        assert_eq!(t.winding_grade(), 0);
        let r = WebWord::single(3, &one, 0, Gen::Rotate(1)).unwrap();
        assert!(a.tensor(&r).is_err());
        let e = WebWord::identity(3, Boundary::empty(), true);
        assert_eq!(a.tensor(&e).unwrap(), a);
    }

    #[test]
    fn rotation_grade_counts_moved_strands() {
        let b = Boundary(vec![Strand::up(2), Strand::down(1)]);
        let r = WebWord::single(3, &b, 0, Gen::Rotate(1)).unwrap();
        assert_eq!(r.winding_grade(), 2);
        let r2 = WebWord::single(3, &b, 0, Gen::Rotate(2)).unwrap();
        assert_eq!(r2.winding_grade(), 1);
        let rm = WebWord::single(3, &b, 0, Gen::Rotate(-1)).unwrap();
        assert_eq!(rm.winding_grade(), 1);
    }
}
