//! Word construction that tolerates 0-labeled edges.
//!
//! Ladder-shaped webs are naturally described with rungs and rails whose
//! labels may reach 0; a 0-labeled edge is simply absent. [`Sketch`] keeps
//! such phantom strands in its bookkeeping, drops the generators that touch
//! them, and places the remaining generators at the right positions.

use alloc::format;
use alloc::vec::Vec;

use super::{Boundary, Gen, Orient, Sign, Strand, WebWord, WordBuilder};
use crate::error::{Error, Result};

/// A word under construction; strand indices count phantom strands.
#[derive(Clone, Debug)]
pub struct Sketch {
    builder: WordBuilder,
    strands: Vec<Strand>,
}

impl Sketch {
    pub fn new(n: u32, source: Boundary) -> Sketch {
        let strands = source.0.clone();
        Sketch {
            builder: WordBuilder::new(n, source),
            strands,
        }
    }

    /// Continues from a word builder; all current strands are real.
    pub fn from_builder(builder: WordBuilder) -> Sketch {
        let strands = builder.current().0.clone();
        Sketch { builder, strands }
    }

    /// The underlying builder (phantom strands are dropped).
    pub fn into_builder(self) -> WordBuilder {
        self.builder
    }

    /// Index among real (nonzero) strands of sketch strand `i`.
    fn real(&self, i: usize) -> usize {
        self.strands[..i].iter().filter(|s| s.label > 0).count()
    }

    /// Places `g` at sketch strand `i` in the underlying word.
    fn emit(&mut self, i: usize, g: Gen) -> Result<()> {
        let pos = self.real(i);
        let b = core::mem::replace(&mut self.builder, WordBuilder::new(0, Boundary::empty()));
        self.builder = b.at(pos, g)?;
        Ok(())
    }

    fn get(&self, i: usize) -> Result<Strand> {
        self.strands
            .get(i)
            .copied()
            .ok_or_else(|| Error::Boundary(format!("no strand at position {}", i + 1)))
    }

    /// Splits strand `i` into `(x, y)`.
    pub fn split(mut self, i: usize, x: u32, y: u32) -> Result<Sketch> {
        let s = self.get(i)?;
        if s.label != x + y {
            return Err(Error::Boundary(format!(
                "cannot split a {}-labeled strand into ({x},{y})",
                s.label
            )));
        }
        if x > 0 && y > 0 {
            self.emit(i, Gen::Split(x, y))?;
        }
        self.strands.splice(
            i..=i,
            [
                Strand {
                    label: x,
                    orient: s.orient,
                },
                Strand {
                    label: y,
                    orient: s.orient,
                },
            ],
        );
        Ok(self)
    }

    /// Merges strands `i` and `i + 1`.
    pub fn merge(mut self, i: usize) -> Result<Sketch> {
        let (a, b) = (self.get(i)?, self.get(i + 1)?);
        if a.label > 0 && b.label > 0 {
            self.emit(i, Gen::Merge(a.label, b.label))?;
        }
        let orient = if a.label > 0 { a.orient } else { b.orient };
        self.strands.splice(
            i..=i + 1,
            [Strand {
                label: a.label + b.label,
                orient,
            }],
        );
        Ok(self)
    }

    /// Inserts a cup `(k^, kv)` (`left = true`) or `(kv, k^)` before strand `i`.
    pub fn cup(mut self, i: usize, k: u32, left: bool) -> Result<Sketch> {
        if k > 0 {
            self.emit(i, if left { Gen::CupL(k) } else { Gen::CupR(k) })?;
        }
        let pair = if left {
            [Strand::up(k), Strand::down(k)]
        } else {
            [Strand::down(k), Strand::up(k)]
        };
        self.strands.splice(i..i, pair);
        Ok(self)
    }

    /// Caps off strands `i` and `i + 1` (the cap type follows their orientations).
    pub fn cap(mut self, i: usize) -> Result<Sketch> {
        let (a, b) = (self.get(i)?, self.get(i + 1)?);
        if a.label != b.label || a.orient == b.orient {
            return Err(Error::Boundary(format!("cannot cap {a} and {b}")));
        }
        if a.label > 0 {
            let g = if a.orient == Orient::Up {
                Gen::CapR(a.label)
            } else {
                Gen::CapL(a.label)
            };
            self.emit(i, g)?;
        }
        self.strands.drain(i..=i + 1);
        Ok(self)
    }

    /// Crosses strands `i` and `i + 1`.
    pub fn cross(mut self, i: usize, sign: Sign) -> Result<Sketch> {
        let (a, b) = (self.get(i)?, self.get(i + 1)?);
        if a.label > 0 && b.label > 0 {
            self.emit(i, Gen::Cross(a.label, b.label, sign))?;
        }
        self.strands.swap(i, i + 1);
        Ok(self)
    }

    /// Wraps strand `i` around the annulus `p` times.
    pub fn wrap(mut self, i: usize, p: i64) -> Result<Sketch> {
        if self.get(i)?.label > 0 && p != 0 {
            self.emit(i, Gen::Wrap(p))?;
        }
        Ok(self)
    }

    /// The current strands, phantom ones included.
    pub fn strands(&self) -> &[Strand] {
        &self.strands
    }

    pub fn build(self) -> WebWord {
        self.builder.build()
    }
}
