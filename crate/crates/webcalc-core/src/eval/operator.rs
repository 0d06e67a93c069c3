//! Exact sparse matrices between the basis-indexed spaces of two boundaries.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use super::basis::Basis;
use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::web::Boundary;

/// A linear map `source → target`, stored target-major with no explicit
/// zeros, so structural equality is equality of maps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOperator {
    n: u32,
    source: Boundary,
    target: Boundary,
    cols: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

/// The first entry where two operators differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Difference {
    pub row: usize,
    pub col: usize,
    pub left: Scalar,
    pub right: Scalar,
}

impl SparseOperator {
    pub fn zero(basis: &Basis, source: Boundary, target: Boundary) -> Self {
        let rows = vec![BTreeMap::new(); basis.dim(&target)];
        let cols = basis.dim(&source);
        SparseOperator {
            n: basis.n(),
            source,
            target,
            cols,
            rows,
        }
    }

    pub fn identity(basis: &Basis, b: Boundary) -> Self {
        let mut op = SparseOperator::zero(basis, b.clone(), b);
        for (i, row) in op.rows.iter_mut().enumerate() {
            row.insert(i, Scalar::one());
        }
        op
    }

    /// Builds an operator from raw rows (zero entries are dropped).
    pub fn from_rows(
        n: u32,
        source: Boundary,
        target: Boundary,
        cols: usize,
        mut rows: Vec<BTreeMap<usize, Scalar>>,
    ) -> Self {
        for r in &mut rows {
            r.retain(|_, v| !v.is_zero());
        }
        SparseOperator {
            n,
            source,
            target,
            cols,
            rows,
        }
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

    /// `(rows, cols)` = `(dim target, dim source)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols)
    }

    pub fn rows(&self) -> &[BTreeMap<usize, Scalar>] {
        &self.rows
    }

    pub fn get(&self, row: usize, col: usize) -> Scalar {
        self.rows[row]
            .get(&col)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Adds `v` to entry `(row, col)`.
    pub fn add_entry(&mut self, row: usize, col: usize, v: &Scalar) {
        if v.is_zero() {
            return;
        }
        let r = &mut self.rows[row];
        match r.get_mut(&col) {
            Some(x) => {
                *x = x.add(v);
                if x.is_zero() {
                    r.remove(&col);
                }
            }
            None => {
                r.insert(col, v.clone());
            }
        }
    }

    /// All nonzero entries as `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Boundary(format!(
                "operators {} -> {} and {} -> {} differ in boundary",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.target != self.source {
            return Err(Error::Boundary(format!(
                "cannot compose: target {} does not match source {}",
                other.target, self.source
            )));
        }
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (m, a) in row {
                    for (c, b) in &other.rows[*m] {
                        let p = a.mul(b);
                        match acc.get_mut(c) {
                            Some(x) => *x = x.add(&p),
                            None => {
                                acc.insert(*c, p);
                            }
                        }
                    }
                }
                acc.retain(|_, v| !v.is_zero());
                acc
            })
            .collect();
        Ok(SparseOperator {
            n: self.n,
            source: other.source.clone(),
            target: self.target.clone(),
            cols: other.cols,
            rows,
        })
    }

    /// Kronecker product: basis index `(i, j)` maps to `i · dim₂ + j`.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut rows = Vec::with_capacity(self.rows.len() * other.rows.len());
        for r1 in &self.rows {
            for r2 in &other.rows {
                let mut row = BTreeMap::new();
                for (c1, a) in r1 {
                    for (c2, b) in r2 {
                        let p = a.mul(b);
                        if !p.is_zero() {
                            row.insert(c1 * other.cols + c2, p);
                        }
                    }
                }
                rows.push(row);
            }
        }
        SparseOperator {
            n: self.n,
            source: self.source.concat(&other.source),
            target: self.target.concat(&other.target),
            cols: self.cols * other.cols,
            rows,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_entry(r, c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            let mut z = self.clone();
            z.rows.iter_mut().for_each(|r| r.clear());
            return z;
        }
        self.map(|v| v.mul(c))
    }

    /// Applies `f` entrywise (dropping entries that become zero).
    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(c, v)| (*c, f(v)))
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        SparseOperator {
            rows,
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Self {
        SparseOperator {
            n: self.n,
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self.cols,
            rows: Vec::new(),
        }
    }

    /// Reinterprets the operator between other boundaries of equal dimension.
    pub fn with_boundaries(&self, source: Boundary, target: Boundary) -> Self {
        SparseOperator {
            source,
            target,
            ..self.clone()
        }
    }

    /// The first differing entry in row-major order, or `None` if equal.
    pub fn first_difference(&self, other: &Self) -> Result<Option<Difference>> {
        self.same_shape(other)?;
        for (r, (a, b)) in self.rows.iter().zip(&other.rows).enumerate() {
            if a == b {
                continue;
            }
            let cols: alloc::collections::BTreeSet<usize> =
                a.keys().chain(b.keys()).copied().collect();
            for c in cols {
                let (x, y) = (a.get(&c), b.get(&c));
                if x != y {
                    return Ok(Some(Difference {
                        row: r,
                        col: c,
                        left: x.cloned().unwrap_or_else(Scalar::zero),
                        right: y.cloned().unwrap_or_else(Scalar::zero),
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Whether the operator is diagonal.
    pub fn is_diagonal(&self) -> bool {
        self.entries().all(|(r, c, _)| r == c)
    }

    /// The textual dump: one line `target<TAB>source<TAB>scalar` per nonzero
    /// entry, in lexicographic (row-major) order.
    pub fn dump(&self, basis: &Basis) -> String {
        let mut out = String::new();
        for (r, c, v) in self.entries() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}",
                basis.render(&self.target, r),
                basis.render(&self.source, c),
                v
            );
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::web::Strand;

    #[test]
    fn kronecker_and_compose() {
        let basis = Basis::new(2);
        let one = Boundary(vec![Strand::up(1)]);
        let id = SparseOperator::identity(&basis, one.clone());
        let mut swapish = SparseOperator::zero(&basis, one.clone(), one.clone());
        swapish.add_entry(0, 1, &Scalar::int(2));
        swapish.add_entry(1, 0, &Scalar::int(3));
        let t = id.tensor(&swapish);
        assert_eq!(t.shape(), (4, 4));
        assert_eq!(t.get(2, 3), Scalar::int(2));
        let sq = swapish.compose(&swapish).unwrap();
        assert_eq!(
            sq,
            SparseOperator::identity(&basis, one.clone()).scale(&Scalar::int(6))
        );
        assert!(sq.sub(&sq).unwrap().is_zero());
        assert_eq!(swapish.dump(&basis), "{1}\t{2}\t2\n{2}\t{1}\t3\n");
        let d = sq.first_difference(&id).unwrap().unwrap();
        assert_eq!((d.row, d.col), (0, 0));
    }
}
