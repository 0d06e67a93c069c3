//! Basis indexing for tensor products of exterior powers and their duals.
//!
//! A strand of label `k` indexes the basis `{v_S : S ⊂ {1..N}, |S| = k}`
//! (or the dual basis on downward strands). Subsets are bitmasks (bit
//! `i − 1` for element `i`) listed in lexicographic order of their sorted
//! element lists. A boundary's basis is the mixed-radix product with the
//! first strand most significant, so index order is lexicographic in the
//! tuple of subsets. Labels above `N` give zero-dimensional spaces and the
//! label 0 (used internally) a one-dimensional one.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::web::{Boundary, Orient, Strand};

/// `C(n, k)` (zero when `k > n`).
pub fn binom(n: u32, k: u32) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as usize;
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n as usize - i) / (i + 1);
    }
    r
}

/// All `k`-subsets of `{1..n}` as bitmasks, in lexicographic order.
pub fn subsets(n: u32, k: u32) -> Vec<u32> {
    fn rec(start: u32, n: u32, k: u32, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n {
            if n - i + 1 < k {
                break;
            }
            rec(i + 1, n, k - 1, acc | (1 << (i - 1)), out);
        }
    }
    let mut out = Vec::with_capacity(binom(n, k));
    if k <= n {
        rec(1, n, k, 0, &mut out);
    }
    out
}

/// Sorted elements of a subset mask.
pub fn elements(mask: u32) -> Vec<u32> {
    (1..=32).filter(|i| mask & (1 << (i - 1)) != 0).collect()
}

/// Lookup tables for one value of `N`.
#[derive(Clone, Debug)]
pub struct Basis {
    n: u32,
    by_label: Vec<Vec<u32>>,
    rank: Vec<usize>,
}

impl Basis {
    pub fn new(n: u32) -> Basis {
        assert!(n <= 16, "N too large for dense subset tables");
        let by_label: Vec<Vec<u32>> = (0..=n).map(|k| subsets(n, k)).collect();
        let mut rank = vec![0; 1 << n];
        for list in &by_label {
            for (i, &m) in list.iter().enumerate() {
                rank[m as usize] = i;
            }
        }
        Basis { n, by_label, rank }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Subsets of size `k` (empty for `k > N`).
    pub fn subsets(&self, k: u32) -> &[u32] {
        self.by_label
            .get(k as usize)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Position of a subset within its size class.
    pub fn rank(&self, mask: u32) -> usize {
        self.rank[mask as usize]
    }

    pub fn strand_dim(&self, s: &Strand) -> usize {
        self.subsets(s.label).len()
    }

    pub fn dims(&self, b: &Boundary) -> Vec<usize> {
        b.strands().iter().map(|s| self.strand_dim(s)).collect()
    }

    pub fn dim(&self, b: &Boundary) -> usize {
        self.dims(b).iter().product()
    }

    /// The subsets making up basis vector `idx` of `b`.
    pub fn decode(&self, b: &Boundary, mut idx: usize) -> Vec<u32> {
        let dims = self.dims(b);
        let mut out = vec![0; dims.len()];
        for i in (0..dims.len()).rev() {
            let d = dims[i];
            out[i] = self.subsets(b.strands()[i].label)[idx % d];
            idx /= d;
        }
        out
    }

    /// Inverse of [`Basis::decode`].
    pub fn encode(&self, b: &Boundary, masks: &[u32]) -> usize {
        let mut idx = 0;
        for (s, &m) in b.strands().iter().zip(masks) {
            idx = idx * self.strand_dim(s) + self.rank(m);
        }
        idx
    }

    /// Content vector: occurrences of each colour, duals counted negatively.
    pub fn weight(&self, b: &Boundary, idx: usize) -> Vec<i64> {
        let mut w = vec![0i64; self.n as usize];
        for (s, m) in b.strands().iter().zip(self.decode(b, idx)) {
            for e in elements(m) {
                w[e as usize - 1] += s.orient.sign();
            }
        }
        w
    }

    /// Renders basis vector `idx` of `b` as e.g. `{1,3}|{2}*` (star marks a
    /// dual basis vector); the unit object's single basis vector is `()`.
    pub fn render(&self, b: &Boundary, idx: usize) -> String {
        if b.is_empty() {
            return String::from("()");
        }
        let mut out = String::new();
        for (i, (s, m)) in b.strands().iter().zip(self.decode(b, idx)).enumerate() {
            if i > 0 {
                out.push('|');
            }
            out.push('{');
            for (j, e) in elements(m).iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{e}");
            }
            out.push('}');
            if s.orient == Orient::Down {
                out.push('*');
            }
        }
        out
    }
}

/// `ε_{S,T}`: inversions in the concatenation of the sorted lists of `S`, `T`.
pub fn eps_pair(s: u32, t: u32) -> i64 {
    elements(s)
        .iter()
        .map(|&a| elements(t).iter().filter(|&&b| a > b).count() as i64)
        .sum()
}

/// `ε_S = Σ_{i ∈ S} (N + 1 − 2i)`.
pub fn eps_single(n: u32, s: u32) -> i64 {
    elements(s)
        .iter()
        .map(|&i| n as i64 + 1 - 2 * i as i64)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_order_and_rank() {
        let b = Basis::new(3);
        let two: Vec<Vec<u32>> = b.subsets(2).iter().map(|&m| elements(m)).collect();
        assert_eq!(two, vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        for k in 0..=3 {
            for (i, &m) in b.subsets(k).iter().enumerate() {
                assert_eq!(b.rank(m), i);
            }
        }
        assert!(b.subsets(4).is_empty());
        assert_eq!(binom(5, 2), 10);
    }

    #[test]
    fn encode_decode_render() {
        let b = Basis::new(3);
        let bd = Boundary(vec![Strand::up(2), Strand::down(1)]);
        assert_eq!(b.dim(&bd), 9);
        for i in 0..9 {
            assert_eq!(b.encode(&bd, &b.decode(&bd, i)), i);
        }
        assert_eq!(b.render(&bd, 5), "{1,3}|{3}*");
        assert_eq!(b.weight(&bd, 5), vec![1, 0, 0]);
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(eps_pair(0b10, 0b01), 1);
        assert_eq!(eps_pair(0b01, 0b10), 0);
        assert_eq!(eps_single(3, 0b001), 2);
        assert_eq!(eps_single(3, 0b111), 0);
    }
}
