//! Matroids on `{0, …, n−1}` given by their bases, stored as bitmasks.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::EchelonRows;
use crate::matrix::Matrix;
use crate::scalars::DivisionRing;

pub type Mask = u64;

pub fn mask_of(elems: &[usize]) -> Mask {
    elems.iter().fold(0, |m, &i| m | 1 << i)
}

pub fn elements(mask: Mask) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// All `k`-subsets of `{0, …, n−1}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Mask> {
    fn rec(start: usize, n: usize, k: usize, acc: Mask, out: &mut Vec<Mask>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n.saturating_sub(k) {
            rec(i + 1, n, k - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, 0, &mut out);
    }
    out
}

/// Lexicographic comparison of subsets as sorted element lists.
pub fn lex_key(mask: Mask) -> Vec<usize> {
    elements(mask)
}

/// Render a subset with the given index base, e.g. `{1,2}`.
pub fn format_subset(mask: Mask, base: usize) -> String {
    let items: Vec<String> = elements(mask).iter().map(|i| (i + base).to_string()).collect();
    format!("{{{}}}", items.join(","))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    r: usize,
    bases: Vec<Mask>,
    lookup: HashSet<Mask>,
}

impl Matroid {
    pub fn from_bases(n: usize, bases: impl IntoIterator<Item = Mask>) -> Result<Self> {
        if n > 64 {
            return Err(Error::Precondition("ground sets are limited to 64 elements".into()));
        }
        let mut bases: Vec<Mask> = bases.into_iter().collect();
        bases.sort_by_key(|&b| lex_key(b));
        bases.dedup();
        let Some(&first) = bases.first() else {
            return Err(Error::Invariant("a matroid needs at least one basis".into()));
        };
        let r = first.count_ones() as usize;
        if bases.iter().any(|b| b.count_ones() as usize != r || (n < 64 && b >> n != 0)) {
            return Err(Error::Invariant("bases must be r-subsets of the ground set".into()));
        }
        let lookup = bases.iter().copied().collect();
        Ok(Matroid { n, r, bases, lookup })
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Self {
        Matroid::from_bases(n, k_subsets(n, r)).expect("r ≤ n")
    }

    /// The matroid on the rows of `a`: a set is independent when its rows
    /// are left linearly independent (equivalently, the row submatrix has
    /// full rank).
    pub fn from_matrix<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Self {
        let n = a.rows();
        let mut bases = Vec::new();
        let mut best = 0;
        // depth-first search over independent sets, extending in increasing order
        fn dfs<D: DivisionRing>(
            d: &D,
            a: &Matrix<D::Elem>,
            start: usize,
            mask: Mask,
            ech: &EchelonRows<D>,
            best: &mut usize,
            out: &mut Vec<Mask>,
        ) {
            let size = mask.count_ones() as usize;
            if size > *best {
                *best = size;
                out.clear();
            }
            if size == *best {
                out.push(mask);
            }
            // not enough remaining rows to reach the best size
            for i in start..a.rows() {
                if size + (a.rows() - i) < *best {
                    break;
                }
                let mut next = ech.clone();
                if next.push(d, a.row(i)) {
                    dfs(d, a, i + 1, mask | 1 << i, &next, best, out);
                }
            }
        }
        dfs(d, a, 0, 0, &EchelonRows::new(), &mut best, &mut bases);
        bases.retain(|b| b.count_ones() as usize == best);
        Matroid::from_bases(n, bases).expect("nonempty")
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.r
    }

    /// Bases in lexicographic order.
    pub fn bases(&self) -> &[Mask] {
        &self.bases
    }

    pub fn is_basis(&self, b: Mask) -> bool {
        self.lookup.contains(&b)
    }

    fn check_range(&self, s: Mask) -> Result<()> {
        if self.n < 64 && s >> self.n != 0 {
            return Err(Error::Precondition(format!(
                "subset {} leaves the ground set of size {}",
                format_subset(s, 0),
                self.n
            )));
        }
        Ok(())
    }

    pub fn is_independent(&self, s: Mask) -> Result<bool> {
        self.check_range(s)?;
        Ok(self.bases.iter().any(|b| b & s == s))
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, s: Mask) -> usize {
        self.bases.iter().map(|b| (b & s).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn is_loop(&self, i: usize) -> bool {
        self.bases.iter().all(|b| b >> i & 1 == 0)
    }

    pub fn are_parallel(&self, i: usize, j: usize) -> bool {
        i != j && !self.is_loop(i) && !self.is_loop(j) && self.rank_of(1 << i | 1 << j) == 1
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> Vec<Mask> {
        let mut out = Vec::new();
        for k in 1..=(self.r + 1).min(self.n) {
            for s in k_subsets(self.n, k) {
                if self.rank_of(s) == k - 1 && elements(s).iter().all(|&i| self.rank_of(s & !(1 << i)) == k - 1) {
                    out.push(s);
                }
            }
        }
        out
    }

    pub fn dual(&self) -> Matroid {
        let full = full_mask(self.n);
        Matroid::from_bases(self.n, self.bases.iter().map(|b| full & !b)).expect("nonempty")
    }

    /// `M ∖ S`, relabelled onto `{0, …, n−|S|−1}` in order.
    pub fn delete(&self, s: Mask) -> Result<Matroid> {
        self.check_range(s)?;
        let keep = full_mask(self.n) & !s;
        let best = self.rank_of(keep);
        let bases = self
            .bases
            .iter()
            .map(|b| b & keep)
            .filter(|b| b.count_ones() as usize == best)
            .map(|b| compress(b, keep));
        Matroid::from_bases(self.n - s.count_ones() as usize, bases)
    }

    /// `M / S`, relabelled onto `{0, …, n−|S|−1}` in order.
    pub fn contract(&self, s: Mask) -> Result<Matroid> {
        self.check_range(s)?;
        let keep = full_mask(self.n) & !s;
        let rs = self.rank_of(s);
        let bases = self
            .bases
            .iter()
            .filter(|b| (*b & s).count_ones() as usize == rs)
            .map(|b| compress(b & keep, keep));
        Matroid::from_bases(self.n - s.count_ones() as usize, bases)
    }

    /// For all bases `B₁, B₂` and `i ∈ B₁∖B₂` some `j ∈ B₂∖B₁` makes
    /// `B₁ − i + j` a basis.
    pub fn check_basis_exchange(&self) -> bool {
        self.bases.par_iter().all(|&b1| {
            self.bases.iter().all(|&b2| {
                elements(b1 & !b2).into_iter().all(|i| {
                    elements(b2 & !b1)
                        .into_iter()
                        .any(|j| self.is_basis((b1 & !(1 << i)) | 1 << j))
                })
            })
        })
    }

    pub fn to_json(&self, base: usize) -> MatroidJson {
        MatroidJson {
            n: self.n,
            r: self.r,
            bases: self
                .bases
                .iter()
                .map(|&b| elements(b).iter().map(|i| i + base).collect())
                .collect(),
        }
    }

    pub fn from_json(doc: &MatroidJson, base: usize) -> Result<Matroid> {
        let mut bases = Vec::new();
        for b in &doc.bases {
            let mut m = 0;
            for &i in b {
                if i < base || i - base >= doc.n {
                    return Err(Error::Schema(format!("basis element {i} out of range")));
                }
                m |= 1 << (i - base);
            }
            bases.push(m);
        }
        let m = Matroid::from_bases(doc.n, bases)?;
        if m.r != doc.r {
            return Err(Error::Schema(format!("declared rank {} but bases have size {}", doc.r, m.r)));
        }
        Ok(m)
    }
}

pub fn full_mask(n: usize) -> Mask {
    if n == 64 {
        u64::MAX
    } else {
        (1 << n) - 1
    }
}

/// Relabel the elements of `b ⊆ keep` by their position within `keep`.
fn compress(b: Mask, keep: Mask) -> Mask {
    elements(keep)
        .iter()
        .enumerate()
        .filter(|(_, &e)| b >> e & 1 == 1)
        .fold(0, |m, (pos, _)| m | 1 << pos)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n: usize,
    pub r: usize,
    pub bases: Vec<Vec<usize>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_are_lexicographic() {
        let s = k_subsets(4, 2);
        let lists: Vec<Vec<usize>> = s.iter().map(|&m| elements(m)).collect();
        assert_eq!(lists, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(k_subsets(3, 0), vec![0]);
        assert!(k_subsets(2, 3).is_empty());
    }

    #[test]
    fn minors_of_u24() {
        let u = Matroid::uniform(2, 4);
        assert_eq!(u.dual(), u);
        assert_eq!(u.delete(1).unwrap(), Matroid::uniform(2, 3));
        assert_eq!(u.contract(1).unwrap(), Matroid::uniform(1, 3));
        assert!(u.check_basis_exchange());
        assert_eq!(u.circuits().len(), 4);
    }

    #[test]
    fn exchange_failure() {
        let m = Matroid::from_bases(4, [mask_of(&[0, 1]), mask_of(&[2, 3])]).unwrap();
        assert!(!m.check_basis_exchange());
    }

    #[test]
    fn independence_queries() {
        let u = Matroid::uniform(2, 4);
        assert!(u.is_independent(mask_of(&[0, 3])).unwrap());
        assert!(!u.is_independent(mask_of(&[0, 1, 2])).unwrap());
        assert!(u.is_independent(1 << 7).is_err());
        let json = u.to_json(1);
        assert_eq!(json.bases[0], vec![1, 2]);
        assert_eq!(Matroid::from_json(&json, 1).unwrap(), u);
    }
}
