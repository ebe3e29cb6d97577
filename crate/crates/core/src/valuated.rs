//! Lindström valuations, valuated matroid axioms, valuated circuits and
//! equivalence up to trivial shifts.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{column_basis, dieudonne_val, left_kernel, rank, solve_right};
use crate::matrix::Matrix;
use crate::matroid::{elements, format_subset, full_mask, k_subsets, Mask, Matroid, MatroidJson};
use crate::scalars::{DivisionRing, Rationals, Val};

/// A matroid with a valuation on its bases; non-bases have value `∞`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValuatedMatroid {
    matroid: Matroid,
    mu: HashMap<Mask, i64>,
}

impl ValuatedMatroid {
    /// From the finite values; the bases are the sets carrying one.
    pub fn from_values(n: usize, values: impl IntoIterator<Item = (Mask, i64)>) -> Result<Self> {
        let mu: HashMap<Mask, i64> = values.into_iter().collect();
        let matroid = Matroid::from_bases(n, mu.keys().copied())?;
        Ok(ValuatedMatroid { matroid, mu })
    }

    /// The constant valuation on the bases of `m`.
    pub fn constant(m: &Matroid, c: i64) -> Self {
        ValuatedMatroid {
            matroid: m.clone(),
            mu: m.bases().iter().map(|&b| (b, c)).collect(),
        }
    }

    /// `μ(B) = v(det A[B])` over the rows `B` of a column basis of `A`.
    pub fn lindstrom<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Self {
        let basis_cols = column_basis(d, a);
        let a = a.select_cols(&basis_cols);
        let r = a.cols();
        let values: Vec<(Mask, Val)> = k_subsets(a.rows(), r)
            .into_par_iter()
            .map(|b| (b, dieudonne_val(d, &a.select_rows(&elements(b)))))
            .collect();
        let finite = values.into_iter().filter_map(|(b, v)| v.finite().map(|v| (b, v)));
        ValuatedMatroid::from_values(a.rows(), finite).expect("a column basis has a basis of rows")
    }

    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    pub fn ground_size(&self) -> usize {
        self.matroid.ground_size()
    }

    pub fn rank(&self) -> usize {
        self.matroid.rank()
    }

    pub fn mu(&self, b: Mask) -> Val {
        self.mu.get(&b).map_or(Val::Infinity, |&v| Val::Finite(v))
    }

    /// Values on the bases, in lexicographic basis order.
    pub fn basis_values(&self) -> Vec<(Mask, i64)> {
        self.matroid.bases().iter().map(|&b| (b, self.mu[&b])).collect()
    }

    /// Values on all `r`-subsets, in lexicographic order.
    pub fn table(&self) -> Vec<(Mask, Val)> {
        k_subsets(self.ground_size(), self.rank())
            .into_iter()
            .map(|b| (b, self.mu(b)))
            .collect()
    }

    /// The valuation minus its minimum.
    pub fn normalized(&self) -> Self {
        let m = self.mu.values().copied().min().unwrap_or(0);
        ValuatedMatroid {
            matroid: self.matroid.clone(),
            mu: self.mu.iter().map(|(&b, &v)| (b, v - m)).collect(),
        }
    }

    /// `B ↦ μ(B) + Σ_{i∈B} α_i`.
    pub fn shifted(&self, alpha: &[i64]) -> Result<Self> {
        if alpha.len() != self.ground_size() {
            return Err(Error::Dimension("shift vector length differs from the ground set".into()));
        }
        Ok(ValuatedMatroid {
            matroid: self.matroid.clone(),
            mu: self
                .mu
                .iter()
                .map(|(&b, &v)| (b, v + elements(b).iter().map(|&i| alpha[i]).sum::<i64>()))
                .collect(),
        })
    }

    /// `μ(B₁) + μ(B₂) ≥ μ(B₁−i+j) + μ(B₂−j+i)` for some `j ∈ B₂∖B₁`, for all
    /// bases and all `i ∈ B₁∖B₂`.
    pub fn check_exchange(&self) -> bool {
        self.exchange_violation().is_none()
    }

    /// A triple `(B₁, B₂, i)` violating the exchange axiom.
    pub fn exchange_violation(&self) -> Option<(Mask, Mask, usize)> {
        let bases = self.matroid.bases();
        bases.par_iter().find_map_any(|&b1| {
            let v1 = self.mu[&b1];
            for &b2 in bases {
                let total = v1 + self.mu[&b2];
                for i in elements(b1 & !b2) {
                    let ok = elements(b2 & !b1).into_iter().any(|j| {
                        let x = self.mu((b1 & !(1 << i)) | 1 << j);
                        let y = self.mu((b2 & !(1 << j)) | 1 << i);
                        x + y <= Val::Finite(total)
                    });
                    if !ok {
                        return Some((b1, b2, i));
                    }
                }
            }
            None
        })
    }

    /// `w*(B) = w([n] ∖ B)`.
    pub fn dual(&self) -> Self {
        let full = full_mask(self.ground_size());
        ValuatedMatroid {
            matroid: self.matroid.dual(),
            mu: self.mu.iter().map(|(&b, &v)| (full & !b, v)).collect(),
        }
    }

    /// A shift `α` with `other = self + α`, if one exists.
    pub fn differ_by_trivial(&self, other: &Self) -> Result<Option<Vec<BigRational>>> {
        if self.matroid != other.matroid {
            return Err(Error::Precondition("valuations live on different matroids".into()));
        }
        let q = Rationals::new(2);
        let bases = self.matroid.bases();
        let n = self.ground_size();
        let a = Matrix::from_fn(bases.len(), n, |row, i| {
            BigRational::from_integer(BigInt::from((bases[row] >> i & 1) as i64))
        });
        let rhs: Vec<BigRational> = bases
            .iter()
            .map(|b| BigRational::from_integer(BigInt::from(other.mu[b] - self.mu[b])))
            .collect();
        Ok(solve_right(&q, &a, &rhs))
    }

    /// The constant `μ(S∪i) − μ(S∪j)` for parallel elements `i, j`.
    pub fn parallel_constant(&self, i: usize, j: usize) -> Result<i64> {
        if !self.matroid.are_parallel(i, j) {
            return Err(Error::Precondition(format!("elements {i} and {j} are not parallel")));
        }
        let mut value = None;
        for &b in self.matroid.bases() {
            if b >> i & 1 == 0 {
                continue;
            }
            let s = b & !(1 << i);
            let diff = self.mu[&b] - self.mu(s | 1 << j).finite().expect("parallel element completes the basis");
            match value {
                None => value = Some(diff),
                Some(v) if v != diff => {
                    return Err(Error::Invariant(format!(
                        "difference for {i}, {j} is not constant ({v} vs {diff})"
                    )))
                }
                _ => {}
            }
        }
        value.ok_or_else(|| Error::Precondition("no basis through the element".into()))
    }

    /// Is the minimum of the three pair sums on `S ∪ {a,b,c,d}` attained twice?
    pub fn three_term(&self, s: Mask, quad: [usize; 4]) -> Result<bool> {
        let q = crate::matroid::mask_of(&quad);
        if s.count_ones() as usize + 2 != self.rank() || q.count_ones() != 4 || s & q != 0 {
            return Err(Error::Precondition(
                "need |S| = r − 2 and four distinct elements outside S".into(),
            ));
        }
        let [a, b, c, d] = quad;
        let m = |x: usize, y: usize| self.mu(s | 1 << x | 1 << y);
        let mut sums = [m(a, b) + m(c, d), m(a, c) + m(b, d), m(a, d) + m(b, c)];
        sums.sort();
        Ok(sums[0] == sums[1])
    }

    /// Runs [`Self::three_term`] over every admissible choice; returns the
    /// number of checks or the first failure.
    pub fn three_term_all(&self) -> std::result::Result<usize, (Mask, [usize; 4])> {
        let (n, r) = (self.ground_size(), self.rank());
        if r < 2 {
            return Ok(0);
        }
        let sets = k_subsets(n, r - 2);
        let results: Vec<std::result::Result<usize, (Mask, [usize; 4])>> = sets
            .par_iter()
            .map(|&s| {
                let rest: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 0).collect();
                let mut count = 0;
                for quad in k_subsets(rest.len(), 4) {
                    let e = elements(quad);
                    let quad = [rest[e[0]], rest[e[1]], rest[e[2]], rest[e[3]]];
                    if !self.three_term(s, quad).expect("valid sizes") {
                        return Err((s, quad));
                    }
                    count += 1;
                }
                Ok(count)
            })
            .collect();
        results.into_iter().sum()
    }

    /// `Σ c_B·μ(B)` for a combination whose coefficients cancel at every element,
    /// so that the value does not change under trivial shifts.
    pub fn linear_functional(&self, coeffs: &[(Mask, i64)]) -> Result<i64> {
        let n = self.ground_size();
        for i in 0..n {
            let total: i64 = coeffs.iter().filter(|(b, _)| b >> i & 1 == 1).map(|(_, c)| c).sum();
            if total != 0 {
                return Err(Error::Precondition(format!(
                    "coefficients at element {i} sum to {total}, not 0"
                )));
            }
        }
        let mut acc = 0;
        for &(b, c) in coeffs {
            let v = self.mu(b).finite().ok_or_else(|| {
                Error::Precondition(format!("{} is not a basis", format_subset(b, 0)))
            })?;
            acc += c * v;
        }
        Ok(acc)
    }

    pub fn to_json(&self, base: usize) -> ValuationJson {
        let key = |b: Mask| {
            elements(b)
                .iter()
                .map(|i| (i + base).to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let norm = self.normalized();
        ValuationJson {
            matroid: self.matroid.to_json(base),
            mu: self.table().into_iter().map(|(b, v)| (key(b), v)).collect(),
            normalized: norm.table().into_iter().map(|(b, v)| (key(b), v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValuationJson {
    pub matroid: MatroidJson,
    pub mu: BTreeMap<String, Val>,
    pub normalized: BTreeMap<String, Val>,
}

/// A circuit of the row matroid with the valuations of its dependency
/// coefficients; `∞` off the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuatedCircuit {
    pub support: Mask,
    pub gamma: Vec<Val>,
}

/// For each circuit `C`, the left dependency `c` of the rows `C` and its
/// coordinate valuations.
pub fn valuated_circuits<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Vec<ValuatedCircuit> {
    let m = Matroid::from_matrix(d, a);
    m.circuits()
        .into_par_iter()
        .map(|c| {
            let rows = elements(c);
            let k = left_kernel(d, &a.select_rows(&rows));
            debug_assert_eq!(k.rows(), 1);
            let mut gamma = vec![Val::Infinity; a.rows()];
            for (pos, &i) in rows.iter().enumerate() {
                gamma[i] = d.valuation(k.get(0, pos));
            }
            ValuatedCircuit { support: c, gamma }
        })
        .collect()
}

/// Checks `μ(T−i) + γ_j = μ(T−j) + γ_i` for every circuit `C`, every
/// completion `T = S ∪ C` of size `r+1` and rank `r`, and all `i, j ∈ C`.
/// Returns the number of identities checked or the first failure.
pub fn check_circuit_identity(
    vm: &ValuatedMatroid,
    circuits: &[ValuatedCircuit],
) -> std::result::Result<usize, (Mask, usize, usize)> {
    let (n, r) = (vm.ground_size(), vm.rank());
    let mut count = 0;
    for circ in circuits {
        let c = circ.support;
        let size = c.count_ones() as usize;
        let outside: Vec<usize> = (0..n).filter(|i| c >> i & 1 == 0).collect();
        for pick in k_subsets(outside.len(), r + 1 - size) {
            let s = elements(pick).iter().fold(0, |m, &p| m | 1 << outside[p]);
            let t = s | c;
            let first = elements(c)[0];
            if !vm.mu(t & !(1 << first)).is_finite() {
                continue;
            }
            for i in elements(c) {
                for j in elements(c) {
                    let lhs = vm.mu(t & !(1 << i)) + circ.gamma[j];
                    let rhs = vm.mu(t & !(1 << j)) + circ.gamma[i];
                    if lhs != rhs {
                        return Err((t, i, j));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// The rank of a matrix, re-exported for callers building realizations.
pub fn realization_rank<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> usize {
    rank(d, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::mask_of;

    fn u24(values: [i64; 6]) -> ValuatedMatroid {
        let subsets = k_subsets(4, 2);
        ValuatedMatroid::from_values(4, subsets.into_iter().zip(values)).unwrap()
    }

    #[test]
    fn exchange_examples() {
        assert!(u24([0, 0, 1, 0, 0, 0]).check_exchange());
        assert!(u24([0; 6]).check_exchange());
        // a single raised basis still has its minimum attained twice
        assert!(u24([0, 0, 0, 0, 0, 1]).check_exchange());
        assert!(!u24([0, 1, 1, 1, 1, 0]).check_exchange());
    }

    #[test]
    fn duality_and_shifts() {
        let vm = u24([0, 0, 1, 0, 0, 0]);
        let values: Vec<i64> = vm.dual().basis_values().iter().map(|x| x.1).collect();
        assert_eq!(values, vec![0, 0, 0, 1, 0, 0]);
        assert_eq!(vm.dual().dual(), vm);
        let shifted = vm.shifted(&[1, 0, -1, 0]).unwrap();
        let alpha = vm.differ_by_trivial(&shifted).unwrap().unwrap();
        assert_eq!(vm.differ_by_trivial(&u24([0, 1, 1, 0, 1, 1]).dual()).unwrap(), None);
        let alpha: Vec<i64> = alpha.iter().map(|a| a.to_integer().try_into().unwrap()).collect();
        assert_eq!(alpha, vec![1, 0, -1, 0]);
    }

    #[test]
    fn three_terms() {
        let vm = u24([0, 0, 1, 0, 0, 0]);
        assert!(vm.three_term(0, [0, 1, 2, 3]).unwrap());
        assert_eq!(vm.three_term_all(), Ok(1));
        assert!(vm.three_term(1, [0, 1, 2, 3]).is_err());
        let functional = [
            (mask_of(&[0, 3]), 1),
            (mask_of(&[1, 2]), 1),
            (mask_of(&[0, 2]), -1),
            (mask_of(&[1, 3]), -1),
        ];
        assert_eq!(vm.linear_functional(&functional).unwrap(), 1);
        assert!(vm.linear_functional(&[(mask_of(&[0, 1]), 1)]).is_err());
    }
}
