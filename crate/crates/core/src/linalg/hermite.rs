//! Echelon forms over a Euclidean domain via unimodular column operations.

use crate::error::Result;
use crate::matrix::{identity, Matrix};
use crate::scalars::euclid::exact_div_right;
use crate::scalars::{EuclideanRing, Opposite};

/// `A·U = [H | 0]` with `U` invertible over the ring and `H` in column
/// echelon form: the first nonzero row of column `j` is `pivots[j]`, the
/// pivot rows increase, pivots are normalized and entries left of a pivot
/// are reduced modulo it.
#[derive(Debug, Clone)]
pub struct ColumnHermite<T> {
    pub h: Matrix<T>,
    pub u: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Clone> ColumnHermite<T> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns of `U` spanning the right kernel of `A` over the ring.
    pub fn kernel(&self) -> Matrix<T> {
        let r = self.rank();
        self.u.select_cols(&(r..self.u.cols()).collect::<Vec<_>>())
    }
}

/// `col_j ← col_j − col_k·q` on both the working matrix and the transform.
fn col_axpy<R: EuclideanRing>(r: &R, m: &mut Matrix<R::Elem>, j: usize, k: usize, q: &R::Elem) {
    for i in 0..m.rows() {
        let x = m.get(i, k);
        if r.is_zero(x) {
            continue;
        }
        let v = r.sub(m.get(i, j), &r.mul(x, q));
        m.set(i, j, v);
    }
}

fn col_scale<R: EuclideanRing>(r: &R, m: &mut Matrix<R::Elem>, j: usize, u: &R::Elem) {
    for i in 0..m.rows() {
        let v = r.mul(m.get(i, j), u);
        m.set(i, j, v);
    }
}

pub fn column_hermite<R: EuclideanRing>(r: &R, a: &Matrix<R::Elem>) -> Result<ColumnHermite<R::Elem>> {
    let d = a.cols();
    let mut h = a.clone();
    let mut u = identity(r, d);
    let mut pivots = Vec::new();
    let mut c = 0;
    for i in 0..h.rows() {
        if c == d {
            break;
        }
        loop {
            // smallest nonzero entry of row i among columns c..d
            let best = (c..d)
                .filter(|&j| !r.is_zero(h.get(i, j)))
                .min_by_key(|&j| r.size(h.get(i, j)));
            let Some(best) = best else { break };
            h.swap_cols(best, c);
            u.swap_cols(best, c);
            let mut done = true;
            for j in c + 1..d {
                if r.is_zero(h.get(i, j)) {
                    continue;
                }
                let (q, rem) = r.div_rem_right(h.get(i, j), h.get(i, c))?;
                col_axpy(r, &mut h, j, c, &q);
                col_axpy(r, &mut u, j, c, &q);
                if !r.is_zero(&rem) {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r.is_zero(h.get(i, c)) {
            continue;
        }
        let norm = r.right_normalizer(h.get(i, c));
        col_scale(r, &mut h, c, &norm);
        col_scale(r, &mut u, c, &norm);
        for j in 0..c {
            let (q, _) = r.div_rem_right(h.get(i, j), h.get(i, c))?;
            if r.is_zero(&q) {
                continue;
            }
            col_axpy(r, &mut h, j, c, &q);
            col_axpy(r, &mut u, j, c, &q);
        }
        pivots.push(i);
        c += 1;
    }
    let h = h.select_cols(&(0..c).collect::<Vec<_>>());
    Ok(ColumnHermite { h, u, pivots })
}

/// `U·A = [H; 0]` with `H` in row echelon form; the rows of `U` past the
/// rank span the left kernel of `A` over the ring.
pub fn row_hermite<R: EuclideanRing>(r: &R, a: &Matrix<R::Elem>) -> Result<ColumnHermite<R::Elem>> {
    let t = column_hermite(&Opposite(r.clone()), &a.transpose())?;
    Ok(ColumnHermite {
        h: t.h.transpose(),
        u: t.u.transpose(),
        pivots: t.pivots,
    })
}

/// Right kernel `{x ∈ E^d : A·x = 0}` as columns.
pub fn right_kernel_ring<R: EuclideanRing>(r: &R, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    Ok(column_hermite(r, a)?.kernel())
}

/// Left kernel `{c ∈ E^n : c·A = 0}` as rows.
pub fn left_kernel_ring<R: EuclideanRing>(r: &R, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    Ok(right_kernel_ring(&Opposite(r.clone()), &a.transpose())?.transpose())
}

/// Solve `H·x = b` over the ring for `H` from [`column_hermite`].
pub fn solve_echelon<R: EuclideanRing>(
    r: &R,
    herm: &ColumnHermite<R::Elem>,
    b: &[R::Elem],
) -> Result<Option<Vec<R::Elem>>> {
    let h = &herm.h;
    let mut rest = b.to_vec();
    let mut x = Vec::with_capacity(herm.rank());
    for (j, &p) in herm.pivots.iter().enumerate() {
        // rows strictly between the previous pivot and p must already vanish
        let start = if j == 0 { 0 } else { herm.pivots[j - 1] + 1 };
        if (start..p).any(|i| !r.is_zero(&rest[i])) {
            return Ok(None);
        }
        let Some(xj) = exact_div_right(r, &rest[p], h.get(p, j))? else {
            return Ok(None);
        };
        for (i, item) in rest.iter_mut().enumerate().skip(p) {
            let hij = h.get(i, j);
            if !r.is_zero(hij) {
                *item = r.sub(item, &r.mul(hij, &xj));
            }
        }
        x.push(xj);
    }
    Ok(if rest.iter().all(|v| r.is_zero(v)) { Some(x) } else { None })
}

/// Is every column of `b` in the right column span of `a` over the ring?
pub fn ring_span_contains<R: EuclideanRing>(r: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<bool> {
    let herm = column_hermite(r, a)?;
    for col in b.col_vecs() {
        if solve_echelon(r, &herm, &col)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}
