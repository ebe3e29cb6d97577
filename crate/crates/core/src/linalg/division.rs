//! Gaussian elimination over a division ring. All operations act on rows
//! by left multiplication, so they preserve right linear relations among
//! columns and the left row span.

use crate::matrix::{identity, Matrix};
use crate::scalars::{DivisionRing, Opposite, Val};

/// A pivot found by forward elimination.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pivot {
    pub row: usize,
    pub col: usize,
}

/// Forward elimination restricted to the first `limit` columns. Returns the
/// pivots; rows `pivots.len()..` are zero in those columns afterwards.
/// No row is rescaled, so the pivot entries carry the Dieudonné determinant.
fn forward<D: DivisionRing>(d: &D, m: &mut Matrix<D::Elem>, limit: usize) -> (Vec<Pivot>, usize) {
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut r = 0;
    for c in 0..limit {
        if r == m.rows() {
            break;
        }
        let Some(p) = (r..m.rows()).find(|&i| !d.is_zero(m.get(i, c))) else {
            continue;
        };
        if p != r {
            m.swap_rows(p, r);
            swaps += 1;
        }
        let inv = d.inv(m.get(r, c)).expect("nonzero pivot");
        for i in r + 1..m.rows() {
            if d.is_zero(m.get(i, c)) {
                continue;
            }
            let f = d.mul(m.get(i, c), &inv);
            for j in c..m.cols() {
                let x = m.get(r, j);
                if d.is_zero(x) {
                    continue;
                }
                let v = d.sub(m.get(i, j), &d.mul(&f, x));
                m.set(i, j, v);
            }
            m.set(i, c, d.zero());
        }
        pivots.push(Pivot { row: r, col: c });
        r += 1;
    }
    (pivots, swaps)
}

pub fn rank<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> usize {
    let mut m = a.clone();
    let limit = m.cols();
    forward(d, &mut m, limit).0.len()
}

/// Indices of the lexicographically first maximal set of right-independent columns.
pub fn column_basis<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Vec<usize> {
    let mut m = a.clone();
    let limit = m.cols();
    forward(d, &mut m, limit).0.iter().map(|p| p.col).collect()
}

/// Indices of the lexicographically first maximal set of left-independent rows.
pub fn row_basis<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Vec<usize> {
    column_basis(&Opposite(d.clone()), &a.transpose())
}

/// Rows spanning `{c : c·A = 0}`, one per missing rank.
pub fn left_kernel<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Matrix<D::Elem> {
    let n = a.rows();
    let mut m = a.hstack(&identity(d, n));
    let (pivots, _) = forward(d, &mut m, a.cols());
    let r = pivots.len();
    let idx: Vec<usize> = (a.cols()..a.cols() + n).collect();
    m.select_cols(&idx).select_rows(&(r..n).collect::<Vec<_>>())
}

/// Columns spanning `{x : A·x = 0}`.
pub fn right_kernel<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Matrix<D::Elem> {
    left_kernel(&Opposite(d.clone()), &a.transpose()).transpose()
}

/// Valuation of the Dieudonné determinant of a square matrix.
pub fn dieudonne_val<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Val {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let (pivots, _) = forward(d, &mut m, n);
    if pivots.len() < n {
        return Val::Infinity;
    }
    pivots
        .iter()
        .fold(Val::Finite(0), |acc, p| acc + d.valuation(m.get(p.row, p.col)))
}

/// Reduced row echelon form: pivots equal to one, zero above and below.
/// Zero rows are dropped.
pub fn rref<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Matrix<D::Elem> {
    let mut m = a.clone();
    let limit = m.cols();
    let (pivots, _) = forward(d, &mut m, limit);
    for (k, p) in pivots.iter().enumerate().rev() {
        let inv = d.inv(m.get(p.row, p.col)).expect("nonzero pivot");
        for j in 0..m.cols() {
            let v = d.mul(&inv, m.get(p.row, j));
            m.set(p.row, j, v);
        }
        for i in 0..k {
            let f = m.get(i, p.col).clone();
            if d.is_zero(&f) {
                continue;
            }
            for j in 0..m.cols() {
                let v = d.sub(m.get(i, j), &d.mul(&f, m.get(p.row, j)));
                m.set(i, j, v);
            }
        }
    }
    m.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

/// Reduced column echelon form of the right column span; zero columns dropped.
pub fn column_echelon<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>) -> Matrix<D::Elem> {
    rref(&Opposite(d.clone()), &a.transpose()).transpose()
}

/// Is every column of `b` in the right column span of `a`?
pub fn column_span_contains<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>, b: &Matrix<D::Elem>) -> bool {
    assert_eq!(a.rows(), b.rows(), "ambient dimension mismatch");
    rank(d, a) == rank(d, &a.hstack(b))
}

pub fn column_span_equal<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>, b: &Matrix<D::Elem>) -> bool {
    let joint = rank(d, &a.hstack(b));
    rank(d, a) == joint && rank(d, b) == joint
}

/// Some `x` with `A·x = b`, if the system is consistent.
pub fn solve_right<D: DivisionRing>(d: &D, a: &Matrix<D::Elem>, b: &[D::Elem]) -> Option<Vec<D::Elem>> {
    let bm = Matrix::from_cols(vec![b.to_vec()], a.rows()).expect("column length");
    let aug = a.hstack(&bm);
    let kernel = right_kernel(d, &aug);
    let last = a.cols();
    // a kernel vector with nonzero last coordinate, scaled to −1
    for j in 0..kernel.cols() {
        let t = kernel.get(last, j);
        if d.is_zero(t) {
            continue;
        }
        let s = d.neg(&d.inv(t).expect("nonzero"));
        return Some((0..last).map(|i| d.mul(kernel.get(i, j), &s)).collect());
    }
    None
}

/// Rows kept in echelon form, for incremental independence tests.
#[derive(Debug, Clone)]
pub struct EchelonRows<D: DivisionRing> {
    rows: Vec<(usize, Vec<D::Elem>)>,
}

impl<D: DivisionRing> Default for EchelonRows<D> {
    fn default() -> Self {
        EchelonRows { rows: Vec::new() }
    }
}

impl<D: DivisionRing> EchelonRows<D> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, d: &D, v: &[D::Elem]) -> Vec<D::Elem> {
        let mut v = v.to_vec();
        for (c, row) in &self.rows {
            if d.is_zero(&v[*c]) {
                continue;
            }
            let f = d.mul(&v[*c], &d.inv(&row[*c]).expect("nonzero pivot"));
            for (x, y) in v.iter_mut().zip(row) {
                if !d.is_zero(y) {
                    *x = d.sub(x, &d.mul(&f, y));
                }
            }
        }
        v
    }

    /// Is `v` outside the left span of the stored rows?
    pub fn is_independent(&self, d: &D, v: &[D::Elem]) -> bool {
        self.reduce(d, v).iter().any(|x| !d.is_zero(x))
    }

    /// Add `v`; returns false (and stores nothing) if it was dependent.
    pub fn push(&mut self, d: &D, v: &[D::Elem]) -> bool {
        let r = self.reduce(d, v);
        match r.iter().position(|x| !d.is_zero(x)) {
            Some(c) => {
                self.rows.push((c, r));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::mul;
    use crate::scalars::{FiniteField, Ring, Scalars, SkewPoly, SkewScalars};

    fn skew2() -> SkewScalars {
        SkewScalars::new(FiniteField::prime_field(2).unwrap())
    }

    fn qm(s: &SkewScalars, rows: &[&[&[u64]]]) -> Matrix<crate::scalars::SkewFrac> {
        let field = s.field();
        let v = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        let coeffs = c.iter().map(|&x| field.elem(x).unwrap()).collect();
                        s.embed(&SkewPoly::new(coeffs))
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(v, rows[0].len()).unwrap()
    }

    #[test]
    fn determinant_valuations() {
        let s = skew2();
        let q = s.frac();
        assert_eq!(dieudonne_val(q, &qm(&s, &[&[&[1], &[]], &[&[1], &[0, 1]]])), Val::Finite(1));
        assert_eq!(dieudonne_val(q, &qm(&s, &[&[&[1], &[1]], &[&[1], &[0, 1]]])), Val::Finite(0));
        assert_eq!(dieudonne_val(q, &qm(&s, &[&[&[1], &[1]], &[&[1], &[1]]])), Val::Infinity);
    }

    #[test]
    fn kernels() {
        let s = skew2();
        let q = s.frac();
        let psi = qm(
            &s,
            &[&[&[1], &[]], &[&[], &[1]], &[&[1], &[1]], &[&[1], &[0, 1]]],
        );
        assert_eq!(rank(q, &psi), 2);
        let k = left_kernel(q, &psi);
        assert_eq!(k.rows(), 2);
        let prod = mul(q, &k, &psi);
        assert!(prod.entries().iter().all(|x| q.is_zero(x)));
        let printed = qm(&s, &[&[&[1], &[1], &[1], &[]], &[&[1], &[0, 1], &[], &[1]]]);
        assert!(column_span_equal(
            &Opposite(q.clone()),
            &k.transpose(),
            &printed.transpose()
        ));
        let rk = right_kernel(q, &psi.transpose());
        assert_eq!(rk.cols(), 2);
        assert!(mul(q, &psi.transpose(), &rk).entries().iter().all(|x| q.is_zero(x)));
    }

    #[test]
    fn solving() {
        let s = skew2();
        let q = s.frac();
        let a = qm(&s, &[&[&[0, 1]], &[&[0, 0, 1]]]);
        let b = vec![s.embed(&SkewPoly::monomial(crate::scalars::FieldElem(1), 2)), s.embed(&SkewPoly::monomial(crate::scalars::FieldElem(1), 3))];
        let x = solve_right(q, &a, &b).unwrap();
        assert!(q.equal(&x[0], &s.embed(&s.f())));
        let bad = vec![q.one(), q.zero()];
        assert!(solve_right(q, &a, &bad).is_none());
    }
}
