//! Finitely generated submodules of `Eⁿ` presented by generator matrices.

use serde::{Deserialize, Serialize};

use super::division::{column_span_equal, rank};
use super::hermite::{column_hermite, left_kernel_ring, right_kernel_ring, ring_span_contains, row_hermite};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::euclid::lcrm;
use crate::scalars::{BaseElem, FracElem, Opposite, Ring, Scalars};

/// Whether the generators are the columns (a right module `N`) or the rows
/// (a left module `J`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Right,
    Left,
}

impl Orientation {
    pub fn flip(self) -> Self {
        match self {
            Orientation::Right => Orientation::Left,
            Orientation::Left => Orientation::Right,
        }
    }
}

/// A submodule of `Eⁿ`: the right span of the columns of an `n × d`
/// matrix, or the left span of the rows of a `d × n` matrix.
#[derive(Debug, Clone)]
pub struct ModuleMatrix<S: Scalars> {
    scalars: S,
    matrix: Matrix<BaseElem<S>>,
    orientation: Orientation,
}

impl<S: Scalars> ModuleMatrix<S> {
    pub fn new(scalars: S, matrix: Matrix<BaseElem<S>>, orientation: Orientation) -> Self {
        ModuleMatrix {
            scalars,
            matrix,
            orientation,
        }
    }

    pub fn right(scalars: S, matrix: Matrix<BaseElem<S>>) -> Self {
        Self::new(scalars, matrix, Orientation::Right)
    }

    pub fn left(scalars: S, matrix: Matrix<BaseElem<S>>) -> Self {
        Self::new(scalars, matrix, Orientation::Left)
    }

    /// The module of all of `Eⁿ` (as a right module).
    pub fn full(scalars: S, n: usize) -> Self {
        let m = crate::matrix::identity(scalars.base(), n);
        Self::right(scalars, m)
    }

    /// The zero right module of `Eⁿ`.
    pub fn zero(scalars: S, n: usize) -> Self {
        let m = Matrix::filled(n, 0, scalars.base().zero());
        Self::right(scalars, m)
    }

    pub fn scalars(&self) -> &S {
        &self.scalars
    }

    pub fn matrix(&self) -> &Matrix<BaseElem<S>> {
        &self.matrix
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Ambient dimension `n`.
    pub fn ambient(&self) -> usize {
        match self.orientation {
            Orientation::Right => self.matrix.rows(),
            Orientation::Left => self.matrix.cols(),
        }
    }

    /// Generators laid out as columns, whatever the orientation.
    fn generator_columns(&self) -> Matrix<BaseElem<S>> {
        match self.orientation {
            Orientation::Right => self.matrix.clone(),
            Orientation::Left => self.matrix.transpose(),
        }
    }

    /// The generator matrix over `Q`.
    pub fn q_matrix(&self) -> Matrix<FracElem<S>> {
        self.matrix.map(|x| self.scalars.embed(x))
    }

    pub fn rank(&self) -> usize {
        rank(self.scalars.frac(), &self.q_matrix())
    }

    /// Echelon form of the generators (columns for right modules, rows for
    /// left modules), zero generators dropped.
    pub fn hermite(&self) -> Result<Self> {
        let ring = self.scalars.base();
        let m = match self.orientation {
            Orientation::Right => column_hermite(ring, &self.matrix)?.h,
            Orientation::Left => {
                let herm = row_hermite(ring, &self.matrix)?;
                herm.h.select_rows(&(0..herm.rank()).collect::<Vec<_>>())
            }
        };
        Ok(Self::new(self.scalars.clone(), m, self.orientation))
    }

    /// The orthogonal complement, with the opposite orientation.
    pub fn perp(&self) -> Result<Self> {
        let ring = self.scalars.base();
        let m = match self.orientation {
            Orientation::Right => left_kernel_ring(ring, &self.matrix)?,
            Orientation::Left => right_kernel_ring(ring, &self.matrix)?,
        };
        Self::new(self.scalars.clone(), m, self.orientation.flip()).hermite()
    }

    /// `NQ ∩ Eⁿ` (or `QJ ∩ Eⁿ`).
    pub fn saturate(&self) -> Result<Self> {
        self.perp()?.perp()
    }

    pub fn is_saturated(&self) -> Result<bool> {
        let sat = self.saturate()?;
        self.span_equal(&sat, Level::Ring)
    }

    /// The module whose matroid is dual to this one: `τ(V^⊥) ∩ Eⁿ`.
    pub fn dual_module(&self) -> Result<Self> {
        let n = self.ambient();
        let right = self.as_right()?;
        let j = right.perp()?;
        let frac = self.scalars.frac();
        let ring = self.scalars.base();
        let mut cols = Vec::with_capacity(j.matrix.rows());
        for row in j.matrix.row_vecs() {
            let col: Vec<FracElem<S>> = row
                .iter()
                .map(|x| self.scalars.tau(&self.scalars.embed(x)))
                .collect();
            // right-multiply by a common right multiple of the denominators
            let mut m = ring.one();
            for x in &col {
                let (_, den) = self.scalars.right_fraction(x);
                m = lcrm(ring, &m, &den)?.0;
            }
            let scale = self.scalars.embed(&m);
            let cleared = col
                .iter()
                .map(|x| {
                    self.scalars
                        .integral(&frac.mul(x, &scale))
                        .ok_or_else(|| Error::Invariant("denominator clearing failed".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            cols.push(cleared);
        }
        let mat = if cols.is_empty() {
            Matrix::filled(n, 0, ring.zero())
        } else {
            Matrix::from_cols(cols, n)?
        };
        Self::right(self.scalars.clone(), mat).saturate()
    }

    /// The same module presented as a right module of columns. For a left
    /// module this is the complement `J^⊥`, which is the module the
    /// equations `J` cut out.
    pub fn as_right(&self) -> Result<Self> {
        match self.orientation {
            Orientation::Right => Ok(self.clone()),
            Orientation::Left => self.perp(),
        }
    }

    pub fn span_equal(&self, other: &Self, level: Level) -> Result<bool> {
        if self.ambient() != other.ambient() || self.orientation != other.orientation {
            return Err(Error::Dimension("modules live in different ambient spaces".into()));
        }
        let (a, b) = (self.generator_columns(), other.generator_columns());
        match (level, self.orientation) {
            (Level::Quotient, Orientation::Right) => {
                let q = |m: &Matrix<BaseElem<S>>| m.map(|x| self.scalars.embed(x));
                Ok(column_span_equal(self.scalars.frac(), &q(&a), &q(&b)))
            }
            (Level::Quotient, Orientation::Left) => {
                let q = |m: &Matrix<BaseElem<S>>| m.map(|x| self.scalars.embed(x));
                Ok(column_span_equal(&Opposite(self.scalars.frac().clone()), &q(&a), &q(&b)))
            }
            (Level::Ring, Orientation::Right) => {
                let r = self.scalars.base();
                Ok(ring_span_contains(r, &a, &b)? && ring_span_contains(r, &b, &a)?)
            }
            (Level::Ring, Orientation::Left) => {
                let r = Opposite(self.scalars.base().clone());
                Ok(ring_span_contains(&r, &a, &b)? && ring_span_contains(&r, &b, &a)?)
            }
        }
    }

    /// Does the module contain the given vector?
    pub fn contains(&self, v: &[BaseElem<S>]) -> Result<bool> {
        let col = Matrix::from_cols(vec![v.to_vec()], v.len())?;
        match self.orientation {
            Orientation::Right => ring_span_contains(self.scalars.base(), &self.matrix, &col),
            Orientation::Left => {
                ring_span_contains(&Opposite(self.scalars.base().clone()), &self.generator_columns(), &col)
            }
        }
    }

    /// Keep the coordinates in `keep` (rows of a right module).
    pub fn restrict_rows(&self, keep: &[usize]) -> Result<Self> {
        if self.orientation != Orientation::Right {
            return Err(Error::Precondition("row restriction needs a right module".into()));
        }
        Ok(Self::right(self.scalars.clone(), self.matrix.select_rows(keep)))
    }

    pub fn format(&self) -> String {
        crate::matrix::format_matrix(self.scalars.base(), &self.matrix)
    }
}

/// Whether spans are compared over the division ring or the ring itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quotient,
    Ring,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{FiniteField, IntegerScalars, SkewPoly, SkewScalars};
    use num_bigint::BigInt;

    fn skew(codes: &[&[&[u64]]]) -> (SkewScalars, Matrix<SkewPoly>) {
        let s = SkewScalars::new(FiniteField::new(2, &[1, 1, 1]).unwrap());
        let rows = codes
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| SkewPoly::new(c.iter().map(|&x| s.field().elem(x).unwrap()).collect()))
                    .collect()
            })
            .collect();
        let m = Matrix::from_rows(rows, codes[0].len()).unwrap();
        (s, m)
    }

    fn kf() -> ModuleMatrix<SkewScalars> {
        let (s, m) = skew(&[&[&[1], &[]], &[&[], &[1]], &[&[1], &[1]], &[&[1], &[0, 1]]]);
        ModuleMatrix::right(s, m)
    }

    fn zm(rows: &[&[i64]]) -> Matrix<BigInt> {
        let v = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Matrix::from_rows(v, rows[0].len()).unwrap()
    }

    #[test]
    fn kf_is_saturated_and_dualizes() {
        let n = kf();
        assert!(n.is_saturated().unwrap());
        let (_, printed) = skew(&[&[&[1], &[0, 1]], &[&[1], &[1]], &[&[1], &[]], &[&[], &[0, 1]]]);
        let printed = ModuleMatrix::right(n.scalars().clone(), printed);
        let dual = n.dual_module().unwrap();
        assert!(dual.span_equal(&printed, Level::Ring).unwrap());
        let (_, jrows) = skew(&[&[&[1], &[1], &[1], &[]], &[&[1], &[0, 1], &[], &[1]]]);
        let j = ModuleMatrix::left(n.scalars().clone(), jrows);
        assert!(n.perp().unwrap().span_equal(&j, Level::Ring).unwrap());
        assert!(j.perp().unwrap().span_equal(&n, Level::Ring).unwrap());
    }

    #[test]
    fn saturation_removes_right_factors() {
        let (s, m) = skew(&[&[&[0, 1]], &[&[0, 1]]]);
        let sat = ModuleMatrix::right(s.clone(), m).saturate().unwrap();
        let (_, ones) = skew(&[&[&[1]], &[&[1]]]);
        assert!(sat.span_equal(&ModuleMatrix::right(s, ones), Level::Ring).unwrap());
        let z = IntegerScalars::new(2).unwrap();
        let sat = ModuleMatrix::right(z.clone(), zm(&[&[2], &[2]])).saturate().unwrap();
        assert_eq!(sat.matrix(), &zm(&[&[1], &[1]]));
    }

    #[test]
    fn integer_duals_and_extremes() {
        let z = IntegerScalars::new(2).unwrap();
        let n = ModuleMatrix::right(z.clone(), zm(&[&[1, 0], &[1, 1], &[0, 1]]));
        let d = n.dual_module().unwrap();
        let expected = ModuleMatrix::right(z.clone(), zm(&[&[1], &[-1], &[1]]));
        assert!(d.span_equal(&expected, Level::Ring).unwrap());
        let full = ModuleMatrix::full(z.clone(), 3);
        assert_eq!(full.dual_module().unwrap().matrix().cols(), 0);
        let zero = ModuleMatrix::zero(z.clone(), 3);
        assert_eq!(zero.perp().unwrap().rank(), 3);
        let j = ModuleMatrix::left(z.clone(), zm(&[&[1, 1]]));
        let expected = ModuleMatrix::right(z, zm(&[&[1], &[-1]]));
        assert!(j.perp().unwrap().span_equal(&expected, Level::Ring).unwrap());
    }
}
