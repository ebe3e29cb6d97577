use std::fmt::Debug;

use super::field::{FieldElem, FiniteField};
use super::value::Val;
use crate::error::Result;

/// Ring operations carried by a context value; elements are plain data.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Semantic equality. Fraction representations override this.
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn format(&self, a: &Self::Elem) -> String;
}

/// A domain with Euclidean division on both sides.
///
/// `div_rem_left(a, b)` returns `(q, r)` with `a = q·b + r`;
/// `div_rem_right(a, b)` returns `(q, r)` with `a = b·q + r`.
/// In both cases `size(r) < size(b)`.
pub trait EuclideanRing: Ring {
    fn div_rem_left(&self, a: &Self::Elem, b: &Self::Elem) -> Result<(Self::Elem, Self::Elem)>;
    fn div_rem_right(&self, a: &Self::Elem, b: &Self::Elem) -> Result<(Self::Elem, Self::Elem)>;
    /// Euclidean size; zero exactly for the zero element.
    fn size(&self, a: &Self::Elem) -> u128;
    /// A unit `u` such that `a·u` is the canonical representative of `a·units`.
    fn right_normalizer(&self, a: &Self::Elem) -> Self::Elem;
    /// A unit `u` such that `u·a` is the canonical representative of `units·a`.
    fn left_normalizer(&self, a: &Self::Elem) -> Self::Elem;
    fn valuation(&self, a: &Self::Elem) -> Val;
}

/// A division ring equipped with a discrete valuation.
pub trait DivisionRing: Ring {
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn valuation(&self, a: &Self::Elem) -> Val;

    fn div_right(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

/// Which endomorphism ring a context describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    SkewPoly,
    Hurwitz,
}

impl RingKind {
    pub fn name(self) -> &'static str {
        match self {
            RingKind::Integers => "integers",
            RingKind::SkewPoly => "skew_poly",
            RingKind::Hurwitz => "hurwitz",
        }
    }
}

/// The full scalar context: the ring `E`, its fraction division ring `Q`,
/// the anti-automorphism, the uniformizer and the residue map.
pub trait Scalars: Clone + Debug + Send + Sync {
    type Base: EuclideanRing;
    type Frac: DivisionRing;

    fn base(&self) -> &Self::Base;
    fn frac(&self) -> &Self::Frac;
    fn kind(&self) -> RingKind;
    fn prime(&self) -> u64;

    fn embed(&self, e: &<Self::Base as Ring>::Elem) -> <Self::Frac as Ring>::Elem;
    /// `Some(e)` when the fraction lies in the ring.
    fn integral(&self, q: &<Self::Frac as Ring>::Elem) -> Option<<Self::Base as Ring>::Elem>;
    /// `(a, b)` with `q = a·b⁻¹`.
    fn right_fraction(
        &self,
        q: &<Self::Frac as Ring>::Elem,
    ) -> (<Self::Base as Ring>::Elem, <Self::Base as Ring>::Elem);
    /// `(b, a)` with `q = b⁻¹·a`.
    fn left_fraction(
        &self,
        q: &<Self::Frac as Ring>::Elem,
    ) -> (<Self::Base as Ring>::Elem, <Self::Base as Ring>::Elem);

    fn tau(&self, q: &<Self::Frac as Ring>::Elem) -> <Self::Frac as Ring>::Elem;
    fn uniformizer(&self) -> <Self::Base as Ring>::Elem;

    fn supports_flock(&self) -> bool;
    fn residue_field(&self) -> Result<&FiniteField>;
    /// The residue map on the valuation ring.
    fn residue(&self, q: &<Self::Frac as Ring>::Elem) -> Result<FieldElem>;
    /// Some element of the valuation ring with the given residue.
    fn lift(&self, x: FieldElem) -> Result<<Self::Frac as Ring>::Elem>;
    /// The automorphism of the residue field induced by conjugation with the uniformizer.
    fn residue_twist(&self, x: FieldElem) -> Result<FieldElem>;
}
