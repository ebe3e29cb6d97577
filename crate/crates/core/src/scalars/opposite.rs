//! The opposite ring `R^op`, with `a ∘ b = b·a`. Row operations over `R`
//! are column operations over `R^op` on the transpose.

use super::traits::{DivisionRing, EuclideanRing, Ring};
use super::value::Val;
use crate::error::Result;

#[derive(Debug, Clone)]
pub struct Opposite<R>(pub R);

impl<R: Ring> Ring for Opposite<R> {
    type Elem = R::Elem;

    fn zero(&self) -> R::Elem {
        self.0.zero()
    }
    fn one(&self) -> R::Elem {
        self.0.one()
    }
    fn add(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.0.add(a, b)
    }
    fn neg(&self, a: &R::Elem) -> R::Elem {
        self.0.neg(a)
    }
    fn mul(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.0.mul(b, a)
    }
    fn is_zero(&self, a: &R::Elem) -> bool {
        self.0.is_zero(a)
    }
    fn sub(&self, a: &R::Elem, b: &R::Elem) -> R::Elem {
        self.0.sub(a, b)
    }
    fn equal(&self, a: &R::Elem, b: &R::Elem) -> bool {
        self.0.equal(a, b)
    }
    fn format(&self, a: &R::Elem) -> String {
        self.0.format(a)
    }
}

impl<R: EuclideanRing> EuclideanRing for Opposite<R> {
    fn div_rem_left(&self, a: &R::Elem, b: &R::Elem) -> Result<(R::Elem, R::Elem)> {
        self.0.div_rem_right(a, b)
    }
    fn div_rem_right(&self, a: &R::Elem, b: &R::Elem) -> Result<(R::Elem, R::Elem)> {
        self.0.div_rem_left(a, b)
    }
    fn size(&self, a: &R::Elem) -> u128 {
        self.0.size(a)
    }
    fn right_normalizer(&self, a: &R::Elem) -> R::Elem {
        self.0.left_normalizer(a)
    }
    fn left_normalizer(&self, a: &R::Elem) -> R::Elem {
        self.0.right_normalizer(a)
    }
    fn valuation(&self, a: &R::Elem) -> Val {
        self.0.valuation(a)
    }
}

impl<R: DivisionRing> DivisionRing for Opposite<R> {
    fn inv(&self, a: &R::Elem) -> Result<R::Elem> {
        self.0.inv(a)
    }
    fn valuation(&self, a: &R::Elem) -> Val {
        self.0.valuation(a)
    }
}
