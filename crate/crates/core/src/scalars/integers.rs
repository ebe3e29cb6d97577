//! `ℤ` with the `p`-adic valuation, and its fraction field `ℚ`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldElem, FiniteField};
use super::traits::{DivisionRing, EuclideanRing, Ring, RingKind, Scalars};
use super::value::Val;
use crate::error::{Error, Result};

/// `v_p(n)` for nonzero `n`.
pub fn padic_order(n: &BigInt, p: u64) -> u64 {
    if p == 2 {
        return n.trailing_zeros().unwrap_or(0);
    }
    let mut n = n.clone();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&BigInt::from(p));
        if !r.is_zero() {
            return e;
        }
        n = q;
        e += 1;
    }
}

#[derive(Debug, Clone)]
pub struct IntegerRing {
    p: u64,
}

impl IntegerRing {
    pub fn new(p: u64) -> Self {
        IntegerRing { p }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    fn div_rem(a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (q, r) = a.div_mod_floor(b);
        Ok((q, r))
    }
}

impl Ring for IntegerRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

impl EuclideanRing for IntegerRing {
    fn div_rem_left(&self, a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
        Self::div_rem(a, b)
    }
    fn div_rem_right(&self, a: &BigInt, b: &BigInt) -> Result<(BigInt, BigInt)> {
        Self::div_rem(a, b)
    }
    fn size(&self, a: &BigInt) -> u128 {
        // only compared against each other; saturate for huge values
        let m = a.magnitude();
        u128::try_from(m).unwrap_or(u128::MAX)
    }
    fn right_normalizer(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn left_normalizer(&self, a: &BigInt) -> BigInt {
        self.right_normalizer(a)
    }
    fn valuation(&self, a: &BigInt) -> Val {
        if a.is_zero() {
            Val::Infinity
        } else {
            Val::Finite(padic_order(a, self.p) as i64)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rationals {
    p: u64,
}

impl Rationals {
    pub fn new(p: u64) -> Self {
        Rationals { p }
    }
}

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn format(&self, a: &BigRational) -> String {
        a.to_string()
    }
}

impl DivisionRing for Rationals {
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn valuation(&self, a: &BigRational) -> Val {
        if a.is_zero() {
            return Val::Infinity;
        }
        Val::Finite(padic_order(a.numer(), self.p) as i64 - padic_order(a.denom(), self.p) as i64)
    }
}

/// `E = ℤ`, `Q = ℚ`, `π = p`, residue field `F_p`.
#[derive(Debug, Clone)]
pub struct IntegerScalars {
    ring: IntegerRing,
    frac: Rationals,
    residue: FiniteField,
}

impl IntegerScalars {
    pub fn new(p: u64) -> Result<Self> {
        let residue = FiniteField::prime_field(p)?;
        Ok(IntegerScalars {
            ring: IntegerRing::new(p),
            frac: Rationals::new(p),
            residue,
        })
    }

    fn reduce(&self, n: &BigInt) -> FieldElem {
        let p = BigInt::from(self.ring.p);
        let r = n.mod_floor(&p);
        FieldElem(u64::try_from(&r).expect("residue below p"))
    }
}

impl Scalars for IntegerScalars {
    type Base = IntegerRing;
    type Frac = Rationals;

    fn base(&self) -> &IntegerRing {
        &self.ring
    }
    fn frac(&self) -> &Rationals {
        &self.frac
    }
    fn kind(&self) -> RingKind {
        RingKind::Integers
    }
    fn prime(&self) -> u64 {
        self.ring.p
    }
    fn embed(&self, e: &BigInt) -> BigRational {
        BigRational::from_integer(e.clone())
    }
    fn integral(&self, q: &BigRational) -> Option<BigInt> {
        q.is_integer().then(|| q.to_integer())
    }
    fn right_fraction(&self, q: &BigRational) -> (BigInt, BigInt) {
        (q.numer().clone(), q.denom().clone())
    }
    fn left_fraction(&self, q: &BigRational) -> (BigInt, BigInt) {
        (q.denom().clone(), q.numer().clone())
    }
    fn tau(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
    fn uniformizer(&self) -> BigInt {
        BigInt::from(self.ring.p)
    }
    fn supports_flock(&self) -> bool {
        true
    }
    fn residue_field(&self) -> Result<&FiniteField> {
        Ok(&self.residue)
    }
    fn residue(&self, q: &BigRational) -> Result<FieldElem> {
        if self.frac.valuation(q) < Val::Finite(0) {
            return Err(Error::Precondition("residue of an element of negative valuation".into()));
        }
        let num = self.reduce(q.numer());
        let den = self.reduce(q.denom());
        self.residue.div_right(&num, &den)
    }
    fn lift(&self, x: FieldElem) -> Result<BigRational> {
        Ok(BigRational::from_integer(BigInt::from(x.0)))
    }
    fn residue_twist(&self, x: FieldElem) -> Result<FieldElem> {
        Ok(x)
    }
}
