//! The skew polynomial ring `K[F]` over a finite field `K`, with `F·a = a^p·F`,
//! and its division ring of left fractions `b⁻¹·a`.

use std::sync::Arc;

use super::euclid::{gcld, lclm, lcrm};
use super::field::{FieldElem, FiniteField};
use super::traits::{DivisionRing, EuclideanRing, Ring, RingKind, Scalars};
use super::value::Val;
use crate::error::{Error, Result};

/// `Σ coeffs[i]·F^i`, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    coeffs: Vec<FieldElem>,
}

impl SkewPoly {
    pub fn new(mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.0 == 0) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero() -> Self {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElem) -> Self {
        SkewPoly::new(vec![c])
    }

    /// `c·F^e`
    pub fn monomial(c: FieldElem, e: usize) -> Self {
        let mut coeffs = vec![FieldElem(0); e + 1];
        coeffs[e] = c;
        SkewPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem(0))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> FieldElem {
        *self.coeffs.last().expect("nonzero polynomial")
    }

    /// Index of the lowest nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.0 != 0)
    }
}

#[derive(Debug, Clone)]
pub struct SkewRing {
    field: Arc<FiniteField>,
}

impl SkewRing {
    pub fn new(field: FiniteField) -> Self {
        SkewRing {
            field: Arc::new(field),
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn f(&self) -> SkewPoly {
        SkewPoly::monomial(FieldElem(1), 1)
    }

    pub fn scalar(&self, c: FieldElem) -> SkewPoly {
        SkewPoly::constant(c)
    }

    /// `c·F^m·b`
    fn shifted_scaled(&self, c: FieldElem, m: usize, b: &SkewPoly) -> SkewPoly {
        let f = &*self.field;
        let mut coeffs = vec![FieldElem(0); m];
        coeffs.extend(
            b.coeffs
                .iter()
                .map(|&bj| f.mul_elem(c, f.frobenius_pow(bj, m as i64))),
        );
        SkewPoly::new(coeffs)
    }

    /// `b·c·F^m`
    fn scaled_shifted(&self, b: &SkewPoly, c: FieldElem, m: usize) -> SkewPoly {
        let f = &*self.field;
        let mut coeffs = vec![FieldElem(0); m];
        coeffs.extend(
            b.coeffs
                .iter()
                .enumerate()
                .map(|(j, &bj)| f.mul_elem(bj, f.frobenius_pow(c, j as i64))),
        );
        SkewPoly::new(coeffs)
    }

    /// Write `a = F^e·a'` with `e = v(a)`; returns `a'`.
    fn strip_left_f(&self, a: &SkewPoly, e: usize) -> SkewPoly {
        let f = &*self.field;
        SkewPoly::new(
            a.coeffs[e..]
                .iter()
                .map(|&c| f.frobenius_pow(c, -(e as i64)))
                .collect(),
        )
    }
}

impl Ring for SkewRing {
    type Elem = SkewPoly;

    fn zero(&self) -> SkewPoly {
        SkewPoly::zero()
    }
    fn one(&self) -> SkewPoly {
        SkewPoly::constant(FieldElem(1))
    }
    fn add(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        SkewPoly::new(
            (0..n)
                .map(|i| self.field.add_elem(a.coeff(i), b.coeff(i)))
                .collect(),
        )
    }
    fn neg(&self, a: &SkewPoly) -> SkewPoly {
        SkewPoly::new(a.coeffs.iter().map(|&c| self.field.neg_elem(c)).collect())
    }
    fn mul(&self, a: &SkewPoly, b: &SkewPoly) -> SkewPoly {
        if a.is_zero() || b.is_zero() {
            return SkewPoly::zero();
        }
        let f = &*self.field;
        let k = f.degree();
        // twisted[t][j] = b_j^(p^t)
        let twisted: Vec<Vec<FieldElem>> = (0..k.min(a.coeffs.len()))
            .map(|t| b.coeffs.iter().map(|&c| f.frobenius_pow(c, t as i64)).collect())
            .collect();
        let mut out = vec![FieldElem(0); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &ai) in a.coeffs.iter().enumerate() {
            if ai.0 == 0 {
                continue;
            }
            for (j, &bj) in twisted[i % k].iter().enumerate() {
                out[i + j] = f.add_elem(out[i + j], f.mul_elem(ai, bj));
            }
        }
        SkewPoly::new(out)
    }
    fn is_zero(&self, a: &SkewPoly) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &SkewPoly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, &c) in a.coeffs.iter().enumerate() {
            if c.0 == 0 {
                continue;
            }
            let cs = self.field.format_elem(c);
            let cs = if cs.contains('+') { format!("({cs})") } else { cs };
            terms.push(match (i, c.0) {
                (0, _) => cs,
                (1, 1) => "F".into(),
                (_, 1) => format!("F^{i}"),
                (1, _) => format!("{cs}F"),
                _ => format!("{cs}F^{i}"),
            });
        }
        terms.join(" + ")
    }
}

impl EuclideanRing for SkewRing {
    fn div_rem_left(&self, a: &SkewPoly, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = &*self.field;
        let mut q = SkewPoly::zero();
        let mut r = a.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let m = dr - db;
            // c·F^m·b has leading coefficient c·lead(b)^(p^m)
            let lb = f.frobenius_pow(b.lead(), m as i64);
            let c = f.mul_elem(r.lead(), f.inv_elem(lb)?);
            r = self.sub(&r, &self.shifted_scaled(c, m, b));
            q = self.add(&q, &SkewPoly::monomial(c, m));
        }
        Ok((q, r))
    }

    fn div_rem_right(&self, a: &SkewPoly, b: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let f = &*self.field;
        let mut q = SkewPoly::zero();
        let mut r = a.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let m = dr - db;
            // b·c·F^m has leading coefficient lead(b)·c^(p^db)
            let ratio = f.mul_elem(r.lead(), f.inv_elem(b.lead())?);
            let c = f.frobenius_pow(ratio, -(db as i64));
            r = self.sub(&r, &self.scaled_shifted(b, c, m));
            q = self.add(&q, &SkewPoly::monomial(c, m));
        }
        Ok((q, r))
    }

    fn size(&self, a: &SkewPoly) -> u128 {
        a.coeffs.len() as u128
    }

    fn right_normalizer(&self, a: &SkewPoly) -> SkewPoly {
        match a.degree() {
            None => self.one(),
            Some(d) => {
                let f = &*self.field;
                let inv = f.inv_elem(a.lead()).expect("nonzero lead");
                SkewPoly::constant(f.frobenius_pow(inv, -(d as i64)))
            }
        }
    }

    fn left_normalizer(&self, a: &SkewPoly) -> SkewPoly {
        if a.is_zero() {
            return self.one();
        }
        SkewPoly::constant(self.field.inv_elem(a.lead()).expect("nonzero lead"))
    }

    fn valuation(&self, a: &SkewPoly) -> Val {
        a.order().map_or(Val::Infinity, |e| Val::Finite(e as i64))
    }
}

/// The left fraction `den⁻¹·num`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SkewFrac {
    den: SkewPoly,
    num: SkewPoly,
}

impl SkewFrac {
    pub fn den(&self) -> &SkewPoly {
        &self.den
    }
    pub fn num(&self) -> &SkewPoly {
        &self.num
    }
}

/// The division ring `K(F)` of left fractions.
#[derive(Debug, Clone)]
pub struct SkewFracField {
    ring: SkewRing,
}

impl SkewFracField {
    pub fn new(ring: SkewRing) -> Self {
        SkewFracField { ring }
    }

    pub fn ring(&self) -> &SkewRing {
        &self.ring
    }

    /// Canonical `den⁻¹·num`: common left factors removed and `den` monic.
    pub fn fraction(&self, den: SkewPoly, num: SkewPoly) -> Result<SkewFrac> {
        let r = &self.ring;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(SkewFrac {
                den: r.one(),
                num: SkewPoly::zero(),
            });
        }
        let g = gcld(r, &den, &num)?;
        let (den, num) = if g.degree() == Some(0) {
            (den, num)
        } else {
            (r.div_rem_right(&den, &g)?.0, r.div_rem_right(&num, &g)?.0)
        };
        let u = r.left_normalizer(&den);
        Ok(SkewFrac {
            den: r.mul(&u, &den),
            num: r.mul(&u, &num),
        })
    }

    pub fn from_poly(&self, a: &SkewPoly) -> SkewFrac {
        SkewFrac {
            den: self.ring.one(),
            num: a.clone(),
        }
    }

    /// `F^{-e}`
    pub fn f_pow_inv(&self, e: usize) -> SkewFrac {
        SkewFrac {
            den: SkewPoly::monomial(FieldElem(1), e),
            num: self.ring.one(),
        }
    }

    /// Equality by cross multiplication through a common left multiple.
    pub fn cross_equal(&self, x: &SkewFrac, y: &SkewFrac) -> bool {
        let r = &self.ring;
        let (_, c1, c2) = lclm(r, &x.den, &y.den).expect("nonzero denominators");
        r.mul(&c1, &x.num) == r.mul(&c2, &y.num)
    }

    /// `τ` on the polynomial ring: `Σ aᵢFⁱ ↦ Σ F⁻ⁱaᵢ`.
    pub fn tau_poly(&self, a: &SkewPoly) -> SkewFrac {
        let Some(m) = a.degree() else {
            return self.zero();
        };
        let f = self.ring.field();
        // Σ F^{-i} a_i = F^{-m} Σ a_i^(p^(m-i)) F^(m-i)
        let mut coeffs = vec![FieldElem(0); m + 1];
        for (i, &c) in a.coeffs.iter().enumerate() {
            coeffs[m - i] = f.frobenius_pow(c, (m - i) as i64);
        }
        self.fraction(SkewPoly::monomial(FieldElem(1), m), SkewPoly::new(coeffs))
            .expect("nonzero denominator")
    }

    pub fn residue_value(&self, x: &SkewFrac) -> Result<FieldElem> {
        let f = self.ring.field();
        let Some(e_num) = x.num.order() else {
            return Ok(FieldElem(0));
        };
        let e_den = x.den.order().expect("nonzero denominator");
        if e_num < e_den {
            return Err(Error::Precondition("residue of an element of negative valuation".into()));
        }
        if e_num > e_den {
            return Ok(FieldElem(0));
        }
        let ratio = f.mul_elem(x.num.coeff(e_num), f.inv_elem(x.den.coeff(e_den))?);
        Ok(f.frobenius_pow(ratio, -(e_num as i64)))
    }
}

impl Ring for SkewFracField {
    type Elem = SkewFrac;

    fn zero(&self) -> SkewFrac {
        SkewFrac {
            den: self.ring.one(),
            num: SkewPoly::zero(),
        }
    }
    fn one(&self) -> SkewFrac {
        SkewFrac {
            den: self.ring.one(),
            num: self.ring.one(),
        }
    }
    fn add(&self, x: &SkewFrac, y: &SkewFrac) -> SkewFrac {
        let r = &self.ring;
        if x.num.is_zero() {
            return y.clone();
        }
        if y.num.is_zero() {
            return x.clone();
        }
        let (m, c1, c2) = lclm(r, &x.den, &y.den).expect("nonzero denominators");
        let num = r.add(&r.mul(&c1, &x.num), &r.mul(&c2, &y.num));
        self.fraction(m, num).expect("nonzero denominator")
    }
    fn neg(&self, x: &SkewFrac) -> SkewFrac {
        SkewFrac {
            den: x.den.clone(),
            num: self.ring.neg(&x.num),
        }
    }
    fn mul(&self, x: &SkewFrac, y: &SkewFrac) -> SkewFrac {
        let r = &self.ring;
        if x.num.is_zero() || y.num.is_zero() {
            return self.zero();
        }
        // b⁻¹a · d⁻¹c = (d'b)⁻¹ (a'c) where d'a = a'd
        let (_, d1, a1) = lclm(r, &x.num, &y.den).expect("nonzero");
        let den = r.mul(&d1, &x.den);
        let num = r.mul(&a1, &y.num);
        self.fraction(den, num).expect("nonzero denominator")
    }
    fn is_zero(&self, x: &SkewFrac) -> bool {
        x.num.is_zero()
    }
    fn equal(&self, x: &SkewFrac, y: &SkewFrac) -> bool {
        x == y || self.cross_equal(x, y)
    }
    fn format(&self, x: &SkewFrac) -> String {
        if x.den.degree() == Some(0) && x.den.coeff(0).0 == 1 {
            return self.ring.format(&x.num);
        }
        format!("({})^-1 ({})", self.ring.format(&x.den), self.ring.format(&x.num))
    }
}

impl DivisionRing for SkewFracField {
    fn inv(&self, x: &SkewFrac) -> Result<SkewFrac> {
        if x.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.fraction(x.num.clone(), x.den.clone())
    }

    fn valuation(&self, x: &SkewFrac) -> Val {
        match (x.num.order(), x.den.order()) {
            (Some(a), Some(b)) => Val::Finite(a as i64 - b as i64),
            _ => Val::Infinity,
        }
    }
}

/// Scalar context for `E = K[F]`, `Q = K(F)`, uniformizer `F`, residue field `K`.
#[derive(Debug, Clone)]
pub struct SkewScalars {
    ring: SkewRing,
    frac: SkewFracField,
}

impl SkewScalars {
    pub fn new(field: FiniteField) -> Self {
        let ring = SkewRing::new(field);
        SkewScalars {
            frac: SkewFracField::new(ring.clone()),
            ring,
        }
    }

    pub fn field(&self) -> &FiniteField {
        self.ring.field()
    }

    /// The constant polynomial with the given coefficient.
    pub fn scalar(&self, c: FieldElem) -> SkewPoly {
        SkewPoly::constant(c)
    }

    pub fn f(&self) -> SkewPoly {
        self.ring.f()
    }
}

impl Scalars for SkewScalars {
    type Base = SkewRing;
    type Frac = SkewFracField;

    fn base(&self) -> &SkewRing {
        &self.ring
    }
    fn frac(&self) -> &SkewFracField {
        &self.frac
    }
    fn kind(&self) -> RingKind {
        RingKind::SkewPoly
    }
    fn prime(&self) -> u64 {
        self.ring.field().characteristic()
    }
    fn embed(&self, e: &SkewPoly) -> SkewFrac {
        self.frac.from_poly(e)
    }
    fn integral(&self, q: &SkewFrac) -> Option<SkewPoly> {
        if q.den.degree() == Some(0) {
            let inv = self.field().inv_elem(q.den.coeff(0)).ok()?;
            Some(self.ring.mul(&SkewPoly::constant(inv), &q.num))
        } else {
            None
        }
    }
    fn right_fraction(&self, q: &SkewFrac) -> (SkewPoly, SkewPoly) {
        if q.num.is_zero() {
            return (SkewPoly::zero(), self.ring.one());
        }
        // b⁻¹a = t·s⁻¹ where a·s = b·t
        let (_, s, t) = lcrm(&self.ring, &q.num, &q.den).expect("nonzero");
        (t, s)
    }
    fn left_fraction(&self, q: &SkewFrac) -> (SkewPoly, SkewPoly) {
        (q.den.clone(), q.num.clone())
    }
    fn tau(&self, q: &SkewFrac) -> SkewFrac {
        if q.num.is_zero() {
            return self.frac.zero();
        }
        // τ(b⁻¹a) = τ(a)·τ(b)⁻¹
        let ta = self.frac.tau_poly(&q.num);
        let tb = self.frac.tau_poly(&q.den);
        self.frac.mul(&ta, &self.frac.inv(&tb).expect("nonzero"))
    }
    fn uniformizer(&self) -> SkewPoly {
        self.ring.f()
    }
    fn supports_flock(&self) -> bool {
        true
    }
    fn residue_field(&self) -> Result<&FiniteField> {
        Ok(self.ring.field())
    }
    fn residue(&self, q: &SkewFrac) -> Result<FieldElem> {
        self.frac.residue_value(q)
    }
    fn lift(&self, x: FieldElem) -> Result<SkewFrac> {
        Ok(self.frac.from_poly(&SkewPoly::constant(x)))
    }
    fn residue_twist(&self, x: FieldElem) -> Result<FieldElem> {
        // F·x·F⁻¹ = x^p
        Ok(self.field().frobenius(x))
    }
}

impl SkewRing {
    /// Split `a = F^e·a'` with `v(a') = 0`.
    pub fn split_left_power(&self, a: &SkewPoly) -> Option<(usize, SkewPoly)> {
        let e = a.order()?;
        Some((e, self.strip_left_f(a, e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx4() -> SkewScalars {
        SkewScalars::new(FiniteField::new(2, &[1, 1, 1]).unwrap())
    }

    fn poly(s: &SkewScalars, c: &[u64]) -> SkewPoly {
        SkewPoly::new(c.iter().map(|&x| s.field().elem(x).unwrap()).collect())
    }

    #[test]
    fn commutation_rule() {
        let s = ctx4();
        let r = s.base();
        let lam = s.field().gen();
        let lam2 = s.field().frobenius(lam);
        assert_eq!(r.mul(&s.f(), &s.scalar(lam)), SkewPoly::monomial(lam2, 1));
        assert_eq!(r.mul(&s.f(), &s.f()), SkewPoly::monomial(FieldElem(1), 2));
        let one_f = poly(&s, &[1, 1]);
        assert_eq!(r.mul(&one_f, &one_f), poly(&s, &[1, 0, 1]));
    }

    #[test]
    fn divisions() {
        let s = ctx4();
        let r = s.base();
        let f2 = SkewPoly::monomial(FieldElem(1), 2);
        assert_eq!(r.div_rem_left(&f2, &s.f()).unwrap(), (s.f(), SkewPoly::zero()));
        let f1 = poly(&s, &[1, 1]);
        assert_eq!(r.div_rem_left(&f1, &s.f()).unwrap(), (r.one(), r.one()));
        let lam = s.field().gen();
        let lam_f = SkewPoly::monomial(lam, 1);
        let (q, rem) = r.div_rem_right(&lam_f, &s.f()).unwrap();
        assert!(rem.is_zero());
        assert_eq!(q, s.scalar(s.field().frobenius_inv(lam)));
        assert_eq!(r.mul(&s.f(), &q), lam_f);
        assert_eq!(r.div_rem_left(&f1, &SkewPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn lclm_examples() {
        let s = ctx4();
        let r = s.base();
        let (m, c1, c2) = lclm(r, &s.f(), &s.f()).unwrap();
        assert_eq!(r.mul(&c1, &s.f()), m);
        assert_eq!(r.mul(&c2, &s.f()), m);
        assert_eq!(m.degree(), Some(1));
        let (m, _, _) = lclm(r, &s.f(), &r.one()).unwrap();
        assert_eq!(m.degree(), Some(1));
        let f2 = SkewScalars::new(FiniteField::prime_field(2).unwrap());
        let a = poly(&f2, &[1, 1]);
        let (m, c1, c2) = lclm(f2.base(), &a, &f2.f()).unwrap();
        assert_eq!(m.degree(), Some(2));
        assert_eq!(f2.base().mul(&c1, &a), f2.base().mul(&c2, &f2.f()));
    }

    #[test]
    fn fraction_examples() {
        let s = ctx4();
        let q = s.frac();
        let finv = q.f_pow_inv(1);
        let f = s.embed(&s.f());
        assert!(q.is_one(&q.mul(&finv, &f)));
        let sum = q.add(&finv, &q.one());
        assert_eq!(q.valuation(&sum), Val::Finite(-1));
        let lam = s.field().gen();
        let lam_q = s.embed(&s.scalar(lam));
        let x = q.mul(&finv, &lam_q);
        assert!(q.equal(&q.mul(&f, &x), &lam_q));
        // τ(F) = F⁻¹, τ(λF) = F⁻¹λ
        assert!(q.equal(&s.tau(&f), &finv));
        let lam_f = s.embed(&SkewPoly::monomial(lam, 1));
        assert!(q.equal(&s.tau(&lam_f), &x));
        assert!(q.equal(&s.tau(&s.tau(&lam_f)), &lam_f));
    }

    #[test]
    fn residues() {
        let s = ctx4();
        let q = s.frac();
        let one_f = s.embed(&poly(&s, &[1, 1]));
        assert_eq!(s.residue(&one_f).unwrap(), FieldElem(1));
        let lam = s.field().gen();
        let x = q.mul(&q.inv(&one_f).unwrap(), &s.embed(&s.scalar(lam)));
        assert_eq!(s.residue(&x).unwrap(), lam);
        assert!(s.residue(&q.f_pow_inv(1)).is_err());
        assert_eq!(s.residue(&s.embed(&s.f())).unwrap(), FieldElem(0));
    }
}
