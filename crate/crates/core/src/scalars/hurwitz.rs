//! Hurwitz quaternions `(A + Bi + Cj + Dk)/2` with `A ≡ B ≡ C ≡ D (mod 2)`,
//! and the rational quaternion algebra containing them.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{FieldElem, FiniteField};
use super::integers::padic_order;
use super::traits::{DivisionRing, EuclideanRing, Ring, RingKind, Scalars};
use super::value::Val;
use crate::error::{Error, Result};

fn qmul<T>(x: &[T; 4], y: &[T; 4]) -> [T; 4]
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
    T: std::ops::Add<Output = T> + std::ops::Sub<Output = T>,
{
    let [a1, b1, c1, d1] = x;
    let [a2, b2, c2, d2] = y;
    [
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ]
}

/// A Hurwitz quaternion stored by its doubled coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hurwitz {
    d: [BigInt; 4],
}

impl Hurwitz {
    /// From doubled coordinates; rejects mixed parity.
    pub fn from_doubled(d: [BigInt; 4]) -> Result<Self> {
        let par = d[0].is_odd();
        if d.iter().any(|x| x.is_odd() != par) {
            return Err(Error::Invariant(format!(
                "Hurwitz coordinates [{}, {}, {}, {}] mix parities",
                d[0], d[1], d[2], d[3]
            )));
        }
        Ok(Hurwitz { d })
    }

    pub fn from_doubled_i64(d: [i64; 4]) -> Result<Self> {
        Hurwitz::from_doubled(d.map(BigInt::from))
    }

    /// The integer quaternion `a + bi + cj + dk`.
    pub fn integer(a: i64, b: i64, c: i64, d: i64) -> Self {
        Hurwitz {
            d: [a, b, c, d].map(|x| BigInt::from(2 * x)),
        }
    }

    pub fn doubled(&self) -> &[BigInt; 4] {
        &self.d
    }

    pub fn conjugate(&self) -> Self {
        let [a, b, c, d] = &self.d;
        Hurwitz {
            d: [a.clone(), -b, -c, -d],
        }
    }

    pub fn norm(&self) -> BigInt {
        let s: BigInt = self.d.iter().map(|x| x * x).sum();
        s / 4
    }

    pub fn is_zero(&self) -> bool {
        self.d.iter().all(Zero::is_zero)
    }

    fn to_rational(&self) -> RatQuat {
        RatQuat(self.d.clone().map(|x| BigRational::new(x, BigInt::from(2))))
    }

    /// The 24 units.
    pub fn units() -> Vec<Hurwitz> {
        let mut out = Vec::with_capacity(24);
        for pos in 0..4 {
            for s in [2, -2] {
                let mut d = [0i64; 4];
                d[pos] = s;
                out.push(Hurwitz::from_doubled_i64(d).unwrap());
            }
        }
        for mask in 0..16 {
            let d = [0, 1, 2, 3].map(|b| if mask >> b & 1 == 1 { -1 } else { 1 });
            out.push(Hurwitz::from_doubled_i64(d).unwrap());
        }
        out
    }
}

impl fmt::Display for Hurwitz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let two = BigInt::from(2);
        let half = self.d[0].is_odd();
        let mut parts = Vec::new();
        for (x, unit) in self.d.iter().zip(["", "i", "j", "k"]) {
            if x.is_zero() {
                continue;
            }
            let coef = if half { x.to_string() } else { (x / &two).to_string() };
            let term = match (coef.as_str(), unit) {
                (c, "") => c.to_string(),
                ("1", u) => u.to_string(),
                ("-1", u) => format!("-{u}"),
                (c, u) => format!("{c}{u}"),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        let body = parts.join(" + ").replace("+ -", "- ");
        if half {
            write!(f, "({body})/2")
        } else {
            write!(f, "{body}")
        }
    }
}

/// The Hurwitz order with valuation `v_p(N(x))`.
#[derive(Debug, Clone)]
pub struct HurwitzRing {
    p: u64,
}

impl HurwitzRing {
    pub fn new(p: u64) -> Self {
        HurwitzRing { p }
    }

    /// Nearest point of the Hurwitz lattice to `x / n`, where `x` is given in
    /// doubled coordinates. Ties go to the lexicographically smaller point.
    fn nearest(x: &[BigInt; 4], n: &BigInt) -> Hurwitz {
        let two = BigInt::from(2);
        // round(t) = floor(t + 1/2) for t = num/den
        let round = |num: &BigInt, den: &BigInt| -> BigInt { (num * &two + den).div_floor(&(den * &two)) };
        // integer coordinates: doubled = 2·round(x / 2n)
        let int_pt: [BigInt; 4] = std::array::from_fn(|i| round(&x[i], &(n * &two)) * &two);
        // half-integer coordinates: doubled = 2·round((x/n − 1)/2) + 1
        let half_pt: [BigInt; 4] = std::array::from_fn(|i| round(&(&x[i] - n), &(n * &two)) * &two + 1);
        let dist = |pt: &[BigInt; 4]| -> BigInt {
            pt.iter()
                .zip(x)
                .map(|(q, xi)| {
                    let t = q * n - xi;
                    &t * &t
                })
                .sum()
        };
        let (di, dh) = (dist(&int_pt), dist(&half_pt));
        let pick = if di < dh || (di == dh && int_pt <= half_pt) {
            int_pt
        } else {
            half_pt
        };
        Hurwitz { d: pick }
    }
}

impl Ring for HurwitzRing {
    type Elem = Hurwitz;

    fn zero(&self) -> Hurwitz {
        Hurwitz::integer(0, 0, 0, 0)
    }
    fn one(&self) -> Hurwitz {
        Hurwitz::integer(1, 0, 0, 0)
    }
    fn add(&self, a: &Hurwitz, b: &Hurwitz) -> Hurwitz {
        Hurwitz {
            d: std::array::from_fn(|i| &a.d[i] + &b.d[i]),
        }
    }
    fn neg(&self, a: &Hurwitz) -> Hurwitz {
        Hurwitz {
            d: std::array::from_fn(|i| -&a.d[i]),
        }
    }
    fn mul(&self, a: &Hurwitz, b: &Hurwitz) -> Hurwitz {
        let prod = qmul(&a.d, &b.d);
        Hurwitz {
            d: prod.map(|x| {
                debug_assert!(x.is_even());
                x / 2
            }),
        }
    }
    fn is_zero(&self, a: &Hurwitz) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &Hurwitz) -> String {
        a.to_string()
    }
}

impl EuclideanRing for HurwitzRing {
    fn div_rem_left(&self, a: &Hurwitz, b: &Hurwitz) -> Result<(Hurwitz, Hurwitz)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // a·b⁻¹ = a·b̄ / N(b)
        let x = self.mul(a, &b.conjugate());
        let q = Self::nearest(&x.d, &b.norm());
        let r = self.sub(a, &self.mul(&q, b));
        Ok((q, r))
    }
    fn div_rem_right(&self, a: &Hurwitz, b: &Hurwitz) -> Result<(Hurwitz, Hurwitz)> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let x = self.mul(&b.conjugate(), a);
        let q = Self::nearest(&x.d, &b.norm());
        let r = self.sub(a, &self.mul(b, &q));
        Ok((q, r))
    }
    fn size(&self, a: &Hurwitz) -> u128 {
        u128::try_from(a.norm()).unwrap_or(u128::MAX)
    }
    fn right_normalizer(&self, a: &Hurwitz) -> Hurwitz {
        Hurwitz::units()
            .into_iter()
            .max_by(|u, w| self.mul(a, u).d.cmp(&self.mul(a, w).d))
            .expect("units")
    }
    fn left_normalizer(&self, a: &Hurwitz) -> Hurwitz {
        Hurwitz::units()
            .into_iter()
            .max_by(|u, w| self.mul(u, a).d.cmp(&self.mul(w, a).d))
            .expect("units")
    }
    fn valuation(&self, a: &Hurwitz) -> Val {
        if a.is_zero() {
            Val::Infinity
        } else {
            Val::Finite(padic_order(&a.norm(), self.p) as i64)
        }
    }
}

/// A quaternion with rational coordinates `a + bi + cj + dk`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatQuat(pub [BigRational; 4]);

impl RatQuat {
    pub fn conjugate(&self) -> RatQuat {
        let [a, b, c, d] = &self.0;
        RatQuat([a.clone(), -b, -c, -d])
    }

    pub fn norm(&self) -> BigRational {
        self.0.iter().map(|x| x * x).sum()
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for RatQuat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (x, unit) in self.0.iter().zip(["", "i", "j", "k"]) {
            if x.is_zero() {
                continue;
            }
            let c = if x.is_integer() { x.to_string() } else { format!("({x})") };
            parts.push(match (c.as_str(), unit) {
                (c, "") => c.to_string(),
                ("1", u) => u.to_string(),
                ("-1", u) => format!("-{u}"),
                (c, u) => format!("{c}{u}"),
            });
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
        }
    }
}

/// The quaternion algebra over `ℚ` with valuation `v_p(N(x))`.
#[derive(Debug, Clone)]
pub struct QuaternionAlgebra {
    p: u64,
}

impl Ring for QuaternionAlgebra {
    type Elem = RatQuat;

    fn zero(&self) -> RatQuat {
        RatQuat(std::array::from_fn(|_| BigRational::zero()))
    }
    fn one(&self) -> RatQuat {
        RatQuat(std::array::from_fn(|i| if i == 0 { BigRational::one() } else { BigRational::zero() }))
    }
    fn add(&self, a: &RatQuat, b: &RatQuat) -> RatQuat {
        RatQuat(std::array::from_fn(|i| &a.0[i] + &b.0[i]))
    }
    fn neg(&self, a: &RatQuat) -> RatQuat {
        RatQuat(std::array::from_fn(|i| -&a.0[i]))
    }
    fn mul(&self, a: &RatQuat, b: &RatQuat) -> RatQuat {
        RatQuat(qmul(&a.0, &b.0))
    }
    fn is_zero(&self, a: &RatQuat) -> bool {
        a.is_zero()
    }
    fn format(&self, a: &RatQuat) -> String {
        a.to_string()
    }
}

impl DivisionRing for QuaternionAlgebra {
    fn inv(&self, a: &RatQuat) -> Result<RatQuat> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = a.norm();
        Ok(RatQuat(a.conjugate().0.map(|x| x / &n)))
    }
    fn valuation(&self, a: &RatQuat) -> Val {
        if a.is_zero() {
            return Val::Infinity;
        }
        let n = a.norm();
        Val::Finite(padic_order(n.numer(), self.p) as i64 - padic_order(n.denom(), self.p) as i64)
    }
}

/// `E` = Hurwitz order, `Q` = rational quaternions, `τ` = conjugation.
#[derive(Debug, Clone)]
pub struct HurwitzScalars {
    ring: HurwitzRing,
    frac: QuaternionAlgebra,
    uniformizer: Hurwitz,
}

impl HurwitzScalars {
    pub fn new(p: u64) -> Result<Self> {
        if !super::field::is_prime(p) {
            return Err(Error::Invariant(format!("{p} is not prime")));
        }
        Ok(HurwitzScalars {
            ring: HurwitzRing::new(p),
            frac: QuaternionAlgebra { p },
            uniformizer: Self::find_uniformizer(p),
        })
    }

    /// An element of norm `p`: `1 + i` for `p = 2`, otherwise the first
    /// sum of four squares found.
    fn find_uniformizer(p: u64) -> Hurwitz {
        if p == 2 {
            return Hurwitz::integer(1, 1, 0, 0);
        }
        let m = (p as f64).sqrt() as i64 + 1;
        for a in 0..=m {
            for b in 0..=m {
                for c in 0..=m {
                    let rest = p as i64 - a * a - b * b - c * c;
                    if rest < 0 {
                        break;
                    }
                    let d = (rest as f64).sqrt() as i64;
                    for d in [d - 1, d, d + 1] {
                        if d >= 0 && d * d == rest {
                            return Hurwitz::integer(a, b, c, d);
                        }
                    }
                }
            }
        }
        unreachable!("every prime is a sum of four squares")
    }

    fn unsupported(&self, op: &str) -> Error {
        Error::unsupported("hurwitz", op)
    }
}

impl Scalars for HurwitzScalars {
    type Base = HurwitzRing;
    type Frac = QuaternionAlgebra;

    fn base(&self) -> &HurwitzRing {
        &self.ring
    }
    fn frac(&self) -> &QuaternionAlgebra {
        &self.frac
    }
    fn kind(&self) -> RingKind {
        RingKind::Hurwitz
    }
    fn prime(&self) -> u64 {
        self.ring.p
    }
    fn embed(&self, e: &Hurwitz) -> RatQuat {
        e.to_rational()
    }
    fn integral(&self, q: &RatQuat) -> Option<Hurwitz> {
        let two = BigRational::from_integer(BigInt::from(2));
        let mut d = Vec::with_capacity(4);
        for x in &q.0 {
            let y = x * &two;
            if !y.is_integer() {
                return None;
            }
            d.push(y.to_integer());
        }
        Hurwitz::from_doubled(d.try_into().unwrap()).ok()
    }
    fn right_fraction(&self, q: &RatQuat) -> (Hurwitz, Hurwitz) {
        let den = q.0.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut best = den.clone();
        if den.is_even() {
            let half: BigInt = &den / 2;
            let scaled = RatQuat(q.0.clone().map(|x| x * BigRational::from_integer(half.clone())));
            if self.integral(&scaled).is_some() {
                best = half;
            }
        }
        let scale = BigRational::from_integer(best.clone());
        let num = self
            .integral(&RatQuat(q.0.clone().map(|x| x * &scale)))
            .expect("cleared denominators");
        let b = Hurwitz {
            d: [best.abs() * 2, BigInt::zero(), BigInt::zero(), BigInt::zero()],
        };
        (num, b)
    }
    fn left_fraction(&self, q: &RatQuat) -> (Hurwitz, Hurwitz) {
        // the denominator is a central integer
        let (a, b) = self.right_fraction(q);
        (b, a)
    }
    fn tau(&self, q: &RatQuat) -> RatQuat {
        q.conjugate()
    }
    fn uniformizer(&self) -> Hurwitz {
        self.uniformizer.clone()
    }
    fn supports_flock(&self) -> bool {
        false
    }
    fn residue_field(&self) -> Result<&FiniteField> {
        Err(self.unsupported("residue field"))
    }
    fn residue(&self, _q: &RatQuat) -> Result<FieldElem> {
        Err(self.unsupported("residue map"))
    }
    fn lift(&self, _x: FieldElem) -> Result<RatQuat> {
        Err(self.unsupported("residue lift"))
    }
    fn residue_twist(&self, _x: FieldElem) -> Result<FieldElem> {
        Err(self.unsupported("residue automorphism"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(a: i64, b: i64, c: i64, d: i64) -> Hurwitz {
        Hurwitz::integer(a, b, c, d)
    }

    #[test]
    fn products_and_norms() {
        let r = HurwitzRing::new(2);
        assert_eq!(r.mul(&h(1, 1, 0, 0), &h(1, -1, 0, 0)), h(2, 0, 0, 0));
        assert_eq!(r.mul(&h(0, 1, 0, 0), &h(0, 0, 1, 0)), h(0, 0, 0, 1));
        assert_eq!(r.mul(&h(0, 0, 1, 0), &h(0, 1, 0, 0)), h(0, 0, 0, -1));
        let w = Hurwitz::from_doubled_i64([1, 1, 1, 1]).unwrap();
        assert_eq!(w.norm(), BigInt::one());
        assert!(Hurwitz::from_doubled_i64([1, 1, 0, 0]).is_err());
        assert_eq!(Hurwitz::units().len(), 24);
        assert!(Hurwitz::units().iter().all(|u| u.norm().is_one()));
    }

    #[test]
    fn division() {
        let r = HurwitzRing::new(2);
        let (q, rem) = r.div_rem_left(&h(2, 0, 0, 0), &h(1, 1, 0, 0)).unwrap();
        assert_eq!(q, h(1, -1, 0, 0));
        assert!(rem.is_zero());
        let a = h(7, -3, 2, 5);
        let b = Hurwitz::from_doubled_i64([3, 1, -1, 1]).unwrap();
        let (q, rem) = r.div_rem_right(&a, &b).unwrap();
        assert_eq!(r.add(&r.mul(&b, &q), &rem), a);
        assert!(rem.norm() < b.norm());
    }

    #[test]
    fn valuations() {
        let s = HurwitzScalars::new(2).unwrap();
        assert_eq!(s.base().valuation(&h(2, 0, 0, 0)), Val::Finite(2));
        assert_eq!(s.base().valuation(&h(1, 1, 0, 0)), Val::Finite(1));
        let i = s.embed(&h(0, 1, 0, 0));
        assert_eq!(s.tau(&i), s.embed(&h(0, -1, 0, 0)));
        assert!(matches!(s.residue(&i), Err(Error::Unsupported { .. })));
        let s3 = HurwitzScalars::new(3).unwrap();
        assert_eq!(s3.uniformizer().norm(), BigInt::from(3));
    }

    #[test]
    fn fractions() {
        let s = HurwitzScalars::new(2).unwrap();
        let x = s.frac().inv(&s.embed(&h(1, 1, 0, 0))).unwrap();
        let (a, b) = s.right_fraction(&x);
        let back = s.frac().mul(&s.embed(&a), &s.frac().inv(&s.embed(&b)).unwrap());
        assert_eq!(back, x);
        assert_eq!(s.integral(&x), None);
        let w = Hurwitz::from_doubled_i64([1, -1, 1, 1]).unwrap();
        assert_eq!(s.integral(&s.embed(&w)), Some(w));
    }
}
