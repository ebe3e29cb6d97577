//! Finite fields `F_{p^k}` given by an explicit irreducible modulus.
//!
//! Elements are packed into a `u64` as the base-`p` digits of their
//! coordinates in the power basis `1, x, …, x^{k-1}`.

use std::fmt;
use std::sync::Arc;

use super::traits::{DivisionRing, Ring};
use super::value::Val;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub u64);

#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// Monic modulus, ascending coefficients, length `k + 1`.
    modulus: Arc<[u64]>,
    order: u64,
    tables: Option<Arc<Tables>>,
}

/// Exponential and logarithm tables with respect to a primitive element.
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    frob: Vec<u32>,
}

/// Fields up to this order get lookup tables.
const TABLE_LIMIT: u64 = 1 << 16;

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.p, self.k, self.modulus)
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense polynomials over F_p, ascending coefficients, trimmed.
mod fp_poly {
    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = ((out[i + j] as u128 + x as u128 * y as u128) % p as u128) as u64;
            }
        }
        trim(&mut out);
        out
    }

    pub fn inv_mod_p(a: u64, p: u64) -> u64 {
        // p prime, a != 0
        let mut r = 1u128;
        let mut b = a as u128 % p as u128;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u128;
            }
            b = b * b % p as u128;
            e >>= 1;
        }
        r as u64
    }

    /// Remainder of `a` modulo `m` (`m` nonzero).
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod_p(m[dm], p);
        while r.len() > dm {
            let dr = r.len() - 1;
            let c = (r[dr] as u128 * lead_inv as u128 % p as u128) as u64;
            for (i, &mi) in m.iter().enumerate() {
                let idx = dr - dm + i;
                r[idx] = ((r[idx] as u128 + (p - c) as u128 * mi as u128) % p as u128) as u64;
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    pub fn pow_mod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut base = rem(a, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &base, p), m, p);
            }
            base = rem(&mul(&base, &base, p), m, p);
            e >>= 1;
        }
        acc
    }
}

/// Rabin's irreducibility test for a monic polynomial over `F_p`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    if k == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let frob_iter = |m: usize| {
        let mut y = x.clone();
        for _ in 0..m {
            y = fp_poly::pow_mod(&y, p, f, p);
        }
        y
    };
    let full = frob_iter(k);
    if !fp_poly::sub(&full, &x, p).is_empty() {
        return false;
    }
    for q in prime_factors(k) {
        let y = frob_iter(k / q);
        let d = fp_poly::sub(&y, &x, p);
        let g = fp_poly::gcd(f, &d, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl FiniteField {
    /// Build `F_p[x]/(modulus)`. The modulus is given with ascending
    /// coefficients and is made monic.
    pub fn new(p: u64, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invariant(format!("{p} is not prime")));
        }
        let mut m: Vec<u64> = modulus.to_vec();
        if m.iter().any(|&c| c >= p) {
            return Err(Error::Invariant(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        fp_poly::trim(&mut m);
        if m.len() < 2 {
            return Err(Error::Invariant("modulus must have degree at least 1".into()));
        }
        let lead_inv = fp_poly::inv_mod_p(*m.last().unwrap(), p);
        for c in m.iter_mut() {
            *c = (*c as u128 * lead_inv as u128 % p as u128) as u64;
        }
        let k = m.len() - 1;
        let order = (p as u128).checked_pow(k as u32).filter(|&q| q < (1u128 << 63));
        let Some(order) = order else {
            return Err(Error::Invariant(format!("field {p}^{k} is too large")));
        };
        if !is_irreducible(&m, p) {
            return Err(Error::Invariant(format!(
                "modulus {m:?} is reducible over F_{p}"
            )));
        }
        let mut field = FiniteField {
            p,
            k,
            modulus: m.into(),
            order: order as u64,
            tables: None,
        };
        if field.order <= TABLE_LIMIT {
            field.tables = Some(Arc::new(field.build_tables()));
        }
        Ok(field)
    }

    fn build_tables(&self) -> Tables {
        let q = self.order;
        let n = q - 1;
        let mut factors = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                factors.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        let g = (1..q)
            .map(FieldElem)
            .find(|&g| factors.iter().all(|&f| self.pow_slow(g, n / f).0 != 1))
            .expect("the multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = FieldElem(1);
        for i in 0..n {
            exp.push(x.0 as u32);
            log[x.0 as usize] = i as u32;
            x = self.mul_slow(x, g);
        }
        for i in 0..n as usize {
            exp.push(exp[i]);
        }
        let frob = (0..q).map(|a| self.pow_slow(FieldElem(a), self.p).0 as u32).collect();
        Tables { exp, log, frob }
    }

    fn mul_slow(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        if self.k == 1 {
            return FieldElem((a.0 as u128 * b.0 as u128 % self.p as u128) as u64);
        }
        let prod = fp_poly::mul(&self.coords(a), &self.coords(b), self.p);
        let r = fp_poly::rem(&prod, &self.modulus, self.p);
        self.pack(&r)
    }

    fn pow_slow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut acc = FieldElem(1);
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    /// `F_{p^k}` with the lexicographically smallest monic irreducible modulus.
    pub fn with_degree(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invariant(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Invariant("extension degree must be positive".into()));
        }
        if k == 1 {
            return FiniteField::new(p, &[0, 1]);
        }
        let count = (p as u128).pow(k as u32);
        for code in 0..count {
            let mut m = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                m.push((c % p as u128) as u64);
                c /= p as u128;
            }
            m.push(1);
            if m[0] != 0 && is_irreducible(&m, p) {
                return FiniteField::new(p, &m);
            }
        }
        Err(Error::Invariant(format!("no irreducible polynomial of degree {k} over F_{p}")))
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        FiniteField::with_degree(p, 1)
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coords(&self, a: FieldElem) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.k);
        let mut v = a.0;
        for _ in 0..self.k {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<FieldElem> {
        if coords.len() > self.k {
            return Err(Error::Schema(format!(
                "field element has {} coordinates, expected {}",
                coords.len(),
                self.k
            )));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= self.p) {
            return Err(Error::Schema(format!("coordinate {c} out of range for p = {}", self.p)));
        }
        Ok(self.pack(coords))
    }

    fn pack(&self, coords: &[u64]) -> FieldElem {
        let mut v = 0u64;
        for &c in coords.iter().take(self.k).rev() {
            v = v * self.p + c;
        }
        FieldElem(v)
    }

    /// Residue class of an integer.
    pub fn from_int(&self, n: i64) -> FieldElem {
        let c = n.rem_euclid(self.p as i64) as u64;
        FieldElem(c)
    }

    /// The class of `x`, a generator of the field over `F_p` when `k > 1`.
    pub fn gen(&self) -> FieldElem {
        if self.k == 1 {
            // x ≡ -m_0 in the degree one case
            FieldElem((self.p - self.modulus[0]) % self.p)
        } else {
            FieldElem(self.p)
        }
    }

    pub fn elem(&self, code: u64) -> Result<FieldElem> {
        if code >= self.order {
            return Err(Error::Schema(format!("element code {code} out of range")));
        }
        Ok(FieldElem(code))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.order).map(FieldElem)
    }

    pub fn add_elem(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if self.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.k {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * place;
            place = place.wrapping_mul(self.p);
            x /= self.p;
            y /= self.p;
        }
        FieldElem(out)
    }

    pub fn neg_elem(&self, a: FieldElem) -> FieldElem {
        if self.p == 2 {
            return a;
        }
        let c: Vec<u64> = self.coords(a).into_iter().map(|d| (self.p - d) % self.p).collect();
        self.pack(&c)
    }

    pub fn sub_elem(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add_elem(a, self.neg_elem(b))
    }

    pub fn mul_elem(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem(0);
        }
        match &self.tables {
            Some(t) => FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize] as u64),
            None => self.mul_slow(a, b),
        }
    }

    pub fn pow_elem(&self, a: FieldElem, e: u64) -> FieldElem {
        match &self.tables {
            Some(t) if a.0 != 0 => {
                let n = self.order - 1;
                let l = t.log[a.0 as usize] as u128 * (e % n) as u128 % n as u128;
                FieldElem(t.exp[l as usize] as u64)
            }
            _ => self.pow_slow(a, e),
        }
    }

    pub fn inv_elem(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => {
                let n = (self.order - 1) as u32;
                FieldElem(t.exp[((n - t.log[a.0 as usize]) % n) as usize] as u64)
            }
            None => self.pow_slow(a, self.order - 2),
        })
    }

    pub fn frobenius(&self, a: FieldElem) -> FieldElem {
        match &self.tables {
            Some(t) => FieldElem(t.frob[a.0 as usize] as u64),
            None => self.pow_slow(a, self.p),
        }
    }

    /// `frobenius^e` for any integer `e`; the Frobenius has order `k`.
    pub fn frobenius_pow(&self, a: FieldElem, e: i64) -> FieldElem {
        let steps = e.rem_euclid(self.k as i64);
        (0..steps).fold(a, |x, _| self.frobenius(x))
    }

    pub fn frobenius_inv(&self, a: FieldElem) -> FieldElem {
        self.frobenius_pow(a, -1)
    }

    pub fn format_elem(&self, a: FieldElem) -> String {
        if self.k == 1 {
            return a.0.to_string();
        }
        let c = self.coords(a);
        let mut terms = Vec::new();
        for (i, &d) in c.iter().enumerate().rev() {
            if d == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "g".to_string(),
                _ => format!("g^{i}"),
            };
            terms.push(match (d, i) {
                (_, 0) => d.to_string(),
                (1, _) => mono,
                _ => format!("{d}{mono}"),
            });
        }
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }

    /// All roots in this field of a polynomial over `F_p` (ascending coefficients).
    /// Exhaustive search, intended for fields of moderate size.
    pub fn roots_of(&self, poly: &[u64]) -> Result<Vec<FieldElem>> {
        if self.order > (1 << 24) {
            return Err(Error::Precondition(format!(
                "root search in a field of order {} is too expensive",
                self.order
            )));
        }
        let coeffs: Vec<FieldElem> = poly.iter().map(|&c| self.from_int(c as i64)).collect();
        Ok(self
            .elements()
            .filter(|&x| {
                let mut acc = FieldElem(0);
                for &c in coeffs.iter().rev() {
                    acc = self.add_elem(self.mul_elem(acc, x), c);
                }
                acc.0 == 0
            })
            .collect())
    }
}

impl Ring for FiniteField {
    type Elem = FieldElem;

    fn zero(&self) -> FieldElem {
        FieldElem(0)
    }
    fn one(&self) -> FieldElem {
        FieldElem(1)
    }
    fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add_elem(*a, *b)
    }
    fn neg(&self, a: &FieldElem) -> FieldElem {
        self.neg_elem(*a)
    }
    fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.mul_elem(*a, *b)
    }
    fn is_zero(&self, a: &FieldElem) -> bool {
        a.0 == 0
    }
    fn format(&self, a: &FieldElem) -> String {
        self.format_elem(*a)
    }
}

impl DivisionRing for FiniteField {
    fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        self.inv_elem(*a)
    }
    /// The trivial valuation.
    fn valuation(&self, a: &FieldElem) -> Val {
        if a.0 == 0 {
            Val::Infinity
        } else {
            Val::Finite(0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> FiniteField {
        FiniteField::new(2, &[1, 1, 1]).unwrap()
    }

    #[test]
    fn f4_products() {
        let f = f4();
        let lam = f.gen();
        let lam_plus_one = f.add_elem(lam, FieldElem(1));
        assert_eq!(f.mul_elem(lam, lam), lam_plus_one);
        assert_eq!(f.frobenius(lam), lam_plus_one);
        assert_eq!(f.inv_elem(FieldElem(1)).unwrap(), FieldElem(1));
        assert_eq!(f.frobenius_inv(f.frobenius(lam)), lam);
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        for (p, k) in [(2, 4), (3, 2), (7, 1)] {
            let f = FiniteField::with_degree(p, k).unwrap();
            assert!(f.tables.is_some());
            for a in f.elements() {
                assert_eq!(f.frobenius(a), f.pow_slow(a, p));
                for b in f.elements() {
                    assert_eq!(f.mul_elem(a, b), f.mul_slow(a, b));
                }
            }
        }
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(FiniteField::new(2, &[1, 0, 1]), Err(Error::Invariant(_))));
        assert!(FiniteField::new(4, &[1, 1]).is_err());
        assert!(FiniteField::new(3, &[1, 0, 1]).is_ok());
    }

    #[test]
    fn default_moduli_are_the_usual_ones() {
        assert_eq!(FiniteField::with_degree(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::with_degree(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::with_degree(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for (p, k) in [(2, 3), (3, 2), (5, 1)] {
            let f = FiniteField::with_degree(p, k).unwrap();
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                if a.0 != 0 {
                    assert_eq!(f.mul_elem(a, f.inv_elem(a).unwrap()), FieldElem(1));
                }
                assert_eq!(f.add_elem(a, f.neg_elem(a)), FieldElem(0));
                assert_eq!(f.frobenius_pow(a, k as i64), a);
                for &b in &els {
                    assert_eq!(f.mul_elem(a, b), f.mul_elem(b, a));
                    for &c in els.iter().step_by(3) {
                        let lhs = f.mul_elem(a, f.add_elem(b, c));
                        let rhs = f.add_elem(f.mul_elem(a, b), f.mul_elem(a, c));
                        assert_eq!(lhs, rhs);
                        assert_eq!(
                            f.mul_elem(f.mul_elem(a, b), c),
                            f.mul_elem(a, f.mul_elem(b, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn roots_of_modulus_in_extension() {
        let big = FiniteField::with_degree(2, 4).unwrap();
        let roots = big.roots_of(&[1, 1, 1]).unwrap();
        assert_eq!(roots.len(), 2);
    }
}
