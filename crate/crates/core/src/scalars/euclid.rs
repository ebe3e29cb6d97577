//! Extended Euclidean algorithms on either side of a noncommutative
//! Euclidean domain.

use super::traits::EuclideanRing;
use crate::error::{Error, Result};

/// Greatest common right divisor `g` (so `a = x·g`, `b = y·g`).
pub fn gcrd<R: EuclideanRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !ring.is_zero(&y) {
        let (_, r) = ring.div_rem_left(&x, &y)?;
        x = y;
        y = r;
    }
    Ok(x)
}

/// Greatest common left divisor `g` (so `a = g·x`, `b = g·y`).
pub fn gcld<R: EuclideanRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<R::Elem> {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !ring.is_zero(&y) {
        let (_, r) = ring.div_rem_right(&x, &y)?;
        x = y;
        y = r;
    }
    Ok(x)
}

/// Least common left multiple: `(m, c1, c2)` with `m = c1·a = c2·b`.
pub fn lclm<R: EuclideanRing>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<(R::Elem, R::Elem, R::Elem)> {
    if ring.is_zero(a) || ring.is_zero(b) {
        return Err(Error::Precondition("lclm of zero".into()));
    }
    // invariant: r_i = s_i·a + t_i·b
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ring.one(), ring.zero());
    let (mut t0, mut t1) = (ring.zero(), ring.one());
    while !ring.is_zero(&r1) {
        let (q, r) = ring.div_rem_left(&r0, &r1)?;
        let s = ring.sub(&s0, &ring.mul(&q, &s1));
        let t = ring.sub(&t0, &ring.mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    // s1·a + t1·b = 0
    let c1 = s1;
    let c2 = ring.neg(&t1);
    let m = ring.mul(&c1, a);
    Ok((m, c1, c2))
}

/// Least common right multiple: `(m, c1, c2)` with `m = a·c1 = b·c2`.
pub fn lcrm<R: EuclideanRing>(
    ring: &R,
    a: &R::Elem,
    b: &R::Elem,
) -> Result<(R::Elem, R::Elem, R::Elem)> {
    if ring.is_zero(a) || ring.is_zero(b) {
        return Err(Error::Precondition("lcrm of zero".into()));
    }
    // invariant: r_i = a·s_i + b·t_i
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ring.one(), ring.zero());
    let (mut t0, mut t1) = (ring.zero(), ring.one());
    while !ring.is_zero(&r1) {
        let (q, r) = ring.div_rem_right(&r0, &r1)?;
        let s = ring.sub(&s0, &ring.mul(&s1, &q));
        let t = ring.sub(&t0, &ring.mul(&t1, &q));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let c1 = s1;
    let c2 = ring.neg(&t1);
    let m = ring.mul(a, &c1);
    Ok((m, c1, c2))
}

/// Exact quotient `q` with `a = b·q`, if it exists.
pub fn exact_div_right<R: EuclideanRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<Option<R::Elem>> {
    let (q, r) = ring.div_rem_right(a, b)?;
    Ok(if ring.is_zero(&r) { Some(q) } else { None })
}

/// Exact quotient `q` with `a = q·b`, if it exists.
pub fn exact_div_left<R: EuclideanRing>(ring: &R, a: &R::Elem, b: &R::Elem) -> Result<Option<R::Elem>> {
    let (q, r) = ring.div_rem_left(a, b)?;
    Ok(if ring.is_zero(&r) { Some(q) } else { None })
}
