//! Shared generators and law checks for the integration tests.
#![allow(dead_code)]

use endomatroid::linalg::{Level, ModuleMatrix};
use endomatroid::matrix::Matrix;
use endomatroid::scalars::euclid::{lclm, lcrm};
use endomatroid::scalars::{
    BaseElem, DivisionRing, FracElem, EuclideanRing, FieldElem, FiniteField, Hurwitz, HurwitzScalars, IntegerScalars, Ring,
    Scalars, SkewPoly, SkewScalars, Val,
};
use num_bigint::BigInt;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub fn rng(seed: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(seed)
}

fn below(rng: &mut SplitMix64, n: u64) -> u64 {
    rng.next_u64() % n
}

fn signed(rng: &mut SplitMix64, bound: i64) -> i64 {
    below(rng, 2 * bound as u64 + 1) as i64 - bound
}

/// A scalar context with a way to draw random ring elements of a given size.
pub trait Sample: Scalars {
    fn draw(&self, rng: &mut SplitMix64, size: usize) -> BaseElem<Self>;
}

impl Sample for SkewScalars {
    fn draw(&self, rng: &mut SplitMix64, size: usize) -> SkewPoly {
        let q = self.field().order();
        let len = below(rng, size as u64 + 1) as usize;
        SkewPoly::new((0..len).map(|_| FieldElem(below(rng, q))).collect())
    }
}

impl Sample for IntegerScalars {
    fn draw(&self, rng: &mut SplitMix64, size: usize) -> BigInt {
        let bound = 10i64.pow(size.min(12) as u32);
        let p = BigInt::from(self.prime());
        let e = below(rng, 4) as u32;
        BigInt::from(signed(rng, bound)) * p.pow(e)
    }
}

impl Sample for HurwitzScalars {
    fn draw(&self, rng: &mut SplitMix64, size: usize) -> Hurwitz {
        let parity = (rng.next_u64() & 1) as i64;
        let bound = 2 * size as i64 + 1;
        let d = [0; 4].map(|_| 2 * signed(rng, bound) + parity);
        Hurwitz::from_doubled_i64(d).expect("coordinates share a parity")
    }
}

pub fn skew_f4() -> SkewScalars {
    SkewScalars::new(FiniteField::new(2, &[1, 1, 1]).unwrap())
}

pub fn skew_f9() -> SkewScalars {
    SkewScalars::new(FiniteField::new(3, &[1, 0, 1]).unwrap())
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Ring, Euclidean, valuation, `τ` and residue laws on one triple.
pub fn check_laws<S: Scalars>(s: &S, a: &BaseElem<S>, b: &BaseElem<S>, c: &BaseElem<S>) -> Result<(), String> {
    let r = s.base();
    let fa = |x: &BaseElem<S>| r.format(x);
    let ctx = || format!("a = {}, b = {}, c = {}", fa(a), fa(b), fa(c));

    ensure!(r.equal(&r.mul(&r.mul(a, b), c), &r.mul(a, &r.mul(b, c))), "associativity: {}", ctx());
    ensure!(
        r.equal(&r.mul(a, &r.add(b, c)), &r.add(&r.mul(a, b), &r.mul(a, c))),
        "left distributivity: {}",
        ctx()
    );
    ensure!(
        r.equal(&r.mul(&r.add(a, b), c), &r.add(&r.mul(a, c), &r.mul(b, c))),
        "right distributivity: {}",
        ctx()
    );
    ensure!(r.equal(&r.mul(a, &r.one()), a) && r.equal(&r.mul(&r.one(), a), a), "unit: {}", ctx());
    ensure!(r.is_zero(&r.sub(a, a)) && r.equal(&r.add(a, &r.zero()), a), "additive group: {}", ctx());

    let v = |x: &BaseElem<S>| EuclideanRing::valuation(r, x);
    ensure!(v(&r.mul(a, b)) == v(a) + v(b), "valuation multiplicative: {}", ctx());
    ensure!(v(&r.add(a, b)) >= v(a).min(v(b)), "ultrametric: {}", ctx());
    ensure!(v(&s.uniformizer()) == Val::Finite(1), "v(π) = 1");

    if !r.is_zero(b) {
        let (q, rem) = r.div_rem_left(a, b).map_err(|e| e.to_string())?;
        ensure!(r.equal(a, &r.add(&r.mul(&q, b), &rem)), "a = q·b + r: {}", ctx());
        ensure!(r.size(&rem) < r.size(b), "left remainder too large: {}", ctx());
        let (q, rem) = r.div_rem_right(a, b).map_err(|e| e.to_string())?;
        ensure!(r.equal(a, &r.add(&r.mul(b, &q), &rem)), "a = b·q + r: {}", ctx());
        ensure!(r.size(&rem) < r.size(b), "right remainder too large: {}", ctx());
    }
    if !r.is_zero(a) && !r.is_zero(b) {
        let (m, c1, c2) = lclm(r, a, b).map_err(|e| e.to_string())?;
        ensure!(r.equal(&m, &r.mul(&c1, a)) && r.equal(&m, &r.mul(&c2, b)), "lclm: {}", ctx());
        let (m, c1, c2) = lcrm(r, a, b).map_err(|e| e.to_string())?;
        ensure!(r.equal(&m, &r.mul(a, &c1)) && r.equal(&m, &r.mul(b, &c2)), "lcrm: {}", ctx());
    }

    if r.is_zero(a) || r.is_zero(b) {
        return Ok(());
    }
    let q = s.frac();
    let (ea, eb, ec) = (s.embed(a), s.embed(b), s.embed(c));
    let x = q.div_right(&ea, &eb).map_err(|e| e.to_string())?;
    let y = q.div_right(&ec, &ea).map_err(|e| e.to_string())?;
    let qv = |z: &FracElem<S>| DivisionRing::valuation(q, z);
    ensure!(qv(&q.mul(&x, &y)) == qv(&x) + qv(&y), "Q valuation multiplicative: {}", ctx());
    ensure!(qv(&q.add(&x, &y)) >= qv(&x).min(qv(&y)), "Q ultrametric: {}", ctx());
    let xinv = q.inv(&x).map_err(|e| e.to_string())?;
    ensure!(q.is_one(&q.mul(&x, &xinv)) && q.is_one(&q.mul(&xinv, &x)), "inverse: {}", ctx());
    let (num, den) = s.right_fraction(&x);
    ensure!(
        q.equal(&q.mul(&s.embed(&num), &q.inv(&s.embed(&den)).unwrap()), &x),
        "right fraction: {}",
        ctx()
    );
    let (den, num) = s.left_fraction(&x);
    ensure!(
        q.equal(&q.mul(&q.inv(&s.embed(&den)).unwrap(), &s.embed(&num)), &x),
        "left fraction: {}",
        ctx()
    );

    ensure!(q.equal(&s.tau(&q.mul(&x, &y)), &q.mul(&s.tau(&y), &s.tau(&x))), "τ anti-multiplicative: {}", ctx());
    ensure!(q.equal(&s.tau(&q.add(&x, &y)), &q.add(&s.tau(&x), &s.tau(&y))), "τ additive: {}", ctx());
    ensure!(q.equal(&s.tau(&s.tau(&x)), &x), "τ involution: {}", ctx());
    ensure!(q.is_one(&s.tau(&q.one())), "τ(1) = 1");

    if s.supports_flock() {
        let l = s.residue_field().map_err(|e| e.to_string())?;
        let res = |z: &FracElem<S>| s.residue(z).map_err(|e| e.to_string());
        // elements of the valuation ring: ring elements and a/b with v(a) ≥ v(b)
        let mut vals = vec![ea.clone(), ec.clone()];
        if qv(&x) >= Val::Finite(0) {
            vals.push(x.clone());
        }
        if qv(&y) >= Val::Finite(0) {
            vals.push(y.clone());
        }
        for u in &vals {
            for w in &vals {
                ensure!(
                    res(&q.add(u, w))? == l.add_elem(res(u)?, res(w)?),
                    "residue additive: {}",
                    ctx()
                );
                ensure!(
                    res(&q.mul(u, w))? == l.mul_elem(res(u)?, res(w)?),
                    "residue multiplicative: {}",
                    ctx()
                );
            }
            let pi = s.embed(&s.uniformizer());
            let conj = q.mul(&q.mul(&pi, u), &q.inv(&pi).unwrap());
            ensure!(
                res(&conj)? == s.residue_twist(res(u)?).map_err(|e| e.to_string())?,
                "twist: {}",
                ctx()
            );
            let t = res(u)?;
            ensure!(res(&s.lift(t).map_err(|e| e.to_string())?)? == t, "lift: {}", ctx());
        }
    }
    Ok(())
}

/// Run the law checks on `count` random triples.
pub fn check_laws_seeded<S: Sample>(s: &S, seed: u64, count: usize, size: usize) -> Result<usize, String> {
    let mut g = rng(seed);
    for _ in 0..count {
        let (a, b, c) = (s.draw(&mut g, size), s.draw(&mut g, size), s.draw(&mut g, size));
        check_laws(s, &a, &b, &c)?;
    }
    Ok(count)
}

/// A random right module `N = A·c` (every column of `A` times a common
/// nonzero `c`), so that the saturation must contain the columns of `A`.
pub fn random_module<S: Sample>(s: &S, g: &mut SplitMix64, size: usize) -> (ModuleMatrix<S>, Matrix<BaseElem<S>>) {
    let r = s.base();
    let n = 2 + below(g, 3) as usize;
    let d = 1 + below(g, n as u64) as usize;
    let a = Matrix::from_fn(n, d, |_, _| s.draw(g, size));
    let mut c = s.draw(g, size);
    while r.is_zero(&c) {
        c = s.draw(g, size);
    }
    let m = a.map(|x| r.mul(x, &c));
    (ModuleMatrix::right(s.clone(), m), a)
}

/// `perp(perp(N))` equals the saturation, checked against its defining
/// properties: it contains the columns of `A`, has the same `Q`-span and is
/// itself saturated.
pub fn check_perp_perp<S: Sample>(s: &S, seed: u64, count: usize, size: usize) -> Result<usize, String> {
    let mut g = rng(seed);
    for k in 0..count {
        let (n, a) = random_module(s, &mut g, size);
        let e = |err: endomatroid::Error| format!("module {k}: {err}");
        let pp = n.perp().map_err(e)?.perp().map_err(e)?;
        let sat = n.saturate().map_err(e)?;
        ensure!(pp.span_equal(&sat, Level::Ring).map_err(e)?, "module {k}: perp∘perp ≠ saturate");
        ensure!(pp.span_equal(&n, Level::Quotient).map_err(e)?, "module {k}: Q-span changed");
        for col in a.col_vecs() {
            ensure!(pp.contains(&col).map_err(e)?, "module {k}: saturation misses a column of A");
        }
        for col in n.matrix().col_vecs() {
            ensure!(pp.contains(&col).map_err(e)?, "module {k}: saturation misses a generator");
        }
        let again = pp.perp().map_err(e)?.perp().map_err(e)?;
        ensure!(again.span_equal(&pp, Level::Ring).map_err(e)?, "module {k}: saturation not idempotent");
    }
    Ok(count)
}
