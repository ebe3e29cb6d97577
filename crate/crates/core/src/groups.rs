//! Point evaluation for `G_a` (endomorphisms are `p`-polynomials) and `G_m`
//! (endomorphisms are `t ↦ t^a`), used to check that the equations of `N^⊥`
//! vanish on points parametrized by `N`.

use num_bigint::BigInt;
use num_integer::Integer;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::error::{Error, Result};
use crate::linalg::{ModuleMatrix, Orientation};
use crate::scalars::{BaseElem, FieldElem, FiniteField, IntegerScalars, Scalars, SkewPoly, SkewScalars};

/// Default degree of the sampling field over the coefficient field for `G_a`.
pub const DEFAULT_EXTENSION: usize = 5;
/// Default prime for `G_m` sampling.
pub const DEFAULT_TORUS_PRIME: u64 = 10007;

/// A point of `Gⁿ` with coordinates in a finite sampling field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPoint {
    pub coords: Vec<FieldElem>,
}

/// How ring elements act on the points of a one-dimensional group.
pub trait GroupModel: Sync {
    type Scalars: Scalars;

    fn field(&self) -> &FiniteField;
    /// Neutral element of the group.
    fn identity(&self) -> FieldElem;
    /// The group law.
    fn combine(&self, a: FieldElem, b: FieldElem) -> FieldElem;
    fn eval(&self, e: &BaseElem<Self::Scalars>, x: FieldElem) -> FieldElem;
    /// A uniformly drawn group element (up to modulo bias).
    fn random(&self, rng: &mut SplitMix64) -> FieldElem;
}

/// `G_a` over `F_{p^{k·s}}`, with `K = F_{p^k}` embedded through a root of
/// its modulus.
#[derive(Debug, Clone)]
pub struct AdditiveGroup {
    big: FiniteField,
    /// `ρ^i` for a root `ρ` of the modulus of `K`, `i < k`.
    root_powers: Vec<FieldElem>,
    coeff: FiniteField,
}

impl AdditiveGroup {
    pub fn new(scalars: &SkewScalars, extension: usize) -> Result<Self> {
        let coeff = scalars.field().clone();
        let (p, k) = (coeff.characteristic(), coeff.degree());
        if extension == 0 {
            return Err(Error::Precondition("the sampling extension degree must be positive".into()));
        }
        let big = FiniteField::with_degree(p, k * extension)?;
        let rho = *big
            .roots_of(coeff.modulus())?
            .first()
            .ok_or_else(|| Error::Invariant("modulus has no root in the sampling field".into()))?;
        let root_powers = (0..k as u64).map(|i| big.pow_elem(rho, i)).collect();
        Ok(AdditiveGroup {
            big,
            root_powers,
            coeff,
        })
    }

    /// The image of a coefficient in the sampling field.
    pub fn embed(&self, c: FieldElem) -> FieldElem {
        self.coeff
            .coords(c)
            .iter()
            .zip(&self.root_powers)
            .fold(FieldElem(0), |acc, (&d, &r)| {
                self.big.add_elem(acc, self.big.mul_elem(self.big.from_int(d as i64), r))
            })
    }
}

impl GroupModel for AdditiveGroup {
    type Scalars = SkewScalars;

    fn field(&self) -> &FiniteField {
        &self.big
    }
    fn identity(&self) -> FieldElem {
        FieldElem(0)
    }
    fn combine(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.big.add_elem(a, b)
    }
    /// `(Σ aᵢFⁱ)(x) = Σ aᵢ·x^(pⁱ)`
    fn eval(&self, e: &SkewPoly, x: FieldElem) -> FieldElem {
        let mut acc = FieldElem(0);
        let mut xi = x;
        for &c in e.coeffs() {
            if c.0 != 0 {
                acc = self.big.add_elem(acc, self.big.mul_elem(self.embed(c), xi));
            }
            xi = self.big.frobenius(xi);
        }
        acc
    }
    fn random(&self, rng: &mut SplitMix64) -> FieldElem {
        FieldElem(rng.next_u64() % self.big.order())
    }
}

/// `G_m` over the prime field `F_q`; exponents act modulo `q − 1`.
#[derive(Debug, Clone)]
pub struct MultiplicativeGroup {
    field: FiniteField,
}

impl MultiplicativeGroup {
    pub fn new(q: u64) -> Result<Self> {
        Ok(MultiplicativeGroup {
            field: FiniteField::prime_field(q)?,
        })
    }
}

impl GroupModel for MultiplicativeGroup {
    type Scalars = IntegerScalars;

    fn field(&self) -> &FiniteField {
        &self.field
    }
    fn identity(&self) -> FieldElem {
        FieldElem(1)
    }
    fn combine(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.field.mul_elem(a, b)
    }
    /// `t ↦ t^a`
    fn eval(&self, e: &BigInt, x: FieldElem) -> FieldElem {
        let m = BigInt::from(self.field.order() - 1);
        let exp = u64::try_from(e.mod_floor(&m)).expect("reduced exponent");
        self.field.pow_elem(x, exp)
    }
    fn random(&self, rng: &mut SplitMix64) -> FieldElem {
        FieldElem(1 + rng.next_u64() % (self.field.order() - 1))
    }
}

/// `(a_1, …, a_d) ↦ Σ_j ψ^{(j)}(a_j)` for the generator columns `ψ^{(j)}` of `N`.
pub fn point_from_params<G: GroupModel>(
    g: &G,
    n: &ModuleMatrix<G::Scalars>,
    params: &[FieldElem],
) -> Result<GroupPoint> {
    if n.orientation() != Orientation::Right {
        return Err(Error::Precondition("points are parametrized by a right module".into()));
    }
    let m = n.matrix();
    if params.len() != m.cols() {
        return Err(Error::Dimension(format!(
            "{} parameters for {} generators",
            params.len(),
            m.cols()
        )));
    }
    let coords = (0..m.rows())
        .map(|i| {
            (0..m.cols()).fold(g.identity(), |acc, j| g.combine(acc, g.eval(m.get(i, j), params[j])))
        })
        .collect();
    Ok(GroupPoint { coords })
}

/// Seeded random points of the subgroup parametrized by `N`.
pub fn sample_points<G: GroupModel>(
    g: &G,
    n: &ModuleMatrix<G::Scalars>,
    count: usize,
    seed: u64,
) -> Result<Vec<GroupPoint>> {
    let mut rng = SplitMix64::seed_from_u64(seed);
    let d = n.matrix().cols();
    (0..count)
        .map(|_| {
            let params: Vec<FieldElem> = (0..d).map(|_| g.random(&mut rng)).collect();
            point_from_params(g, n, &params)
        })
        .collect()
}

/// Does every row `φ` of `J` satisfy `Σᵢ φᵢ(qᵢ) = 0` at every point?
pub fn verify_annihilator<G: GroupModel>(
    g: &G,
    j: &ModuleMatrix<G::Scalars>,
    points: &[GroupPoint],
) -> Result<bool> {
    if j.orientation() != Orientation::Left {
        return Err(Error::Precondition("equations are given by a left module".into()));
    }
    let m = j.matrix();
    for pt in points {
        if pt.coords.len() != m.cols() {
            return Err(Error::Dimension("point and equations differ in length".into()));
        }
        for r in 0..m.rows() {
            let value = (0..m.cols()).fold(g.identity(), |acc, i| g.combine(acc, g.eval(m.get(r, i), pt.coords[i])));
            if value != g.identity() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::scalars::Ring;

    fn f4_scalars() -> SkewScalars {
        SkewScalars::new(FiniteField::new(2, &[1, 1, 1]).unwrap())
    }

    #[test]
    fn additive_action() {
        let s = f4_scalars();
        let g = AdditiveGroup::new(&s, DEFAULT_EXTENSION).unwrap();
        let big = g.field().clone();
        let x = big.gen();
        let f2f = s.base().add(&SkewPoly::monomial(FieldElem(1), 2), &s.f());
        let expected = big.add_elem(big.pow_elem(x, 4), big.pow_elem(x, 2));
        assert_eq!(g.eval(&f2f, x), expected);
        // F·λ acts as x ↦ (λx)²
        let lam = s.field().gen();
        let f_lam = s.base().mul(&s.f(), &s.scalar(lam));
        let direct = big.pow_elem(big.mul_elem(g.embed(lam), x), 2);
        assert_eq!(g.eval(&f_lam, x), direct);
        // the embedding is a ring map
        let l2 = s.field().mul_elem(lam, lam);
        assert_eq!(g.embed(l2), big.mul_elem(g.embed(lam), g.embed(lam)));
    }

    #[test]
    fn multiplicative_action() {
        let g = MultiplicativeGroup::new(DEFAULT_TORUS_PRIME).unwrap();
        let t = FieldElem(5);
        let inv_sq = g.field().inv_elem(g.field().mul_elem(t, t)).unwrap();
        assert_eq!(g.eval(&BigInt::from(-2), t), inv_sq);
        let z = IntegerScalars::new(2).unwrap();
        let n = ModuleMatrix::right(
            z.clone(),
            Matrix::from_rows(
                vec![
                    vec![BigInt::from(1), BigInt::from(0)],
                    vec![BigInt::from(0), BigInt::from(1)],
                    vec![BigInt::from(1), BigInt::from(1)],
                ],
                2,
            )
            .unwrap(),
        );
        let pts = sample_points(&g, &n, 20, 7).unwrap();
        let j = ModuleMatrix::left(
            z,
            Matrix::from_rows(vec![vec![BigInt::from(1), BigInt::from(1), BigInt::from(-1)]], 3).unwrap(),
        );
        assert!(verify_annihilator(&g, &j, &pts).unwrap());
        assert_eq!(pts, sample_points(&g, &n, 20, 7).unwrap());
    }
}
