mod common;

use common::*;
use endomatroid::groups::{AdditiveGroup, GroupModel, MultiplicativeGroup, DEFAULT_TORUS_PRIME};
use endomatroid::scalars::{FieldElem, HurwitzScalars, IntegerScalars, Ring, Scalars};
use num_bigint::BigInt;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn skew_f4_laws(seed in any::<u64>()) {
        let s = skew_f4();
        prop_assert_eq!(check_laws_seeded(&s, seed, 1, 4), Ok(1));
    }

    #[test]
    fn skew_f9_laws(seed in any::<u64>()) {
        let s = skew_f9();
        prop_assert_eq!(check_laws_seeded(&s, seed, 1, 4), Ok(1));
    }

    #[test]
    fn integer_laws(seed in any::<u64>()) {
        prop_assert_eq!(check_laws_seeded(&IntegerScalars::new(2).unwrap(), seed, 1, 6), Ok(1));
        prop_assert_eq!(check_laws_seeded(&IntegerScalars::new(3).unwrap(), seed, 1, 6), Ok(1));
    }

    #[test]
    fn hurwitz_laws(seed in any::<u64>()) {
        prop_assert_eq!(check_laws_seeded(&HurwitzScalars::new(2).unwrap(), seed, 1, 5), Ok(1));
    }

    #[test]
    fn additive_action(seed in any::<u64>()) {
        let s = skew_f4();
        let g = AdditiveGroup::new(&s, 5).unwrap();
        let mut r = rng(seed);
        let (e1, e2) = (s.draw(&mut r, 4), s.draw(&mut r, 4));
        let (x, y) = (g.random(&mut r), g.random(&mut s_rng(seed)));
        let f = g.field();
        prop_assert_eq!(g.eval(&s.base().add(&e1, &e2), x), f.add_elem(g.eval(&e1, x), g.eval(&e2, x)));
        prop_assert_eq!(g.eval(&s.base().mul(&e1, &e2), x), g.eval(&e1, g.eval(&e2, x)));
        prop_assert_eq!(g.eval(&e1, f.add_elem(x, y)), f.add_elem(g.eval(&e1, x), g.eval(&e1, y)));
    }

    #[test]
    fn multiplicative_action(a in -50i64..50, b in -50i64..50, t in 1u64..DEFAULT_TORUS_PRIME, u in 1u64..DEFAULT_TORUS_PRIME) {
        let g = MultiplicativeGroup::new(DEFAULT_TORUS_PRIME).unwrap();
        let f = g.field();
        let (a, b, t, u) = (BigInt::from(a), BigInt::from(b), FieldElem(t), FieldElem(u));
        prop_assert_eq!(g.eval(&(&a + &b), t), f.mul_elem(g.eval(&a, t), g.eval(&b, t)));
        prop_assert_eq!(g.eval(&(&a * &b), t), g.eval(&a, g.eval(&b, t)));
        prop_assert_eq!(g.eval(&a, f.mul_elem(t, u)), f.mul_elem(g.eval(&a, t), g.eval(&a, u)));
    }
}

fn s_rng(seed: u64) -> rand_xoshiro::SplitMix64 {
    rng(seed.rotate_left(17) ^ 0x9e37_79b9)
}

#[test]
fn perp_perp_is_saturation() {
    assert_eq!(check_perp_perp(&skew_f4(), 1, 20, 3), Ok(20));
    assert_eq!(check_perp_perp(&skew_f9(), 2, 20, 3), Ok(20));
    assert_eq!(check_perp_perp(&IntegerScalars::new(2).unwrap(), 3, 20, 3), Ok(20));
    assert_eq!(check_perp_perp(&HurwitzScalars::new(2).unwrap(), 4, 20, 2), Ok(20));
}
