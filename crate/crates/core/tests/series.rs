mod common;

use milnor::motivic::{component_euler_sum, nearby_cycles, normalize_dr, GClass, RationalSeries, SeriesError};
use num_integer::Integer;
use proptest::prelude::*;

const ORDER: usize = 40;

#[test]
fn generator_limit_is_one() {
    for a in -3..=3 {
        for b in 1..=4 {
            let g = RationalSeries::generator(a, b).unwrap();
            assert_eq!(g.limit().unwrap(), GClass::one());
        }
    }
    assert!(RationalSeries::generator(1, 0).is_err());
}

#[test]
fn powers_of_t_have_no_limit() {
    assert!(matches!(RationalSeries::t_power(1).limit(), Err(SeriesError::NotInRPrime { .. })));
    assert_eq!(RationalSeries::one().limit().unwrap(), GClass::one());
}

#[test]
fn quotients_match_recurrence() {
    for p in -3..=3 {
        for r in 1..=5 {
            for q in 0..=r {
                let s = normalize_dr(p, q, r).unwrap();
                assert_eq!(s.expand(ORDER), common::quotient_expansion(p, q, r, ORDER), "p={p} q={q} r={r}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn expansion_matches_oracle(seed in any::<u64>()) {
        let s = common::random_series(&mut common::rng(seed));
        prop_assert_eq!(s.expand(ORDER), common::oracle_expand(&s, ORDER));
    }

    #[test]
    fn product_is_cauchy_product(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (x, y) = (common::random_series(&mut rng), common::random_series(&mut rng));
        prop_assert_eq!((&x * &y).expand(ORDER), common::cauchy(&x.expand(ORDER), &y.expand(ORDER)));
        let sum: Vec<GClass> = x.expand(ORDER).iter().zip(y.expand(ORDER)).map(|(a, b)| a + &b).collect();
        prop_assert_eq!((&x + &y).expand(ORDER), sum);
    }

    #[test]
    fn limit_is_a_ring_map(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let (x, y) = (common::random_limit_series(&mut rng), common::random_limit_series(&mut rng));
        let (lx, ly) = (x.limit().unwrap(), y.limit().unwrap());
        prop_assert_eq!((&x + &y).limit().unwrap(), &lx + &ly);
        prop_assert_eq!((&x * &y).limit().unwrap(), &lx * &ly);
    }

    #[test]
    fn extraction_keeps_divisible_coefficients(seed in any::<u64>(), d in prop::sample::select(vec![2u32, 3, 4, 6])) {
        let s = common::random_series(&mut common::rng(seed));
        let e = s.extract(d).unwrap();
        let expected: Vec<GClass> = common::oracle_expand(&s, ORDER)
            .into_iter()
            .enumerate()
            .map(|(k, c)| if k % d as usize == 0 { c } else { GClass::zero() })
            .collect();
        prop_assert_eq!(e.expand(ORDER), expected);
        if let Ok(l) = s.limit() {
            prop_assert_eq!(e.limit().unwrap(), l);
        }
    }

    #[test]
    fn extraction_composes(a in -2i32..=2, b in 1u32..=2, c in -2i32..=2, d in 2u32..=3, e in 2u32..=3) {
        let s = &RationalSeries::generator(a, b).unwrap() + &RationalSeries::generator(c, 1).unwrap().shift(1);
        let twice = s.extract(d).unwrap().extract(e).unwrap();
        let once = s.extract(d.lcm(&e)).unwrap();
        prop_assert!(twice.series_eq(&once));
        prop_assert_eq!(twice.expand(ORDER), once.expand(ORDER));
    }

    #[test]
    fn nearby_cycles_specialize_to_euler_sum(seed in any::<u64>()) {
        let m = common::model(seed);
        let s = nearby_cycles(&m).unwrap();
        prop_assert_eq!(s.euler(), component_euler_sum(&m).unwrap());
    }
}
