mod common;

use milnor::cocubical::random::{random_complex, random_cover, random_endomorphism, random_system};
use milnor::cocubical::{
    adjunction_system, constant_system, cycle, graded_piece, quasi_iso_check, simple_complex, ChainMap, FDComplex,
    Piece, SimplicialComplex, SystemMorphism,
};
use milnor::linalg::q;
use proptest::prelude::*;

fn is_complex(c: &FDComplex) -> bool {
    c.degrees().all(|p| c.differential(p + 1).mul(&c.differential(p)).is_zero())
}

#[test]
fn circle_by_two_arcs() {
    let k = cycle(4);
    let pieces = [
        SimplicialComplex::closure(vec![vec![0, 1], vec![1, 2]]),
        SimplicialComplex::closure(vec![vec![2, 3], vec![3, 0]]),
    ];
    let a = adjunction_system(&k, &pieces).unwrap();
    assert_eq!(a.simple.cohomology(), vec![1, 1, 0]);
    assert!(quasi_iso_check(&a.augmentation, &a.cochains, &a.simple)
        .unwrap()
        .iter()
        .all(|v| v.iso));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn simple_complex_is_a_complex(seed in any::<u64>(), filtered in any::<bool>()) {
        let sys = random_system(&mut common::rng(seed), 3, filtered);
        let s = simple_complex(&sys);
        prop_assert!(is_complex(&s));
        let alternating: i64 = sys
            .complexes()
            .iter()
            .map(|(l, c)| if l.len() % 2 == 1 { 1 } else { -1 } * c.euler_characteristic())
            .sum();
        prop_assert_eq!(s.euler_characteristic(), alternating);
    }

    #[test]
    fn graded_pieces_add_up(seed in any::<u64>()) {
        let sys = random_system(&mut common::rng(seed), 2, true);
        let s = simple_complex(&sys);
        let (f, w) = (s.f().unwrap(), s.w().unwrap());
        let mut by_f = vec![0; s.len()];
        for r in f.lo - 1..=f.hi() + 1 {
            let g = graded_piece(&s, Piece::GrF(r)).unwrap();
            prop_assert!(is_complex(&g));
            for (t, d) in by_f.iter_mut().zip(g.dims()) {
                *t += d;
            }
        }
        let mut by_w = vec![0; s.len()];
        for r in w.lo - 1..=w.hi() + 1 {
            let g = graded_piece(&s, Piece::GrW(r)).unwrap();
            for (t, d) in by_w.iter_mut().zip(g.dims()) {
                *t += d;
            }
        }
        prop_assert_eq!(&by_f[..], s.dims());
        prop_assert_eq!(&by_w[..], s.dims());
    }

    #[test]
    fn simple_map_is_functorial(seed in any::<u64>(), n in 0usize..=2) {
        let mut rng = common::rng(seed);
        let c = random_complex(&mut rng, 0, 3, 4);
        let phi = random_endomorphism(&mut rng, &c);
        let sys = constant_system(n, &c, &phi).unwrap();
        // Polynomials in the face map commute with it.
        let g = SystemMorphism { maps: sys.complexes().keys().map(|&l| (l, phi.clone())).collect() };
        let h = SystemMorphism {
            maps: sys.complexes().keys().map(|&l| (l, phi.compose(&phi).scale(&q(2)))).collect(),
        };
        let composite = h.compose(&g).simple_map(&sys, &sys).unwrap();
        let separate = h.simple_map(&sys, &sys).unwrap().compose(&g.simple_map(&sys, &sys).unwrap());
        prop_assert_eq!(composite, separate);
        let id = SystemMorphism::identity(&sys).simple_map(&sys, &sys).unwrap();
        prop_assert_eq!(id, ChainMap::identity(&simple_complex(&sys)));
    }

    #[test]
    fn augmentation_is_a_quasi_isomorphism(seed in any::<u64>()) {
        let (k, pieces) = random_cover(&mut common::rng(seed), 20);
        let a = adjunction_system(&k, &pieces).unwrap();
        prop_assert!(is_complex(&a.simple));
        let verdicts = quasi_iso_check(&a.augmentation, &a.cochains, &a.simple).unwrap();
        prop_assert!(verdicts.iter().all(|v| v.iso));
        // Scalars commute with the augmentation.
        let lambda = q(3);
        prop_assert_eq!(
            a.augmentation.compose(&ChainMap::identity(&a.cochains).scale(&lambda)),
            ChainMap::identity(&a.simple).scale(&lambda).compose(&a.augmentation)
        );
    }
}
