mod common;

use milnor::examples;
use milnor::generate::{random_model, ModelShape};
use milnor::simplicial::homology::{homology_of, trim};
use milnor::simplicial::{
    build_dx, chain_complex, count_morphisms, find_isomorphism, functor_f_of_c, functor_h, homology, sub_complex_de,
    Presheaf, SimplicialSet,
};
use milnor::StrataModel;
use proptest::prelude::*;

fn strata_of_size(m: &StrataModel, size: usize) -> usize {
    m.strata().iter().filter(|s| s.psi.len() == size).count()
}

fn small_model(seed: u64) -> StrataModel {
    let shape = ModelShape {
        max_components: 3,
        max_per_subset: 1,
        ..ModelShape::default()
    };
    random_model(&mut common::rng(seed), &shape)
}

#[test]
fn node_complex() {
    let m = examples::node();
    let d = build_dx(&m);
    assert_eq!(common::orbit_count(&d.sset, 0), 2);
    assert_eq!(common::orbit_count(&d.sset, 1), 1);
    let h = homology(&d.sset);
    assert_eq!(h.len(), 1);
    assert_eq!(h[0].rank, 1);
}

#[test]
fn kodaira_cycles_are_circles() {
    for n in 2..=5 {
        let h = homology(&build_dx(&examples::kodaira_cycle(n)).sset);
        assert_eq!(h.iter().map(|g| g.rank).collect::<Vec<_>>(), vec![1, 1]);
        assert!(h.iter().all(|g| g.torsion.is_empty()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cells_are_strata(seed in any::<u64>()) {
        let m = common::model(seed);
        let d = build_dx(&m);
        for n in 0..=d.top() {
            prop_assert_eq!(common::orbit_count(&d.sset, n), strata_of_size(&m, n + 1));
            prop_assert_eq!(d.cells(n).len(), strata_of_size(&m, n + 1));
        }
    }

    #[test]
    fn dual_complex_is_a_simplicial_set(seed in any::<u64>()) {
        let d = build_dx(&common::model(seed));
        prop_assert!(d.sset.check_functoriality().is_ok());
    }

    #[test]
    fn h_of_ordered_strata_is_the_dual_complex(seed in any::<u64>()) {
        let m = common::model(seed);
        let d = build_dx(&m);
        let (fc, _) = functor_f_of_c(&m);
        let (h, _) = functor_h(&fc.with_top(d.top()), d.top());
        prop_assert!(find_isomorphism(&h, &d.sset).is_some());
    }

    #[test]
    fn boundary_squares_to_zero(seed in any::<u64>()) {
        let c = chain_complex(&build_dx(&common::model(seed)).sset);
        for n in 2..c.boundary.len() {
            prop_assert!(c.boundary[n - 1].mul(&c.boundary[n]).is_zero());
        }
    }

    #[test]
    fn euler_characteristic_counts_strata(seed in any::<u64>()) {
        let m = common::model(seed);
        let c = chain_complex(&build_dx(&m).sset);
        let alternating: i64 = (1..=m.max_psi())
            .map(|k| if k % 2 == 1 { 1 } else { -1 } * strata_of_size(&m, k) as i64)
            .sum();
        prop_assert_eq!(c.euler_characteristic(), alternating);
        let from_ranks: i64 = homology_of(&c)
            .iter()
            .enumerate()
            .map(|(n, g)| if n % 2 == 0 { 1 } else { -1 } * g.rank as i64)
            .sum();
        prop_assert_eq!(from_ranks, alternating);
    }

    #[test]
    fn sub_complex_is_the_dual_complex_of_e(seed in any::<u64>()) {
        let m = common::model(seed);
        let e = common::random_subset(&mut common::rng(seed ^ 7), &m);
        let d = build_dx(&m);
        let sub = sub_complex_de(&m, &d, e).unwrap();
        prop_assert!(sub.inclusion.is_natural(&sub.complex.sset, &d.sset));
        prop_assert!(sub.inclusion.is_injective());
        let inside = chain_complex(&d.sset).quotient(|n, x| !sub.member[n][x]);
        let direct = homology(&build_dx(&sub.restricted).sset);
        prop_assert_eq!(trim(homology_of(&inside)), trim(direct));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// `H` is left adjoint to forgetting degeneracies.
    #[test]
    fn h_is_left_adjoint(seed in any::<u64>(), k in 0usize..=2) {
        let top = 2;
        let (s, _) = functor_f_of_c(&small_model(seed));
        let s = s.with_top(top);
        let (h, _) = functor_h(&s, top);
        let targets = [SimplicialSet::standard(k, top), build_dx(&small_model(seed ^ 3)).sset];
        for target in targets.iter().filter(|t| t.top() == top) {
            let left = count_morphisms(&h, target, u64::MAX);
            let right = count_morphisms(&s, &target.forget_degeneracies(), u64::MAX);
            prop_assert_eq!(left, right);
        }
    }
}
