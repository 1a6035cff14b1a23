use plie_core::algebra::{named_algebra, random_bracket_algebra, BracketAlgebra};
use plie_core::group::{
    associativity, gamma_tower, log_bracket, predicates, uniform_tower_check, Confidence, ExpGroup, GammaGroup,
    GroupView, DEFAULT_BUDGET, SAMPLE_COUNT,
};
use plie_core::modp::PrimePower;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn non_lie(p: u64) -> BracketAlgebra {
    BracketAlgebra::from_brackets(
        PrimePower::field(p).unwrap(),
        vec!["e1".into(), "e2".into(), "e3".into()],
        &[(0, 1, vec![0, 0, 1]), (2, 0, vec![-1, 0, 0])],
    )
    .unwrap()
}

#[test]
fn exp_of_a_non_lie_bracket_is_still_a_group() {
    let l = non_lie(3);
    assert!(!l.is_lie());
    let g = ExpGroup::new(l.clone()).unwrap();
    let a = associativity(&g, DEFAULT_BUDGET).unwrap();
    assert!(a.holds);
    // 729³ triples exceed the budget.
    assert_eq!(a.confidence, Confidence::Sampled);
    assert_eq!(a.triples_checked as usize, SAMPLE_COUNT);
    assert_eq!(log_bracket(&g, DEFAULT_BUDGET).unwrap().with_labels(l.labels().to_vec()), l);
}

#[test]
fn heisenberg_exp_group_predicates() {
    let g = ExpGroup::new(named_algebra("heisenberg", 3, 1).unwrap()).unwrap();
    let pr = predicates(&g, DEFAULT_BUDGET).unwrap();
    assert_eq!(pr.order, 729);
    assert_eq!(pr.exponent, 9);
    assert!(pr.p_central && pr.powerful);
    assert_eq!(pr.omega_power_frattini_equal, Some(true));
    assert_eq!(pr.omega1_order, Some(27));
}

#[test]
fn gamma_groups_contain_their_generators_powers() {
    let g = GammaGroup::new(2, 2, 3).unwrap();
    for s in g.generators() {
        assert_eq!(g.element_order(&s), 9);
        assert!(g.contains(&g.power(&s, 3)));
    }
}

#[test]
fn gamma_tower_three_levels() {
    let v = uniform_tower_check(&gamma_tower(1, 3, 3).unwrap(), DEFAULT_BUDGET).unwrap();
    assert!(v.uniform);
    assert_eq!(v.stages.len(), 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_inverse_and_power(seed in any::<u64>(), x in proptest::collection::vec(0u64..25, 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_bracket_algebra(&mut rng, PrimePower::field(5).unwrap(), 3);
        let g = ExpGroup::new(l).unwrap();
        let inv = g.inverse(&x);
        prop_assert!(g.is_identity(&g.multiply(&x, &inv)));
        let neg: Vec<u64> = x.iter().map(|&v| (25 - v) % 25).collect();
        prop_assert_eq!(inv, neg);
        let fifth = g.power(&x, 5);
        prop_assert_eq!(fifth, x.iter().map(|&v| v * 5 % 25).collect::<Vec<_>>());
    }

    #[test]
    fn exp_commutator_is_twice_p_bracket(seed in any::<u64>(), x in proptest::collection::vec(0u64..9, 3), y in proptest::collection::vec(0u64..9, 3)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_bracket_algebra(&mut rng, PrimePower::field(3).unwrap(), 3);
        let g = ExpGroup::new(l.clone()).unwrap();
        let xr: Vec<u64> = x.iter().map(|v| v % 3).collect();
        let yr: Vec<u64> = y.iter().map(|v| v % 3).collect();
        let expected: Vec<u64> = l.bracket(&xr, &yr).iter().map(|&b| 6 * b % 9).collect();
        prop_assert_eq!(g.commutator(&x, &y), expected);
    }
}
