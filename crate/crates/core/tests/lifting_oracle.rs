use plie_core::algebra::random_lie_algebra;
use plie_core::cohomology::{is_coboundary, LieModule};
use plie_core::lifting::{brute_force_lift_oracle, eta_of_lift, obstruction, perturb, LiftProblem};
use plie_core::modp::PrimePower;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn obstruction_matches_exhaustive_search() {
    let f = PrimePower::field(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..200 {
        let l = random_lie_algebra(&mut rng, f, 3);
        let problem = LiftProblem::new(l).unwrap();
        let report = obstruction(&problem).unwrap();
        assert_eq!(report.obstruction_zero, brute_force_lift_oracle(&problem, 1_000_000).unwrap());
        if let Some(c) = report.corrected_algebra() {
            let c = c.unwrap();
            assert!(c.is_lie());
            assert_eq!(c.reduce(1).unwrap(), *problem.algebra());
        }
    }
}

#[test]
fn eta_depends_on_the_lift_only_by_a_coboundary() {
    let f = PrimePower::field(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..30 {
        let l = random_lie_algebra(&mut rng, f, 3);
        let problem = LiftProblem::new(l.clone()).unwrap();
        let lift = problem.canonical_lift();
        let delta: Vec<u64> = (0..9).map(|_| rng.gen_range(0..3)).collect();
        let other = perturb(&lift, &delta);
        let diff: Vec<u64> = eta_of_lift(&other)
            .unwrap()
            .iter()
            .zip(eta_of_lift(&lift).unwrap())
            .map(|(a, b)| (a + 3 - b) % 3)
            .collect();
        let ad = LieModule::ad(&l).unwrap();
        assert!(is_coboundary(&l, &ad, 3, &diff).unwrap().is_some());
    }
}

#[test]
fn every_three_dimensional_lie_algebra_over_f3_lifts() {
    let f = PrimePower::field(3).unwrap();
    let mut lie = 0;
    for code in 0..3u64.pow(9) {
        let mut c = code;
        let mut l = plie_core::algebra::BracketAlgebra::abelian(f, 3);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for t in 0..3 {
                l.set_pair(i, j, t, c % 3);
                c /= 3;
            }
        }
        if l.is_lie() {
            lie += 1;
            assert!(obstruction(&LiftProblem::new(l).unwrap()).unwrap().obstruction_zero);
        }
    }
    assert_eq!(lie, 1431);
}

#[test]
fn scaled_non_lie_bracket_is_obstructed_at_the_next_level() {
    // Constants 3δ over Z/9 with δ not Lie: J ≡ 0 mod 9, η = J(δ) mod 3 on an abelian reduction.
    let r = PrimePower::new(3, 2).unwrap();
    let l = plie_core::algebra::BracketAlgebra::from_brackets(
        r,
        vec!["e1".into(), "e2".into(), "e3".into()],
        &[(0, 1, vec![0, 0, 3]), (2, 0, vec![-3, 0, 0])],
    )
    .unwrap();
    let problem = LiftProblem::new(l).unwrap();
    let report = obstruction(&problem).unwrap();
    assert_eq!(report.target_exponent, 3);
    assert!(!report.obstruction_zero);
    assert!(report.corrected_constants.is_none());
    assert!(!brute_force_lift_oracle(&problem, 1_000_000).unwrap());
}
