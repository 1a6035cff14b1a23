//! Acceptance criteria. Each test prints one PASS/FAIL line.

use std::io::Write;
use std::time::{Duration, Instant};

use plie_core::algebra::exterior::subsets;
use plie_core::algebra::{named_algebra, random_bracket_algebra, random_lie_algebra, BracketAlgebra, ExteriorElement};
use plie_core::bockstein::{b2_direct, b2_via_lie, beta, beta_squared_defect, lhs_e3_dims, BocksteinData, Monomial, RingElement};
use plie_core::cohomology::{cohomology, differential, form_to_polynomial, LieModule, SymConvention};
use plie_core::group::{
    associativity, gamma_tower, log_bracket, predicates, uniform_tower_check, ExpGroup, GammaGroup, GroupView,
    DEFAULT_BUDGET,
};
use plie_core::lifting::{brute_force_lift_oracle, obstruction, LiftProblem};
use plie_core::modp::PrimePower;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, what: &str, ok: bool, start: Instant, limit: Duration) {
    let elapsed = start.elapsed();
    let within = elapsed <= limit;
    let status = if ok && within { "PASS" } else { "FAIL" };
    // Bypasses libtest capture.
    let line = format!("criterion {n:>2}: {status} {what} ({:.2}s, limit {}s)\n", elapsed.as_secs_f64(), limit.as_secs());
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {n} failed: {what}");
    assert!(within, "criterion {n} exceeded {}s", limit.as_secs());
}

fn free_ring_dims(odd: &[usize], even: &[usize], top: usize) -> Vec<usize> {
    let mut dims = vec![0usize; top + 1];
    dims[0] = 1;
    for &g in even {
        for d in g..=top {
            dims[d] += dims[d - g];
        }
    }
    for &g in odd {
        for d in (g..=top).rev() {
            dims[d] += dims[d - g];
        }
    }
    dims
}

fn non_lie(p: u64) -> BracketAlgebra {
    BracketAlgebra::from_brackets(
        PrimePower::field(p).unwrap(),
        vec!["e1".into(), "e2".into(), "e3".into()],
        &[(0, 1, vec![0, 0, 1]), (2, 0, vec![-1, 0, 0])],
    )
    .unwrap()
}

fn random_forms(rng: &mut ChaCha8Rng, f: PrimePower, n: usize, degree: usize) -> Vec<ExteriorElement> {
    (0..n)
        .map(|_| {
            let mut w = ExteriorElement::zero(f, n);
            for mask in subsets(n, degree) {
                w.add_term(mask, rng.gen_range(0..f.modulus()));
            }
            w
        })
        .collect()
}

#[test]
fn criterion_01_sl2_cohomology() {
    let start = Instant::now();
    let mut ok = true;
    for p in [5, 7] {
        let l = named_algebra("sl2", p, 1).unwrap();
        let f = l.modulus();
        ok &= cohomology(&l, &LieModule::trivial(&l).unwrap(), false).unwrap().dims == vec![1, 0, 0, 1];
        let s1 = LieModule::sym(&l, 1, SymConvention::Forms).unwrap();
        ok &= cohomology(&l, &s1, false).unwrap().dims == vec![0, 0, 0, 0];
        let s2 = LieModule::sym(&l, 2, SymConvention::Forms).unwrap();
        let h = cohomology(&l, &s2, true).unwrap();
        ok &= h.dims[0] == 1;
        let rep = &h.representatives.as_ref().unwrap()[0][0];
        // Polynomial coefficients on H², HX₊, HX₋, X₊², X₊X₋, X₋² proportional to (1,0,0,0,1,0).
        let poly = form_to_polynomial(f, s2.basis(), rep);
        ok &= poly[0] != 0 && poly[4] == poly[0] && [1, 2, 3, 5].iter().all(|&i| poly[i] == 0);
        let killing = form_to_polynomial(f, s2.basis(), &[f.reduce(8), 0, 0, 0, f.reduce(4), 0]);
        ok &= killing == vec![f.reduce(8), 0, 0, 0, f.reduce(8), 0];
    }
    verdict(1, "sl2 cohomology: trivial (1,0,0,1), S¹ = 0, H⁰(S²) spanned by 8(H²+X₊X₋)", ok, start, Duration::from_secs(1));
}

#[test]
fn criterion_02_b2_two_ways() {
    let start = Instant::now();
    let mut ok = true;
    for name in ["abelian(2)", "heisenberg", "solvable_S", "sl2", "so3", "gln(2)"] {
        let l = named_algebra(name, 5, 1).unwrap();
        let direct = b2_direct(&BocksteinData::new(l.clone(), None).unwrap(), 10).unwrap();
        let lie = b2_via_lie(&l, 10, SymConvention::Forms).unwrap();
        let agree = direct == lie && direct.degrees.len() == 10;
        if !agree {
            println!("  {name}: direct {:?} via Lie {:?}", direct.b2(), lie.b2());
        }
        ok &= agree;
    }
    verdict(2, "b2_direct = b2_via_lie for six algebras over F_5, degrees ≤ 9", ok, start, Duration::from_secs(30));
}

#[test]
fn criterion_03_b2_of_sl2() {
    let start = Instant::now();
    let bd = BocksteinData::new(named_algebra("sl2", 5, 1).unwrap(), None).unwrap();
    let r = b2_direct(&bd, 6).unwrap();
    let mut ok = r.b2()[1..5] == [0, 0, 1, 1];
    // hx₊x₋ and 8(H² + X₊X₋) are β-cocycles spanning degrees 3 and 4.
    let ring = bd.ring(6).unwrap();
    let hxx = ring.ext_generator(0).mul(&ring.ext_generator(1)).mul(&ring.ext_generator(2));
    ok &= beta(&bd, &hxx, 6).unwrap().is_zero();
    ok &= r.degrees[3].by_weight == vec![plie_core::bockstein::WeightDim { k: 0, dim: 1 }, plie_core::bockstein::WeightDim { k: 1, dim: 0 }];
    let mut killing = RingElement::zero(ring.field());
    for (poly, c) in [(vec![2, 0, 0], 8), (vec![0, 1, 1], 8)] {
        killing.add_term(Monomial { ext: 0, poly }, c);
    }
    ok &= beta(&bd, &killing, 6).unwrap().is_zero();
    ok &= r.degrees[4].by_weight.iter().find(|w| w.k == 2).map(|w| w.dim) == Some(1);
    verdict(3, "B₂ of G(sl2): degrees 1..4 = 0, 0, 1, 1", ok, start, Duration::from_secs(5));
}

#[test]
fn criterion_04_b2_of_solvable() {
    let start = Instant::now();
    let l = named_algebra("solvable_S", 5, 1).unwrap();
    let r = b2_direct(&BocksteinData::new(l, None).unwrap(), 12).unwrap();
    let ok = r.b2() == free_ring_dims(&[1, 9], &[2, 10], 11);
    verdict(4, "B₂ of G(S) is free on degrees 1, 9, 2, 10 through degree 11", ok, start, Duration::from_secs(5));
}

#[test]
fn criterion_05_exp_round_trip() {
    let start = Instant::now();
    let mut ok = true;
    let names = ["abelian(1)", "abelian(2)", "abelian(3)", "heisenberg", "solvable_S", "sl2", "so3", "sln(2)"];
    for p in [3, 5] {
        for name in names {
            let l = named_algebra(name, p, 1).unwrap();
            let n = l.dim() as u32;
            let g = ExpGroup::new(l.clone()).unwrap();
            let pr = predicates(&g, DEFAULT_BUDGET).unwrap();
            let assoc = associativity(&g, DEFAULT_BUDGET).unwrap();
            let log = log_bracket(&g, DEFAULT_BUDGET).unwrap().with_labels(l.labels().to_vec());
            let this = g.order() == (p as u128).pow(2 * n)
                && assoc.holds
                && pr.exponent == p * p
                && pr.omega_power_frattini_equal == Some(true)
                && pr.p_central
                && log == l;
            if !this {
                println!("  {name} over F_{p} failed");
            }
            ok &= this;
        }
    }
    verdict(5, "Exp(L): order p^2n, associative, exponent p², Ω₁ = G^p = Frat central, Log∘Exp = id", ok, start, Duration::from_secs(60));
}

#[test]
fn criterion_06_gamma_towers() {
    let start = Instant::now();
    let g1 = GammaGroup::new(2, 1, 3).unwrap();
    let g2 = GammaGroup::new(2, 2, 3).unwrap();
    let mut ok = g1.order() == 81 && g2.order() == 6561;
    for g in [&g1, &g2] {
        let pr = predicates(g, DEFAULT_BUDGET).unwrap();
        ok &= pr.powerful && pr.p_central;
    }
    let tower = uniform_tower_check(&gamma_tower(2, 2, 3).unwrap(), DEFAULT_BUDGET).unwrap();
    ok &= tower.uniform && tower.stages[0].phi_bijective == Some(true);
    let gl2 = named_algebra("gln(2)", 3, 1).unwrap();
    let log = log_bracket(&g2, DEFAULT_BUDGET).unwrap().rescaled(2).with_labels(gl2.labels().to_vec());
    ok &= log == gl2;
    verdict(6, "Γ_{2,1}(3), Γ_{2,2}(3): orders, powerful, p-central, uniform, Log ≅ gl2(F_3)", ok, start, Duration::from_secs(60));
}

#[test]
fn criterion_07_beta_square_characterisation() {
    let start = Instant::now();
    let f = PrimePower::field(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut ok = true;
    for round in 0..600 {
        let l = if round % 2 == 0 { random_lie_algebra(&mut rng, f, 3) } else { random_bracket_algebra(&mut rng, f, 3) };
        let bd = BocksteinData::new(l.clone(), Some(random_forms(&mut rng, f, 3, 3))).unwrap();
        let ad = LieModule::ad_unchecked(&l).unwrap();
        let d_eta = differential(&l, &ad, 3).unwrap().mul_vec(&bd.eta_cochain()).unwrap();
        let expected = l.is_lie() && d_eta.iter().all(|&x| x == 0);
        ok &= beta_squared_defect(&bd).unwrap().is_none() == expected;
    }
    verdict(7, "β² = 0 ⇔ J = 0 and dη = 0, 600 random (L, η), n = 3, p = 3", ok, start, Duration::from_secs(60));
}

#[test]
fn criterion_08_obstruction_vs_oracle() {
    let start = Instant::now();
    let f = PrimePower::field(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut ok = true;
    for _ in 0..200 {
        let problem = LiftProblem::new(random_lie_algebra(&mut rng, f, 3)).unwrap();
        let report = obstruction(&problem).unwrap();
        ok &= report.obstruction_zero == brute_force_lift_oracle(&problem, DEFAULT_BUDGET).unwrap();
        if report.obstruction_zero {
            let c = report.corrected_algebra().unwrap().unwrap();
            ok &= c.modulus().modulus() == 9 && c.is_lie() && c.reduce(1).unwrap() == *problem.algebra();
        }
    }
    verdict(8, "obstruction = brute-force oracle on 200 random Lie algebras over F_3, lifts verified mod 9", ok, start, Duration::from_secs(600));
}

#[test]
fn criterion_09_regauging() {
    let start = Instant::now();
    let l = named_algebra("sl2", 5, 1).unwrap();
    let bd = BocksteinData::new(l.clone(), None).unwrap();
    let base = b2_direct(&bd, 8).unwrap().b2();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut ok = true;
    for _ in 0..10 {
        let mu = random_forms(&mut rng, l.modulus(), 3, 2);
        let shifted = bd.regauge(&mu).unwrap();
        ok &= b2_direct(&shifted, 8).unwrap().b2() == base;
    }
    verdict(9, "B₂ of sl2 unchanged under 10 random regaugings s ↦ s + μ", ok, start, Duration::from_secs(10));
}

#[test]
fn criterion_10_lhs_e3() {
    let start = Instant::now();
    let expected = free_ring_dims(&[1, 1, 1], &[2, 2, 2], 5);
    let mut ok = true;
    for l in [named_algebra("sl2", 5, 1).unwrap(), named_algebra("heisenberg", 5, 1).unwrap(), non_lie(5)] {
        ok &= lhs_e3_dims(&l, 6).unwrap() == expected;
    }
    verdict(10, "E₃ = Λ(x)⊗F_p[s] in degrees ≤ 5 for sl2, heisenberg and a non-Lie algebra", ok, start, Duration::from_secs(5));
}
