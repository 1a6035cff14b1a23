use plie_core::algebra::exterior::{indices_of, subsets};
use plie_core::algebra::{named_algebra, random_lie_algebra, BracketAlgebra};
use plie_core::cohomology::{cohomology, differential, LieModule, SymConvention};
use plie_core::modp::{ModMatrix, PrimePower};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Value of an alternating cochain on an arbitrary index tuple.
fn eval(omega: &[u64], n: usize, mdim: usize, f: PrimePower, args: &[usize]) -> Vec<u64> {
    let mut sorted = args.to_vec();
    let mut odd = false;
    for i in 0..sorted.len() {
        for j in 0..sorted.len() - 1 - i {
            if sorted[j] > sorted[j + 1] {
                sorted.swap(j, j + 1);
                odd = !odd;
            } else if sorted[j] == sorted[j + 1] {
                return vec![0; mdim];
            }
        }
    }
    let mask: u64 = sorted.iter().map(|&i| 1u64 << i).sum();
    let pos = subsets(n, args.len()).iter().position(|&m| m == mask).unwrap();
    (0..mdim)
        .map(|r| {
            let v = omega[pos * mdim + r];
            if odd {
                f.neg(v)
            } else {
                v
            }
        })
        .collect()
}

/// `(dω)(u_0..u_ℓ)` from the defining formula, extending `ω` linearly in its first slot.
fn naive_d(l: &BracketAlgebra, m: &LieModule, degree: usize, omega: &[u64]) -> Vec<u64> {
    let f = l.modulus();
    let n = l.dim();
    let md = m.dim();
    let mut out = Vec::new();
    for mask in subsets(n, degree + 1) {
        let u = indices_of(mask);
        let mut acc = vec![0u64; md];
        for i in 0..u.len() {
            for j in i + 1..u.len() {
                let sign_neg = (i + j) % 2 == 1;
                let rest: Vec<usize> = u.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &x)| x).collect();
                for t in 0..n {
                    let c = l.constant(u[i], u[j], t);
                    if c == 0 {
                        continue;
                    }
                    let mut args = vec![t];
                    args.extend(&rest);
                    for (r, v) in eval(omega, n, md, f, &args).into_iter().enumerate() {
                        let term = f.mul(c, v);
                        acc[r] = if sign_neg { f.sub(acc[r], term) } else { f.add(acc[r], term) };
                    }
                }
            }
            let rest: Vec<usize> = u.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &x)| x).collect();
            let v = eval(omega, n, md, f, &rest);
            let moved = m.action(u[i]).mul_vec(&v).unwrap();
            for r in 0..md {
                acc[r] = if i % 2 == 1 { f.sub(acc[r], moved[r]) } else { f.add(acc[r], moved[r]) };
            }
        }
        out.extend(acc);
    }
    out
}

fn unit(len: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0; len];
    v[i] = 1;
    v
}

fn check_against_naive(l: &BracketAlgebra, m: &LieModule) {
    for degree in 0..l.dim() {
        let d = differential(l, m, degree).unwrap();
        for col in 0..d.cols() {
            assert_eq!(d.column(col), naive_d(l, m, degree, &unit(d.cols(), col)), "degree {degree}, column {col}");
        }
    }
}

#[test]
fn differential_matches_the_defining_formula() {
    for (name, p) in [("sl2", 5), ("heisenberg", 3), ("gln(2)", 3), ("solvable_S", 5)] {
        let l = named_algebra(name, p, 1).unwrap();
        check_against_naive(&l, &LieModule::trivial(&l).unwrap());
        check_against_naive(&l, &LieModule::ad(&l).unwrap());
        check_against_naive(&l, &LieModule::sym(&l, 2, SymConvention::Forms).unwrap());
    }
}

#[test]
fn h0_is_the_common_kernel_of_the_action() {
    for (name, p, k) in [("sl2", 5, 2), ("sl2", 7, 1), ("so3", 5, 2), ("heisenberg", 5, 1)] {
        let l = named_algebra(name, p, 1).unwrap();
        let m = LieModule::sym(&l, k, SymConvention::Forms).unwrap();
        let mut stacked = ModMatrix::zeros(l.modulus(), m.dim() * l.dim(), m.dim());
        for i in 0..l.dim() {
            for r in 0..m.dim() {
                for c in 0..m.dim() {
                    stacked.set(i * m.dim() + r, c, m.action(i).get(r, c));
                }
            }
        }
        let invariants = stacked.kernel_fp().unwrap().dim();
        assert_eq!(cohomology(&l, &m, false).unwrap().dims[0], invariants, "{name}");
    }
}

#[test]
fn sl2_adjoint_cohomology_vanishes() {
    // Every derivation of sl₂ is inner and sl₂ is perfect for p ≥ 5.
    for p in [5, 7] {
        let l = named_algebra("sl2", p, 1).unwrap();
        let h = cohomology(&l, &LieModule::ad(&l).unwrap(), false).unwrap();
        assert_eq!(h.dims, vec![0, 0, 0, 0]);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn euler_characteristic_vanishes(seed in any::<u64>(), k in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_lie_algebra(&mut rng, PrimePower::field(5).unwrap(), 3);
        for m in [LieModule::trivial(&l).unwrap(), LieModule::ad(&l).unwrap(), LieModule::sym(&l, k, SymConvention::Forms).unwrap()] {
            prop_assert_eq!(cohomology(&l, &m, false).unwrap().euler_characteristic(), 0);
        }
    }

    #[test]
    fn random_differentials_match_the_formula(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = random_lie_algebra(&mut rng, PrimePower::field(3).unwrap(), 3);
        check_against_naive(&l, &LieModule::ad(&l).unwrap());
    }
}
