use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{enumerate, generate_greedy, normal_closure, Element, GroupView, Subgroup, SAMPLE_COUNT};
use crate::error::{Error, Result};

/// Whether a verdict rests on every element or on random samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Confidence {
    Exhaustive,
    Sampled,
}

/// `Ω₁(G) = ⟨g : g^p = 1⟩`, by enumeration.
pub fn omega1(g: &dyn GroupView, budget: u64) -> Result<Subgroup> {
    let p = g.p();
    let candidates = enumerate(g, budget)?
        .into_iter()
        .filter(|x| !g.is_identity(x) && g.is_identity(&g.power(x, p)));
    generate_greedy(g, candidates, budget)
}

/// `G^{p^e} = ⟨g^{p^e}⟩`, by enumeration.
pub fn power_subgroup(g: &dyn GroupView, e: u32, budget: u64) -> Result<Subgroup> {
    let q = g.p().pow(e);
    let mut powers: Vec<Element> = enumerate(g, budget)?.iter().map(|x| g.power(x, q)).collect();
    powers.sort();
    powers.dedup();
    generate_greedy(g, powers, budget)
}

/// `Frat(G) = G^p [G, G]`.
pub fn frattini(g: &dyn GroupView, budget: u64) -> Result<Subgroup> {
    let gp = power_subgroup(g, 1, budget)?;
    let gens = g.generators();
    let mut candidates = gp.generators().to_vec();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            candidates.push(g.commutator(a, b));
        }
    }
    let seed = generate_greedy(g, candidates, budget)?;
    normal_closure(g, seed.generators(), budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPredicates {
    pub order: u128,
    pub confidence: Confidence,
    pub p_central: bool,
    /// An `Ω₁` element and a generator that fail to commute.
    pub p_central_witness: Option<(Element, Element)>,
    pub powerful: bool,
    /// Generators whose commutator lies outside `G^p`.
    pub powerful_witness: Option<(Element, Element)>,
    /// Largest element order seen (exact when exhaustive).
    pub exponent: u64,
    pub omega1_order: Option<usize>,
    pub power_order: Option<usize>,
    pub frattini_order: Option<usize>,
    /// `Ω₁ = G^p = Frat(G)` as sets; only decided when exhaustive.
    pub omega_power_frattini_equal: Option<bool>,
    pub omega1_elementary: Option<bool>,
}

/// p-central, powerful, exponent and the `Ω₁ / G^p / Frat` comparison.
///
/// Exhaustive when `|G| ≤ budget`; otherwise uses the group's structural
/// membership tests plus random samples.
pub fn predicates(g: &dyn GroupView, budget: u64) -> Result<GroupPredicates> {
    if g.order() <= budget as u128 {
        exhaustive_predicates(g, budget)
    } else {
        sampled_predicates(g, budget)
    }
}

fn exhaustive_predicates(g: &dyn GroupView, budget: u64) -> Result<GroupPredicates> {
    let gens = g.generators();
    let om = omega1(g, budget)?;
    let gp = power_subgroup(g, 1, budget)?;
    let fr = frattini(g, budget)?;

    let mut p_central_witness = None;
    'outer: for w in om.generators() {
        for s in &gens {
            if g.multiply(w, s) != g.multiply(s, w) {
                p_central_witness = Some((w.clone(), s.clone()));
                break 'outer;
            }
        }
    }
    let powerful_witness = commutator_outside(g, &gens, |c| gp.contains(c));
    let exponent = enumerate(g, budget)?.iter().map(|x| g.element_order(x)).max().unwrap_or(1);

    let p = g.p();
    let elementary = om.generators().iter().all(|w| g.is_identity(&g.power(w, p)))
        && om
            .generators()
            .iter()
            .all(|a| om.generators().iter().all(|b| g.multiply(a, b) == g.multiply(b, a)));

    Ok(GroupPredicates {
        order: g.order(),
        confidence: Confidence::Exhaustive,
        p_central: p_central_witness.is_none(),
        p_central_witness,
        powerful: powerful_witness.is_none(),
        powerful_witness,
        exponent,
        omega1_order: Some(om.order()),
        power_order: Some(gp.order()),
        frattini_order: Some(fr.order()),
        omega_power_frattini_equal: Some(om.same_elements(&gp) && gp.same_elements(&fr)),
        omega1_elementary: Some(elementary),
    })
}

fn commutator_outside(g: &dyn GroupView, gens: &[Element], inside: impl Fn(&[u64]) -> bool) -> Option<(Element, Element)> {
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if !inside(&g.commutator(a, b)) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

fn sampled_predicates(g: &dyn GroupView, budget: u64) -> Result<GroupPredicates> {
    let probe = g.identity();
    let (Some(omega_gens), Some(_), Some(_)) =
        (g.omega1_generators(), g.in_omega1(&probe), g.in_power_subgroup(&probe, 1))
    else {
        return Err(Error::BudgetExceeded { budget });
    };
    let gens = g.generators();
    let p = g.p();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);

    let commutes_with_gens = |w: &[u64]| gens.iter().find(|s| g.multiply(w, s) != g.multiply(s, w)).cloned();
    let mut p_central_witness = None;
    for w in &omega_gens {
        if let Some(s) = commutes_with_gens(w) {
            p_central_witness = Some((w.clone(), s));
            break;
        }
    }
    let mut exponent = gens.iter().map(|s| g.element_order(s)).max().unwrap_or(1);
    for _ in 0..SAMPLE_COUNT {
        let x = g.sample(&mut rng);
        // Last nontrivial p-power of x has order p.
        let mut y = x.clone();
        let mut ord = 1u64;
        loop {
            let z = g.power(&y, p);
            if g.is_identity(&z) {
                break;
            }
            y = z;
            ord *= p;
        }
        if !g.is_identity(&y) {
            exponent = exponent.max(ord * p);
            if p_central_witness.is_none() {
                if let Some(s) = commutes_with_gens(&y) {
                    p_central_witness = Some((y, s));
                }
            }
        }
    }
    let powerful_witness = commutator_outside(g, &gens, |c| g.in_power_subgroup(c, 1).unwrap_or(false));
    let elementary = omega_gens.iter().all(|w| g.is_identity(&g.power(w, p)))
        && omega_gens
            .iter()
            .all(|a| omega_gens.iter().all(|b| g.multiply(a, b) == g.multiply(b, a)));

    Ok(GroupPredicates {
        order: g.order(),
        confidence: Confidence::Sampled,
        p_central: p_central_witness.is_none(),
        p_central_witness,
        powerful: powerful_witness.is_none(),
        powerful_witness,
        exponent,
        omega1_order: None,
        power_order: None,
        frattini_order: None,
        omega_power_frattini_equal: None,
        omega1_elementary: Some(elementary),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociativityVerdict {
    pub holds: bool,
    pub confidence: Confidence,
    pub triples_checked: u64,
    pub witness: Option<(Element, Element, Element)>,
}

/// Checks `(ab)c = a(bc)`: every triple when `|G|³ ≤ budget`, otherwise
/// `SAMPLE_COUNT` seeded random triples.
pub fn associativity(g: &dyn GroupView, budget: u64) -> Result<AssociativityVerdict> {
    let check = |a: &[u64], b: &[u64], c: &[u64]| g.multiply(&g.multiply(a, b), c) == g.multiply(a, &g.multiply(b, c));
    let order = g.order();
    if order.saturating_pow(3) <= budget as u128 {
        let all = g.elements();
        let mut count = 0;
        for a in &all {
            for b in &all {
                let ab = g.multiply(a, b);
                for c in &all {
                    count += 1;
                    if g.multiply(&ab, c) != g.multiply(a, &g.multiply(b, c)) {
                        return Ok(AssociativityVerdict {
                            holds: false,
                            confidence: Confidence::Exhaustive,
                            triples_checked: count,
                            witness: Some((a.clone(), b.clone(), c.clone())),
                        });
                    }
                }
            }
        }
        return Ok(AssociativityVerdict {
            holds: true,
            confidence: Confidence::Exhaustive,
            triples_checked: count,
            witness: None,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xa550c);
    for count in 1..=SAMPLE_COUNT as u64 {
        let (a, b, c) = (g.sample(&mut rng), g.sample(&mut rng), g.sample(&mut rng));
        if !check(&a, &b, &c) {
            return Ok(AssociativityVerdict {
                holds: false,
                confidence: Confidence::Sampled,
                triples_checked: count,
                witness: Some((a, b, c)),
            });
        }
    }
    Ok(AssociativityVerdict {
        holds: true,
        confidence: Confidence::Sampled,
        triples_checked: SAMPLE_COUNT as u64,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::named_algebra;
    use crate::group::{AbelianGroup, ExpGroup, GammaGroup};

    #[test]
    fn gamma_21_is_its_own_omega1() {
        let g = GammaGroup::new(2, 1, 3).unwrap();
        let om = omega1(&g, 1_000_000).unwrap();
        assert_eq!(om.order(), 81);
        // Oracle: cube every element directly.
        let cubes_trivial = g.elements().iter().filter(|x| g.is_identity(&g.power(x, 3))).count();
        assert_eq!(cubes_trivial, 81);
    }

    #[test]
    fn gamma_22_subgroups() {
        let g = GammaGroup::new(2, 2, 3).unwrap();
        let om = omega1(&g, 1_000_000).unwrap();
        assert_eq!(om.order(), 81);
        for x in om.sorted_elements() {
            assert_eq!(g.in_omega1(&x), Some(true));
        }
        let gp = power_subgroup(&g, 1, 1_000_000).unwrap();
        assert!(gp.same_elements(&om));
        let pr = predicates(&g, 1_000_000).unwrap();
        assert!(pr.p_central && pr.powerful);
        assert_eq!(pr.exponent, 9);
    }

    #[test]
    fn exp_sl2_predicates() {
        let g = ExpGroup::new(named_algebra("sl2", 5, 1).unwrap()).unwrap();
        let pr = predicates(&g, 1_000_000).unwrap();
        assert_eq!(pr.order, 15625);
        assert!(pr.p_central && pr.powerful);
        assert_eq!(pr.exponent, 25);
        assert_eq!(pr.omega1_order, Some(125));
        assert_eq!(pr.omega_power_frattini_equal, Some(true));
    }

    #[test]
    fn elementary_abelian() {
        let g = AbelianGroup::new(5, &[1, 1, 1]).unwrap();
        let pr = predicates(&g, 1_000_000).unwrap();
        assert!(pr.p_central && pr.powerful);
        assert_eq!(pr.exponent, 5);
        assert_eq!(pr.power_order, Some(1));
    }

    #[test]
    fn sampled_mode_agrees_on_gamma() {
        let g = GammaGroup::new(2, 2, 3).unwrap();
        let exact = predicates(&g, 1_000_000).unwrap();
        let sampled = predicates(&g, 100).unwrap();
        assert_eq!(sampled.confidence, Confidence::Sampled);
        assert_eq!((sampled.p_central, sampled.powerful), (exact.p_central, exact.powerful));
        assert_eq!(sampled.exponent, exact.exponent);
    }

    #[test]
    fn abelian_without_membership_needs_budget() {
        struct Opaque(AbelianGroup);
        impl GroupView for Opaque {
            fn name(&self) -> String {
                self.0.name()
            }
            fn p(&self) -> u64 {
                self.0.p()
            }
            fn identity(&self) -> Element {
                self.0.identity()
            }
            fn multiply(&self, a: &[u64], b: &[u64]) -> Element {
                self.0.multiply(a, b)
            }
            fn inverse(&self, a: &[u64]) -> Element {
                self.0.inverse(a)
            }
            fn generators(&self) -> Vec<Element> {
                self.0.generators()
            }
            fn order(&self) -> u128 {
                self.0.order()
            }
            fn elements(&self) -> Vec<Element> {
                self.0.elements()
            }
            fn sample(&self, rng: &mut dyn rand::RngCore) -> Element {
                self.0.sample(rng)
            }
        }
        let g = Opaque(AbelianGroup::new(3, &[2, 2]).unwrap());
        assert!(matches!(predicates(&g, 10), Err(Error::BudgetExceeded { budget: 10 })));
        assert!(predicates(&g, 100).unwrap().powerful);
    }

    /// Unitriangular 3×3 matrices over F_p as triples `(a, b, c)`.
    struct Unitriangular(u64);
    impl GroupView for Unitriangular {
        fn name(&self) -> String {
            "UT3".into()
        }
        fn p(&self) -> u64 {
            self.0
        }
        fn identity(&self) -> Element {
            vec![0; 3]
        }
        fn multiply(&self, x: &[u64], y: &[u64]) -> Element {
            let p = self.0;
            vec![(x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p]
        }
        fn inverse(&self, x: &[u64]) -> Element {
            let p = self.0;
            vec![(p - x[0]) % p, (p - x[1]) % p, (x[0] * x[1] % p + p - x[2]) % p]
        }
        fn generators(&self) -> Vec<Element> {
            vec![vec![1, 0, 0], vec![0, 1, 0]]
        }
        fn order(&self) -> u128 {
            (self.0 as u128).pow(3)
        }
        fn elements(&self) -> Vec<Element> {
            crate::group::all_vectors(self.0, 3).collect()
        }
        fn sample(&self, rng: &mut dyn rand::RngCore) -> Element {
            use rand::Rng;
            (0..3).map(|_| rng.gen_range(0..self.0)).collect()
        }
    }

    #[test]
    fn extraspecial_group_of_exponent_p_is_not_powerful() {
        let g = Unitriangular(3);
        let pr = predicates(&g, 1_000_000).unwrap();
        assert!(!pr.powerful);
        assert!(pr.powerful_witness.is_some());
        assert_eq!(pr.exponent, 3);
        assert_eq!(pr.power_order, Some(1));
        assert_eq!(pr.frattini_order, Some(3));
        // Every element has order p, so Ω₁ is everything and is not central.
        assert_eq!(pr.omega1_order, Some(27));
        assert!(!pr.p_central);
    }
}
