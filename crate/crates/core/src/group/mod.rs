//! Concrete finite p-groups and the group-theoretic side of Exp/Log.
//!
//! Elements are flat `Vec<u64>` vectors; each group defines its own
//! multiplication. Anything that needs a subgroup works by enumeration up to
//! a size budget, falling back to structural membership tests when a group
//! provides them.

mod abelian;
mod exp;
mod forms;
mod gamma;
mod predicates;
mod tower;

pub use abelian::AbelianGroup;
pub use exp::ExpGroup;
pub use forms::{extract_forms, extract_forms_with_section, log_bracket, CentralExtensionForms, Section};
pub use gamma::GammaGroup;
pub use predicates::{
    associativity, frattini, omega1, power_subgroup, predicates, AssociativityVerdict, Confidence, GroupPredicates,
};
pub use tower::{abelian_tower, gamma_tower, uniform_tower_check, StageVerdict, TowerStage, TowerVerdict};

use std::collections::HashSet;

use rand::RngCore;

use crate::error::{Error, Result};

pub type Element = Vec<u64>;

/// Default cap on the number of elements any enumeration may touch.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Random samples used when a group is too large to enumerate.
pub const SAMPLE_COUNT: usize = 100_000;

/// Uniform interface over the concrete groups.
pub trait GroupView {
    fn name(&self) -> String;
    fn p(&self) -> u64;
    fn identity(&self) -> Element;
    fn multiply(&self, a: &[u64], b: &[u64]) -> Element;
    fn inverse(&self, a: &[u64]) -> Element;
    /// A generating set.
    fn generators(&self) -> Vec<Element>;
    /// The group order, known from the construction.
    fn order(&self) -> u128;
    /// Every element in a fixed order. Only called when `order()` fits the budget.
    fn elements(&self) -> Vec<Element>;
    fn sample(&self, rng: &mut dyn RngCore) -> Element;

    /// Structural test for membership in `Ω₁`, if the group knows one.
    fn in_omega1(&self, _g: &[u64]) -> Option<bool> {
        None
    }

    /// Structural test for membership in `G^{p^e}`, if the group knows one.
    fn in_power_subgroup(&self, _g: &[u64], _e: u32) -> Option<bool> {
        None
    }

    /// Known generators of `Ω₁`, if the group knows them.
    fn omega1_generators(&self) -> Option<Vec<Element>> {
        None
    }

    fn power(&self, a: &[u64], mut e: u64) -> Element {
        let mut result = self.identity();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.multiply(&result, &base);
            }
            base = self.multiply(&base, &base);
            e >>= 1;
        }
        result
    }

    /// `a b a⁻¹ b⁻¹`.
    fn commutator(&self, a: &[u64], b: &[u64]) -> Element {
        let ab = self.multiply(a, b);
        let abai = self.multiply(&ab, &self.inverse(a));
        self.multiply(&abai, &self.inverse(b))
    }

    fn is_identity(&self, a: &[u64]) -> bool {
        a == self.identity().as_slice()
    }

    /// Order of `a`, a power of `p`.
    fn element_order(&self, a: &[u64]) -> u64 {
        let p = self.p();
        let mut x = a.to_vec();
        let mut ord = 1u64;
        while !self.is_identity(&x) {
            x = self.power(&x, p);
            ord = ord.saturating_mul(p);
            assert!(ord < u64::MAX / p, "element of unbounded order in a p-group");
        }
        ord
    }
}

/// All elements, or `BudgetExceeded`.
pub fn enumerate(g: &dyn GroupView, budget: u64) -> Result<Vec<Element>> {
    if g.order() > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(g.elements())
}

/// A subgroup held as an explicit element set.
#[derive(Debug, Clone)]
pub struct Subgroup {
    generators: Vec<Element>,
    elements: HashSet<Element>,
}

impl Subgroup {
    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &[u64]) -> bool {
        self.elements.contains(g)
    }

    /// Elements in sorted order.
    pub fn sorted_elements(&self) -> Vec<Element> {
        let mut v: Vec<Element> = self.elements.iter().cloned().collect();
        v.sort();
        v
    }

    pub fn same_elements(&self, other: &Subgroup) -> bool {
        self.elements == other.elements
    }
}

/// Subgroup generated by `gens` (finite group, so closure under products suffices).
pub fn closure(g: &dyn GroupView, gens: &[Element], budget: u64) -> Result<Subgroup> {
    let id = g.identity();
    let mut elements = HashSet::new();
    elements.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = g.multiply(&x, s);
            if !elements.contains(&y) {
                if elements.len() as u64 >= budget {
                    return Err(Error::BudgetExceeded { budget });
                }
                elements.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    Ok(Subgroup {
        generators: gens.to_vec(),
        elements,
    })
}

/// Subgroup generated by `candidates`, keeping only those not already in the
/// span of earlier ones.
pub fn generate_greedy<I>(g: &dyn GroupView, candidates: I, budget: u64) -> Result<Subgroup>
where
    I: IntoIterator<Item = Element>,
{
    let mut current = closure(g, &[], budget)?;
    for c in candidates {
        if !current.contains(&c) {
            let mut gens = current.generators.clone();
            gens.push(c);
            current = closure(g, &gens, budget)?;
        }
    }
    Ok(current)
}

/// Smallest normal subgroup containing `gens`.
pub fn normal_closure(g: &dyn GroupView, gens: &[Element], budget: u64) -> Result<Subgroup> {
    let conjugators = g.generators();
    let mut current = closure(g, gens, budget)?;
    loop {
        let mut extra = None;
        'search: for h in current.generators() {
            for c in &conjugators {
                let conj = g.multiply(&g.multiply(&g.inverse(c), h), c);
                if !current.contains(&conj) {
                    extra = Some(conj);
                    break 'search;
                }
            }
        }
        match extra {
            None => return Ok(current),
            Some(x) => {
                let mut gens = current.generators.clone();
                gens.push(x);
                current = closure(g, &gens, budget)?;
            }
        }
    }
}

/// Iterates over all vectors in `[0, m)^len` in lexicographic order.
pub(crate) fn all_vectors(m: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = (m as u128).pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0; len];
        for slot in v.iter_mut().rev() {
            *slot = (idx % m as u128) as u64;
            idx /= m as u128;
        }
        v
    })
}
