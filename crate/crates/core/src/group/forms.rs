//! The commutator form and p-power map of a p-central group, and the bracket
//! recovered from them.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{all_vectors, closure, enumerate, generate_greedy, omega1, Element, GroupView};
use crate::algebra::BracketAlgebra;
use crate::error::{Error, Result};
use crate::modp::{ModMatrix, PrimePower};

/// How coset representatives of `W = G/Ω₁` are chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Section {
    /// `a ↦ b_1^{a_1} ⋯ b_m^{a_m}` for the chosen basis `b_i`.
    Canonical,
    /// The canonical representative times a seeded pseudo-random `Ω₁` element.
    Twisted(u64),
}

/// `⟨·,·⟩ : W × W → V` and `φ : W → V` with `V = Ω₁(G)`, in coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralExtensionForms {
    pub field: PrimePower,
    /// Group elements whose images form the basis of `W`.
    pub w_basis: Vec<Element>,
    /// Elements of `Ω₁` forming the basis of `V`.
    pub v_basis: Vec<Element>,
    /// `dim V × dim W`; column `i` is `φ(w_i)`.
    pub phi: ModMatrix,
    /// `commutator[i][j] = ⟨w_i, w_j⟩` in `V` coordinates.
    pub commutator: Vec<Vec<Vec<u64>>>,
    /// Number of elements and pairs on which lift independence and
    /// (bi)linearity were verified.
    pub checks: usize,
}

impl CentralExtensionForms {
    pub fn w_dim(&self) -> usize {
        self.w_basis.len()
    }

    pub fn v_dim(&self) -> usize {
        self.v_basis.len()
    }

    pub fn phi_rank(&self) -> usize {
        self.phi.rank_fp().expect("forms live over a field")
    }

    pub fn phi_bijective(&self) -> bool {
        self.w_dim() == self.v_dim() && self.phi_rank() == self.w_dim()
    }

    /// `[w_i, w_j] = ½ φ⁻¹⟨w_i, w_j⟩`.
    pub fn bracket(&self) -> Result<BracketAlgebra> {
        if !self.phi_bijective() {
            return Err(Error::SingularPowerMap);
        }
        let f = self.field;
        let m = self.w_dim();
        let labels = (1..=m).map(|i| format!("w{i}")).collect();
        let mut alg = BracketAlgebra::zero_with_labels(f, labels);
        for i in 0..m {
            for j in i + 1..m {
                let u = self
                    .phi
                    .solve_fp(&self.commutator[i][j])?
                    .ok_or_else(|| Error::Internal("bijective φ has no preimage".into()))?;
                for (t, &x) in u.iter().enumerate() {
                    alg.set_pair(i, j, t, f.mul(f.half(), x));
                }
            }
        }
        Ok(alg)
    }
}

/// Extracts the forms with the canonical section.
pub fn extract_forms(g: &dyn GroupView, budget: u64) -> Result<CentralExtensionForms> {
    extract_forms_with_section(g, budget, Section::Canonical)
}

/// `Log(G)`: extract the forms, then `½ φ⁻¹ ⟨·,·⟩`.
pub fn log_bracket(g: &dyn GroupView, budget: u64) -> Result<BracketAlgebra> {
    extract_forms(g, budget)?.bracket()
}

fn not_central(msg: impl Into<String>) -> Error {
    Error::NotCentralExtension(msg.into())
}

pub fn extract_forms_with_section(g: &dyn GroupView, budget: u64, section: Section) -> Result<CentralExtensionForms> {
    let p = g.p();
    let field = PrimePower::field(p)?;
    let all = enumerate(g, budget)?;
    let gens = g.generators();
    let om = omega1(g, budget)?;
    let commute = |a: &[u64], b: &[u64]| g.multiply(a, b) == g.multiply(b, a);

    for w in om.generators() {
        if let Some(s) = gens.iter().find(|s| !commute(w, s)) {
            return Err(not_central(format!("Ω₁ element {w:?} does not commute with {s:?}")));
        }
        if om.generators().iter().any(|v| !commute(w, v)) {
            return Err(not_central("Ω₁ is not abelian"));
        }
    }

    // Basis of W from the generators of G.
    let mut w_basis: Vec<Element> = Vec::new();
    let mut span = om.clone();
    for s in &gens {
        if !span.contains(s) {
            w_basis.push(s.clone());
            let mut seed = om.generators().to_vec();
            seed.extend(w_basis.iter().cloned());
            span = closure(g, &seed, budget)?;
        }
    }
    for (i, b) in w_basis.iter().enumerate() {
        if !om.contains(&g.power(b, p)) {
            return Err(not_central(format!("G/Ω₁ is not elementary: w{} has p-th power outside Ω₁", i + 1)));
        }
        for c in &w_basis[i + 1..] {
            if !om.contains(&g.commutator(b, c)) {
                return Err(not_central("G/Ω₁ is not abelian"));
            }
        }
    }
    let m = w_basis.len();

    // Basis of V, preferring the p-th powers of the W basis.
    let candidates = w_basis
        .iter()
        .map(|b| g.power(b, p))
        .chain(om.generators().iter().cloned())
        .filter(|x| !g.is_identity(x));
    let v_span = generate_greedy(g, candidates, budget)?;
    let v_basis = v_span.generators().to_vec();
    let r = v_basis.len();
    let mut v_coords: HashMap<Element, Vec<u64>> = HashMap::with_capacity(om.order());
    for c in all_vectors(p, r) {
        let x = product_of_powers(g, &v_basis, &c);
        v_coords.insert(x, c);
    }
    if v_coords.len() != om.order() {
        return Err(not_central("Ω₁ is not elementary abelian"));
    }
    let v_of = |x: &[u64]| -> Result<Vec<u64>> {
        v_coords
            .get(x)
            .cloned()
            .ok_or_else(|| not_central(format!("{x:?} is not in Ω₁")))
    };

    let omega_sorted = om.sorted_elements();
    let mut twist_rng = match section {
        Section::Canonical => None,
        Section::Twisted(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut sections: HashMap<Vec<u64>, Element> = HashMap::new();
    let mut normal_form: HashMap<Element, Vec<u64>> = HashMap::with_capacity(all.len());
    for a in all_vectors(p, m) {
        let mut s = product_of_powers(g, &w_basis, &a);
        if let Some(rng) = twist_rng.as_mut() {
            let w = &omega_sorted[rng.gen_range(0..omega_sorted.len())];
            s = g.multiply(&s, w);
        }
        for x in &omega_sorted {
            normal_form.insert(g.multiply(&s, x), a.clone());
        }
        sections.insert(a, s);
    }
    if normal_form.len() != all.len() {
        return Err(not_central(format!(
            "|G| = {} but |Ω₁|·|W| = {}",
            all.len(),
            normal_form.len()
        )));
    }
    let unit = |i: usize| {
        let mut e = vec![0; m];
        e[i] = 1;
        e
    };

    let mut phi = ModMatrix::zeros(field, r, m);
    for i in 0..m {
        let col = v_of(&g.power(&sections[&unit(i)], p))?;
        for (t, &x) in col.iter().enumerate() {
            phi.set(t, i, x);
        }
    }
    let mut commutator = vec![vec![vec![0; r]; m]; m];
    for i in 0..m {
        for j in 0..m {
            commutator[i][j] = v_of(&g.commutator(&sections[&unit(i)], &sections[&unit(j)]))?;
        }
    }

    let bilinear = |a: &[u64], b: &[u64]| -> Vec<u64> {
        let mut out = vec![0; r];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                let w = field.mul(ai, bj);
                if w == 0 {
                    continue;
                }
                for (t, o) in out.iter_mut().enumerate() {
                    *o = field.add(*o, field.mul(w, commutator[i][j][t]));
                }
            }
        }
        out
    };

    // Lift independence and linearity of φ, on every element.
    let mut checks = 0;
    for x in &all {
        let a = &normal_form[x];
        let got = v_of(&g.power(x, p))?;
        if got != phi.mul_vec(a)? {
            return Err(not_central(format!("p-th power of {x:?} disagrees with linear φ")));
        }
        checks += 1;
    }
    // Bilinearity and lift independence of the commutator form, on pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(0xf0f0);
    let pair_count = (all.len() * all.len()).min(4000);
    for idx in 0..pair_count {
        let (x, y) = if all.len() * all.len() <= 4000 {
            (&all[idx / all.len()], &all[idx % all.len()])
        } else {
            (&all[rng.gen_range(0..all.len())], &all[rng.gen_range(0..all.len())])
        };
        let got = v_of(&g.commutator(x, y))?;
        if got != bilinear(&normal_form[x], &normal_form[y]) {
            return Err(not_central(format!("commutator of {x:?} and {y:?} is not bilinear")));
        }
        checks += 1;
    }

    Ok(CentralExtensionForms {
        field,
        w_basis,
        v_basis,
        phi,
        commutator,
        checks,
    })
}

fn product_of_powers(g: &dyn GroupView, basis: &[Element], exps: &[u64]) -> Element {
    let mut acc = g.identity();
    for (b, &e) in basis.iter().zip(exps) {
        if e != 0 {
            acc = g.multiply(&acc, &g.power(b, e));
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::named_algebra;
    use crate::group::{AbelianGroup, ExpGroup, GammaGroup};

    const BUDGET: u64 = 1_000_000;

    #[test]
    fn exp_forms_are_p_times_and_twice_bracket() {
        let l = named_algebra("sl2", 5, 1).unwrap();
        let g = ExpGroup::new(l.clone()).unwrap();
        let f = extract_forms(&g, BUDGET).unwrap();
        assert_eq!(f.w_basis, g.generators());
        assert!(f.phi_bijective());
        // V basis is p·e_i, so φ is the identity matrix.
        assert_eq!(f.phi, ModMatrix::identity(f.field, 3));
        for i in 0..3 {
            for j in 0..3 {
                let twice: Vec<u64> = l.bracket_basis(i, j).iter().map(|&c| 2 * c % 5).collect();
                assert_eq!(f.commutator[i][j], twice);
            }
        }
        assert_eq!(f.bracket().unwrap().with_labels(l.labels().to_vec()), l);
    }

    #[test]
    fn abelian_forms() {
        let g = AbelianGroup::new(3, &[2, 2, 2]).unwrap();
        let f = extract_forms(&g, BUDGET).unwrap();
        assert!(f.phi_bijective());
        assert!(f.commutator.iter().flatten().flatten().all(|&x| x == 0));
        assert!(f.bracket().unwrap().nonzero_brackets().is_empty());
    }

    #[test]
    fn twisted_section_gives_same_forms() {
        for name in ["heisenberg", "so3", "solvable_S"] {
            let g = ExpGroup::new(named_algebra(name, 3, 1).unwrap()).unwrap();
            let a = extract_forms_with_section(&g, BUDGET, Section::Canonical).unwrap();
            for seed in [1, 2, 3] {
                let b = extract_forms_with_section(&g, BUDGET, Section::Twisted(seed)).unwrap();
                assert_eq!((&a.phi, &a.commutator), (&b.phi, &b.commutator), "{name}");
            }
        }
    }

    #[test]
    fn gamma_22_log_is_half_of_gl2() {
        let g = GammaGroup::new(2, 2, 3).unwrap();
        let f = extract_forms(&g, BUDGET).unwrap();
        assert!(f.phi_bijective());
        let log = f.bracket().unwrap();
        let gl2 = named_algebra("gln(2)", 3, 1).unwrap();
        assert_eq!(log.rescaled(2).with_labels(gl2.labels().to_vec()), gl2);
    }

    #[test]
    fn singular_power_map() {
        let g = AbelianGroup::new(3, &[1, 2]).unwrap();
        let f = extract_forms(&g, BUDGET).unwrap();
        assert_eq!((f.w_dim(), f.v_dim(), f.phi_rank()), (1, 2, 1));
        assert!(matches!(f.bracket(), Err(Error::SingularPowerMap)));
    }
}
