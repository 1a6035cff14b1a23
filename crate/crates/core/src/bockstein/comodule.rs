use serde::{Deserialize, Serialize};

use super::beta::BocksteinData;
use super::ring::{AlgebraMap, Derivation, GradedRing, Monomial, RingElement};
use crate::error::{Error, Result};

/// `Δ` on generators and the result of `Δ∘β = (β⊗1 + 1⊗β)∘Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComoduleReport {
    /// `(generator, Δ(generator))`, formatted.
    pub delta: Vec<(String, String)>,
    /// Generators on which compatibility fails.
    pub failures: Vec<String>,
}

impl ComoduleReport {
    pub fn compatible(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The coaction `Δ : B → H*(Ω₁) ⊗ B` with `H*(Ω₁) = Λ(t)⊗F_p[s̄]`,
/// `Δ(x_k) = x_k`, `Δ(s_k) = s̄_k + s_k + Σ_{i,j} c_{ij}^k t_i x_j`.
pub struct Coaction {
    target: GradedRing,
    map: AlgebraMap,
    source_beta: Derivation,
    target_beta: Derivation,
}

impl Coaction {
    pub fn new(bd: &BocksteinData) -> Result<Self> {
        let l = bd.algebra();
        let n = l.dim();
        let f = l.modulus();
        let source_beta = bd.derivation(usize::MAX / 2)?;
        let src = source_beta.ring().clone();
        let mut ext_labels: Vec<String> = l.labels().iter().map(|x| format!("t({x})")).collect();
        ext_labels.extend(src.ext_labels().iter().cloned());
        let mut poly_labels: Vec<String> = l.labels().iter().map(|x| format!("βt({x})")).collect();
        poly_labels.extend(src.poly_labels().iter().cloned());
        let target = GradedRing::new(f, ext_labels, poly_labels, usize::MAX / 2)?;

        let shift = |e: &RingElement| {
            let mut out = target.zero();
            for (m, &c) in e.terms() {
                let mut poly = vec![0; n];
                poly.extend(&m.poly);
                out.add_term(Monomial { ext: m.ext << n, poly }, c);
            }
            out
        };

        let mut delta_ext = Vec::with_capacity(n);
        let mut delta_poly = Vec::with_capacity(n);
        for k in 0..n {
            delta_ext.push(target.ext_generator(n + k));
            let mut e = target.poly_generator(k).add(&target.poly_generator(n + k));
            for i in 0..n {
                for j in 0..n {
                    let c = l.constant(i, j, k);
                    if c != 0 {
                        e = e.add(&target.ext_generator(i).mul(&target.ext_generator(n + j)).scale(c));
                    }
                }
            }
            delta_poly.push(e);
        }
        let map = AlgebraMap::new(src, delta_ext, delta_poly)?;

        let mut t_ext: Vec<RingElement> = (0..n).map(|i| target.poly_generator(i)).collect();
        t_ext.extend((0..n).map(|i| shift(source_beta.ext_image(i))));
        let mut t_poly: Vec<RingElement> = vec![target.zero(); n];
        t_poly.extend((0..n).map(|i| shift(source_beta.poly_image(i))));
        let target_beta = Derivation::new(target.clone(), t_ext, t_poly)?;
        Ok(Coaction {
            target,
            map,
            source_beta,
            target_beta,
        })
    }

    pub fn target(&self) -> &GradedRing {
        &self.target
    }

    pub fn apply(&self, e: &RingElement) -> RingElement {
        self.map.apply(e, &self.target.one())
    }

    pub fn report(&self) -> ComoduleReport {
        let src = self.source_beta.ring();
        let n = src.n_ext();
        let mut delta = Vec::with_capacity(2 * n);
        let mut failures = Vec::new();
        let gens = (0..n)
            .map(|i| (src.ext_labels()[i].clone(), src.ext_generator(i)))
            .chain((0..n).map(|i| (src.poly_labels()[i].clone(), src.poly_generator(i))));
        for (name, g) in gens {
            let dg = self.apply(&g);
            let lhs = self.apply(&self.source_beta.apply(&g));
            let rhs = self.target_beta.apply(&dg);
            if lhs != rhs {
                failures.push(name.clone());
            }
            delta.push((name, self.target.format(&dg)));
        }
        ComoduleReport { delta, failures }
    }
}

/// Builds `Δ` and checks compatibility with `β` on every generator.
pub fn comodule_check(bd: &BocksteinData) -> Result<ComoduleReport> {
    let report = Coaction::new(bd)?.report();
    if report.compatible() {
        Ok(report)
    } else {
        Err(Error::ComoduleCompatibility(report.failures.join(", ")))
    }
}
