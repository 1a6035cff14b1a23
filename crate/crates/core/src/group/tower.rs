//! Uniform towers: chains of p-central groups whose projection kernels are
//! the `Ω₁` subgroups and whose p-power maps are isomorphisms.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{enumerate, omega1, AbelianGroup, Element, GammaGroup, GroupView};
use crate::error::{Error, Result};

/// One stage of a tower, with the projection onto the next stage down.
/// The last stage projects onto the trivial group.
pub struct TowerStage<'a> {
    pub group: Box<dyn GroupView + 'a>,
    pub projection: Option<Box<dyn Fn(&[u64]) -> Element + 'a>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageVerdict {
    pub stage: usize,
    pub name: String,
    pub order: u128,
    pub omega1_order: usize,
    pub p_central: bool,
    /// `(dim Ω₁(G_below), dim Ω₁(G), rank φ)` for `φ(x) = x̂^p`; `None` on
    /// the bottom stage.
    pub phi: Option<(usize, usize, usize)>,
    pub phi_bijective: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerVerdict {
    pub stages: Vec<StageVerdict>,
    pub uniform: bool,
}

/// Checks a tower listed from the top stage down.
///
/// Each projection must be a surjective homomorphism with kernel `Ω₁`, else
/// the tower is malformed and an error is returned. The verdict records
/// whether each stage is p-central and whether each p-power map
/// `φ : Ω₁(G_below) → Ω₁(G)`, `x ↦ x̂^p`, is bijective.
pub fn uniform_tower_check(stages: &[TowerStage<'_>], budget: u64) -> Result<TowerVerdict> {
    let mut omegas = Vec::with_capacity(stages.len());
    for stage in stages {
        omegas.push(omega1(stage.group.as_ref(), budget)?);
    }
    let mut verdicts = Vec::with_capacity(stages.len());
    for (idx, stage) in stages.iter().enumerate() {
        let g = stage.group.as_ref();
        let p = g.p();
        let all = enumerate(g, budget)?;
        let om = &omegas[idx];
        let malformed = |reason: String| Error::MalformedTower { stage: idx, reason };

        let p_central = om
            .generators()
            .iter()
            .all(|w| g.generators().iter().all(|s| g.multiply(w, s) == g.multiply(s, w)));

        let (kernel, phi): (HashSet<Element>, Option<(usize, usize, usize)>) =
            match (&stage.projection, stages.get(idx + 1)) {
                (Some(proj), Some(next)) => {
                    let lower = next.group.as_ref();
                    let id = lower.identity();
                    let image: HashSet<Element> = all.iter().map(|x| proj(x)).collect();
                    if image.len() as u128 != lower.order() {
                        return Err(malformed(format!(
                            "projection hits {} of {} elements",
                            image.len(),
                            lower.order()
                        )));
                    }
                    for a in g.generators() {
                        for b in all.iter().step_by((all.len() / 500).max(1)) {
                            if proj(&g.multiply(&a, b)) != lower.multiply(&proj(&a), &proj(b)) {
                                return Err(malformed("projection is not a homomorphism".into()));
                            }
                        }
                    }
                    let kernel = all.iter().filter(|x| proj(x) == id).cloned().collect();
                    // φ on Ω₁ of the stage below, checked on every lift.
                    let lower_om = &omegas[idx + 1];
                    let mut phi_of: HashMap<Element, Element> = HashMap::new();
                    for x in &all {
                        let y = proj(x);
                        if !lower_om.contains(&y) {
                            continue;
                        }
                        let xp = g.power(x, p);
                        if let Some(prev) = phi_of.insert(y, xp.clone()) {
                            if prev != xp {
                                return Err(malformed("p-th powers of lifts disagree".into()));
                            }
                        }
                    }
                    let values: HashSet<&Element> = phi_of.values().collect();
                    let dims = (log_p(lower_om.order(), p), log_p(om.order(), p), log_p(values.len(), p));
                    (kernel, Some(dims))
                }
                (None, None) => (all.iter().cloned().collect(), None),
                _ => return Err(malformed("projection and stage count disagree".into())),
            };
        if kernel.len() != om.order() || !om.sorted_elements().iter().all(|x| kernel.contains(x)) {
            return Err(malformed(format!(
                "kernel has order {} but Ω₁ has order {}",
                kernel.len(),
                om.order()
            )));
        }
        verdicts.push(StageVerdict {
            stage: idx,
            name: g.name(),
            order: g.order(),
            omega1_order: om.order(),
            p_central,
            phi,
            phi_bijective: phi.map(|(w, v, r)| w == v && r == w),
        });
    }
    let uniform = verdicts.iter().all(|v| v.p_central && v.phi_bijective != Some(false));
    Ok(TowerVerdict {
        stages: verdicts,
        uniform,
    })
}

fn log_p(mut n: usize, p: u64) -> usize {
    let mut e = 0;
    while n > 1 {
        n /= p as usize;
        e += 1;
    }
    e
}

/// `Γ_{n,k} → Γ_{n,k-1} → … → Γ_{n,1} → 1`.
pub fn gamma_tower(n: usize, k: u32, p: u64) -> Result<Vec<TowerStage<'static>>> {
    let mut stages = Vec::new();
    let mut current = Some(GammaGroup::new(n, k, p)?);
    while let Some(g) = current {
        let below = g.stage_below();
        let projection: Option<Box<dyn Fn(&[u64]) -> Element>> = below.map(|_| {
            let f: Box<dyn Fn(&[u64]) -> Element> = Box::new(move |x: &[u64]| g.project(x));
            f
        });
        stages.push(TowerStage {
            group: Box::new(g),
            projection,
        });
        current = below;
    }
    Ok(stages)
}

/// `(Z/p^e)^n → (Z/p^{e-1})^n → … → (Z/p)^n → 1`.
pub fn abelian_tower(p: u64, n: usize, e: u32) -> Result<Vec<TowerStage<'static>>> {
    let mut stages = Vec::new();
    for level in (1..=e).rev() {
        let g = AbelianGroup::new(p, &vec![level; n])?;
        let projection: Option<Box<dyn Fn(&[u64]) -> Element>> = if level > 1 {
            let m = p.pow(level - 1);
            Some(Box::new(move |x: &[u64]| x.iter().map(|&v| v % m).collect()))
        } else {
            None
        };
        stages.push(TowerStage {
            group: Box::new(g),
            projection,
        });
    }
    Ok(stages)
}
