use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::LieModule;
use crate::algebra::exterior::{mask_of, subsets};
use crate::algebra::BracketAlgebra;
use crate::error::{Error, Result};
use crate::modp::{binomial, ModMatrix, PrimePower, Subspace};

/// Position of `(subset, module index)` in `C^ℓ = Λ^ℓ L* ⊗ M`, with subsets
/// in the order of [`subsets`].
pub fn cochain_index(n: usize, degree: usize, mask: u64, module_dim: usize, r: usize) -> usize {
    let pos = subsets(n, degree)
        .iter()
        .position(|&m| m == mask)
        .expect("mask has the right size");
    pos * module_dim + r
}

/// `d^ℓ : C^ℓ → C^{ℓ+1}` from
/// `(dω)(u_0..u_ℓ) = Σ_{i<j} (-1)^{i+j} ω([u_i,u_j], …) + Σ_i (-1)^i ρ(u_i) ω(…û_i…)`.
///
/// No Jacobi or module-axiom check; see [`build_complex`] for the validated form.
pub fn differential(l: &BracketAlgebra, m: &LieModule, degree: usize) -> Result<ModMatrix> {
    let f = l.modulus();
    if !f.is_field() {
        return Err(Error::NotAField(f.k()));
    }
    if m.field() != f {
        return Err(Error::ModulusMismatch(format!("module over {} but algebra over {f}", m.field())));
    }
    let n = l.dim();
    let md = m.dim();
    let sources = subsets(n, degree);
    let targets = subsets(n, degree + 1);
    let source_pos: HashMap<u64, usize> = sources.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut d = ModMatrix::zeros(f, targets.len() * md, sources.len() * md);
    for (ti, &tmask) in targets.iter().enumerate() {
        let t: Vec<usize> = (0..n).filter(|&b| tmask >> b & 1 == 1).collect();
        // Bracket terms.
        for i in 0..t.len() {
            for j in i + 1..t.len() {
                let rest: Vec<usize> = t.iter().enumerate().filter(|&(q, _)| q != i && q != j).map(|(_, &x)| x).collect();
                let outer_negative = (i + j) % 2 == 1;
                for s in 0..n {
                    let c = l.constant(t[i], t[j], s);
                    if c == 0 || rest.contains(&s) {
                        continue;
                    }
                    // Sign of sorting (s, rest): s moves past the entries of rest below it.
                    let below = rest.iter().filter(|&&x| x < s).count();
                    let negative = outer_negative ^ (below % 2 == 1);
                    let mut smask = mask_of(&rest);
                    smask |= 1 << s;
                    let si = source_pos[&smask];
                    let c = if negative { f.neg(c) } else { c };
                    for r in 0..md {
                        d.add_to(ti * md + r, si * md + r, c);
                    }
                }
            }
        }
        // Action terms.
        for (i, &ti_gen) in t.iter().enumerate() {
            let si = source_pos[&(tmask & !(1 << ti_gen))];
            let rho = m.action(ti_gen);
            for r in 0..md {
                for q in 0..md {
                    let c = rho.get(r, q);
                    if c != 0 {
                        d.add_to(ti * md + r, si * md + q, if i % 2 == 1 { f.neg(c) } else { c });
                    }
                }
            }
        }
    }
    Ok(d)
}

/// The Chevalley–Eilenberg complex with all differentials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainComplex {
    pub field: PrimePower,
    pub algebra_dim: usize,
    pub module_name: String,
    pub module_dim: usize,
    pub sign_flipped: bool,
    /// `differentials[ℓ] = d^ℓ : C^ℓ → C^{ℓ+1}` for `ℓ = 0..n-1`.
    pub differentials: Vec<ModMatrix>,
}

impl CochainComplex {
    pub fn cochain_dim(&self, degree: usize) -> usize {
        binomial(self.algebra_dim, degree) * self.module_dim
    }

    /// `d^ℓ`, or `None` outside `0..n`.
    pub fn d(&self, degree: usize) -> Option<&ModMatrix> {
        self.differentials.get(degree)
    }

    pub fn rank(&self, degree: isize) -> usize {
        if degree < 0 {
            return 0;
        }
        self.d(degree as usize).map_or(0, |d| d.rank_fp().expect("field"))
    }
}

/// Builds every `d^ℓ`, requiring `J(L) = 0`, and checks `d∘d = 0`.
pub fn build_complex(l: &BracketAlgebra, m: &LieModule) -> Result<CochainComplex> {
    if let Some((i, j, k)) = l.jacobi_form().first_nonzero() {
        return Err(Error::NotLie(i, j, k));
    }
    let n = l.dim();
    let mut differentials = Vec::with_capacity(n);
    for degree in 0..n {
        differentials.push(differential(l, m, degree)?);
    }
    for degree in 0..n.saturating_sub(1) {
        let dd = differentials[degree + 1].mul(&differentials[degree])?;
        if !dd.is_zero() {
            return Err(Error::DifferentialSquare(degree));
        }
    }
    Ok(CochainComplex {
        field: l.modulus(),
        algebra_dim: n,
        module_name: m.name().to_string(),
        module_dim: m.dim(),
        sign_flipped: m.sign_flipped(),
        differentials,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub module: String,
    pub module_dim: usize,
    pub sign_flipped: bool,
    /// `dims[ℓ] = dim H^ℓ(L; M)` for `ℓ = 0..=n`.
    pub dims: Vec<usize>,
    /// Cocycles whose classes form a basis of `H^ℓ`, in cochain coordinates.
    pub representatives: Option<Vec<Vec<Vec<u64>>>>,
}

impl CohomologyReport {
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(l, &d)| if l % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// `dim H^ℓ = dim C^ℓ − rank d^ℓ − rank d^{ℓ−1}`, with optional representatives.
pub fn cohomology(l: &BracketAlgebra, m: &LieModule, representatives: bool) -> Result<CohomologyReport> {
    let cx = build_complex(l, m)?;
    let n = l.dim();
    let ranks: Vec<usize> = (0..=n).map(|d| cx.rank(d as isize)).collect();
    let dims = (0..=n)
        .map(|d| cx.cochain_dim(d) - ranks[d] - if d > 0 { ranks[d - 1] } else { 0 })
        .collect();
    let reps = if representatives {
        let mut all = Vec::with_capacity(n + 1);
        for degree in 0..=n {
            all.push(class_representatives(&cx, degree)?);
        }
        Some(all)
    } else {
        None
    };
    Ok(CohomologyReport {
        module: m.name().to_string(),
        module_dim: m.dim(),
        sign_flipped: m.sign_flipped(),
        dims,
        representatives: reps,
    })
}

/// Kernel vectors of `d^ℓ` independent modulo the image of `d^{ℓ−1}`.
fn class_representatives(cx: &CochainComplex, degree: usize) -> Result<Vec<Vec<u64>>> {
    let dim = cx.cochain_dim(degree);
    let f = cx.field;
    let kernel: Vec<Vec<u64>> = match cx.d(degree) {
        Some(d) => d.kernel_fp()?.basis().to_vec(),
        None => (0..dim)
            .map(|i| {
                let mut v = vec![0; dim];
                v[i] = 1;
                v
            })
            .collect(),
    };
    let image: Vec<Vec<u64>> = if degree > 0 {
        let prev = cx.d(degree - 1).expect("degree ≤ n");
        (0..prev.cols()).map(|j| prev.column(j)).collect()
    } else {
        Vec::new()
    };
    let mut span = Subspace::from_vectors(f, dim, image)?;
    let mut reps = Vec::new();
    for v in kernel {
        if !span.contains(&v) {
            let mut vecs = span.basis().to_vec();
            vecs.push(v.clone());
            span = Subspace::from_vectors(f, dim, vecs)?;
            reps.push(v);
        }
    }
    Ok(reps)
}

/// Solves `d^{ℓ−1} μ = c` for a cocycle `c ∈ C^ℓ`.
pub fn is_coboundary(l: &BracketAlgebra, m: &LieModule, degree: usize, cocycle: &[u64]) -> Result<Option<Vec<u64>>> {
    let n = l.dim();
    let expected = binomial(n, degree) * m.dim();
    if cocycle.len() != expected {
        return Err(Error::DimensionMismatch(format!(
            "cochain of length {} in a space of dimension {expected}",
            cocycle.len()
        )));
    }
    if degree < n && differential(l, m, degree)?.mul_vec(cocycle)?.iter().any(|&x| x != 0) {
        return Err(Error::NotACocycle(degree));
    }
    if degree == 0 {
        return Ok(cocycle.iter().all(|&x| x == 0).then(Vec::new));
    }
    differential(l, m, degree - 1)?.solve_fp(cocycle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::named_algebra;
    use crate::algebra::tests::non_lie_example;
    use crate::cohomology::SymConvention;

    #[test]
    fn abelian_trivial_has_zero_differentials() {
        let l = named_algebra("abelian(3)", 5, 1).unwrap();
        let cx = build_complex(&l, &LieModule::trivial(&l).unwrap()).unwrap();
        assert!(cx.differentials.iter().all(|d| d.is_zero()));
        let h = cohomology(&l, &LieModule::trivial(&l).unwrap(), false).unwrap();
        assert_eq!(h.dims, vec![1, 3, 3, 1]);
    }

    #[test]
    fn sl2_trivial_d1_full_rank() {
        let l = named_algebra("sl2", 5, 1).unwrap();
        let cx = build_complex(&l, &LieModule::trivial(&l).unwrap()).unwrap();
        assert_eq!(cx.rank(1), 3);
        // d⁰ is zero on the trivial module, d¹ : C¹ → C² is the dual bracket.
        assert_eq!(cx.rank(0), 0);
        let h = cohomology(&l, &LieModule::trivial(&l).unwrap(), false).unwrap();
        assert_eq!(h.dims, vec![1, 0, 0, 1]);
    }

    #[test]
    fn heisenberg_trivial_d1() {
        let l = named_algebra("heisenberg", 5, 1).unwrap();
        let d1 = differential(&l, &LieModule::trivial(&l).unwrap(), 1).unwrap();
        // Columns x*, y*, z*; rows xy, xz, yz. (dz*)(x,y) = -z*([x,y]) = -1.
        assert_eq!(d1.column(0), vec![0, 0, 0]);
        assert_eq!(d1.column(1), vec![0, 0, 0]);
        assert_eq!(d1.column(2), vec![4, 0, 0]);
    }

    #[test]
    fn sl2_sym1_acyclic() {
        let l = named_algebra("sl2", 7, 1).unwrap();
        let s1 = LieModule::sym(&l, 1, SymConvention::Forms).unwrap();
        assert_eq!(cohomology(&l, &s1, false).unwrap().dims, vec![0, 0, 0, 0]);
    }

    #[test]
    fn non_lie_rejected_and_dd_nonzero() {
        let l = non_lie_example(5);
        let t = LieModule::trivial(&l).unwrap();
        assert!(matches!(build_complex(&l, &t), Err(Error::NotLie(0, 1, 2))));
        let d1 = differential(&l, &t, 1).unwrap();
        let d2 = differential(&l, &t, 2).unwrap();
        assert!(!d2.mul(&d1).unwrap().is_zero());
    }

    #[test]
    fn coboundary_examples() {
        let l = named_algebra("sl2", 5, 1).unwrap();
        let t = LieModule::trivial(&l).unwrap();
        assert_eq!(is_coboundary(&l, &t, 3, &[0]).unwrap(), Some(vec![0, 0, 0]));
        assert_eq!(is_coboundary(&l, &t, 3, &[1]).unwrap(), None);
        let d1 = differential(&l, &t, 1).unwrap();
        let b = d1.mul_vec(&[1, 2, 3]).unwrap();
        let mu = is_coboundary(&l, &t, 2, &b).unwrap().unwrap();
        assert_eq!(d1.mul_vec(&mu).unwrap(), b);
        assert!(matches!(is_coboundary(&l, &t, 1, &[1, 0, 0]), Err(Error::NotACocycle(1))));
    }

    #[test]
    fn killing_representative() {
        let l = named_algebra("sl2", 5, 1).unwrap();
        let s2 = LieModule::sym(&l, 2, SymConvention::Forms).unwrap();
        let h = cohomology(&l, &s2, true).unwrap();
        assert_eq!(h.dims[0], 1);
        let rep = &h.representatives.unwrap()[0][0];
        // Proportional to (8, 0, 0, 0, 4, 0) ≡ (3, 0, 0, 0, 4, 0) mod 5.
        let scale = l.modulus().inv(rep[0]).unwrap();
        let normalised: Vec<u64> = rep.iter().map(|&x| l.modulus().mul(x, l.modulus().mul(scale, 3))).collect();
        assert_eq!(normalised, vec![3, 0, 0, 0, 4, 0]);
    }
}
