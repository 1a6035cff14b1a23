//! The obstruction `[η] ∈ H³(L̄; ad)` to lifting a Lie algebra over
//! `Z/p^{k−1}` to one over `Z/p^k`.
//!
//! With `ĉ` the canonical lift of the constants, `J(ĉ) = p^{k−1} η`. Changing
//! the lift to `ĉ + p^{k−1} μ` changes the Jacobi form to `p^{k−1}(η − dμ)`,
//! so a Lie lift exists iff `η` is a coboundary.

use serde::{Deserialize, Serialize};

use crate::algebra::exterior::{indices_of, subsets};
use crate::algebra::{AlgebraFile, BracketAlgebra, ExteriorElement, ExteriorTerm};
use crate::cohomology::{differential, is_coboundary, LieModule};
use crate::error::{Error, Result};
use crate::group::all_vectors;

/// A Lie algebra over `Z/p^{k−1}` to be lifted to `Z/p^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftProblem {
    algebra: BracketAlgebra,
}

impl LiftProblem {
    pub fn new(algebra: BracketAlgebra) -> Result<Self> {
        if let Some((i, j, k)) = algebra.jacobi_form().first_nonzero() {
            return Err(Error::LiftPrecondition(format!(
                "J(e{}, e{}, e{}) ≢ 0 mod {}",
                i + 1,
                j + 1,
                k + 1,
                algebra.modulus().modulus()
            )));
        }
        Ok(LiftProblem { algebra })
    }

    pub fn algebra(&self) -> &BracketAlgebra {
        &self.algebra
    }

    /// Exponent `k` of the target ring `Z/p^k`.
    pub fn target_exponent(&self) -> u32 {
        self.algebra.modulus().k() + 1
    }

    /// `L̄ = L mod p`.
    pub fn reduction(&self) -> BracketAlgebra {
        self.algebra.reduce(1).expect("k ≥ 1")
    }

    /// Same residues reinterpreted modulo `p^k`.
    pub fn canonical_lift(&self) -> BracketAlgebra {
        self.algebra
            .canonical_lift(self.target_exponent())
            .expect("target exponent is one more than the source")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub p: u64,
    pub target_exponent: u32,
    /// `η_t` as exterior forms, one per basis vector `t`.
    pub eta: Vec<Vec<ExteriorTerm>>,
    /// `η` in `C³(L̄; ad)` coordinates `(S, t)`.
    pub eta_cochain: Vec<u64>,
    pub obstruction_zero: bool,
    /// A 2-cochain with `dμ = η` when one exists.
    pub mu: Option<Vec<u64>>,
    pub corrected_constants: Option<AlgebraFile>,
    pub tower_verdict: String,
}

impl LiftReport {
    pub fn corrected_algebra(&self) -> Option<Result<BracketAlgebra>> {
        self.corrected_constants.as_ref().map(AlgebraFile::to_algebra)
    }
}

/// `η = J(ĉ)/p^{k−1}` in `C³(L̄; ad)` coordinates.
pub fn eta_of_lift(lift: &BracketAlgebra) -> Result<Vec<u64>> {
    let f = lift.modulus();
    let k = f.k();
    if k < 2 {
        return Err(Error::LiftPrecondition("a lift lives over Z/p^k with k ≥ 2".into()));
    }
    let scale = f.p().pow(k - 1);
    let n = lift.dim();
    let jac = lift.jacobi_form();
    let mut out = Vec::with_capacity(subsets(n, 3).len() * n);
    for mask in subsets(n, 3) {
        let idx = indices_of(mask);
        for v in jac.value(idx[0], idx[1], idx[2]) {
            if v % scale != 0 {
                return Err(Error::LiftPrecondition(format!(
                    "Jacobi form of the lift is not divisible by {scale}"
                )));
            }
            out.push(v / scale);
        }
    }
    Ok(out)
}

fn eta_forms(l: &BracketAlgebra, cochain: &[u64]) -> Vec<ExteriorElement> {
    let n = l.dim();
    let f = l.modulus();
    let mut forms = vec![ExteriorElement::zero(f, n); n];
    for (pos, mask) in subsets(n, 3).into_iter().enumerate() {
        for (t, w) in forms.iter_mut().enumerate() {
            w.add_term(mask, cochain[pos * n + t]);
        }
    }
    forms
}

/// Constants `ĉ + p^{k−1} μ`, with `μ` in `C²(L̄; ad)` coordinates.
pub fn perturb(lift: &BracketAlgebra, mu: &[u64]) -> BracketAlgebra {
    let f = lift.modulus();
    let n = lift.dim();
    let scale = f.p().pow(f.k() - 1);
    let mut out = lift.clone();
    for (pos, mask) in subsets(n, 2).into_iter().enumerate() {
        let idx = indices_of(mask);
        for t in 0..n {
            let c = f.add(lift.constant(idx[0], idx[1], t), f.mul(scale, mu[pos * n + t]));
            out.set_pair(idx[0], idx[1], t, c);
        }
    }
    out
}

/// Decides whether the problem lifts and, if so, returns a verified lift.
pub fn obstruction(problem: &LiftProblem) -> Result<LiftReport> {
    let lbar = problem.reduction();
    let f = lbar.modulus();
    let k = problem.target_exponent();
    let lift = problem.canonical_lift();
    let eta = eta_of_lift(&lift)?;
    let ad = LieModule::ad(&lbar)?;
    if lbar.dim() > 3 && differential(&lbar, &ad, 3)?.mul_vec(&eta)?.iter().any(|&x| x != 0) {
        return Err(Error::Internal("η is not a cocycle".into()));
    }
    let mu = match is_coboundary(&lbar, &ad, 3, &eta) {
        Ok(mu) => mu,
        Err(Error::NotACocycle(_)) => return Err(Error::Internal("η is not a cocycle".into())),
        Err(e) => return Err(e),
    };
    let corrected = match &mu {
        Some(mu) => {
            let c = perturb(&lift, mu);
            if !c.is_lie() {
                return Err(Error::Internal("corrected lift fails the Jacobi identity".into()));
            }
            if c.reduce(k - 1)? != *problem.algebra() {
                return Err(Error::Internal("corrected lift does not reduce to the input".into()));
            }
            Some(AlgebraFile::from_algebra(&c))
        }
        None => None,
    };
    let obstruction_zero = mu.is_some();
    Ok(LiftReport {
        p: f.p(),
        target_exponent: k,
        eta: eta_forms(&lbar, &eta).iter().map(ExteriorElement::to_terms).collect(),
        eta_cochain: eta,
        obstruction_zero,
        mu,
        corrected_constants: corrected,
        tower_verdict: tower_sentence(k, obstruction_zero),
    })
}

fn tower_sentence(k: u32, zero: bool) -> String {
    let len = k as usize + 2;
    if zero {
        format!("[η] = 0: a uniform tower realising L over Z/p^{} extends to length {len}", k - 1)
    } else {
        format!("[η] ≠ 0: no uniform tower of length {len} extends this Lie algebra over Z/p^{}", k - 1)
    }
}

/// Searches all perturbations `ĉ + p^{k−1} δ` for one satisfying Jacobi.
pub fn brute_force_lift_oracle(problem: &LiftProblem, budget: u64) -> Result<bool> {
    let lift = problem.canonical_lift();
    let n = lift.dim();
    let p = lift.modulus().p();
    let len = n * subsets(n, 2).len();
    let size = (p as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(all_vectors(p, len).any(|delta| perturb(&lift, &delta).is_lie()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerExtension {
    /// The bracket group extends to a uniform tower of length 3.
    pub length3: bool,
    /// Length 4 is also reachable; `None` when length 3 already fails.
    pub length4: Option<bool>,
    pub summary: String,
}

/// Length-3 extension iff `J(L) = 0`; length 4 iff also `[η] = 0`.
pub fn tower_extension_verdict(l: &BracketAlgebra) -> Result<TowerExtension> {
    if !l.modulus().is_field() {
        return Err(Error::NotAField(l.modulus().k()));
    }
    if let Some((i, j, k)) = l.jacobi_form().first_nonzero() {
        return Ok(TowerExtension {
            length3: false,
            length4: None,
            summary: format!(
                "not a Lie algebra (J(e{}, e{}, e{}) ≠ 0): the tower stops at length 2",
                i + 1,
                j + 1,
                k + 1
            ),
        });
    }
    let report = obstruction(&LiftProblem::new(l.clone())?)?;
    let summary = if report.obstruction_zero {
        "Lie algebra with [η] = 0: extends to a uniform tower of length 4".to_string()
    } else {
        "Lie algebra with [η] ≠ 0: extends to length 3 but not to length 4".to_string()
    };
    Ok(TowerExtension {
        length3: true,
        length4: Some(report.obstruction_zero),
        summary,
    })
}
