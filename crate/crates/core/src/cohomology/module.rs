use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::BracketAlgebra;
use crate::error::{Error, Result};
use crate::modp::{ModMatrix, PrimePower};

/// How `S^k` is coordinatised.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymConvention {
    /// Symmetric k-forms `f`, coordinates `f(e_{i_1}, …, e_{i_k})` on sorted
    /// index tuples, action `(u.f)(u_1..u_k) = Σ f(u_1, …, [u_i, u], …, u_k)`.
    Forms,
    /// Polynomials of degree k in the dual basis, the same action extended
    /// as a derivation from degree 1.
    Polynomial,
}

/// A finite-dimensional module over a bracket algebra over `F_p`, given by
/// action matrices `ρ(e_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieModule {
    name: String,
    field: PrimePower,
    dim: usize,
    actions: Vec<ModMatrix>,
    /// Set when the given action only satisfied the module axiom after
    /// negation.
    sign_flipped: bool,
    /// Basis labels of the module (sorted index tuples for `S^k`).
    basis: Vec<Vec<usize>>,
}

impl LieModule {
    /// Builds a module and checks `ρ([e_i,e_j]) = [ρ(e_i), ρ(e_j)]`. If only
    /// `-ρ` satisfies it, the action is negated and `sign_flipped` is set.
    pub fn new(l: &BracketAlgebra, name: impl Into<String>, actions: Vec<ModMatrix>) -> Result<Self> {
        let mut m = Self::unchecked(l, name, actions)?;
        match module_axiom_failure(l, &m.actions) {
            None => Ok(m),
            Some(first) => {
                let flipped: Vec<ModMatrix> = m.actions.iter().map(|a| a.scale(l.modulus().neg(1))).collect();
                if module_axiom_failure(l, &flipped).is_none() {
                    m.actions = flipped;
                    m.sign_flipped = true;
                    Ok(m)
                } else {
                    Err(Error::ModuleAxiom(first.0, first.1))
                }
            }
        }
    }

    /// Builds a module without the axiom check (for non-Lie bracket algebras).
    pub fn unchecked(l: &BracketAlgebra, name: impl Into<String>, actions: Vec<ModMatrix>) -> Result<Self> {
        let f = l.modulus();
        if !f.is_field() {
            return Err(Error::NotAField(f.k()));
        }
        if actions.len() != l.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for a {}-dimensional algebra",
                actions.len(),
                l.dim()
            )));
        }
        let dim = actions.first().map_or(0, |a| a.rows());
        for a in &actions {
            if a.rows() != dim || a.cols() != dim {
                return Err(Error::DimensionMismatch("action matrices must be square of equal size".into()));
            }
            if a.modulus() != f {
                return Err(Error::ModulusMismatch(format!("action over {} but algebra over {f}", a.modulus())));
            }
        }
        Ok(LieModule {
            name: name.into(),
            field: f,
            dim,
            actions,
            sign_flipped: false,
            basis: (0..dim).map(|i| vec![i]).collect(),
        })
    }

    /// The 1-dimensional trivial module.
    pub fn trivial(l: &BracketAlgebra) -> Result<Self> {
        let zero = ModMatrix::zeros(l.modulus(), 1, 1);
        let mut m = Self::new(l, "trivial", vec![zero; l.dim()])?;
        m.basis = vec![vec![]];
        Ok(m)
    }

    /// `ad(e_i)(e_j) = [e_i, e_j]`, validated.
    pub fn ad(l: &BracketAlgebra) -> Result<Self> {
        Self::new(l, "ad", ad_matrices(l))
    }

    /// The adjoint action without the axiom check.
    pub fn ad_unchecked(l: &BracketAlgebra) -> Result<Self> {
        Self::unchecked(l, "ad", ad_matrices(l))
    }

    /// `S^k` in the given convention.
    pub fn sym(l: &BracketAlgebra, k: usize, convention: SymConvention) -> Result<Self> {
        let n = l.dim();
        let f = l.modulus();
        let basis = multisets(n, k);
        let index: HashMap<Vec<usize>, usize> = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        let d = basis.len();
        let mut actions = Vec::with_capacity(n);
        for a in 0..n {
            let mut m = ModMatrix::zeros(f, d, d);
            for (idx, mono) in basis.iter().enumerate() {
                for r in 0..k {
                    match convention {
                        SymConvention::Forms => {
                            // (e_a.f)(I) gains c_{i_r a}^t f(I with i_r → t).
                            for t in 0..n {
                                let c = l.constant(mono[r], a, t);
                                if c == 0 {
                                    continue;
                                }
                                let mut other = mono.clone();
                                other[r] = t;
                                other.sort_unstable();
                                m.add_to(idx, index[&other], c);
                            }
                        }
                        SymConvention::Polynomial => {
                            // e_a.s_t = Σ_j c_{j a}^t s_j, extended as a derivation.
                            for j in 0..n {
                                let c = l.constant(j, a, mono[r]);
                                if c == 0 {
                                    continue;
                                }
                                let mut other = mono.clone();
                                other[r] = j;
                                other.sort_unstable();
                                m.add_to(index[&other], idx, c);
                            }
                        }
                    }
                }
            }
            actions.push(m);
        }
        let name = match convention {
            SymConvention::Forms => format!("S^{k}"),
            SymConvention::Polynomial => format!("Sym^{k}"),
        };
        let mut m = Self::new(l, name, actions)?;
        m.basis = basis;
        Ok(m)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> PrimePower {
        self.field
    }

    pub fn action(&self, i: usize) -> &ModMatrix {
        &self.actions[i]
    }

    pub fn sign_flipped(&self) -> bool {
        self.sign_flipped
    }

    /// Basis labels: sorted index tuples for `S^k`, `[i]` otherwise.
    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }
}

fn ad_matrices(l: &BracketAlgebra) -> Vec<ModMatrix> {
    let n = l.dim();
    (0..n)
        .map(|i| {
            let mut m = ModMatrix::zeros(l.modulus(), n, n);
            for j in 0..n {
                for t in 0..n {
                    m.set(t, j, l.constant(i, j, t));
                }
            }
            m
        })
        .collect()
}

/// First basis pair `(i, j)` violating the module axiom.
fn module_axiom_failure(l: &BracketAlgebra, actions: &[ModMatrix]) -> Option<(usize, usize)> {
    let n = l.dim();
    let f = l.modulus();
    for i in 0..n {
        for j in i + 1..n {
            let ab = actions[i].mul(&actions[j]).expect("square");
            let ba = actions[j].mul(&actions[i]).expect("square");
            let comm = ab.add(&ba.scale(f.neg(1))).expect("same shape");
            let mut lhs = ModMatrix::zeros(f, comm.rows(), comm.cols());
            for t in 0..n {
                let c = l.constant(i, j, t);
                if c != 0 {
                    lhs = lhs.add(&actions[t].scale(c)).expect("same shape");
                }
            }
            if lhs != comm {
                return Some((i, j));
            }
        }
    }
    None
}

/// Sorted k-element multisets of `0..n`, lexicographic.
pub fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Number of distinct orderings of a sorted tuple.
pub fn multinomial(tuple: &[usize]) -> u64 {
    let fact = |m: u64| (1..=m).product::<u64>();
    let mut denom = 1;
    let mut i = 0;
    while i < tuple.len() {
        let mut j = i;
        while j < tuple.len() && tuple[j] == tuple[i] {
            j += 1;
        }
        denom *= fact((j - i) as u64);
        i = j;
    }
    fact(tuple.len() as u64) / denom
}

/// Converts `S^k` form values to polynomial coefficients: the coefficient of
/// the monomial `I` is `f(e_I)` times the number of orderings of `I`.
pub fn form_to_polynomial(field: PrimePower, basis: &[Vec<usize>], values: &[u64]) -> Vec<u64> {
    basis
        .iter()
        .zip(values)
        .map(|(mono, &v)| field.mul(v, multinomial(mono) % field.modulus()))
        .collect()
}
