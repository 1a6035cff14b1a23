use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modp::PrimePower;

/// An alternating bilinear product on a free `Z/p^k`-module of rank `n`,
/// given by structure constants `[e_i, e_j] = Σ_t c[i][j][t] e_t`.
///
/// Constants are stored for every ordered pair and are kept antisymmetric
/// with a zero diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BracketAlgebra {
    modulus: PrimePower,
    labels: Vec<String>,
    constants: Vec<u64>,
}

impl BracketAlgebra {
    /// The zero bracket on `n` generators labelled `e1..en`.
    pub fn abelian(modulus: PrimePower, n: usize) -> Self {
        Self::zero_with_labels(modulus, (1..=n).map(|i| format!("e{i}")).collect())
    }

    pub fn zero_with_labels(modulus: PrimePower, labels: Vec<String>) -> Self {
        let n = labels.len();
        BracketAlgebra {
            modulus,
            labels,
            constants: vec![0; n * n * n],
        }
    }

    /// Builds an algebra from brackets of pairs. Each `(i, j, coeffs)` sets
    /// `[e_i, e_j] = Σ coeffs[t] e_t` and `[e_j, e_i]` to its negative.
    /// Repeated pairs must agree.
    pub fn from_brackets(modulus: PrimePower, labels: Vec<String>, brackets: &[(usize, usize, Vec<i64>)]) -> Result<Self> {
        let n = labels.len();
        let mut alg = Self::zero_with_labels(modulus, labels);
        let mut seen = vec![false; n * n];
        for (i, j, coeffs) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::MalformedInput(format!("bracket index ({i}, {j}) out of range for dimension {n}")));
            }
            if coeffs.len() != n {
                return Err(Error::MalformedInput(format!(
                    "bracket ({i}, {j}) has {} coefficients, expected {n}",
                    coeffs.len()
                )));
            }
            let reduced: Vec<u64> = coeffs.iter().map(|&c| modulus.reduce(c)).collect();
            if i == j {
                if reduced.iter().any(|&c| c != 0) {
                    return Err(Error::NotAlternating(format!("[e{i}, e{i}] must vanish")));
                }
                continue;
            }
            if seen[i * n + j] {
                let current: Vec<u64> = (0..n).map(|t| alg.constant(i, j, t)).collect();
                if current != reduced {
                    return Err(Error::NotAlternating(format!("conflicting values for [e{i}, e{j}]")));
                }
                continue;
            }
            seen[i * n + j] = true;
            seen[j * n + i] = true;
            for (t, &c) in reduced.iter().enumerate() {
                alg.set_pair(i, j, t, c);
            }
        }
        Ok(alg)
    }

    /// Builds from a full tensor `c[i][j][t]`, validating antisymmetry.
    pub fn from_tensor(modulus: PrimePower, labels: Vec<String>, tensor: &[Vec<Vec<i64>>]) -> Result<Self> {
        let n = labels.len();
        if tensor.len() != n || tensor.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::DimensionMismatch("structure tensor shape".into()));
        }
        let mut alg = Self::zero_with_labels(modulus, labels);
        for i in 0..n {
            for j in 0..n {
                for t in 0..n {
                    let a = modulus.reduce(tensor[i][j][t]);
                    let b = modulus.reduce(tensor[j][i][t]);
                    if modulus.add(a, b) != 0 {
                        return Err(Error::NotAlternating(format!("c[{i}][{j}][{t}] ≠ -c[{j}][{i}][{t}]")));
                    }
                    alg.constants[(i * n + j) * n + t] = a;
                }
            }
        }
        Ok(alg)
    }

    /// Sets `c_{ij}^t = c` and `c_{ji}^t = -c`.
    pub fn set_pair(&mut self, i: usize, j: usize, t: usize, c: u64) {
        assert_ne!(i, j, "diagonal brackets are zero");
        let n = self.dim();
        let c = c % self.modulus.modulus();
        self.constants[(i * n + j) * n + t] = c;
        self.constants[(j * n + i) * n + t] = self.modulus.neg(c);
    }

    pub fn modulus(&self) -> PrimePower {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim());
        self.labels = labels;
        self
    }

    /// `c_{ij}^t`.
    pub fn constant(&self, i: usize, j: usize, t: usize) -> u64 {
        let n = self.dim();
        self.constants[(i * n + j) * n + t]
    }

    /// `[e_i, e_j]` as a coordinate vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<u64> {
        let n = self.dim();
        self.constants[(i * n + j) * n..(i * n + j + 1) * n].to_vec()
    }

    /// Bracket of two coordinate vectors.
    pub fn bracket(&self, u: &[u64], v: &[u64]) -> Vec<u64> {
        let n = self.dim();
        let r = self.modulus;
        let mut out = vec![0; n];
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj == 0 || i == j {
                    continue;
                }
                let w = r.mul(ui, vj);
                for (t, o) in out.iter_mut().enumerate() {
                    *o = r.add(*o, r.mul(w, self.constant(i, j, t)));
                }
            }
        }
        out
    }

    /// Antisymmetry and zero diagonal, checked on the stored tensor.
    pub fn is_alternating(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|t| self.modulus.add(self.constant(i, j, t), self.constant(j, i, t)) == 0)
                    && (i != j || (0..n).all(|t| self.constant(i, i, t) == 0))
            })
        })
    }

    /// `J(x,y,z) = [[x,y],z] + [[y,z],x] + [[z,x],y]` on all basis triples `i<j<k`.
    pub fn jacobi_form(&self) -> JacobiTensor {
        let n = self.dim();
        let r = self.modulus;
        let mut values = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = vec![0; n];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let ab = self.bracket_basis(a, b);
                        for (s, &x) in ab.iter().enumerate() {
                            if x == 0 {
                                continue;
                            }
                            for (t, o) in acc.iter_mut().enumerate() {
                                *o = r.add(*o, r.mul(x, self.constant(s, c, t)));
                            }
                        }
                    }
                    values.push(acc);
                }
            }
        }
        JacobiTensor { modulus: r, dim: n, values }
    }

    pub fn is_lie(&self) -> bool {
        self.jacobi_form().is_zero()
    }

    /// Constants reduced modulo `p^t`.
    pub fn reduce(&self, t: u32) -> Result<BracketAlgebra> {
        let k = self.modulus.k();
        if t == 0 || t > k {
            return Err(Error::ReductionOutOfRange { t, k });
        }
        let target = self.modulus.with_exponent(t)?;
        Ok(BracketAlgebra {
            modulus: target,
            labels: self.labels.clone(),
            constants: self.constants.iter().map(|&c| c % target.modulus()).collect(),
        })
    }

    /// Same residues in `[0, p^k)` reinterpreted modulo `p^target`.
    pub fn canonical_lift(&self, target: u32) -> Result<BracketAlgebra> {
        if target < self.modulus.k() {
            return Err(Error::ReductionOutOfRange { t: target, k: self.modulus.k() });
        }
        let m = self.modulus.with_exponent(target)?;
        let n = self.dim();
        let mut lifted = Self::zero_with_labels(m, self.labels.clone());
        for i in 0..n {
            for j in i + 1..n {
                for t in 0..n {
                    lifted.set_pair(i, j, t, self.constant(i, j, t));
                }
            }
        }
        Ok(lifted)
    }

    /// Constants after replacing every basis vector `e_i` by `λ e_i`: `c ↦ λ c`.
    pub fn rescaled(&self, lambda: u64) -> BracketAlgebra {
        let mut out = self.clone();
        for c in out.constants.iter_mut() {
            *c = self.modulus.mul(*c, lambda % self.modulus.modulus());
        }
        out
    }

    /// Brackets of pairs `i<j` with a nonzero value, as signed integers.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, Vec<i64>)> {
        let n = self.dim();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let v = self.bracket_basis(i, j);
                if v.iter().any(|&c| c != 0) {
                    out.push((i, j, v.iter().map(|&c| self.modulus.signed(c)).collect()));
                }
            }
        }
        out
    }
}

/// Values of the Jacobi form on basis triples `i<j<k`, in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiTensor {
    modulus: PrimePower,
    dim: usize,
    values: Vec<Vec<u64>>,
}

impl JacobiTensor {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> PrimePower {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.iter().all(|&x| x == 0))
    }

    fn triple_index(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.dim;
        let mut idx = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if (a, b, c) == (i, j, k) {
                        return idx;
                    }
                    idx += 1;
                }
            }
        }
        unreachable!("triple out of range")
    }

    /// `J(e_i, e_j, e_k)` for any indices, extended by alternation.
    pub fn value(&self, i: usize, j: usize, k: usize) -> Vec<u64> {
        if i == j || j == k || i == k {
            return vec![0; self.dim];
        }
        let mut idx = [i, j, k];
        let mut odd = false;
        for a in 0..3 {
            for b in 0..2 - a {
                if idx[b] > idx[b + 1] {
                    idx.swap(b, b + 1);
                    odd = !odd;
                }
            }
        }
        let v = &self.values[self.triple_index(idx[0], idx[1], idx[2])];
        if odd {
            v.iter().map(|&x| self.modulus.neg(x)).collect()
        } else {
            v.clone()
        }
    }

    /// Triples `i<j<k` with their values, in lexicographic order.
    pub fn entries(&self) -> Vec<((usize, usize, usize), Vec<u64>)> {
        let n = self.dim;
        let mut out = Vec::with_capacity(self.values.len());
        let mut it = self.values.iter();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    out.push(((i, j, k), it.next().unwrap().clone()));
                }
            }
        }
        out
    }

    /// First triple with a nonzero value.
    pub fn first_nonzero(&self) -> Option<(usize, usize, usize)> {
        self.entries()
            .into_iter()
            .find(|(_, v)| v.iter().any(|&x| x != 0))
            .map(|(t, _)| t)
    }

    pub fn reduce(&self, t: u32) -> Result<JacobiTensor> {
        let k = self.modulus.k();
        if t == 0 || t > k {
            return Err(Error::ReductionOutOfRange { t, k });
        }
        let target = self.modulus.with_exponent(t)?;
        Ok(JacobiTensor {
            modulus: target,
            dim: self.dim,
            values: self
                .values
                .iter()
                .map(|v| v.iter().map(|&x| x % target.modulus()).collect())
                .collect(),
        })
    }
}
