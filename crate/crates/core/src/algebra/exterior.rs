use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::BracketAlgebra;
use crate::error::{Error, Result};
use crate::modp::{binomial, ModMatrix, PrimePower};

/// Sign of `x_A ∧ x_B` relative to the sorted monomial `x_{A∪B}`, or `None`
/// when the index sets overlap.
pub fn wedge_sign(a: u64, b: u64) -> Option<bool> {
    if a & b != 0 {
        return None;
    }
    // Count pairs (i in a, j in b) with i > j.
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(inversions % 2 == 1)
}

pub fn mask_of(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn indices_of(mask: u64) -> Vec<usize> {
    let mut out = Vec::with_capacity(mask.count_ones() as usize);
    let mut rest = mask;
    while rest != 0 {
        out.push(rest.trailing_zeros() as usize);
        rest &= rest - 1;
    }
    out
}

/// All `k`-subsets of `{0..n}` as bitmasks, in lexicographic order of their sorted index tuples.
pub fn subsets(n: usize, k: usize) -> Vec<u64> {
    fn go(start: usize, n: usize, k: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=n.saturating_sub(k) {
            go(i + 1, n, k - 1, acc | (1 << i), out);
        }
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    if k <= n {
        go(0, n, k, 0, &mut out);
    }
    out
}

/// Element of `Λ*(W*)` over `F_p`: a sparse map from index subsets (bitmasks) to coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExteriorElement {
    dim: usize,
    field: PrimePower,
    terms: BTreeMap<u64, u64>,
}

impl ExteriorElement {
    pub fn zero(field: PrimePower, dim: usize) -> Self {
        ExteriorElement {
            dim,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: PrimePower, dim: usize) -> Self {
        Self::monomial(field, dim, &[], 1)
    }

    /// `x_i`, the dual of the `i`-th basis vector.
    pub fn generator(field: PrimePower, dim: usize, i: usize) -> Self {
        Self::monomial(field, dim, &[i], 1)
    }

    /// `c · x_{i1} ∧ … ∧ x_{ir}` for arbitrary (unsorted) indices.
    pub fn monomial(field: PrimePower, dim: usize, indices: &[usize], c: i64) -> Self {
        let mut e = Self::zero(field, dim);
        let mut mask = 0u64;
        let mut negative = false;
        for &i in indices {
            match wedge_sign(mask, 1 << i) {
                None => return e,
                Some(s) => negative ^= s,
            }
            mask |= 1 << i;
        }
        let c = field.reduce(if negative { -c } else { c });
        e.add_term(mask, c);
        e
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> PrimePower {
        self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    pub fn coefficient(&self, mask: u64) -> u64 {
        self.terms.get(&mask).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u64, c: u64) {
        let c = c % self.field.modulus();
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(mask).or_insert(0);
        *entry = self.field.add(*entry, c);
        if *entry == 0 {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.field, self.dim);
        for (m, x) in self.terms() {
            out.add_term(m, self.field.mul(x, c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.modulus() - 1)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field, self.dim);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if let Some(negative) = wedge_sign(a, b) {
                    let c = self.field.mul(x, y);
                    out.add_term(a | b, if negative { self.field.neg(c) } else { c });
                }
            }
        }
        out
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, d: usize) -> Self {
        let mut out = Self::zero(self.field, self.dim);
        for (m, c) in self.terms() {
            if m.count_ones() as usize == d {
                out.add_term(m, c);
            }
        }
        out
    }

    /// Coordinates in the degree-`d` basis of [`subsets`].
    pub fn coordinates(&self, d: usize) -> Vec<u64> {
        subsets(self.dim, d).iter().map(|&m| self.coefficient(m)).collect()
    }

    pub fn from_coordinates(field: PrimePower, dim: usize, d: usize, coords: &[u64]) -> Self {
        let mut out = Self::zero(field, dim);
        for (&m, &c) in subsets(dim, d).iter().zip(coords) {
            out.add_term(m, c);
        }
        out
    }

    /// Serialisable form: list of (sorted index tuple, coefficient).
    pub fn to_terms(&self) -> Vec<ExteriorTerm> {
        self.terms()
            .map(|(m, c)| ExteriorTerm {
                indices: indices_of(m),
                coeff: c as i64,
            })
            .collect()
    }

    pub fn from_terms(field: PrimePower, dim: usize, terms: &[ExteriorTerm]) -> Result<Self> {
        let mut out = Self::zero(field, dim);
        for t in terms {
            if t.indices.iter().any(|&i| i >= dim) {
                return Err(Error::MalformedInput(format!("index out of range in {:?}", t.indices)));
            }
            out = out.add(&Self::monomial(field, dim, &t.indices, t.coeff));
        }
        Ok(out)
    }
}

/// One term of a serialised exterior element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExteriorTerm {
    pub indices: Vec<usize>,
    pub coeff: i64,
}

/// `br*(x_t) = Σ_{i<j} c_{ij}^t x_i∧x_j`.
pub fn cobracket_generator(l: &BracketAlgebra, t: usize) -> ExteriorElement {
    let f = l.modulus();
    let n = l.dim();
    let mut out = ExteriorElement::zero(f, n);
    for i in 0..n {
        for j in i + 1..n {
            out.add_term((1 << i) | (1 << j), l.constant(i, j, t));
        }
    }
    out
}

/// The dual co-bracket, extended to `Λ*(W*)` as a degree +1 derivation.
pub fn cobracket(l: &BracketAlgebra, omega: &ExteriorElement) -> Result<ExteriorElement> {
    if !l.modulus().is_field() {
        return Err(Error::NotAField(l.modulus().k()));
    }
    if omega.dim() != l.dim() || omega.field() != l.modulus() {
        return Err(Error::DimensionMismatch(format!(
            "exterior element on {} generators over {} against algebra of dimension {} over {}",
            omega.dim(),
            omega.field(),
            l.dim(),
            l.modulus()
        )));
    }
    let f = l.modulus();
    let n = l.dim();
    let images: Vec<ExteriorElement> = (0..n).map(|t| cobracket_generator(l, t)).collect();
    let mut out = ExteriorElement::zero(f, n);
    for (mask, c) in omega.terms() {
        let idx = indices_of(mask);
        for (pos, &t) in idx.iter().enumerate() {
            let before = ExteriorElement::monomial(f, n, &idx[..pos], 1);
            let after = ExteriorElement::monomial(f, n, &idx[pos + 1..], 1);
            let mut term = before.wedge(&images[t]).wedge(&after);
            if pos % 2 == 1 {
                term = term.neg();
            }
            out = out.add(&term.scale(c));
        }
    }
    Ok(out)
}

/// Matrix of `br*∘br*` restricted to `W* → Λ³W*`; column `t` holds the image of `x_t`.
pub fn colie_defect(l: &BracketAlgebra) -> Result<ModMatrix> {
    if !l.modulus().is_field() {
        return Err(Error::NotAField(l.modulus().k()));
    }
    let n = l.dim();
    let f = l.modulus();
    let columns = (0..n)
        .map(|t| {
            let once = cobracket_generator(l, t);
            cobracket(l, &once).map(|twice| twice.coordinates(3))
        })
        .collect::<Result<Vec<_>>>()?;
    ModMatrix::from_columns(f, binomial(n, 3), &columns)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::named_algebra;

    fn f5() -> PrimePower {
        PrimePower::field(5).unwrap()
    }

    #[test]
    fn wedge_signs() {
        assert_eq!(wedge_sign(0b01, 0b10), Some(false));
        assert_eq!(wedge_sign(0b10, 0b01), Some(true));
        assert_eq!(wedge_sign(0b11, 0b01), None);
        // x_1 x_2 ∧ x_0 = x_0 x_1 x_2 (two transpositions)
        assert_eq!(wedge_sign(0b110, 0b001), Some(false));
    }

    #[test]
    fn subsets_are_lexicographic() {
        let s: Vec<Vec<usize>> = subsets(4, 2).into_iter().map(indices_of).collect();
        assert_eq!(s, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(subsets(3, 0), vec![0]);
        assert!(subsets(2, 3).is_empty());
    }

    #[test]
    fn monomial_sorts_with_sign() {
        let e = ExteriorElement::monomial(f5(), 3, &[2, 0], 1);
        assert_eq!(e.coefficient(0b101), 4);
        assert!(ExteriorElement::monomial(f5(), 3, &[1, 1], 1).is_zero());
    }

    #[test]
    fn heisenberg_cobracket() {
        let h = named_algebra("heisenberg", 5, 1).unwrap();
        let f = f5();
        let z = ExteriorElement::generator(f, 3, 2);
        assert_eq!(cobracket(&h, &z).unwrap(), ExteriorElement::monomial(f, 3, &[0, 1], 1));
        for i in 0..2 {
            assert!(cobracket(&h, &ExteriorElement::generator(f, 3, i)).unwrap().is_zero());
        }
    }

    #[test]
    fn sl2_cobracket_of_h() {
        let sl2 = named_algebra("sl2", 5, 1).unwrap();
        let h = ExteriorElement::generator(f5(), 3, 0);
        assert_eq!(cobracket(&sl2, &h).unwrap(), ExteriorElement::monomial(f5(), 3, &[1, 2], 1));
    }

    #[test]
    fn abelian_cobracket_vanishes() {
        let a = named_algebra("abelian(3)", 5, 1).unwrap();
        let w = ExteriorElement::monomial(f5(), 3, &[0, 2], 3);
        assert!(cobracket(&a, &w).unwrap().is_zero());
        assert!(colie_defect(&a).unwrap().is_zero());
    }

    #[test]
    fn colie_defect_examples() {
        assert!(colie_defect(&named_algebra("sl2", 5, 1).unwrap()).unwrap().is_zero());
        let bad = crate::algebra::tests::non_lie_example(5);
        let m = colie_defect(&bad).unwrap();
        // J(e1,e2,e3) = -e3, so only the x_3 column is nonzero, with entry -1.
        assert_eq!(m.column(0), vec![0]);
        assert_eq!(m.column(1), vec![0]);
        assert_eq!(m.column(2), vec![4]);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let sl2 = named_algebra("sl2", 5, 1).unwrap();
        let w = ExteriorElement::generator(f5(), 2, 0);
        assert!(matches!(cobracket(&sl2, &w), Err(Error::DimensionMismatch(_))));
    }
}
