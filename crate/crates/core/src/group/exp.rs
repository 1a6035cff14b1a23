use rand::{Rng, RngCore};

use super::{all_vectors, Element, GroupView};
use crate::algebra::BracketAlgebra;
use crate::error::{Error, Result};
use crate::modp::PrimePower;

/// `Exp(L)`: vectors over `Z/p²` with `l ∘ m = l + m + p·[l mod p, m mod p]`.
#[derive(Debug, Clone)]
pub struct ExpGroup {
    algebra: BracketAlgebra,
    ring: PrimePower,
}

impl ExpGroup {
    pub fn new(algebra: BracketAlgebra) -> Result<Self> {
        let f = algebra.modulus();
        if !f.is_field() {
            return Err(Error::NotAField(f.k()));
        }
        let ring = f.with_exponent(2)?;
        Ok(ExpGroup { algebra, ring })
    }

    pub fn algebra(&self) -> &BracketAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    fn project(&self, l: &[u64]) -> Vec<u64> {
        let p = self.ring.p();
        l.iter().map(|&x| x % p).collect()
    }
}

impl GroupView for ExpGroup {
    fn name(&self) -> String {
        format!("Exp(L) over Z/{}^2, n = {}", self.ring.p(), self.dim())
    }

    fn p(&self) -> u64 {
        self.ring.p()
    }

    fn identity(&self) -> Element {
        vec![0; self.dim()]
    }

    fn multiply(&self, a: &[u64], b: &[u64]) -> Element {
        let r = self.ring;
        let br = self.algebra.bracket(&self.project(a), &self.project(b));
        a.iter()
            .zip(b)
            .zip(&br)
            .map(|((&x, &y), &z)| r.add(r.add(x, y), r.mul(r.p(), z)))
            .collect()
    }

    fn inverse(&self, a: &[u64]) -> Element {
        a.iter().map(|&x| self.ring.neg(x)).collect()
    }

    fn generators(&self) -> Vec<Element> {
        (0..self.dim())
            .map(|i| {
                let mut e = vec![0; self.dim()];
                e[i] = 1;
                e
            })
            .collect()
    }

    fn order(&self) -> u128 {
        (self.ring.modulus() as u128).pow(self.dim() as u32)
    }

    fn elements(&self) -> Vec<Element> {
        all_vectors(self.ring.modulus(), self.dim()).collect()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Element {
        (0..self.dim()).map(|_| rng.gen_range(0..self.ring.modulus())).collect()
    }

    fn in_omega1(&self, g: &[u64]) -> Option<bool> {
        Some(g.iter().all(|&x| x % self.ring.p() == 0))
    }

    fn in_power_subgroup(&self, g: &[u64], e: u32) -> Option<bool> {
        let q = self.ring.p().pow(e.min(2));
        Some(g.iter().all(|&x| x % q == 0))
    }

    fn omega1_generators(&self) -> Option<Vec<Element>> {
        let p = self.ring.p();
        Some(
            self.generators()
                .into_iter()
                .map(|e| e.into_iter().map(|x| x * p).collect())
                .collect(),
        )
    }

    fn power(&self, a: &[u64], e: u64) -> Element {
        // [l, l] = 0, so powers are scalar multiples.
        let em = e % self.ring.modulus();
        a.iter().map(|&x| self.ring.mul(x, em)).collect()
    }
}
