use rand::{Rng, RngCore};

use super::{all_vectors, Element, GroupView};
use crate::error::{Error, Result};
use crate::modp::PrimePower;

/// `Γ_{n,k}(p)`: `n×n` matrices over `Z/p^{k+1}` congruent to `I` mod `p`,
/// stored row-major.
#[derive(Debug, Clone, Copy)]
pub struct GammaGroup {
    n: usize,
    k: u32,
    ring: PrimePower,
}

impl GammaGroup {
    pub fn new(n: usize, k: u32, p: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("matrix size must be positive".into()));
        }
        if k == 0 {
            return Err(Error::InvalidExponent(0));
        }
        let ring = PrimePower::new(p, k + 1)?;
        Ok(GammaGroup { n, k, ring })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn ring(&self) -> PrimePower {
        self.ring
    }

    /// Membership: correct size, entries reduced, `≡ I mod p`.
    pub fn contains(&self, g: &[u64]) -> bool {
        let n = self.n;
        let p = self.ring.p();
        g.len() == n * n
            && g.iter().all(|&x| x < self.ring.modulus())
            && (0..n * n).all(|idx| g[idx] % p == u64::from(idx / n == idx % n))
    }

    /// The next stage down, `Γ_{n,k-1}`.
    pub fn stage_below(&self) -> Option<GammaGroup> {
        (self.k > 1).then(|| GammaGroup::new(self.n, self.k - 1, self.ring.p()).expect("smaller stage is valid"))
    }

    /// Reduction `Γ_{n,k} → Γ_{n,k-1}`.
    pub fn project(&self, g: &[u64]) -> Element {
        let m = self.ring.p().pow(self.k);
        g.iter().map(|&x| x % m).collect()
    }

    /// `I + p·A`.
    pub fn from_offset(&self, a: &[u64]) -> Element {
        let r = self.ring;
        let mut g: Element = a.iter().map(|&x| r.mul(r.p(), x)).collect();
        for i in 0..self.n {
            g[i * self.n + i] = r.add(g[i * self.n + i], 1);
        }
        g
    }

    fn congruent_to_identity(&self, g: &[u64], q: u64) -> bool {
        let n = self.n;
        (0..n * n).all(|idx| g[idx] % q == u64::from(idx / n == idx % n) % q)
    }
}

impl GroupView for GammaGroup {
    fn name(&self) -> String {
        format!("Gamma_{{{},{}}}({})", self.n, self.k, self.ring.p())
    }

    fn p(&self) -> u64 {
        self.ring.p()
    }

    fn identity(&self) -> Element {
        let n = self.n;
        (0..n * n).map(|idx| u64::from(idx / n == idx % n)).collect()
    }

    fn multiply(&self, a: &[u64], b: &[u64]) -> Element {
        let n = self.n;
        let m = self.ring.modulus() as u128;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u128;
                for l in 0..n {
                    acc += a[i * n + l] as u128 * b[l * n + j] as u128;
                }
                out[i * n + j] = (acc % m) as u64;
            }
        }
        out
    }

    fn inverse(&self, a: &[u64]) -> Element {
        // (I + X)⁻¹ = Σ (-X)^j, and X^{k+1} ≡ 0 since p | X.
        let r = self.ring;
        let id = self.identity();
        let neg_x: Element = a.iter().zip(&id).map(|(&x, &i)| r.sub(i, x)).collect();
        let mut term = id.clone();
        let mut sum = id;
        for _ in 0..self.k {
            term = self.multiply(&term, &neg_x);
            sum = sum.iter().zip(&term).map(|(&s, &t)| r.add(s, t)).collect();
        }
        sum
    }

    fn generators(&self) -> Vec<Element> {
        let n = self.n;
        (0..n * n)
            .map(|idx| {
                let mut a = vec![0; n * n];
                a[idx] = 1;
                self.from_offset(&a)
            })
            .collect()
    }

    fn order(&self) -> u128 {
        (self.ring.p() as u128).pow(self.k * (self.n * self.n) as u32)
    }

    fn elements(&self) -> Vec<Element> {
        let m = self.ring.p().pow(self.k);
        all_vectors(m, self.n * self.n).map(|a| self.from_offset(&a)).collect()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Element {
        let m = self.ring.p().pow(self.k);
        let a: Vec<u64> = (0..self.n * self.n).map(|_| rng.gen_range(0..m)).collect();
        self.from_offset(&a)
    }

    fn in_omega1(&self, g: &[u64]) -> Option<bool> {
        Some(self.congruent_to_identity(g, self.ring.p().pow(self.k)))
    }

    fn in_power_subgroup(&self, g: &[u64], e: u32) -> Option<bool> {
        let e = e.min(self.k);
        Some(self.congruent_to_identity(g, self.ring.p().pow(e + 1)))
    }

    fn omega1_generators(&self) -> Option<Vec<Element>> {
        let n = self.n;
        let r = self.ring;
        let scale = r.p().pow(self.k - 1);
        Some(
            (0..n * n)
                .map(|idx| {
                    let mut a = vec![0; n * n];
                    a[idx] = scale;
                    self.from_offset(&a)
                })
                .collect(),
        )
    }
}
