use rand::{Rng, RngCore};

use super::{all_vectors, Element, GroupView};
use crate::error::{Error, Result};
use crate::modp::is_prime;

/// `Z/p^{a_1} × … × Z/p^{a_r}`.
#[derive(Debug, Clone)]
pub struct AbelianGroup {
    p: u64,
    moduli: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(p: u64, exponents: &[u32]) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if let Some(&e) = exponents.iter().find(|&&e| e == 0 || e > 20) {
            return Err(Error::InvalidExponent(e));
        }
        Ok(AbelianGroup {
            p,
            moduli: exponents.iter().map(|&e| p.pow(e)).collect(),
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }
}

impl GroupView for AbelianGroup {
    fn name(&self) -> String {
        let parts: Vec<String> = self.moduli.iter().map(|m| format!("Z/{m}")).collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" x ")
        }
    }

    fn p(&self) -> u64 {
        self.p
    }

    fn identity(&self) -> Element {
        vec![0; self.moduli.len()]
    }

    fn multiply(&self, a: &[u64], b: &[u64]) -> Element {
        self.moduli.iter().enumerate().map(|(i, &m)| (a[i] + b[i]) % m).collect()
    }

    fn inverse(&self, a: &[u64]) -> Element {
        self.moduli.iter().zip(a).map(|(&m, &x)| (m - x) % m).collect()
    }

    fn generators(&self) -> Vec<Element> {
        (0..self.moduli.len())
            .map(|i| {
                let mut e = self.identity();
                e[i] = 1;
                e
            })
            .collect()
    }

    fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    fn elements(&self) -> Vec<Element> {
        // Mixed radix enumeration.
        let big = self.moduli.iter().copied().max().unwrap_or(1);
        all_vectors(big, self.moduli.len())
            .filter(|v| v.iter().zip(&self.moduli).all(|(&x, &m)| x < m))
            .collect()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> Element {
        self.moduli.iter().map(|&m| rng.gen_range(0..m)).collect()
    }

    fn in_omega1(&self, g: &[u64]) -> Option<bool> {
        Some(g.iter().zip(&self.moduli).all(|(&x, &m)| x % (m / self.p) == 0))
    }

    fn in_power_subgroup(&self, g: &[u64], e: u32) -> Option<bool> {
        Some(g.iter().zip(&self.moduli).all(|(&x, &m)| x % self.p.pow(e).min(m) == 0))
    }

    fn omega1_generators(&self) -> Option<Vec<Element>> {
        Some(
            self.moduli
                .iter()
                .enumerate()
                .map(|(i, &m)| {
                    let mut e = self.identity();
                    e[i] = m / self.p;
                    e
                })
                .collect(),
        )
    }
}
