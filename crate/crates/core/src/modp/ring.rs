use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus we accept; keeps every product of two residues inside `u64`.
const MAX_MODULUS: u64 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The coefficient ring `Z/p^k` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPrimePower", into = "RawPrimePower")]
pub struct PrimePower {
    p: u64,
    k: u32,
    modulus: u64,
}

#[derive(Serialize, Deserialize)]
struct RawPrimePower {
    p: u64,
    k: u32,
}

impl TryFrom<RawPrimePower> for PrimePower {
    type Error = Error;
    fn try_from(raw: RawPrimePower) -> Result<Self> {
        PrimePower::new(raw.p, raw.k)
    }
}

impl From<PrimePower> for RawPrimePower {
    fn from(pp: PrimePower) -> Self {
        RawPrimePower { p: pp.p, k: pp.k }
    }
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidExponent(k));
        }
        let mut modulus: u64 = 1;
        for _ in 0..k {
            modulus = modulus
                .checked_mul(p)
                .filter(|&m| m <= MAX_MODULUS)
                .ok_or(Error::ModulusTooLarge { p, k })?;
        }
        Ok(PrimePower { p, k, modulus })
    }

    /// The prime field `F_p`.
    pub fn field(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_field(&self) -> bool {
        self.k == 1
    }

    /// Same prime, different exponent.
    pub fn with_exponent(&self, k: u32) -> Result<Self> {
        Self::new(self.p, k)
    }

    pub fn reduce(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.modulus
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.modulus - b) % self.modulus
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.modulus - a) % self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.modulus
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        base %= self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    /// Inverse of a unit, via Euler's theorem.
    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let phi = self.modulus / self.p * (self.p - 1);
        Some(self.pow(a, phi - 1))
    }

    /// `1/2`, which exists because `p` is odd.
    pub fn half(&self) -> u64 {
        self.modulus.div_ceil(2)
    }

    /// p-adic valuation of a residue, capped at `k` for zero.
    pub fn valuation(&self, a: u64) -> u32 {
        if a.is_multiple_of(self.modulus) {
            return self.k;
        }
        let mut v = 0;
        let mut a = a;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// Interpret a residue as an integer in `(-m/2, m/2]`.
    pub fn signed(&self, a: u64) -> i64 {
        let a = a % self.modulus;
        if a > self.modulus / 2 {
            a as i64 - self.modulus as i64
        } else {
            a as i64
        }
    }
}

impl std::fmt::Display for PrimePower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "Z/{}^{}", self.p, self.k)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_even_and_composite() {
        assert_eq!(PrimePower::new(2, 1), Err(Error::NotOddPrime(2)));
        assert_eq!(PrimePower::new(9, 1), Err(Error::NotOddPrime(9)));
        assert_eq!(PrimePower::new(1, 1), Err(Error::NotOddPrime(1)));
        assert_eq!(PrimePower::new(5, 0), Err(Error::InvalidExponent(0)));
        assert!(matches!(PrimePower::new(3, 40), Err(Error::ModulusTooLarge { .. })));
    }

    #[test]
    fn arithmetic_mod_27() {
        let r = PrimePower::new(3, 3).unwrap();
        assert_eq!(r.modulus(), 27);
        assert_eq!(r.reduce(-1), 26);
        assert_eq!(r.inv(2), Some(14));
        assert_eq!(r.inv(3), None);
        assert_eq!(r.mul(r.half(), 2), 1);
        assert_eq!(r.valuation(18), 2);
        assert_eq!(r.valuation(0), 3);
        assert_eq!(r.signed(26), -1);
    }

    #[test]
    fn serde_validates() {
        let ok: PrimePower = serde_json_like("{\"p\":5,\"k\":2}");
        assert_eq!(ok.modulus(), 25);
    }

    fn serde_json_like(s: &str) -> PrimePower {
        serde_json::from_str(s).unwrap()
    }
}
