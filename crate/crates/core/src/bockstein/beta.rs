use serde::{Deserialize, Serialize};

use super::ring::{Derivation, GradedRing, Monomial, RingElement};
use crate::algebra::exterior::subsets;
use crate::algebra::{BracketAlgebra, ExteriorElement};
use crate::error::{Error, Result};

/// A bracket algebra over `F_p` with 3-forms `η_t`, defining
/// `β(x_t) = −Σ_{i<j} c_{ij}^t x_i x_j` and
/// `β(s_t) = Σ_{i,j} c_{ij}^t s_i x_j + η_t` on `Λ(x)⊗F_p[s]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BocksteinData {
    algebra: BracketAlgebra,
    eta: Vec<ExteriorElement>,
}

/// A generator on which `β²` does not vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectWitness {
    pub generator: String,
    pub image: String,
}

impl BocksteinData {
    /// `η = 0` when `eta` is `None`.
    pub fn new(algebra: BracketAlgebra, eta: Option<Vec<ExteriorElement>>) -> Result<Self> {
        let f = algebra.modulus();
        if !f.is_field() {
            return Err(Error::NotAField(f.k()));
        }
        let n = algebra.dim();
        let eta = eta.unwrap_or_else(|| vec![ExteriorElement::zero(f, n); n]);
        if eta.len() != n {
            return Err(Error::DimensionMismatch(format!("{} forms η_t for dimension {n}", eta.len())));
        }
        for (t, w) in eta.iter().enumerate() {
            if w.dim() != n || w.field() != f {
                return Err(Error::DimensionMismatch(format!("η_{t} lives on the wrong exterior algebra")));
            }
            if w.component(3) != *w {
                return Err(Error::MalformedInput(format!("η_{t} is not a 3-form")));
            }
        }
        Ok(BocksteinData { algebra, eta })
    }

    /// `η_t(S)` read off cochain coordinates of `C³(L; ad)`.
    pub fn from_cochain(algebra: BracketAlgebra, coords: &[u64]) -> Result<Self> {
        let f = algebra.modulus();
        let n = algebra.dim();
        let masks = subsets(n, 3);
        if coords.len() != masks.len() * n {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates, C³ has dimension {}",
                coords.len(),
                masks.len() * n
            )));
        }
        let mut eta = vec![ExteriorElement::zero(f, n); n];
        for (pos, &mask) in masks.iter().enumerate() {
            for (t, w) in eta.iter_mut().enumerate() {
                w.add_term(mask, coords[pos * n + t]);
            }
        }
        Self::new(algebra, Some(eta))
    }

    pub fn algebra(&self) -> &BracketAlgebra {
        &self.algebra
    }

    pub fn eta(&self) -> &[ExteriorElement] {
        &self.eta
    }

    pub fn eta_is_zero(&self) -> bool {
        self.eta.iter().all(ExteriorElement::is_zero)
    }

    /// `η` as a cochain in `C³(L; ad)`: coordinate `(S, t)` is the
    /// coefficient of `x_S` in `η_t`.
    pub fn eta_cochain(&self) -> Vec<u64> {
        let n = self.algebra.dim();
        subsets(n, 3)
            .iter()
            .flat_map(|&mask| self.eta.iter().map(move |w| w.coefficient(mask)))
            .collect()
    }

    /// `Λ(x_t) ⊗ F_p[s_t]` truncated at `max_degree`.
    pub fn ring(&self, max_degree: usize) -> Result<GradedRing> {
        let labels = self.algebra.labels();
        let poly = labels
            .iter()
            .map(|l| {
                let up = l.to_uppercase();
                if up == *l {
                    format!("s{l}")
                } else {
                    up
                }
            })
            .collect();
        GradedRing::new(self.algebra.modulus(), labels.to_vec(), poly, max_degree)
    }

    pub fn derivation(&self, max_degree: usize) -> Result<Derivation> {
        let ring = self.ring(max_degree)?;
        let (ext, poly) = self.generator_images(&ring);
        Derivation::new(ring, ext, poly)
    }

    fn generator_images(&self, ring: &GradedRing) -> (Vec<RingElement>, Vec<RingElement>) {
        let l = &self.algebra;
        let f = l.modulus();
        let n = l.dim();
        let mut ext = Vec::with_capacity(n);
        let mut poly = Vec::with_capacity(n);
        for t in 0..n {
            let mut bx = ring.zero();
            let mut bs = ring.from_exterior(&self.eta[t]);
            for i in 0..n {
                for j in 0..n {
                    let c = l.constant(i, j, t);
                    if c == 0 {
                        continue;
                    }
                    if i < j {
                        let mut m = Monomial::one(n);
                        m.ext = (1 << i) | (1 << j);
                        bx.add_term(m, f.neg(c));
                    }
                    let mut m = Monomial::one(n);
                    m.ext = 1 << j;
                    m.poly[i] = 1;
                    bs.add_term(m, c);
                }
            }
            ext.push(bx);
            poly.push(bs);
        }
        (ext, poly)
    }

    /// The data after the change of generators `s_t ↦ s_t + μ_t`, `μ_t ∈ Λ²`:
    /// `η'_t = η_t + β(μ_t) − Σ_{i,j} c_{ij}^t μ_i x_j`.
    pub fn regauge(&self, mu: &[ExteriorElement]) -> Result<BocksteinData> {
        let l = &self.algebra;
        let n = l.dim();
        let f = l.modulus();
        if mu.len() != n {
            return Err(Error::DimensionMismatch(format!("{} forms μ_t for dimension {n}", mu.len())));
        }
        for (t, w) in mu.iter().enumerate() {
            if w.dim() != n || w.field() != f || w.component(2) != *w {
                return Err(Error::MalformedInput(format!("μ_{t} is not a 2-form on L")));
            }
        }
        let d = self.derivation(3)?;
        let ring = d.ring();
        let mut eta = Vec::with_capacity(n);
        for t in 0..n {
            let mut e = ring.from_exterior(&self.eta[t]).add(&d.apply(&ring.from_exterior(&mu[t])));
            for i in 0..n {
                for j in 0..n {
                    let c = l.constant(i, j, t);
                    if c != 0 {
                        let term = ring.from_exterior(&mu[i]).mul(&ring.ext_generator(j));
                        e = e.sub(&term.scale(c));
                    }
                }
            }
            eta.push(to_exterior(&e, n, f)?);
        }
        BocksteinData::new(l.clone(), Some(eta))
    }
}

fn to_exterior(e: &RingElement, n: usize, f: crate::modp::PrimePower) -> Result<ExteriorElement> {
    let mut out = ExteriorElement::zero(f, n);
    for (m, &c) in e.terms() {
        if m.weight() != 0 {
            return Err(Error::Internal("expected an exterior element".into()));
        }
        out.add_term(m.ext, c);
    }
    Ok(out)
}

/// `β(e)`; inputs of degree above `max_degree − 1` overflow the truncation.
pub fn beta(bd: &BocksteinData, e: &RingElement, max_degree: usize) -> Result<RingElement> {
    if let Some(deg) = e.max_degree() {
        if deg + 1 > max_degree {
            return Err(Error::TruncationOverflow { degree: deg + 1, max: max_degree });
        }
    }
    Ok(bd.derivation(max_degree)?.apply(e))
}

/// First generator `g` (all `x_t`, then all `s_t`) with `β²(g) ≠ 0`.
pub fn beta_squared_defect(bd: &BocksteinData) -> Result<Option<DefectWitness>> {
    let d = bd.derivation(5)?;
    let ring = d.ring();
    let n = bd.algebra.dim();
    let gens = (0..n)
        .map(|i| (ring.ext_labels()[i].clone(), d.ext_image(i)))
        .chain((0..n).map(|i| (ring.poly_labels()[i].clone(), d.poly_image(i))));
    for (name, image) in gens {
        let sq = d.apply(image);
        if !sq.is_zero() {
            return Ok(Some(DefectWitness {
                generator: name,
                image: ring.format(&sq),
            }));
        }
    }
    Ok(None)
}
