use serde::{Deserialize, Serialize};

use super::beta::{beta_squared_defect, BocksteinData};
use super::ring::Monomial;
use crate::algebra::BracketAlgebra;
use crate::cohomology::{cohomology, LieModule, SymConvention};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDim {
    pub k: usize,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeRow {
    pub d: usize,
    pub b1: usize,
    pub b2: usize,
    pub by_weight: Vec<WeightDim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct B2Report {
    pub degrees: Vec<DegreeRow>,
    pub eta_zero: bool,
}

impl B2Report {
    pub fn b2(&self) -> Vec<usize> {
        self.degrees.iter().map(|r| r.b2).collect()
    }
}

/// Cohomology of `(Λ(x)⊗F_p[s], β)` in degrees `0..max_degree`.
///
/// With `η = 0` the derivation preserves the weight (total `s`-exponent) and
/// each degree is split by weight; otherwise `by_weight` is empty.
pub fn b2_direct(bd: &BocksteinData, max_degree: usize) -> Result<B2Report> {
    if let Some(w) = beta_squared_defect(bd)? {
        return Err(Error::BetaSquareNonzero(format!("{} (β² = {})", w.generator, w.image)));
    }
    let d = bd.derivation(max_degree)?;
    let ring = d.ring();
    let mut degrees = Vec::with_capacity(max_degree);
    if bd.eta_is_zero() {
        // bases[d][k] and ranks[d][k] of β from degree d, weight k.
        let bases: Vec<Vec<Vec<Monomial>>> = (0..=max_degree)
            .map(|deg| (0..=deg / 2).map(|k| ring.basis_weight(deg, k)).collect())
            .collect();
        let mut ranks: Vec<Vec<usize>> = Vec::with_capacity(max_degree);
        for deg in 0..max_degree {
            let mut row = Vec::new();
            for (k, src) in bases[deg].iter().enumerate() {
                let tgt = &bases[deg + 1][k];
                row.push(if src.is_empty() || tgt.is_empty() {
                    0
                } else {
                    d.matrix_between(src, tgt)?.rank_fp()?
                });
            }
            ranks.push(row);
        }
        for deg in 0..max_degree {
            let mut by_weight = Vec::new();
            for k in 0..=deg / 2 {
                let below = if deg > 0 { ranks[deg - 1].get(k).copied().unwrap_or(0) } else { 0 };
                by_weight.push(WeightDim {
                    k,
                    dim: bases[deg][k].len() - ranks[deg][k] - below,
                });
            }
            degrees.push(DegreeRow {
                d: deg,
                b1: ring.count(deg),
                b2: by_weight.iter().map(|w| w.dim).sum(),
                by_weight,
            });
        }
    } else {
        let dims = if max_degree == 0 { vec![] } else { d.cohomology_dims(max_degree - 1)? };
        for (deg, b2) in dims.into_iter().enumerate() {
            degrees.push(DegreeRow {
                d: deg,
                b1: ring.count(deg),
                b2,
                by_weight: vec![],
            });
        }
    }
    Ok(B2Report {
        degrees,
        eta_zero: bd.eta_is_zero(),
    })
}

/// `dim B₂^d = Σ_k dim H^{d−2k}(L; S^k)` in degrees `0..max_degree`.
pub fn b2_via_lie(l: &BracketAlgebra, max_degree: usize, convention: SymConvention) -> Result<B2Report> {
    if let Some((i, j, k)) = l.jacobi_form().first_nonzero() {
        return Err(Error::NotLie(i, j, k));
    }
    let ring = BocksteinData::new(l.clone(), None)?.ring(max_degree)?;
    let mut per_weight: Vec<Vec<usize>> = Vec::new();
    let mut degrees = Vec::with_capacity(max_degree);
    for deg in 0..max_degree {
        let mut by_weight = Vec::new();
        for k in 0..=deg / 2 {
            while per_weight.len() <= k {
                let m = LieModule::sym(l, per_weight.len(), convention)?;
                per_weight.push(cohomology(l, &m, false)?.dims);
            }
            by_weight.push(WeightDim {
                k,
                dim: per_weight[k].get(deg - 2 * k).copied().unwrap_or(0),
            });
        }
        degrees.push(DegreeRow {
            d: deg,
            b1: ring.count(deg),
            b2: by_weight.iter().map(|w| w.dim).sum(),
            by_weight,
        });
    }
    Ok(B2Report { degrees, eta_zero: true })
}

/// Degrees from which a weight `k ≥ p` contributes.
pub fn divided_power_sensitive_from(p: u64) -> usize {
    2 * p as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::named_algebra;

    #[test]
    fn abelian_b2_is_everything() {
        // β = 0 on Λ(x)⊗F_p[s] for an abelian algebra.
        let l = named_algebra("abelian(2)", 5, 1).unwrap();
        let r = b2_direct(&BocksteinData::new(l, None).unwrap(), 7).unwrap();
        for row in &r.degrees {
            assert_eq!(row.b1, row.b2);
        }
        assert_eq!(r.b2(), vec![1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn heisenberg_low_degrees() {
        // H*(heis; F_p) = 1, 2, 2, 1 and H^ℓ(heis; S^1) via the two sides.
        let l = named_algebra("heisenberg", 5, 1).unwrap();
        let direct = b2_direct(&BocksteinData::new(l.clone(), None).unwrap(), 6).unwrap();
        let lie = b2_via_lie(&l, 6, SymConvention::Forms).unwrap();
        assert_eq!(direct, lie);
        assert_eq!(&direct.b2()[..2], &[1, 2]);
    }

    #[test]
    fn sl2_weight_zero_is_lie_cohomology() {
        let l = named_algebra("sl2", 5, 1).unwrap();
        let r = b2_direct(&BocksteinData::new(l, None).unwrap(), 5).unwrap();
        let w0: Vec<usize> = r.degrees.iter().map(|row| row.by_weight[0].dim).collect();
        assert_eq!(w0, vec![1, 0, 0, 1, 0]);
    }

    #[test]
    fn non_lie_is_rejected() {
        let l = crate::algebra::tests::non_lie_example(5);
        assert!(matches!(
            b2_direct(&BocksteinData::new(l.clone(), None).unwrap(), 4),
            Err(Error::BetaSquareNonzero(_))
        ));
        assert!(matches!(b2_via_lie(&l, 4, SymConvention::Forms), Err(Error::NotLie(..))));
    }
}
