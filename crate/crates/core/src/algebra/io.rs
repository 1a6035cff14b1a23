//! JSON exchange format for bracket algebras.
//!
//! ```json
//! {"p": 5, "k": 1, "dim": 3, "basis": ["h", "x+", "x-"],
//!  "brackets": [{"i": 0, "j": 1, "coeffs": [0, 2, 0]}]}
//! ```
//!
//! Indices are 0-based. Only pairs `i < j` need to be listed; omitted pairs
//! are zero. Coefficients may be negative and are reduced mod `p^k`.

use serde::{Deserialize, Serialize};

use super::BracketAlgebra;
use crate::error::{Error, Result};
use crate::modp::PrimePower;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub p: u64,
    pub k: u32,
    pub dim: usize,
    #[serde(default)]
    pub basis: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub coeffs: Vec<i64>,
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<BracketAlgebra> {
        let r = PrimePower::new(self.p, self.k)?;
        let labels = if self.basis.is_empty() {
            (1..=self.dim).map(|i| format!("e{i}")).collect()
        } else if self.basis.len() == self.dim {
            self.basis.clone()
        } else {
            return Err(Error::MalformedInput(format!(
                "basis has {} labels but dim is {}",
                self.basis.len(),
                self.dim
            )));
        };
        let brackets: Vec<_> = self.brackets.iter().map(|b| (b.i, b.j, b.coeffs.clone())).collect();
        BracketAlgebra::from_brackets(r, labels, &brackets)
    }

    pub fn from_algebra(l: &BracketAlgebra) -> Self {
        AlgebraFile {
            p: l.modulus().p(),
            k: l.modulus().k(),
            dim: l.dim(),
            basis: l.labels().to_vec(),
            brackets: l
                .nonzero_brackets()
                .into_iter()
                .map(|(i, j, coeffs)| BracketEntry { i, j, coeffs })
                .collect(),
        }
    }
}

pub fn parse_algebra(json: &str) -> Result<BracketAlgebra> {
    let file: AlgebraFile = serde_json::from_str(json).map_err(|e| Error::MalformedInput(e.to_string()))?;
    file.to_algebra()
}

pub fn algebra_to_json(l: &BracketAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(l)).expect("plain data serialises")
}
