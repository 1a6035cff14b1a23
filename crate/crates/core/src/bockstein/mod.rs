//! The ring `Λ(x)⊗F_p[s]` with its Bockstein derivation, the page `B₂`
//! computed directly and from Lie algebra cohomology, the coaction of
//! `H*(Ω₁)`, and the `E₃` page of the extension spectral sequence.

mod b2;
mod beta;
mod comodule;
mod lhs;
mod ring;

pub use b2::{b2_direct, b2_via_lie, divided_power_sensitive_from, B2Report, DegreeRow, WeightDim};
pub use beta::{beta, beta_squared_defect, BocksteinData, DefectWitness};
pub use comodule::{comodule_check, Coaction, ComoduleReport};
pub use lhs::{lhs_e3_dims, lhs_page};
pub use ring::{AlgebraMap, Derivation, GradedRing, Monomial, RingElement};
