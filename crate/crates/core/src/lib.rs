//! Exact computational algebra for uniformly powerful p-groups and their
//! Lie algebras over `F_p` and `Z/p^k`.
//!
//! The crate is organised bottom-up:
//!
//! - [`modp`]: dense linear algebra over `F_p` and `Z/p^k`.
//! - [`algebra`]: bracket algebras given by structure constants, the Jacobi
//!   form, and the dual co-bracket on the exterior algebra.
//! - [`group`]: the concrete groups `Exp(L)` and `Γ_{n,k}(p)`, p-group
//!   predicates, and extraction of the bracket from a group.
//! - [`cohomology`]: Chevalley–Eilenberg cohomology with trivial, adjoint and
//!   symmetric-form coefficients.
//! - [`bockstein`]: the graded ring `Λ(x)⊗F_p[s]` with its Bockstein
//!   derivation, the second Bockstein page `B₂` computed two ways, the
//!   comodule map and the extension-spectral-sequence check.
//! - [`lifting`]: the obstruction to lifting a Lie algebra from `Z/p^{k-1}`
//!   to `Z/p^k`, with a brute-force oracle.

pub mod algebra;
pub mod bockstein;
pub mod cohomology;
pub mod error;
pub mod group;
pub mod lifting;
pub mod modp;

pub use error::{Error, Result};
