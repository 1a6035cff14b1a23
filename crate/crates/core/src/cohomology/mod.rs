//! Chevalley–Eilenberg cohomology `H^*(L; M)` over `F_p`.

mod complex;
mod module;

pub use complex::{
    build_complex, cochain_index, cohomology, differential, is_coboundary, CochainComplex, CohomologyReport,
};
pub use module::{form_to_polynomial, multinomial, multisets, LieModule, SymConvention};
