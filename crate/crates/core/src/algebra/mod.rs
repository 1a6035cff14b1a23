//! Bracket algebras over `Z/p^k`, the Jacobi form, and the dual co-bracket.

mod bracket;
pub mod exterior;
mod io;
mod named;

pub use bracket::{BracketAlgebra, JacobiTensor};
pub use exterior::{cobracket, colie_defect, ExteriorElement, ExteriorTerm};
pub use io::{algebra_to_json, parse_algebra, AlgebraFile, BracketEntry};
pub use named::{gln, heisenberg, named_algebra, sl2, sln, so3, solvable_s};

use rand::Rng;

use crate::modp::PrimePower;

/// Uniformly random alternating structure constants.
pub fn random_bracket_algebra<R: Rng + ?Sized>(rng: &mut R, modulus: PrimePower, n: usize) -> BracketAlgebra {
    let mut l = BracketAlgebra::abelian(modulus, n);
    for i in 0..n {
        for j in i + 1..n {
            for t in 0..n {
                l.set_pair(i, j, t, rng.gen_range(0..modulus.modulus()));
            }
        }
    }
    l
}

/// Rejection-samples a Lie algebra (Jacobi form zero).
pub fn random_lie_algebra<R: Rng + ?Sized>(rng: &mut R, modulus: PrimePower, n: usize) -> BracketAlgebra {
    loop {
        let l = random_bracket_algebra(rng, modulus, n);
        if l.is_lie() {
            return l;
        }
    }
}
