//! Exact linear algebra over `F_p` and `Z/p^k`.

mod matrix;
mod ring;

pub use matrix::{Echelon, ModMatrix, Subspace};
pub use ring::{is_prime, PrimePower};

/// Binomial coefficient for small arguments.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
