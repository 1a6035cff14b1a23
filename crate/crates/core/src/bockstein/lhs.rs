use super::ring::{Derivation, GradedRing, Monomial};
use crate::algebra::exterior::cobracket_generator;
use crate::algebra::BracketAlgebra;
use crate::error::Result;

/// The second page `Λ(e, x) ⊗ F_p[βe, y]` of the extension spectral sequence
/// for `Ω₁ → G → G/Ω₁`, with `d₂(e_i) = y_i + br*(x_i)` and `d₂ = 0` on the
/// other generators.
pub fn lhs_page(l: &BracketAlgebra, max_degree: usize) -> Result<Derivation> {
    let n = l.dim();
    let labels = l.labels();
    let mut ext: Vec<String> = labels.iter().map(|x| format!("e({x})")).collect();
    ext.extend(labels.iter().cloned());
    let mut poly: Vec<String> = labels.iter().map(|x| format!("βe({x})")).collect();
    poly.extend(labels.iter().map(|x| format!("y({x})")));
    let ring = GradedRing::new(l.modulus(), ext, poly, max_degree)?;
    let mut ext_images = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut e = ring.poly_generator(n + i);
        for (mask, c) in cobracket_generator(l, i).terms() {
            e.add_term(
                Monomial {
                    ext: mask << n,
                    poly: vec![0; 2 * n],
                },
                c,
            );
        }
        ext_images.push(e);
    }
    ext_images.extend((0..n).map(|_| ring.zero()));
    let poly_images = vec![ring.zero(); 2 * n];
    Derivation::new(ring, ext_images, poly_images)
}

/// `dim E₃` in total degrees `0..max_degree`.
pub fn lhs_e3_dims(l: &BracketAlgebra, max_degree: usize) -> Result<Vec<usize>> {
    if max_degree == 0 {
        return Ok(vec![]);
    }
    lhs_page(l, max_degree)?.cohomology_dims(max_degree - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::named_algebra;

    #[test]
    fn e3_of_abelian_is_lambda_x_times_poly() {
        // Λ(x)⊗F_p[βe] on two generators: 1, 2, 3, 4, 5.
        let l = named_algebra("abelian(2)", 3, 1).unwrap();
        assert_eq!(lhs_e3_dims(&l, 5).unwrap(), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn d2_squares_to_zero() {
        let l = named_algebra("sl2", 5, 1).unwrap();
        let d = lhs_page(&l, 4).unwrap();
        for deg in 0..3 {
            let a = d.matrix(deg).unwrap();
            let b = d.matrix(deg + 1).unwrap();
            assert!(b.mul(&a).unwrap().is_zero());
        }
    }
}
