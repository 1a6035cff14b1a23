//! Free graded-commutative rings `Λ(odd generators) ⊗ F_p[even generators]`
//! with odd generators in degree 1 and even generators in degree 2.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::exterior::{subsets, wedge_sign};
use crate::algebra::ExteriorElement;
use crate::cohomology::multisets;
use crate::error::{Error, Result};
use crate::modp::{binomial, ModMatrix, PrimePower};

/// `x_I · s^E`, ordered by exterior mask then exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub ext: u64,
    pub poly: Vec<u32>,
}

impl Monomial {
    pub fn one(n_poly: usize) -> Self {
        Monomial {
            ext: 0,
            poly: vec![0; n_poly],
        }
    }

    pub fn degree(&self) -> usize {
        self.ext.count_ones() as usize + 2 * self.poly.iter().sum::<u32>() as usize
    }

    /// Total polynomial exponent.
    pub fn weight(&self) -> usize {
        self.poly.iter().sum::<u32>() as usize
    }

    /// Product with its Koszul sign, `None` if an odd generator repeats.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        let negative = wedge_sign(self.ext, other.ext)?;
        let poly = self.poly.iter().zip(&other.poly).map(|(a, b)| a + b).collect();
        Some((
            negative,
            Monomial {
                ext: self.ext | other.ext,
                poly,
            },
        ))
    }
}

/// Generator counts, labels and a truncation degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRing {
    field: PrimePower,
    ext_labels: Vec<String>,
    poly_labels: Vec<String>,
    max_degree: usize,
}

impl GradedRing {
    pub fn new(field: PrimePower, ext_labels: Vec<String>, poly_labels: Vec<String>, max_degree: usize) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::NotAField(field.k()));
        }
        if ext_labels.len() > 63 {
            return Err(Error::DimensionMismatch("at most 63 exterior generators".into()));
        }
        Ok(GradedRing {
            field,
            ext_labels,
            poly_labels,
            max_degree,
        })
    }

    pub fn field(&self) -> PrimePower {
        self.field
    }

    pub fn n_ext(&self) -> usize {
        self.ext_labels.len()
    }

    pub fn n_poly(&self) -> usize {
        self.poly_labels.len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn ext_labels(&self) -> &[String] {
        &self.ext_labels
    }

    pub fn poly_labels(&self) -> &[String] {
        &self.poly_labels
    }

    /// Monomials of degree `d`, sorted.
    pub fn basis(&self, d: usize) -> Vec<Monomial> {
        let mut out = Vec::new();
        for j in 0..=d / 2 {
            let e = d - 2 * j;
            if e > self.n_ext() || (self.n_poly() == 0 && j > 0) {
                continue;
            }
            let polys: Vec<Vec<u32>> = multisets(self.n_poly(), j)
                .into_iter()
                .map(|ms| {
                    let mut v = vec![0u32; self.n_poly()];
                    for i in ms {
                        v[i] += 1;
                    }
                    v
                })
                .collect();
            for mask in subsets(self.n_ext(), e) {
                for poly in &polys {
                    out.push(Monomial { ext: mask, poly: poly.clone() });
                }
            }
        }
        out.sort();
        out
    }

    /// Monomials of degree `d` and weight `k`, sorted.
    pub fn basis_weight(&self, d: usize, k: usize) -> Vec<Monomial> {
        self.basis(d).into_iter().filter(|m| m.weight() == k).collect()
    }

    /// `Σ_j C(n_ext, d−2j)·C(n_poly+j−1, j)`.
    pub fn count(&self, d: usize) -> usize {
        (0..=d / 2)
            .map(|j| {
                let poly = if self.n_poly() == 0 {
                    usize::from(j == 0)
                } else {
                    binomial(self.n_poly() + j - 1, j)
                };
                binomial(self.n_ext(), d - 2 * j) * poly
            })
            .sum()
    }

    pub fn one(&self) -> RingElement {
        RingElement::monomial(self.field, Monomial::one(self.n_poly()), 1)
    }

    pub fn zero(&self) -> RingElement {
        RingElement::zero(self.field)
    }

    pub fn ext_generator(&self, i: usize) -> RingElement {
        let mut m = Monomial::one(self.n_poly());
        m.ext = 1 << i;
        RingElement::monomial(self.field, m, 1)
    }

    pub fn poly_generator(&self, i: usize) -> RingElement {
        let mut m = Monomial::one(self.n_poly());
        m.poly[i] = 1;
        RingElement::monomial(self.field, m, 1)
    }

    /// Embeds an exterior form in the first `dim` odd generators.
    pub fn from_exterior(&self, w: &ExteriorElement) -> RingElement {
        let mut out = self.zero();
        for (mask, c) in w.terms() {
            out.add_term(
                Monomial {
                    ext: mask,
                    poly: vec![0; self.n_poly()],
                },
                c,
            );
        }
        out
    }

    /// Coordinates of a homogeneous element in `basis(d)`.
    pub fn coordinates(&self, e: &RingElement, d: usize) -> Result<Vec<u64>> {
        let basis = self.basis(d);
        let mut v = vec![0; basis.len()];
        for (m, c) in e.terms() {
            let idx = basis
                .binary_search(m)
                .map_err(|_| Error::Internal(format!("monomial of degree {} outside degree {d}", m.degree())))?;
            v[idx] = *c;
        }
        Ok(v)
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, l) in self.ext_labels.iter().enumerate() {
            if m.ext >> i & 1 == 1 {
                parts.push(l.clone());
            }
        }
        for (i, &e) in m.poly.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.poly_labels[i].clone()),
                _ => parts.push(format!("{}^{e}", self.poly_labels[i])),
            }
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("·")
        }
    }

    pub fn format(&self, e: &RingElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, &c)) in e.terms().enumerate() {
            let signed = self.field.signed(c);
            let body = self.format_monomial(m);
            let mag = signed.unsigned_abs();
            let term = if mag == 1 && body != "1" { body } else if body == "1" { mag.to_string() } else { format!("{mag}{body}") };
            match (i, signed < 0) {
                (0, false) => s.push_str(&term),
                (0, true) => s.push_str(&format!("-{term}")),
                (_, false) => s.push_str(&format!(" + {term}")),
                (_, true) => s.push_str(&format!(" - {term}")),
            }
        }
        s
    }
}

/// A finite sum of monomials with nonzero coefficients in `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingElement {
    field: PrimePower,
    terms: BTreeMap<Monomial, u64>,
}

impl RingElement {
    pub fn zero(field: PrimePower) -> Self {
        RingElement {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: PrimePower, m: Monomial, c: u64) -> Self {
        let mut e = Self::zero(field);
        e.add_term(m, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &u64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: u64) {
        let c = c % self.field.modulus();
        if c == 0 {
            return;
        }
        let sum = self.field.add(self.coefficient(&m), c);
        if sum == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.field);
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), self.field.mul(x, c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let f = self.field;
        let mut out = Self::zero(f);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                if let Some((negative, m)) = a.mul(b) {
                    let c = f.mul(ca, cb);
                    out.add_term(m, if negative { f.neg(c) } else { c });
                }
            }
        }
        out
    }

    /// Every term has degree `d`.
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }
}

/// An odd derivation of degree +1 given by its values on generators.
#[derive(Debug, Clone)]
pub struct Derivation {
    ring: GradedRing,
    ext_images: Vec<RingElement>,
    poly_images: Vec<RingElement>,
}

impl Derivation {
    pub fn new(ring: GradedRing, ext_images: Vec<RingElement>, poly_images: Vec<RingElement>) -> Result<Self> {
        if ext_images.len() != ring.n_ext() || poly_images.len() != ring.n_poly() {
            return Err(Error::DimensionMismatch("one image per generator".into()));
        }
        for (i, e) in ext_images.iter().enumerate() {
            if !e.is_homogeneous_of(2) {
                return Err(Error::MalformedInput(format!("image of odd generator {i} is not of degree 2")));
            }
        }
        for (i, e) in poly_images.iter().enumerate() {
            if !e.is_homogeneous_of(3) {
                return Err(Error::MalformedInput(format!("image of even generator {i} is not of degree 3")));
            }
        }
        Ok(Derivation {
            ring,
            ext_images,
            poly_images,
        })
    }

    pub fn ring(&self) -> &GradedRing {
        &self.ring
    }

    pub fn ext_image(&self, i: usize) -> &RingElement {
        &self.ext_images[i]
    }

    pub fn poly_image(&self, i: usize) -> &RingElement {
        &self.poly_images[i]
    }

    /// `D(x_{i_1}⋯x_{i_a} s^E)` by the graded Leibniz rule.
    pub fn apply_monomial(&self, m: &Monomial) -> RingElement {
        let f = self.ring.field();
        let mut acc: HashMap<Monomial, u64> = HashMap::new();
        let mut push = |a: &Monomial, b: &Monomial, c: u64| {
            if let Some((negative, prod)) = a.mul(b) {
                let e = acc.entry(prod).or_insert(0);
                *e = if negative { f.sub(*e, c) } else { f.add(*e, c) };
            }
        };
        // D(x_i) has even degree, so it commutes past the other factors.
        let mut r = 0;
        for i in 0..self.ring.n_ext() {
            if m.ext >> i & 1 == 0 {
                continue;
            }
            let mut rest = m.clone();
            rest.ext &= !(1 << i);
            for (q, &c) in self.ext_images[i].terms() {
                push(q, &rest, if r % 2 == 1 { f.neg(c) } else { c });
            }
            r += 1;
        }
        // (−1)^{|I|} E_t x_I s^{E−e_t} D(s_t)
        for (t, &e) in m.poly.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let mut rest = m.clone();
            rest.poly[t] -= 1;
            let scale = f.reduce(if r % 2 == 1 { -(e as i64) } else { e as i64 });
            for (q, &c) in self.poly_images[t].terms() {
                push(&rest, q, f.mul(c, scale));
            }
        }
        let mut out = RingElement::zero(f);
        for (mono, c) in acc {
            out.add_term(mono, c);
        }
        out
    }

    pub fn apply(&self, e: &RingElement) -> RingElement {
        let mut out = RingElement::zero(self.ring.field());
        for (m, &c) in e.terms() {
            out = out.add(&self.apply_monomial(m).scale(c));
        }
        out
    }

    /// Matrix of `D` from degree `d` to degree `d + 1` in the sorted bases.
    pub fn matrix(&self, d: usize) -> Result<ModMatrix> {
        self.matrix_between(&self.ring.basis(d), &self.ring.basis(d + 1))
    }

    pub fn matrix_between(&self, source: &[Monomial], target: &[Monomial]) -> Result<ModMatrix> {
        let mut mat = ModMatrix::zeros(self.ring.field(), target.len(), source.len());
        for (j, m) in source.iter().enumerate() {
            for (t, &c) in self.apply_monomial(m).terms() {
                let i = target
                    .binary_search(t)
                    .map_err(|_| Error::Internal(format!("image term {t:?} outside the target basis")))?;
                mat.set(i, j, c);
            }
        }
        Ok(mat)
    }

    /// Cohomology dimensions in degrees `0..=top` (requires `top + 1` in range).
    pub fn cohomology_dims(&self, top: usize) -> Result<Vec<usize>> {
        let mut ranks = Vec::with_capacity(top + 1);
        for d in 0..=top {
            ranks.push(self.matrix(d)?.rank_fp()?);
        }
        Ok((0..=top)
            .map(|d| self.ring.count(d) - ranks[d] - if d > 0 { ranks[d - 1] } else { 0 })
            .collect())
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Λ({}) ⊗ F_{}[{}] (degrees ≤ {})",
            self.ext_labels.join(", "),
            self.field.p(),
            self.poly_labels.join(", "),
            self.max_degree
        )
    }
}

/// A degree-preserving algebra map into another ring, given on generators.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    source: GradedRing,
    ext_images: Vec<RingElement>,
    poly_images: Vec<RingElement>,
}

impl AlgebraMap {
    pub fn new(source: GradedRing, ext_images: Vec<RingElement>, poly_images: Vec<RingElement>) -> Result<Self> {
        if ext_images.len() != source.n_ext() || poly_images.len() != source.n_poly() {
            return Err(Error::DimensionMismatch("one image per generator".into()));
        }
        Ok(AlgebraMap {
            source,
            ext_images,
            poly_images,
        })
    }

    pub fn source(&self) -> &GradedRing {
        &self.source
    }

    pub fn apply(&self, e: &RingElement, target_one: &RingElement) -> RingElement {
        let mut out = target_one.scale(0);
        for (m, &c) in e.terms() {
            let mut acc = target_one.clone();
            for i in 0..self.source.n_ext() {
                if m.ext >> i & 1 == 1 {
                    acc = acc.mul(&self.ext_images[i]);
                }
            }
            for (t, &k) in m.poly.iter().enumerate() {
                for _ in 0..k {
                    acc = acc.mul(&self.poly_images[t]);
                }
            }
            out = out.add(&acc.scale(c));
        }
        out
    }
}
