use serde::{Deserialize, Serialize};

use super::PrimePower;
use crate::error::{Error, Result};

/// Dense row-major matrix over `Z/p^k`. Entries are kept reduced in `[0, p^k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ModMatrix {
    modulus: PrimePower,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(modulus: PrimePower, rows: usize, cols: usize) -> Self {
        ModMatrix {
            modulus,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(modulus: PrimePower, n: usize) -> Self {
        let mut m = Self::zeros(modulus, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus.modulus();
        }
        m
    }

    pub fn from_rows(modulus: PrimePower, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| modulus.reduce(x)))
            .collect();
        Ok(ModMatrix {
            modulus,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from column vectors of residues.
    pub fn from_columns(modulus: PrimePower, rows: usize, columns: &[Vec<u64>]) -> Result<Self> {
        let mut m = Self::zeros(modulus, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    col.len()
                )));
            }
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn modulus(&self) -> PrimePower {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: u64) {
        self.data[i * self.cols + j] = x % self.modulus.modulus();
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: u64) {
        let idx = i * self.cols + j;
        self.data[idx] = self.modulus.add(self.data[idx], x % self.modulus.modulus());
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.modulus, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(format!("{} vs {}", self.modulus, other.modulus)));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.modulus.modulus();
        let mut out = Self::zeros(self.modulus, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(l, j)) % m;
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let m = self.modulus.modulus();
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + a * (b % m)) % m)
            })
            .collect())
    }

    pub fn add(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.modulus != other.modulus || self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch("matrix sum".into()));
        }
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(&other.data) {
            *a = self.modulus.add(*a, b);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> ModMatrix {
        let mut out = self.clone();
        for a in &mut out.data {
            *a = self.modulus.mul(*a, c % self.modulus.modulus());
        }
        out
    }

    /// Entries reduced to a smaller power of the same prime.
    pub fn reduce_to(&self, target: PrimePower) -> Result<ModMatrix> {
        if target.p() != self.modulus.p() || target.k() > self.modulus.k() {
            return Err(Error::ModulusMismatch(format!("cannot reduce {} to {}", self.modulus, target)));
        }
        Ok(ModMatrix {
            modulus: target,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x % target.modulus()).collect(),
        })
    }

    fn require_field(&self) -> Result<()> {
        if self.modulus.is_field() {
            Ok(())
        } else {
            Err(Error::NotAField(self.modulus.k()))
        }
    }

    /// Reduced row echelon form over `F_p`.
    ///
    /// Pivots are chosen in the leftmost available column, taking the topmost
    /// nonzero row at or below the current position.
    pub fn rref_fp(&self) -> Result<Echelon> {
        self.require_field()?;
        let f = self.modulus;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(pr) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..a.cols {
                    a.data.swap(pr * a.cols + j, r * a.cols + j);
                }
            }
            let inv = f.inv(a.get(r, c)).expect("nonzero in a field");
            for j in c..a.cols {
                let x = a.get(r, j);
                a.set(r, j, f.mul(x, inv));
            }
            for i in 0..a.rows {
                if i == r {
                    continue;
                }
                let factor = a.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..a.cols {
                    let x = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                    a.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Ok(Echelon {
            rank: pivots.len(),
            matrix: a,
            pivots,
        })
    }

    pub fn rank_fp(&self) -> Result<usize> {
        Ok(self.rref_fp()?.rank)
    }

    /// Basis of `{v : self·v = 0}` over `F_p`.
    pub fn kernel_fp(&self) -> Result<Subspace> {
        let ech = self.rref_fp()?;
        let f = self.modulus;
        let n = self.cols;
        let pivot_set: Vec<bool> = (0..n).map(|c| ech.pivots.contains(&c)).collect();
        let mut basis = Vec::new();
        for free in (0..n).filter(|&c| !pivot_set[c]) {
            let mut v = vec![0; n];
            v[free] = 1;
            for (row, &pc) in ech.pivots.iter().enumerate() {
                v[pc] = f.neg(ech.matrix.get(row, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, n, basis)
    }

    /// Some `v` with `self·v = b` over `F_p`, or `None` when the system is inconsistent.
    pub fn solve_fp(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        self.require_field()?;
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let f = self.modulus;
        let mut aug = ModMatrix::zeros(f, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let ech = aug.rref_fp()?;
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in ech.pivots.iter().enumerate() {
            x[pc] = ech.matrix.get(row, self.cols);
        }
        Ok(Some(x))
    }

    /// Some `v` with `self·v ≡ b (mod p^k)`, or `None` when no solution exists.
    ///
    /// Works one p-adic digit at a time: solve mod p, parametrise the solutions
    /// by the mod-p kernel, divide the residual by p and recurse with the kernel
    /// directions appended as extra unknowns.
    pub fn solve_mod_pk(&self, b: &[u64]) -> Result<Option<Vec<u64>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} against {} rows",
                b.len(),
                self.rows
            )));
        }
        let b: Vec<i64> = b.iter().map(|&x| (x % self.modulus.modulus()) as i64).collect();
        let lifted: Vec<Vec<i64>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|&x| x as i64).collect())
            .collect();
        let sol = solve_layers(self.modulus.p(), self.modulus.k(), &lifted, self.cols, &b)?;
        Ok(sol.map(|x| x.into_iter().map(|v| self.modulus.reduce(v)).collect()))
    }
}

/// Recursive layer solver on integer representatives.
fn solve_layers(p: u64, k: u32, a: &[Vec<i64>], cols: usize, b: &[i64]) -> Result<Option<Vec<i64>>> {
    let field = PrimePower::field(p)?;
    let pi = p as i64;
    let modulus = pi.pow(k);
    let a_mod_p = ModMatrix {
        modulus: field,
        rows: a.len(),
        cols,
        data: a.iter().flat_map(|r| r.iter().map(|&x| field.reduce(x))).collect(),
    };
    let b_mod_p: Vec<u64> = b.iter().map(|&x| field.reduce(x)).collect();
    let Some(x0) = a_mod_p.solve_fp(&b_mod_p)? else {
        return Ok(None);
    };
    let x0: Vec<i64> = x0.into_iter().map(|x| x as i64).collect();
    if k == 1 {
        return Ok(Some(x0));
    }
    let kernel = a_mod_p.kernel_fp()?;
    let kvecs: Vec<Vec<i64>> = kernel
        .basis()
        .iter()
        .map(|v| v.iter().map(|&x| x as i64).collect())
        .collect();
    let apply = |v: &[i64]| -> Vec<i64> {
        a.iter()
            .map(|row| row.iter().zip(v).fold(0i64, |acc, (&x, &y)| (acc + x * y).rem_euclid(modulus)))
            .collect()
    };
    // Unknowns of the next layer: coefficients y on kernel directions, then z with x = x0 + K·y + p·z.
    let residual: Vec<i64> = apply(&x0)
        .iter()
        .zip(b)
        .map(|(&ax, &bi)| (bi - ax).rem_euclid(modulus) / pi)
        .collect();
    let next_modulus = modulus / pi;
    let mut next_a: Vec<Vec<i64>> = vec![Vec::with_capacity(kvecs.len() + cols); a.len()];
    for kv in &kvecs {
        let col = apply(kv);
        for (row, &x) in next_a.iter_mut().zip(&col) {
            debug_assert_eq!(x % pi, 0);
            row.push((x / pi).rem_euclid(next_modulus));
        }
    }
    for (row, orig) in next_a.iter_mut().zip(a) {
        row.extend(orig.iter().map(|&x| x.rem_euclid(next_modulus)));
    }
    let next_b: Vec<i64> = residual.iter().map(|&x| x.rem_euclid(next_modulus)).collect();
    let Some(yz) = solve_layers(p, k - 1, &next_a, kvecs.len() + cols, &next_b)? else {
        return Ok(None);
    };
    let (y, z) = yz.split_at(kvecs.len());
    let mut x = x0;
    for (kv, &yi) in kvecs.iter().zip(y) {
        for (xi, &kj) in x.iter_mut().zip(kv) {
            *xi = (*xi + yi * kj).rem_euclid(modulus);
        }
    }
    for (xi, &zi) in x.iter_mut().zip(z) {
        *xi = (*xi + pi * zi).rem_euclid(modulus);
    }
    Ok(Some(x))
}

/// Result of [`ModMatrix::rref_fp`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Echelon {
    pub matrix: ModMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// A subspace of `F_p^n`, stored by a basis in reduced echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    field: PrimePower,
    ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimePower, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Span of arbitrary vectors, normalised to echelon form.
    pub fn from_vectors(field: PrimePower, ambient: usize, vectors: Vec<Vec<u64>>) -> Result<Self> {
        if !field.is_field() {
            return Err(Error::NotAField(field.k()));
        }
        if vectors.iter().any(|v| v.len() != ambient) {
            return Err(Error::DimensionMismatch("spanning vector length".into()));
        }
        if vectors.is_empty() {
            return Ok(Self::zero(field, ambient));
        }
        let m = ModMatrix {
            modulus: field,
            rows: vectors.len(),
            cols: ambient,
            data: vectors.into_iter().flatten().map(|x| x % field.modulus()).collect(),
        };
        let ech = m.rref_fp()?;
        let basis = (0..ech.rank).map(|i| ech.matrix.row(i).to_vec()).collect();
        Ok(Subspace {
            field,
            ambient,
            basis,
            pivots: ech.pivots,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after clearing the pivot coordinates; zero iff `v` lies in the span.
    pub fn reduce_vector(&self, v: &[u64]) -> Vec<u64> {
        let f = self.field;
        let mut r: Vec<u64> = v.iter().map(|&x| x % f.modulus()).collect();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = r[pc];
            if c != 0 {
                for (ri, &bi) in r.iter_mut().zip(row) {
                    *ri = f.sub(*ri, f.mul(c, bi));
                }
            }
        }
        r
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        v.len() == self.ambient && self.reduce_vector(v).iter().all(|&x| x == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimePower {
        PrimePower::field(5).unwrap()
    }

    #[test]
    fn rank_examples() {
        let id = ModMatrix::identity(f5(), 3);
        assert_eq!(id.rank_fp().unwrap(), 3);
        assert_eq!(ModMatrix::zeros(f5(), 3, 3).rank_fp().unwrap(), 0);
        let m = ModMatrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let e = m.rref_fp().unwrap();
        assert_eq!(e.rank, 1);
        assert_eq!(e.pivots, vec![0]);
        assert_eq!(e.matrix.row(0), &[1, 2]);
    }

    #[test]
    fn rejects_non_field() {
        let r = PrimePower::new(5, 2).unwrap();
        let m = ModMatrix::identity(r, 2);
        assert_eq!(m.rref_fp().unwrap_err(), Error::NotAField(2));
        assert_eq!(m.kernel_fp().unwrap_err(), Error::NotAField(2));
        assert_eq!(m.solve_fp(&[1, 1]).unwrap_err(), Error::NotAField(2));
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(ModMatrix::identity(f5(), 3).kernel_fp().unwrap().dim(), 0);
        assert_eq!(ModMatrix::zeros(f5(), 3, 3).kernel_fp().unwrap().dim(), 3);
        let m = ModMatrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let k = m.kernel_fp().unwrap();
        assert_eq!(k.dim(), 1);
        // Enumerated over all 25 vectors: the kernel is {t·(3,1)}.
        assert!(k.contains(&[3, 1]));
        assert!(!k.contains(&[1, 1]));
    }

    #[test]
    fn solve_examples() {
        let id = ModMatrix::identity(f5(), 3);
        assert_eq!(id.solve_fp(&[4, 0, 2]).unwrap(), Some(vec![4, 0, 2]));
        let z = ModMatrix::zeros(f5(), 2, 2);
        assert_eq!(z.solve_fp(&[1, 0]).unwrap(), None);
        let m = ModMatrix::from_rows(f5(), &[vec![1, 2], vec![2, 4]]).unwrap();
        let x = m.solve_fp(&[1, 2]).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), vec![1, 2]);
        assert_eq!(x, vec![1, 0]);
        assert!(matches!(m.solve_fp(&[1]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn solve_mod_prime_power_examples() {
        let z27 = PrimePower::new(3, 3).unwrap();
        let m = ModMatrix::from_rows(z27, &[vec![3]]).unwrap();
        let x = m.solve_mod_pk(&[6]).unwrap().unwrap();
        assert!([2, 11, 20].contains(&x[0]));

        let z25 = PrimePower::new(5, 2).unwrap();
        let id = ModMatrix::identity(z25, 2);
        assert_eq!(id.solve_mod_pk(&[7, 24]).unwrap(), Some(vec![7, 24]));
        let five = ModMatrix::from_rows(z25, &[vec![5]]).unwrap();
        assert_eq!(five.solve_mod_pk(&[1]).unwrap(), None);
    }

    #[test]
    fn solve_mod_pk_needs_kernel_freedom() {
        // Greedy digit choice x0 = 0 fails here; the kernel direction must be carried.
        let z27 = PrimePower::new(3, 3).unwrap();
        let m = ModMatrix::from_rows(z27, &[vec![3, 9], vec![0, 3]]).unwrap();
        let b = m.mul_vec(&[2, 5]).unwrap();
        let x = m.solve_mod_pk(&b).unwrap().unwrap();
        assert_eq!(m.mul_vec(&x).unwrap(), b);
    }

    #[test]
    fn subspace_reduce() {
        let s = Subspace::from_vectors(f5(), 3, vec![vec![1, 1, 0], vec![2, 2, 0]]).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[3, 3, 0]));
        assert!(!s.contains(&[0, 0, 1]));
    }
}
