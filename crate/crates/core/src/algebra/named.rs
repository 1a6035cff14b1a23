//! A small library of named algebras with fixed bases.

use super::BracketAlgebra;
use crate::error::{Error, Result};
use crate::modp::PrimePower;

/// Parses `name`, `name(n)` or `name:n`.
fn parse_name(name: &str) -> (String, Option<usize>) {
    let name = name.trim().to_ascii_lowercase();
    if let Some(open) = name.find('(') {
        if let Some(inner) = name[open + 1..].strip_suffix(')') {
            return (name[..open].to_string(), inner.trim().parse().ok());
        }
    }
    if let Some((base, n)) = name.split_once(':') {
        return (base.to_string(), n.trim().parse().ok());
    }
    (name, None)
}

/// Looks up a named algebra over `Z/p^k`.
///
/// Known names: `abelian(n)`, `heisenberg`, `solvable_S`, `sl2`, `so3`,
/// `gln(n)`, `sln(n)`.
pub fn named_algebra(name: &str, p: u64, k: u32) -> Result<BracketAlgebra> {
    let r = PrimePower::new(p, k)?;
    let (base, size) = parse_name(name);
    let need_size = || size.filter(|&n| n >= 1).ok_or_else(|| Error::UnknownAlgebra(name.to_string()));
    match base.as_str() {
        "abelian" => Ok(BracketAlgebra::abelian(r, need_size()?)),
        "heisenberg" | "n" => heisenberg(r),
        "solvable_s" | "s" => solvable_s(r),
        "sl2" => sl2(r),
        "so3" => so3(r),
        "gln" | "gl" => Ok(gln(r, need_size()?)),
        "sln" | "sl" => sln(r, need_size()?),
        _ => Err(Error::UnknownAlgebra(name.to_string())),
    }
}

fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `{x, y, z}` with `[x,y] = z`.
pub fn heisenberg(r: PrimePower) -> Result<BracketAlgebra> {
    BracketAlgebra::from_brackets(r, labels(&["x", "y", "z"]), &[(0, 1, vec![0, 0, 1])])
}

/// `{x, y}` with `[x,y] = x`.
pub fn solvable_s(r: PrimePower) -> Result<BracketAlgebra> {
    BracketAlgebra::from_brackets(r, labels(&["x", "y"]), &[(0, 1, vec![1, 0])])
}

/// `{h, x+, x-}` with `[h,x+] = 2x+`, `[h,x-] = -2x-`, `[x+,x-] = h`.
pub fn sl2(r: PrimePower) -> Result<BracketAlgebra> {
    BracketAlgebra::from_brackets(
        r,
        labels(&["h", "x+", "x-"]),
        &[(0, 1, vec![0, 2, 0]), (0, 2, vec![0, 0, -2]), (1, 2, vec![1, 0, 0])],
    )
}

/// `{X, Y, Z}` with `[X,Y] = -Z`, `[Y,Z] = -X`, `[Z,X] = -Y`.
pub fn so3(r: PrimePower) -> Result<BracketAlgebra> {
    BracketAlgebra::from_brackets(
        r,
        labels(&["X", "Y", "Z"]),
        &[(0, 1, vec![0, 0, -1]), (1, 2, vec![-1, 0, 0]), (2, 0, vec![0, -1, 0])],
    )
}

/// Matrix units `δ_{i,j}` in row-major order; `[A, B] = AB - BA`.
pub fn gln(r: PrimePower, n: usize) -> BracketAlgebra {
    let dim = n * n;
    let names = (0..n)
        .flat_map(|i| (0..n).map(move |j| format!("d{}{}", i + 1, j + 1)))
        .collect();
    let mut alg = BracketAlgebra::zero_with_labels(r, names);
    for a in 0..dim {
        for b in a + 1..dim {
            let (i, j) = (a / n, a % n);
            let (l, m) = (b / n, b % n);
            let mut v = vec![0i64; dim];
            if j == l {
                v[i * n + m] += 1;
            }
            if m == i {
                v[l * n + j] -= 1;
            }
            for (t, &c) in v.iter().enumerate() {
                alg.set_pair(a, b, t, r.reduce(c));
            }
        }
    }
    alg
}

/// Trace-zero matrices with basis: off-diagonal `δ_{i,j}` (row-major), then
/// `h_i = δ_{i,i} - δ_{i+1,i+1}` for `i < n`.
pub fn sln(r: PrimePower, n: usize) -> Result<BracketAlgebra> {
    if n < 2 {
        return Err(Error::UnknownAlgebra(format!("sln({n})")));
    }
    let mut basis: Vec<Vec<i64>> = Vec::new();
    let mut names = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = vec![0; n * n];
                m[i * n + j] = 1;
                basis.push(m);
                names.push(format!("d{}{}", i + 1, j + 1));
            }
        }
    }
    for i in 0..n - 1 {
        let mut m = vec![0; n * n];
        m[i * n + i] = 1;
        m[(i + 1) * n + i + 1] = -1;
        basis.push(m);
        names.push(format!("h{}", i + 1));
    }
    let dim = basis.len();
    let coords = |m: &[i64]| -> Vec<i64> {
        let mut out = Vec::with_capacity(dim);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    out.push(m[i * n + j]);
                }
            }
        }
        let mut acc = 0;
        for i in 0..n - 1 {
            acc += m[i * n + i];
            out.push(acc);
        }
        out
    };
    let mut alg = BracketAlgebra::zero_with_labels(r, names);
    for a in 0..dim {
        for b in a + 1..dim {
            let comm = matrix_commutator(&basis[a], &basis[b], n);
            for (t, c) in coords(&comm).into_iter().enumerate() {
                alg.set_pair(a, b, t, r.reduce(c));
            }
        }
    }
    Ok(alg)
}

fn matrix_commutator(a: &[i64], b: &[i64], n: usize) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                out[i * n + j] += a[i * n + l] * b[l * n + j] - b[i * n + l] * a[l * n + j];
            }
        }
    }
    out
}
