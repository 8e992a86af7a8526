//! Dense linear algebra over a prime field `F_ℓ`.

use std::fmt;

/// A matrix over `F_ℓ`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMat {
    pub ell: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero");
    // Fermat
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Reduces an integer into `[0, ℓ)`.
pub fn fp(x: i64, ell: u64) -> u64 {
    x.rem_euclid(ell as i64) as u64
}

impl FpMat {
    pub fn zeros(ell: u64, rows: usize, cols: usize) -> Self {
        FpMat { ell, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ell: u64, n: usize) -> Self {
        let mut m = Self::zeros(ell, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(ell: u64, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(ell, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x % ell);
            }
        }
        m
    }

    pub fn from_i64(ell: u64, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rs: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| fp(x, ell)).collect()).collect();
        Self::from_rows(ell, cols, &rs)
    }

    /// Matrix whose columns are the given vectors, in an ambient space of
    /// dimension `rows`.
    pub fn from_columns(ell: u64, rows: usize, cols: &[Vec<u64>]) -> Self {
        let mut m = Self::zeros(ell, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % ell);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.ell;
    }

    pub fn row(&self, i: usize) -> Vec<u64> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u64>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ell, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let p = self.ell;
        let mut out = Self::zeros(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out.get(i, j) + mulmod(a, other.get(k, j), p)) % p;
                    out.data[i * other.cols + j] = v;
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length");
        let p = self.ell;
        (0..self.rows)
            .map(|i| (0..self.cols).fold(0u64, |acc, j| (acc + mulmod(self.get(i, j), v[j], p)) % p))
            .collect()
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        let p = self.ell;
        FpMat {
            ell: p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect(),
        }
    }

    pub fn sub(&self, other: &FpMat) -> FpMat {
        self.add(&other.scale(self.ell - 1))
    }

    pub fn scale(&self, s: u64) -> FpMat {
        let p = self.ell;
        FpMat {
            ell: p,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| mulmod(a, s % p, p)).collect(),
        }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (FpMat, Vec<usize>) {
        let p = self.ell;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = inv_mod(m.get(r, c), p);
            for j in 0..m.cols {
                let v = mulmod(m.get(r, j), inv, p);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && m.get(i, c) != 0 {
                    let f = m.get(i, c);
                    for j in 0..m.cols {
                        let v = (m.get(i, j) + p - mulmod(f, m.get(r, j), p)) % p;
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let p = self.ell;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (i, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - r.get(i, f)) % p;
                }
                v
            })
            .collect()
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let p = self.ell;
        let mut aug = FpMat::zeros(p, self.rows, self.cols + 1);
        for (i, &bi) in b.iter().enumerate().take(self.rows) {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, bi);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(i, self.cols);
        }
        Some(x)
    }
}

impl fmt::Display for FpMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(u64::to_string).collect();
            writeln!(f, "[{}]", r.join(" "))?;
        }
        Ok(())
    }
}

/// A subspace of `F_ℓ^n`, stored as the rows of its reduced echelon basis
/// so that equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ell: u64,
    ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ell: u64, ambient: usize, vectors: &[Vec<u64>]) -> Self {
        let (r, pivots) = FpMat::from_rows(ell, ambient, vectors).rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace { ell, ambient, basis, pivots }
    }

    pub fn zero(ell: u64, ambient: usize) -> Self {
        Self::span(ell, ambient, &[])
    }

    pub fn full(ell: u64, ambient: usize) -> Self {
        Self::span(ell, ambient, &FpMat::identity(ell, ambient).rows())
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

    /// Coordinates of `v` in the echelon basis, or `None` if `v ∉ self`.
    pub fn coords(&self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.ell;
        let x: Vec<u64> = self.pivots.iter().map(|&c| v[c] % p).collect();
        let mut rest: Vec<u64> = v.iter().map(|&a| a % p).collect();
        for (k, b) in self.basis.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                rest[j] = (rest[j] + p - mulmod(x[k], bj, p)) % p;
            }
        }
        rest.iter().all(|&a| a == 0).then_some(x)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.coords(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.ell, self.ambient, &v)
    }

    /// Rows `c` with `c·v = 0 ⇔ v ∈ self`.
    pub fn equations(&self) -> Vec<Vec<u64>> {
        FpMat::from_rows(self.ell, self.ambient, &self.basis).nullspace()
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        let mut eq = self.equations();
        eq.extend(other.equations());
        let sol = FpMat::from_rows(self.ell, self.ambient, &eq).nullspace();
        Subspace::span(self.ell, self.ambient, &sol)
    }

    /// Basis vectors extending a basis of `sub ⊆ self` to one of `self`.
    pub fn complement_basis(&self, sub: &Subspace) -> Vec<Vec<u64>> {
        let mut acc = sub.clone();
        let mut out = Vec::new();
        for b in &self.basis {
            if !acc.contains(b) {
                out.push(b.clone());
                acc = acc.sum(&Subspace::span(self.ell, self.ambient, std::slice::from_ref(b)));
            }
        }
        out
    }
}
