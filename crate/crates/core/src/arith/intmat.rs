//! Dense integer matrices: fraction-free determinant, division-free
//! characteristic polynomial, Hermite and Smith normal forms.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<BigInt>]) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r, "ragged columns");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        let d = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -d
        } else {
            d
        }
    }

    /// `det(x·I − self)` by the Berkowitz algorithm (no divisions).
    pub fn charpoly(&self) -> IntPoly {
        assert!(self.is_square(), "charpoly of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return IntPoly::constant(BigInt::one());
        }
        // v holds coefficients high degree first
        let mut v = vec![BigInt::one(), -self[(0, 0)].clone()];
        for r in 1..n {
            let a = &self[(r, r)];
            // t = [1, −a, −R C, −R A C, …, −R A^{r−1} C]
            let mut t = Vec::with_capacity(r + 2);
            t.push(BigInt::one());
            t.push(-a.clone());
            let mut w: Vec<BigInt> = (0..r).map(|i| self[(i, r)].clone()).collect();
            for _ in 0..r {
                let rc: BigInt = (0..r).map(|j| &self[(r, j)] * &w[j]).sum();
                t.push(-rc);
                w = (0..r).map(|i| (0..r).map(|j| &self[(i, j)] * &w[j]).sum()).collect();
            }
            let mut nv = vec![BigInt::zero(); r + 2];
            for (i, slot) in nv.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if i >= j {
                        *slot += &t[i - j] * vj;
                    }
                }
            }
            v = nv;
        }
        v.reverse();
        IntPoly::new(v)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a ← row_a − q·row_b
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(b, j)] * q;
            self[(a, j)] -= v;
        }
    }

    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, b)] * q;
            self[(i, a)] -= v;
        }
    }

    /// Row-style Hermite normal form: nonzero rows of the echelon form, with
    /// positive pivots and entries above each pivot reduced into `[0, pivot)`.
    /// The rows span the same Z-lattice as the rows of `self`.
    pub fn row_hnf(&self) -> IntMatrix {
        let mut a = self.clone();
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..a.cols {
            if pivot_row == a.rows {
                break;
            }
            // Euclid on the column below pivot_row
            loop {
                let nz: Vec<usize> = (pivot_row..a.rows).filter(|&i| !a[(i, col)].is_zero()).collect();
                if nz.is_empty() {
                    break;
                }
                let best = *nz.iter().min_by_key(|&&i| a[(i, col)].abs()).unwrap();
                a.swap_rows(pivot_row, best);
                let mut done = true;
                for i in pivot_row + 1..a.rows {
                    if !a[(i, col)].is_zero() {
                        let q = a[(i, col)].div_floor(&a[(pivot_row, col)]);
                        a.row_sub(i, pivot_row, &q);
                        if !a[(i, col)].is_zero() {
                            done = false;
                        }
                    }
                }
                if done {
                    break;
                }
            }
            if a[(pivot_row, col)].is_zero() {
                continue;
            }
            if a[(pivot_row, col)].is_negative() {
                for j in 0..a.cols {
                    let v = -a[(pivot_row, j)].clone();
                    a[(pivot_row, j)] = v;
                }
            }
            for i in 0..pivot_row {
                let q = a[(i, col)].div_floor(&a[(pivot_row, col)]);
                if !q.is_zero() {
                    a.row_sub(i, pivot_row, &q);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rows: Vec<Vec<BigInt>> = (0..pivot_row).map(|i| a.row(i)).collect();
        if rows.is_empty() {
            IntMatrix::zeros(0, self.cols)
        } else {
            IntMatrix::from_rows(rows)
        }
    }

    pub fn rank(&self) -> usize {
        self.row_hnf().nrows()
    }

    /// Nonzero Smith invariants `d_1 | d_2 | …`, all positive.
    pub fn smith_invariants(&self) -> Vec<BigInt> {
        let mut a = self.clone();
        let n = a.rows.min(a.cols);
        let mut out = Vec::new();
        for t in 0..n {
            // pivot: smallest nonzero entry in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..a.rows {
                for j in t..a.cols {
                    if !a[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap_rows(t, pi);
            a.swap_cols(t, pj);
            loop {
                let mut changed = false;
                for i in t + 1..a.rows {
                    if !a[(i, t)].is_zero() {
                        let q = a[(i, t)].div_floor(&a[(t, t)]);
                        a.row_sub(i, t, &q);
                        if !a[(i, t)].is_zero() {
                            a.swap_rows(t, i);
                            changed = true;
                        }
                    }
                }
                for j in t + 1..a.cols {
                    if !a[(t, j)].is_zero() {
                        let q = a[(t, j)].div_floor(&a[(t, t)]);
                        a.col_sub(j, t, &q);
                        if !a[(t, j)].is_zero() {
                            a.swap_cols(t, j);
                            changed = true;
                        }
                    }
                }
                if changed {
                    continue;
                }
                // divisibility: pivot must divide the whole trailing block
                let bad = (t + 1..a.rows)
                    .flat_map(|i| (t + 1..a.cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[(i, j)].is_multiple_of(&a[(t, t)]));
                match bad {
                    Some((i, _)) => {
                        // fold row i into row t and repeat
                        for j in 0..a.cols {
                            let v = a[(i, j)].clone();
                            a[(t, j)] += v;
                        }
                    }
                    None => break,
                }
            }
            out.push(a[(t, t)].abs());
        }
        out
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: Self) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * &rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
