//! Dense univariate polynomials over an exact coefficient ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::intmat::IntMatrix;

/// Coefficients stored low degree first; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

pub type IntPoly = Poly<BigInt>;

impl<T: Clone + Zero + One + PartialEq> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T
    where
        T: Mul<Output = T> + Add<Output = T>,
    {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// `p(x + t)`.
    pub fn shift(&self, t: &T) -> Self
    where
        T: Mul<Output = T> + Add<Output = T>,
    {
        let lin = Poly::new(vec![t.clone(), T::one()]);
        self.coeffs.iter().rev().fold(Poly::zero(), |acc, c| &(&acc * &lin) + &Poly::constant(c.clone()))
    }

    pub fn map<U: Clone + Zero + One + PartialEq>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Clone + Zero + One + PartialEq + Add<Output = T>> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Clone + Zero + One + PartialEq + Sub<Output = T>> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: Self) -> Poly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Clone + Zero + One + PartialEq + Neg<Output = T>> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Clone + Zero + One + PartialEq + Mul<Output = T> + Add<Output = T>> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: Self) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<T: Clone + Zero + One + PartialEq + fmt::Display + PartialOrd + Neg<Output = T>> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < T::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
                if i > 0 {
                    f.write_str("*")?;
                }
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl IntPoly {
    pub fn from_i64(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Resultant `Res(self, other)` as the determinant of the Sylvester matrix.
    pub fn resultant(&self, other: &IntPoly) -> BigInt {
        let (m, n) = match (self.degree(), other.degree()) {
            (Some(m), Some(n)) => (m, n),
            _ => return BigInt::zero(),
        };
        if m == 0 && n == 0 {
            return BigInt::one();
        }
        let size = m + n;
        let mut rows = vec![vec![BigInt::zero(); size]; size];
        // rows 0..n hold shifted copies of self, rows n..n+m of other (highest degree first)
        for r in 0..n {
            for (j, c) in self.coeffs.iter().rev().enumerate() {
                rows[r][r + j] = c.clone();
            }
        }
        for r in 0..m {
            for (j, c) in other.coeffs.iter().rev().enumerate() {
                rows[n + r][r + j] = c.clone();
            }
        }
        IntMatrix::from_rows(rows).determinant()
    }

    /// Squarefree test via `gcd(p, p') = 1` over `Q`.
    pub fn is_squarefree(&self) -> bool {
        let Some(d) = self.degree() else { return false };
        if d == 0 {
            return true;
        }
        let deriv = Poly::new((1..=d).map(|i| self.coeffs[i].clone() * BigInt::from(i)).collect::<Vec<_>>());
        !self.resultant(&deriv).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_shift() {
        let p = IntPoly::from_i64(&[1, 2, 1]);
        let q = IntPoly::from_i64(&[1, 1]);
        assert_eq!(&q * &q, p);
        assert_eq!(IntPoly::x().shift(&BigInt::from(1)), q);
        assert_eq!(p.shift(&BigInt::from(-1)), IntPoly::from_i64(&[0, 0, 1]));
        assert_eq!(p.eval(&BigInt::from(3)), BigInt::from(16));
        assert_eq!((&p - &p).degree(), None);
    }

    #[test]
    fn resultant_matches_evaluation_for_linear_factor() {
        // Res(f, a − x) = f(a) for monic f of odd or even degree alike
        let f = IntPoly::from_i64(&[-6, 11, -6, 1]);
        for a in -5i64..5 {
            let g = IntPoly::from_i64(&[a, -1]);
            assert_eq!(f.resultant(&g), f.eval(&BigInt::from(a)));
        }
    }

    #[test]
    fn squarefree() {
        assert!(IntPoly::from_i64(&[-2, 0, 1]).is_squarefree());
        assert!(!IntPoly::from_i64(&[1, 2, 1]).is_squarefree());
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[48, 1]).to_string(), "x + 48");
        assert_eq!(IntPoly::from_i64(&[1, -2, 1]).to_string(), "x^2 - 2*x + 1");
    }
}
