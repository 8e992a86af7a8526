use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::ntheory::{gcd, negative_fundamental_split};
use crate::error::{Error, Result};

/// `T = [[m, r/2], [r/2, n]]`, identified with the binary form
/// `m x² + r xy + n y²`.
///
/// Ordered by `(|2T|, m, r, n)`, the order used when writing tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HalfIntegralMatrix {
    pub m: i64,
    pub r: i64,
    pub n: i64,
}

impl HalfIntegralMatrix {
    pub const fn new(m: i64, r: i64, n: i64) -> Self {
        HalfIntegralMatrix { m, r, n }
    }

    /// `diag(e, 0)`.
    pub const fn singular(e: i64) -> Self {
        Self::new(e, 0, 0)
    }

    /// `|2T| = 4mn − r²`.
    pub fn det2(&self) -> i64 {
        4 * self.m * self.n - self.r * self.r
    }

    pub fn content(&self) -> i64 {
        gcd(gcd(self.m, self.r), self.n)
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.m >= 0 && self.n >= 0 && self.det2() >= 0
    }

    pub fn is_positive_definite(&self) -> bool {
        self.m > 0 && self.det2() > 0
    }

    pub fn is_singular(&self) -> bool {
        self.det2() == 0
    }

    /// Value of the quadratic form at `(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.m * x * x + self.r * x * y + self.n * y * y
    }

    /// `Uᵗ T U` for `U = [[a, b], [c, d]]`, i.e. the form `Q(ax + by, cx + dy)`.
    pub fn transform(&self, a: i64, b: i64, c: i64, d: i64) -> Self {
        let m = self.eval(a, c);
        let n = self.eval(b, d);
        let r = 2 * self.m * a * b + self.r * (a * d + b * c) + 2 * self.n * c * d;
        Self::new(m, r, n)
    }

    /// `|2T| = Δ f²` with `−Δ` the discriminant of `Q(√−|2T|)`.
    pub fn discriminant_split(&self) -> Result<(u64, u64)> {
        if !self.is_positive_definite() {
            return Err(Error::Domain(format!("{self} is not positive definite")));
        }
        Ok(negative_fundamental_split(self.det2() as u64))
    }

    /// The `e ≥ 0` with `T ~ diag(e, 0)`; this is the content of `T`.
    pub fn reduce_singular(&self) -> Result<u64> {
        if !self.is_positive_semidefinite() || !self.is_singular() {
            return Err(Error::Domain(format!("{self} is not singular semidefinite")));
        }
        Ok(self.content() as u64)
    }

    /// Canonical representative of the `GL₂(Z)` class: `(e, 0, 0)` when
    /// singular, otherwise the reduced form with `0 ≤ r ≤ m ≤ n`.
    pub fn canonical(&self) -> Result<Self> {
        if !self.is_positive_semidefinite() {
            return Err(Error::Domain(format!("{self} is not positive semidefinite")));
        }
        if self.is_singular() {
            return Ok(Self::singular(self.content()));
        }
        let (mut m, mut r, mut n) = (self.m, self.r, self.n);
        loop {
            if m > n {
                std::mem::swap(&mut m, &mut n);
            }
            if r.abs() <= m {
                break;
            }
            // x ↦ x + t·y with r + 2mt ∈ (−m, m]
            let t = (m - r).div_euclid(2 * m);
            n += m * t * t + r * t;
            r += 2 * m * t;
        }
        Ok(Self::new(m, r.abs(), n))
    }
}

impl Ord for HalfIntegralMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.det2(), self.m, self.r, self.n).cmp(&(other.det2(), other.m, other.r, other.n))
    }
}

impl PartialOrd for HalfIntegralMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for HalfIntegralMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.m, self.r, self.n)
    }
}
