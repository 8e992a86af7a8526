//! Bernoulli numbers, generalized Bernoulli numbers for quadratic
//! characters, and the algebraic value `L_alg(k−1, χ_T)`.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::ntheory::{binomial, factorial, is_fundamental_discriminant, kronecker};
use crate::arith::number::{fmt_rational, q_big, q_frac, q_int, Q};
use crate::error::{Error, Result};
use crate::klingen::HalfIntegralMatrix;

pub use crate::arith::number::{lambda_valuation, valuation};

/// An exact L-value together with a tag naming the function and point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLValue {
    pub value: Q,
    pub label: String,
}

impl RationalLValue {
    pub fn new(value: Q, label: impl Into<String>) -> Self {
        RationalLValue { value, label: label.into() }
    }
}

impl Serialize for RationalLValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RationalLValue", 2)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("value", &fmt_rational(&self.value))?;
        st.end()
    }
}

/// The Kronecker character `a ↦ (D/a)` of a fundamental discriminant `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadraticCharacter {
    discriminant: i64,
}

impl QuadraticCharacter {
    pub fn new(discriminant: i64) -> Result<Self> {
        if !is_fundamental_discriminant(discriminant) {
            return Err(Error::InvalidCharacter(format!("{discriminant} is not a fundamental discriminant")));
        }
        Ok(QuadraticCharacter { discriminant })
    }

    pub fn trivial() -> Self {
        QuadraticCharacter { discriminant: 1 }
    }

    /// `χ_T`, attached to `Q(√−|2T|)`.
    pub fn of_matrix(t: &HalfIntegralMatrix) -> Result<Self> {
        let (delta, _) = t.discriminant_split()?;
        Self::new(-(delta as i64))
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn modulus(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    pub fn is_odd(&self) -> bool {
        self.discriminant < 0
    }

    pub fn value(&self, a: i64) -> i32 {
        if a == 0 {
            return if self.modulus() == 1 { 1 } else { 0 };
        }
        let s = kronecker(self.discriminant, a.unsigned_abs());
        // (D/−1) = sign(D)
        if a < 0 && self.discriminant < 0 {
            -s
        } else {
            s
        }
    }
}

fn bernoulli_cache() -> &'static Mutex<Vec<Q>> {
    static CACHE: OnceLock<Mutex<Vec<Q>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Q::one()]))
}

/// `B_n` with `B_1 = −1/2`, from `Σ_{j<n+1} C(n+1, j) B_j = 0`.
pub fn bernoulli(n: u32) -> Q {
    let mut cache = bernoulli_cache().lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n as usize {
        let m = cache.len() as u32;
        if m > 1 && m % 2 == 1 {
            cache.push(Q::zero());
            continue;
        }
        let s: Q = (0..m).map(|j| q_big(binomial(m + 1, j)) * &cache[j as usize]).sum();
        cache.push(-s / q_int(i64::from(m) + 1));
    }
    cache[n as usize].clone()
}

/// Whether `ℓ` divides the numerator of `B_n`.
pub fn bernoulli_divisible(ell: u64, n: u32) -> bool {
    bernoulli(n).numer().is_multiple_of(&BigInt::from(ell))
}

/// The Bernoulli polynomial `B_n(x) = Σ_j C(n, j) B_j x^{n−j}`.
pub fn bernoulli_poly(n: u32, x: &Q) -> Q {
    let mut acc = Q::zero();
    let mut xp = Q::one();
    for j in (0..=n).rev() {
        acc += q_big(binomial(n, j)) * bernoulli(j) * &xp;
        xp *= x;
    }
    acc
}

/// `B_{n,χ} = D^{n−1} Σ_{a=1}^{D} χ(a) B_n(a/D)`.
pub fn generalized_bernoulli(n: u32, chi: &QuadraticCharacter) -> Q {
    let d = chi.modulus() as i64;
    let mut acc = Q::zero();
    for a in 1..=d {
        let c = chi.value(a);
        if c != 0 {
            acc += q_int(c.into()) * bernoulli_poly(n, &q_frac(a, d));
        }
    }
    acc * q_big(num_traits::pow(BigInt::from(d), n.saturating_sub(1) as usize))
}

/// `L_alg(k−1, χ_T) = Δ(T)^{k−3/2} L(k−1, χ_T) / π^{k−1}`.
///
/// For odd primitive `χ` of conductor `Δ` and odd `n`, the functional
/// equation gives `L(n, χ) = (−1)^{1+(n−1)/2} (√Δ/2) (2π/Δ)^n B_{n,χ}/n!`,
/// so with `n = k−1` the value is `(−1)^{k/2} 2^{k−2} B_{k−1,χ}/(k−1)!`.
pub fn l_alg_quadratic(k: u32, t: &HalfIntegralMatrix) -> Result<RationalLValue> {
    if k < 4 || k % 2 == 1 {
        return Err(Error::InvalidWeight(k.into(), "need even k >= 4"));
    }
    if !t.is_positive_definite() {
        return Err(Error::Domain(format!("{t} is not positive definite")));
    }
    let chi = QuadraticCharacter::of_matrix(t)?;
    let n = k - 1;
    let b = generalized_bernoulli(n, &chi);
    let sign = if (k / 2).is_multiple_of(2) { 1 } else { -1 };
    let value = q_int(sign) * q_big(num_traits::pow(BigInt::from(2), (k - 2) as usize)) * b / q_big(factorial(n));
    Ok(RationalLValue::new(value, format!("L_alg({n}, chi_{})", chi.discriminant())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::number::lambda_valuation;

    #[test]
    fn small_bernoulli() {
        assert_eq!(bernoulli(0), q_int(1));
        assert_eq!(bernoulli(1), q_frac(-1, 2));
        assert_eq!(bernoulli(4), q_frac(-1, 30));
        assert_eq!(bernoulli(12), q_frac(-691, 2730));
        assert_eq!(bernoulli(26), q_frac(8553103, 6));
        assert!(bernoulli(25).is_zero());
    }

    #[test]
    fn divisibility() {
        assert!(!bernoulli_divisible(163, 26));
        assert!(bernoulli_divisible(691, 12));
        assert!(!bernoulli_divisible(5, 4));
    }

    #[test]
    fn generalized_values() {
        let chi4 = QuadraticCharacter::new(-4).unwrap();
        assert_eq!(generalized_bernoulli(1, &chi4), q_frac(-1, 2));
        let chi3 = QuadraticCharacter::new(-3).unwrap();
        assert_eq!(generalized_bernoulli(1, &chi3), q_frac(-1, 3));
        assert_eq!(generalized_bernoulli(3, &chi3), q_frac(2, 3));
        for n in 2..20 {
            assert_eq!(generalized_bernoulli(n, &QuadraticCharacter::trivial()), bernoulli(n));
        }
        assert!(QuadraticCharacter::new(-12).is_err());
    }

    #[test]
    fn character_of_hexagonal_form() {
        let t = HalfIntegralMatrix::new(1, 1, 1);
        let chi = QuadraticCharacter::of_matrix(&t).unwrap();
        assert_eq!(chi.discriminant(), -3);
        assert_eq!(chi.value(2), -1);
        assert_eq!(chi.value(-1), -1);
    }

    #[test]
    fn l_alg_integrality_at_example_primes() {
        let v = l_alg_quadratic(26, &HalfIntegralMatrix::new(1, 1, 1)).unwrap();
        assert!(lambda_valuation(&v.value, 163).unwrap() >= 0);
        assert!(lambda_valuation(&v.value, 187273).unwrap() >= 0);
        assert!(l_alg_quadratic(26, &HalfIntegralMatrix::new(1, 2, 1)).is_err());
        assert!(l_alg_quadratic(25, &HalfIntegralMatrix::new(1, 1, 1)).is_err());
    }
}
