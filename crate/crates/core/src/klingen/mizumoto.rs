use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::HalfIntegralMatrix;
use crate::arith::ntheory::{divisors, factorial, mobius, sigma};
use crate::arith::number::{q_big, q_int, Q};
use crate::error::{Error, Result};
use crate::lvalues::{l_alg_quadratic, QuadraticCharacter, RationalLValue};
use crate::qexp::QExpansion;

/// `M_T(a) = Σ_{d|a} μ(d) χ_T(d) d^{k−2} σ_{2k−3}(a/d)`.
pub fn m_t(a: u64, k: u32, chi: &QuadraticCharacter) -> BigInt {
    divisors(a)
        .into_iter()
        .map(|d| {
            let c = i64::from(mobius(d)) * i64::from(chi.value(d as i64));
            if c == 0 {
                return BigInt::from(0);
            }
            BigInt::from(c) * num_traits::pow(BigInt::from(d), (k - 2) as usize) * sigma(a / d, 2 * k - 3)
        })
        .sum()
}

/// The outer constant `(−1)^{k/2} ((k−1)!/(2k−2)!) 2^{k−1}`.
pub fn outer_constant(k: u32) -> Q {
    let sign = if (k / 2).is_multiple_of(2) { 1 } else { -1 };
    q_int(sign)
        * Q::new(factorial(k - 1), factorial(2 * k - 2))
        * q_big(num_traits::pow(BigInt::from(2), (k - 1) as usize))
}

/// `a(T; E^{2,1}_φ)` for primitive `T > 0`, assembled from
/// `D_alg(k−1, φ, θ_T^{(v)})` values keyed by `v`:
///
/// `c_k · L_alg(k−1, χ_T)/L_alg(2k−2, Sym²φ) · Σ_{m|f} M_T(f/m) Σ_{t|m} μ(t) D_alg(m/t)`.
pub fn mizumoto_coefficient(
    phi: &QExpansion,
    k: u32,
    t: &HalfIntegralMatrix,
    symsq: &RationalLValue,
    dalg: &BTreeMap<u64, Q>,
) -> Result<Q> {
    if phi.weight() != k {
        return Err(Error::InvalidWeight(phi.weight().into(), "phi weight differs from k"));
    }
    if !t.is_positive_definite() || !t.is_primitive() {
        return Err(Error::Domain(format!("{t} must be primitive and positive definite")));
    }
    if symsq.value == Q::from_integer(0.into()) {
        return Err(Error::Domain("symmetric-square value is zero".into()));
    }
    let chi = QuadraticCharacter::of_matrix(t)?;
    let (_, f) = t.discriminant_split()?;
    let lchi = l_alg_quadratic(k, t)?;
    let mut inner_sum = Q::from_integer(0.into());
    for m in divisors(f) {
        let mut s = Q::from_integer(0.into());
        for tt in divisors(m) {
            let mu = mobius(tt);
            if mu == 0 {
                continue;
            }
            let v = m / tt;
            let d = dalg.get(&v).ok_or_else(|| Error::IncompleteInput(format!("D_alg for v = {v} at {t}")))?;
            s += q_int(mu.into()) * d;
        }
        inner_sum += q_big(m_t(f / m, k, &chi)) * s;
    }
    Ok(outer_constant(k) * lchi.value / &symsq.value * inner_sum)
}
