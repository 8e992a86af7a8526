use num_integer::Roots;
use serde::Serialize;

use super::HalfIntegralMatrix;
use crate::error::{Error, Result};

/// `θ_T^{(v)} = Σ_{j<prec} b(v²j; θ_T) q^j` where `b(N; θ_T)` counts
/// `(a, b) ∈ Z²` with `ma² + rab + nb² = N`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThetaExpansion {
    pub t: HalfIntegralMatrix,
    pub v: u64,
    pub coeffs: Vec<u64>,
}

impl ThetaExpansion {
    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }
}

fn ceil_sqrt(x: u128) -> i64 {
    let s = x.sqrt();
    (if s * s < x { s + 1 } else { s }) as i64
}

pub fn theta_qexp(t: &HalfIntegralMatrix, prec: usize, v: u64) -> Result<ThetaExpansion> {
    if !t.is_positive_definite() {
        return Err(Error::Domain(format!("{t} is not positive definite")));
    }
    if v == 0 {
        return Err(Error::Domain("theta index v must be positive".into()));
    }
    let mut coeffs = vec![0u64; prec];
    if prec == 0 {
        return Ok(ThetaExpansion { t: *t, v, coeffs });
    }
    let step = (v * v) as i64;
    let top = step * (prec as i64 - 1);
    let det = t.det2() as u128;
    // Q(a, b) ≥ det·a²/(4n) and ≥ det·b²/(4m) bound the search box
    let amax = ceil_sqrt((4 * t.n as u128 * top as u128).div_ceil(det));
    let bmax = ceil_sqrt((4 * t.m as u128 * top as u128).div_ceil(det));
    for a in -amax..=amax {
        for b in -bmax..=bmax {
            let q = t.eval(a, b);
            if q <= top && q % step == 0 {
                coeffs[(q / step) as usize] += 1;
            }
        }
    }
    Ok(ThetaExpansion { t: *t, v, coeffs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let hex = HalfIntegralMatrix::new(1, 1, 1);
        assert_eq!(theta_qexp(&hex, 2, 1).unwrap().coeffs, vec![1, 6]);
        let sq = HalfIntegralMatrix::new(1, 0, 1);
        assert_eq!(theta_qexp(&sq, 3, 1).unwrap().coeffs, vec![1, 4, 4]);
        assert_eq!(theta_qexp(&hex, 1, 2).unwrap().coeffs, vec![1]);
        // b(4j) for a² + b²: 1, 4, 4, 0, 4
        assert_eq!(theta_qexp(&sq, 5, 2).unwrap().coeffs, vec![1, 4, 4, 0, 4]);
        assert!(theta_qexp(&HalfIntegralMatrix::new(1, 2, 1), 3, 1).is_err());
    }
}
