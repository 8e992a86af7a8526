//! Level-one elliptic modular forms as truncated q-expansions.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::ntheory::{big_pow, is_prime, sigma};
use crate::arith::number::{fmt_rational, q_big, q_int, Q};
use crate::arith::{IntMatrix, IntPoly};
use crate::error::{Error, Result};
use crate::lvalues::bernoulli;

/// `Σ_{n<prec} a(n) qⁿ` of a fixed weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QExpansion {
    weight: u32,
    coeffs: Vec<Q>,
}

impl QExpansion {
    pub fn new(weight: u32, coeffs: Vec<Q>) -> Self {
        QExpansion { weight, coeffs }
    }

    pub fn from_i64(weight: u32, coeffs: &[i64]) -> Self {
        Self::new(weight, coeffs.iter().map(|&c| q_int(c)).collect())
    }

    pub fn one(prec: usize) -> Self {
        let mut c = vec![Q::zero(); prec];
        if prec > 0 {
            c[0] = Q::one();
        }
        Self::new(0, c)
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// `a(n)`, or `None` beyond the stored precision.
    pub fn coeff(&self, n: usize) -> Option<&Q> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::new(self.weight, self.coeffs.iter().take(prec).cloned().collect())
    }

    pub fn scale(&self, s: &Q) -> Self {
        Self::new(self.weight, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Sum of two forms of equal weight, truncated to the smaller precision.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::InvalidWeight(other.weight.into(), "addition needs equal weights"));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(Self::new(self.weight, coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Q::one()))
    }

    /// Product; weights add and precision is the minimum of the two.
    pub fn mul(&self, other: &Self) -> Self {
        let prec = self.prec().min(other.prec());
        let mut out = vec![Q::zero(); prec];
        for (i, a) in self.coeffs.iter().take(prec).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(prec - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(self.weight + other.weight, out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.prec());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `true` when every stored coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for QExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &Q::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let m = fmt_rational(&mag);
            match n {
                0 => f.write_str(&m)?,
                _ => {
                    if !mag.is_one() {
                        f.write_str(&m)?;
                    }
                    f.write_str("q")?;
                    if n > 1 {
                        write!(f, "^{n}")?;
                    }
                }
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(q^{})", self.prec())
    }
}

impl Serialize for QExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("QExpansion", 3)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("prec", &self.prec())?;
        let cs: Vec<String> = self.coeffs.iter().map(fmt_rational).collect();
        st.serialize_field("coeffs", &cs)?;
        st.end()
    }
}

fn check_even(k: u32) -> Result<()> {
    if k % 2 == 1 {
        Err(Error::InvalidWeight(k.into(), "weight must be even"))
    } else {
        Ok(())
    }
}

/// `E_k = 1 − (2k/B_k) Σ σ_{k−1}(n) qⁿ`.
pub fn eisenstein_qexp(k: u32, prec: usize) -> Result<QExpansion> {
    check_even(k)?;
    if k < 4 {
        return Err(Error::InvalidWeight(k.into(), "Eisenstein series need k >= 4"));
    }
    let c = -q_int(2 * i64::from(k)) / bernoulli(k);
    let coeffs = (0..prec).map(|n| if n == 0 { Q::one() } else { &c * q_big(sigma(n as u64, k - 1)) }).collect();
    Ok(QExpansion::new(k, coeffs))
}

/// `Δ = (E_4³ − E_6²)/1728`.
pub fn delta_qexp(prec: usize) -> Result<QExpansion> {
    if prec < 2 {
        return Err(Error::Precision { needed: 2, have: prec });
    }
    let e4 = eisenstein_qexp(4, prec)?;
    let e6 = eisenstein_qexp(6, prec)?;
    let d = e4.pow(3).sub(&e6.pow(2))?;
    Ok(d.scale(&Q::new(BigInt::one(), BigInt::from(1728))))
}

/// `dim M_k(SL₂(Z))` or `dim S_k(SL₂(Z))`.
pub fn space_dimension(k: u32, cuspidal: bool) -> Result<usize> {
    check_even(k)?;
    let full = match k {
        0 => 1,
        2 => 0,
        _ if k % 12 == 2 => (k / 12) as usize,
        _ => (k / 12) as usize + 1,
    };
    Ok(if cuspidal { full.saturating_sub(1) } else { full })
}

/// Echelon basis of `M_k` or `S_k`: `a(f_i, p_j) = δ_ij` at the pivot
/// positions `p_j` (`0, 1, …` for `M_k`, `1, 2, …` for `S_k`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularSpaceBasis {
    pub weight: u32,
    pub cuspidal: bool,
    pub basis: Vec<QExpansion>,
}

impl ModularSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn prec(&self) -> usize {
        self.basis.first().map_or(usize::MAX, QExpansion::prec)
    }

    pub fn pivots(&self) -> Vec<usize> {
        let off = usize::from(self.cuspidal);
        (0..self.dim()).map(|i| i + off).collect()
    }
}

impl Serialize for ModularSpaceBasis {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ModularSpaceBasis", 4)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("cuspidal", &self.cuspidal)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("basis", &self.basis)?;
        st.end()
    }
}

pub fn victor_miller_basis(k: u32, prec: usize, cuspidal: bool) -> Result<ModularSpaceBasis> {
    let d = space_dimension(k, false)?;
    let dim = space_dimension(k, cuspidal)?;
    if prec <= dim + 1 {
        return Err(Error::Precision { needed: dim + 2, have: prec });
    }
    if d == 0 {
        return Ok(ModularSpaceBasis { weight: k, cuspidal, basis: Vec::new() });
    }
    let e4 = eisenstein_qexp(4, prec)?;
    let e6 = eisenstein_qexp(6, prec)?;
    let delta = delta_qexp(prec)?;
    // f_j = Δ^j E_4^a E_6^b with 4a + 6b = k − 12j; f_j = q^j + O(q^{j+1})
    let mut fs: Vec<QExpansion> = (0..d)
        .map(|j| {
            let (a, b) = split_weight(k - 12 * j as u32).expect("k − 12j is never 2");
            delta.pow(j as u32).mul(&e4.pow(a)).mul(&e6.pow(b))
        })
        .collect();
    for i in (0..d).rev() {
        for j in 0..i {
            let c = fs[j].coeffs[i].clone();
            if !c.is_zero() {
                let sub = fs[i].scale(&c);
                fs[j] = fs[j].sub(&sub)?;
            }
        }
    }
    let basis = if cuspidal { fs.split_off(1) } else { fs };
    Ok(ModularSpaceBasis { weight: k, cuspidal, basis })
}

/// `(a, b)` with `4a + 6b = w`, preferring the largest `a`.
fn split_weight(w: u32) -> Option<(u32, u32)> {
    (0..=w / 6).find(|b| (w - 6 * b).is_multiple_of(4)).map(|b| ((w - 6 * b) / 4, b))
}

/// Default working precision for Hecke computations at `p`.
pub fn default_hecke_prec(k: u32, p: u64, cuspidal: bool) -> Result<usize> {
    Ok(p as usize * (space_dimension(k, cuspidal)? + 2))
}

/// Matrix of `T(p)` on an echelon basis; column `i` holds the coordinates
/// of `T(p) f_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeckeMatrix {
    pub weight: u32,
    pub p: u64,
    pub entries: IntMatrix,
}

/// `a(n; T_p f) = a(np; f) + p^{k−1} a(n/p; f)`.
pub fn hecke_image(f: &QExpansion, k: u32, p: u64, n: usize) -> Option<Q> {
    let pu = p as usize;
    let mut v = f.coeff(n * pu)?.clone();
    if n.is_multiple_of(pu) {
        v += q_big(big_pow(p, k - 1)) * f.coeff(n / pu)?;
    }
    Some(v)
}

pub fn hecke_matrix(k: u32, p: u64, basis: &ModularSpaceBasis) -> Result<HeckeMatrix> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let dim = basis.dim();
    let needed = p as usize * (dim + 1);
    if dim > 0 && basis.prec() < needed {
        return Err(Error::Precision { needed, have: basis.prec() });
    }
    let pivots = basis.pivots();
    let mut m = IntMatrix::zeros(dim, dim);
    for (i, f) in basis.basis.iter().enumerate() {
        for (j, &pv) in pivots.iter().enumerate() {
            let v = hecke_image(f, k, p, pv).ok_or(Error::Precision { needed, have: f.prec() })?;
            if !v.is_integer() {
                return Err(Error::IntegralityViolation(format!("T({p}) entry ({j}, {i})")));
            }
            m[(j, i)] = v.to_integer();
        }
    }
    Ok(HeckeMatrix { weight: k, p, entries: m })
}

/// Monic `det(x·I − M)`.
pub fn charpoly(m: &HeckeMatrix) -> IntPoly {
    m.entries.charpoly()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eisenstein_prefixes() {
        assert_eq!(eisenstein_qexp(4, 3).unwrap(), QExpansion::from_i64(4, &[1, 240, 2160]));
        assert_eq!(eisenstein_qexp(6, 2).unwrap(), QExpansion::from_i64(6, &[1, -504]));
        assert_eq!(eisenstein_qexp(10, 1).unwrap(), QExpansion::from_i64(10, &[1]));
        assert!(eisenstein_qexp(2, 3).is_err());
        assert!(eisenstein_qexp(5, 3).is_err());
    }

    #[test]
    fn delta_prefix() {
        assert_eq!(delta_qexp(4).unwrap(), QExpansion::from_i64(12, &[0, 1, -24, 252]));
        assert_eq!(delta_qexp(2).unwrap(), QExpansion::from_i64(12, &[0, 1]));
        assert!(delta_qexp(1).is_err());
    }

    #[test]
    fn dimensions() {
        let m: Vec<usize> = (0..=50).step_by(2).map(|k| space_dimension(k, false).unwrap()).collect();
        assert_eq!(&m[..8], &[1, 0, 1, 1, 1, 1, 2, 1]);
        assert_eq!(space_dimension(26, true).unwrap(), 1);
        assert_eq!(space_dimension(50, true).unwrap(), 3);
        assert_eq!(space_dimension(2, false).unwrap(), 0);
        assert_eq!(space_dimension(0, true).unwrap(), 0);
        assert!(space_dimension(13, false).is_err());
    }

    #[test]
    fn weight_26_form() {
        let b = victor_miller_basis(26, 10, true).unwrap();
        assert_eq!(b.dim(), 1);
        let f = &b.basis[0];
        assert_eq!(f.coeffs()[..5], QExpansion::from_i64(26, &[0, 1, -48, -195804, -33552128]).coeffs()[..]);
        assert!(f.is_integral());
    }

    #[test]
    fn small_bases() {
        let b = victor_miller_basis(12, 5, true).unwrap();
        assert_eq!(b.basis, vec![delta_qexp(5).unwrap()]);
        let b = victor_miller_basis(4, 5, false).unwrap();
        assert_eq!(b.basis, vec![eisenstein_qexp(4, 5).unwrap()]);
        assert!(victor_miller_basis(2, 5, false).unwrap().basis.is_empty());
        assert!(victor_miller_basis(50, 4, true).is_err());
    }

    #[test]
    fn hecke_small() {
        let b = victor_miller_basis(26, 10, true).unwrap();
        let t = hecke_matrix(26, 2, &b).unwrap();
        assert_eq!(t.entries, IntMatrix::from_i64(&[&[-48]]));
        assert_eq!(charpoly(&t), IntPoly::from_i64(&[48, 1]));
        let b = victor_miller_basis(12, 6, true).unwrap();
        assert_eq!(hecke_matrix(12, 2, &b).unwrap().entries, IntMatrix::from_i64(&[&[-24]]));
        assert!(hecke_matrix(12, 4, &b).is_err());
        assert!(hecke_matrix(12, 5, &b).is_err());
    }

    #[test]
    fn display_form() {
        assert_eq!(delta_qexp(4).unwrap().to_string(), "q - 24q^2 + 252q^3 + O(q^4)");
    }
}
