use serde::{Deserialize, Serialize};

use super::fp::{FpMat, Subspace};
use crate::arith::ntheory::is_prime;
use crate::error::{Error, Result};

/// An object of `MF^{f,[a,b]}_tor` killed by `ℓ`: a decreasing filtration
/// `M = M^a ⊇ … ⊇ M^{b+1} = 0` of `F_ℓ^dim` with maps `φ^i: M^i → M`.
///
/// `phi[i − a]` has one column per echelon basis vector of `M^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FLModule {
    pub ell: u64,
    pub a: i64,
    pub b: i64,
    pub dim: usize,
    fil: Vec<Subspace>,
    phi: Vec<FpMat>,
}

impl FLModule {
    /// Builds and validates an object from `fil[i − a]` for `a ≤ i ≤ b + 1`
    /// and `phi[i − a]` for `a ≤ i ≤ b`.
    pub fn new(ell: u64, (a, b): (i64, i64), dim: usize, fil: Vec<Subspace>, phi: Vec<FpMat>) -> Result<Self> {
        let m = FLModule { ell, a, b, dim, fil, phi };
        m.validate()?;
        Ok(m)
    }

    /// The object with `gr^{w_k}` spanned by `e_k` and `φ^{w_k}(e_k) = iso·e_k`.
    /// Every object is isomorphic to one of this shape.
    pub fn from_graded(ell: u64, (a, b): (i64, i64), weights: &[i64], iso: &FpMat) -> Result<Self> {
        let dim = weights.len();
        if iso.nrows() != dim || iso.ncols() != dim {
            return Err(Error::InvalidObject("iso must be square of size dim".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(a..=b).contains(*w)) {
            return Err(Error::Domain(format!("weight {w} outside [{a}, {b}]")));
        }
        let unit = |k: usize| {
            let mut v = vec![0u64; dim];
            v[k] = 1;
            v
        };
        let mut fil = Vec::new();
        let mut phi = Vec::new();
        for i in a..=b + 1 {
            let vs: Vec<Vec<u64>> = (0..dim).filter(|&k| weights[k] >= i).map(unit).collect();
            let sub = Subspace::span(ell, dim, &vs);
            if i <= b {
                let cols: Vec<Vec<u64>> = sub
                    .basis()
                    .iter()
                    .map(|v| {
                        let k = v.iter().position(|&x| x == 1).expect("unit vector");
                        if weights[k] == i {
                            iso.column(k)
                        } else {
                            vec![0; dim]
                        }
                    })
                    .collect();
                phi.push(FpMat::from_columns(ell, dim, &cols));
            }
            fil.push(sub);
        }
        FLModule::new(ell, (a, b), dim, fil, phi)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidObject(m));
        if !is_prime(self.ell) || self.ell < 3 {
            return bad(format!("ell = {} must be an odd prime", self.ell));
        }
        if self.b < self.a || self.b - self.a > self.ell as i64 - 2 {
            return Err(Error::Inadmissible(format!(
                "[{}, {}] needs 0 <= b - a <= ell - 2 = {}",
                self.a,
                self.b,
                self.ell - 2
            )));
        }
        let len = (self.b - self.a + 1) as usize;
        if self.fil.len() != len + 1 || self.phi.len() != len {
            return bad("filtration or phi list has the wrong length".into());
        }
        if self.fil.iter().any(|s| s.ambient() != self.dim) {
            return bad("filtration step in the wrong ambient space".into());
        }
        if self.fil[0].dim() != self.dim {
            return bad(format!("M^{} is not the whole module", self.a));
        }
        if self.fil[len].dim() != 0 {
            return bad(format!("M^{} is not zero", self.b + 1));
        }
        for k in 0..len {
            if !self.fil[k + 1].is_subspace_of(&self.fil[k]) {
                return bad(format!("filtration not decreasing at {}", self.a + k as i64 + 1));
            }
            let p = &self.phi[k];
            if p.nrows() != self.dim || p.ncols() != self.fil[k].dim() {
                return bad(format!("phi^{} has the wrong shape", self.a + k as i64));
            }
        }
        // φ^i vanishes on M^{i+1}
        for k in 0..len {
            for v in self.fil[k + 1].basis() {
                let img = self.phi_apply(self.a + k as i64, v).expect("v in M^i");
                if img.iter().any(|&x| x != 0) {
                    return bad(format!("phi^{} is nonzero on M^{}", self.a + k as i64, self.a + k as i64 + 1));
                }
            }
        }
        let mut images = Subspace::zero(self.ell, self.dim);
        for p in &self.phi {
            images = images.sum(&Subspace::span(self.ell, self.dim, &p.columns()));
        }
        if images.dim() != self.dim {
            return bad("images of the phi^i do not span the module".into());
        }
        Ok(())
    }

    /// `M^i` for any integer `i`.
    pub fn fil_at(&self, i: i64) -> Subspace {
        if i <= self.a {
            Subspace::full(self.ell, self.dim)
        } else if i > self.b {
            Subspace::zero(self.ell, self.dim)
        } else {
            self.fil[(i - self.a) as usize].clone()
        }
    }

    /// `φ^i(v)` for `v ∈ M^i`; zero below `a` since `φ^i = ℓ^{a−i}φ^a` there.
    pub fn phi_apply(&self, i: i64, v: &[u64]) -> Option<Vec<u64>> {
        if i < self.a {
            return Some(vec![0; self.dim]);
        }
        if i > self.b {
            return v.iter().all(|&x| x == 0).then(|| vec![0; self.dim]);
        }
        let k = (i - self.a) as usize;
        let x = self.fil[k].coords(v)?;
        Some(self.phi[k].apply(&x))
    }

    /// The indices `i` with `M^i ≠ M^{i+1}`.
    pub fn weights(&self) -> Vec<i64> {
        (self.a..=self.b).filter(|&i| self.fil_at(i).dim() != self.fil_at(i + 1).dim()).collect()
    }

    /// `M(s)`: `M(s)^i = M^{i−s}` with the same `φ` data.
    pub fn twist(&self, s: i64) -> FLModule {
        FLModule { a: self.a + s, b: self.b + s, ..self.clone() }
    }

    /// The same object viewed on a wider interval `[a', b'] ⊇ [a, b]`.
    pub fn widen(&self, a: i64, b: i64) -> Result<FLModule> {
        if a > self.a || b < self.b {
            return Err(Error::Domain(format!("[{a}, {b}] does not contain [{}, {}]", self.a, self.b)));
        }
        let fil = (a..=b + 1).map(|i| self.fil_at(i)).collect();
        let phi = (a..=b)
            .map(|i| {
                let s = self.fil_at(i);
                let cols: Vec<Vec<u64>> = s.basis().iter().map(|v| self.phi_apply(i, v).expect("in M^i")).collect();
                FpMat::from_columns(self.ell, self.dim, &cols)
            })
            .collect();
        FLModule::new(self.ell, (a, b), self.dim, fil, phi)
    }

    pub fn direct_sum(&self, other: &FLModule) -> Result<FLModule> {
        if self.ell != other.ell {
            return Err(Error::Domain("direct sum across different primes".into()));
        }
        let (a, b) = (self.a.min(other.a), self.b.max(other.b));
        let d = self.dim + other.dim;
        let embed = |v: &[u64], first: bool| {
            let mut w = vec![0u64; d];
            let off = if first { 0 } else { self.dim };
            w[off..off + v.len()].copy_from_slice(v);
            w
        };
        let mut fil = Vec::new();
        let mut phi = Vec::new();
        for i in a..=b + 1 {
            let mut vs: Vec<Vec<u64>> = self.fil_at(i).basis().iter().map(|v| embed(v, true)).collect();
            vs.extend(other.fil_at(i).basis().iter().map(|v| embed(v, false)));
            let sub = Subspace::span(self.ell, d, &vs);
            if i <= b {
                let cols: Vec<Vec<u64>> = sub
                    .basis()
                    .iter()
                    .map(|v| {
                        let x = self.phi_apply(i, &v[..self.dim]).expect("component in M^i");
                        let y = other.phi_apply(i, &v[self.dim..]).expect("component in M'^i");
                        let mut w = x;
                        w.extend(y);
                        w
                    })
                    .collect();
                phi.push(FpMat::from_columns(self.ell, d, &cols));
            }
            fil.push(sub);
        }
        FLModule::new(self.ell, (a, b), d, fil, phi)
    }

    pub fn to_json(&self) -> FLModuleJson {
        FLModuleJson {
            ell: self.ell,
            interval: (self.a, self.b),
            dim: self.dim,
            filtration: self.fil.iter().map(|s| s.basis().to_vec()).collect(),
            phi: self.phi.iter().map(FpMat::rows).collect(),
        }
    }

    pub fn from_json(j: &FLModuleJson) -> Result<Self> {
        let ell = j.ell;
        let fil = j
            .filtration
            .iter()
            .map(|rows| {
                if rows.iter().any(|r| r.len() != j.dim) {
                    return Err(Error::InvalidObject("filtration vector of wrong length".into()));
                }
                Ok(Subspace::span(ell, j.dim, rows))
            })
            .collect::<Result<Vec<_>>>()?;
        let phi = j
            .phi
            .iter()
            .zip(&fil)
            .map(|(rows, s)| {
                if rows.len() != j.dim || rows.iter().any(|r| r.len() != s.dim()) {
                    return Err(Error::InvalidObject("phi matrix has the wrong shape".into()));
                }
                Ok(FpMat::from_rows(ell, s.dim(), rows))
            })
            .collect::<Result<Vec<_>>>()?;
        FLModule::new(ell, j.interval, j.dim, fil, phi)
    }
}

/// Serialized form; `phi[k]` is given row by row, with columns indexed by
/// the echelon basis of `filtration[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FLModuleJson {
    pub ell: u64,
    pub interval: (i64, i64),
    pub dim: usize,
    pub filtration: Vec<Vec<Vec<u64>>>,
    pub phi: Vec<Vec<Vec<u64>>>,
}

/// `M_n` on `[a, b]`: one-dimensional, weight `n`, `φ^n = id`.
pub fn object_mn(n: i64, a: i64, b: i64, ell: u64) -> Result<FLModule> {
    if !(a..=b).contains(&n) {
        return Err(Error::Domain(format!("weight {n} outside [{a}, {b}]")));
    }
    FLModule::from_graded(ell, (a, b), &[n], &FpMat::identity(ell, 1))
}

/// The unit object `𝟏 = M_0` on `[0, 0]`.
pub fn unit_object(ell: u64) -> FLModule {
    object_mn(0, 0, 0, ell).expect("M_0 on [0, 0] is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m0_on_wide_interval() {
        let m = object_mn(0, -1, 1, 5).unwrap();
        assert_eq!(m.dim, 1);
        assert_eq!(m.fil_at(-1).dim(), 1);
        assert_eq!(m.fil_at(0).dim(), 1);
        assert_eq!(m.fil_at(1).dim(), 0);
        assert_eq!(m.phi_apply(0, &[1]), Some(vec![1]));
        assert_eq!(m.phi_apply(-1, &[1]), Some(vec![0]));
        assert_eq!(m.weights(), vec![0]);
        assert!(object_mn(3, 3, 3, 7).is_ok());
        assert!(object_mn(2, -1, 1, 5).is_err());
    }

    #[test]
    fn twists() {
        let m = object_mn(1, 0, 2, 7).unwrap();
        assert_eq!(m.twist(0), m);
        assert_eq!(m.twist(3).twist(-3), m);
        assert_eq!(m.twist(-1), object_mn(0, -1, 1, 7).unwrap());
    }

    #[test]
    fn invalid_objects_rejected() {
        let ell = 5;
        // φ^0 nonzero on M^1
        let fil = vec![Subspace::full(ell, 1), Subspace::full(ell, 1), Subspace::zero(ell, 1)];
        let phi = vec![FpMat::identity(ell, 1), FpMat::identity(ell, 1)];
        assert!(FLModule::new(ell, (0, 1), 1, fil, phi).is_err());
        // images do not span
        let fil = vec![Subspace::full(ell, 1), Subspace::zero(ell, 1)];
        let phi = vec![FpMat::zeros(ell, 1, 1)];
        assert!(FLModule::new(ell, (0, 0), 1, fil, phi).is_err());
        // interval too long
        assert!(matches!(object_mn(0, 0, 4, 5), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn json_round_trip_and_sums() {
        let m = object_mn(0, -1, 1, 7).unwrap();
        let n = object_mn(-1, -1, 1, 7).unwrap();
        let s = m.direct_sum(&n).unwrap();
        assert_eq!(s.dim, 2);
        assert_eq!(s.weights(), vec![-1, 0]);
        let j = serde_json::to_string(&s.to_json()).unwrap();
        let back: FLModuleJson = serde_json::from_str(&j).unwrap();
        assert_eq!(FLModule::from_json(&back).unwrap(), s);
        assert_eq!(m.widen(-2, 2).unwrap().weights(), vec![0]);
    }
}
