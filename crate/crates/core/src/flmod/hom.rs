use super::fp::{FpMat, Subspace};
use super::module::FLModule;
use crate::error::{Error, Result};

/// A map `M → N` as a `dim N × dim M` matrix flattened row by row.
pub fn carrier_to_mat(f: &[u64], source_dim: usize, target_dim: usize, ell: u64) -> FpMat {
    assert_eq!(f.len(), source_dim * target_dim, "carrier vector length");
    let rows: Vec<Vec<u64>> = if source_dim == 0 {
        vec![Vec::new(); target_dim]
    } else {
        f.chunks(source_dim).map(<[u64]>::to_vec).collect()
    };
    FpMat::from_rows(ell, source_dim, &rows)
}

pub fn mat_to_carrier(m: &FpMat) -> Vec<u64> {
    m.rows().concat()
}

/// `(m, j)` with `m ∈ M^j`.
type Generator = (Vec<u64>, i64);

/// The internal Hom of two objects.
///
/// `object` carries the induced structure on the tightest interval
/// containing its weights.
#[derive(Debug, Clone)]
pub struct FLHom {
    pub source: FLModule,
    pub target: FLModule,
    pub object: FLModule,
    /// `(m_k, j_k)`: `m_k ∈ M^{j_k}` completes `M^{j_k + 1}`, and the
    /// `φ^{j_k}(m_k)` form a basis `U` of `M`.
    gens: Vec<Generator>,
    u: FpMat,
}

impl FLHom {
    pub fn ell(&self) -> u64 {
        self.source.ell
    }

    pub fn carrier_dim(&self) -> usize {
        self.source.dim * self.target.dim
    }

    /// `[a_N − b_M, b_N − a_M]`, the interval the structure a priori lives on.
    pub fn nominal_interval(&self) -> (i64, i64) {
        (self.target.a - self.source.b, self.target.b - self.source.a)
    }

    pub fn interval(&self) -> (i64, i64) {
        (self.object.a, self.object.b)
    }

    pub fn fil(&self, i: i64) -> Subspace {
        hom_fil(&self.source, &self.target, i)
    }

    /// `φ^i(f)` for `f ∈ Hom^i`, from `φ^i(f)(φ^j_M m) = φ^{i+j}_N(f m)`.
    pub fn phi(&self, i: i64, f: &[u64]) -> Result<Vec<u64>> {
        phi_stage(&self.source, &self.target, &self.gens, &self.u, i, f)
    }

    /// `φ^0 − 1` on `Hom^0`, columns indexed by the echelon basis of `Hom^0`.
    pub fn phi_minus_one(&self) -> Result<FpMat> {
        let h0 = self.fil(0);
        let cols = h0
            .basis()
            .iter()
            .map(|f| {
                let p = self.phi(0, f)?;
                Ok(p.iter().zip(f).map(|(x, y)| (x + self.ell() - y) % self.ell()).collect())
            })
            .collect::<Result<Vec<Vec<u64>>>>()?;
        Ok(FpMat::from_columns(self.ell(), self.carrier_dim(), &cols))
    }

    /// `im(φ^0 − 1)` inside the carrier.
    pub fn coboundaries(&self) -> Result<Subspace> {
        let m = self.phi_minus_one()?;
        Ok(Subspace::span(self.ell(), self.carrier_dim(), &m.columns()))
    }

    /// `dim ker(φ − 1) = dim Hom_MF(M, N)`.
    pub fn hom_c_dim(&self) -> Result<usize> {
        let m = self.phi_minus_one()?;
        Ok(m.ncols() - m.rank())
    }

    pub fn ext1_dim(&self) -> Result<usize> {
        Ok(self.carrier_dim() - self.phi_minus_one()?.rank())
    }
}

/// `Hom^i = {f : f(M^j) ⊆ N^{i+j} for all j}`.
fn hom_fil(m: &FLModule, n: &FLModule, i: i64) -> Subspace {
    let (dm, dn) = (m.dim, n.dim);
    let mut rows = Vec::new();
    for j in m.a..=m.b {
        let eqs = n.fil_at(i + j).equations();
        for v in m.fil_at(j).basis() {
            for c in &eqs {
                let mut r = vec![0u64; dm * dn];
                for (a, &ca) in c.iter().enumerate() {
                    for (s, &vs) in v.iter().enumerate() {
                        r[a * dm + s] = ((ca as u128 * vs as u128) % m.ell as u128) as u64;
                    }
                }
                rows.push(r);
            }
        }
    }
    let sol = FpMat::from_rows(m.ell, dm * dn, &rows).nullspace();
    Subspace::span(m.ell, dm * dn, &sol)
}

fn generators(m: &FLModule) -> Result<(Vec<Generator>, FpMat)> {
    let mut gens = Vec::new();
    for j in m.a..=m.b {
        for c in m.fil_at(j).complement_basis(&m.fil_at(j + 1)) {
            gens.push((c, j));
        }
    }
    let cols: Vec<Vec<u64>> = gens.iter().map(|(c, j)| m.phi_apply(*j, c).expect("c in M^j")).collect();
    let u = FpMat::from_columns(m.ell, m.dim, &cols);
    if u.ncols() != m.dim || u.rank() != m.dim {
        return Err(Error::InvalidObject("the phi^j images of the graded pieces do not form a basis".into()));
    }
    Ok((gens, u))
}

fn phi_stage(m: &FLModule, n: &FLModule, gens: &[Generator], u: &FpMat, i: i64, f: &[u64]) -> Result<Vec<u64>> {
    let ell = m.ell;
    let fm = carrier_to_mat(f, m.dim, n.dim, ell);
    let stage = |j: i64, v: &[u64]| -> Result<Vec<u64>> {
        n.phi_apply(i + j, &fm.apply(v)).ok_or_else(|| Error::InvalidObject(format!("f is not in Hom^{i}")))
    };
    let g_on_u: Vec<Vec<u64>> = gens.iter().map(|(c, j)| stage(*j, c)).collect::<Result<_>>()?;
    let g_on_u = FpMat::from_columns(ell, n.dim, &g_on_u);
    // g = (g on U)·U^{-1}, one standard basis vector at a time
    let cols: Vec<Vec<u64>> = (0..m.dim)
        .map(|s| {
            let mut e = vec![0u64; m.dim];
            e[s] = 1;
            g_on_u.apply(&u.solve(&e).expect("U is invertible"))
        })
        .collect();
    let g = FpMat::from_columns(ell, n.dim, &cols);
    for j in m.a..=m.b {
        for v in m.fil_at(j).basis() {
            let lhs = g.apply(&m.phi_apply(j, v).expect("v in M^j"));
            if lhs != stage(j, v)? {
                return Err(Error::InvalidObject(format!(
                    "phi^{i} on Hom is not well defined: relation fails at M^{j}"
                )));
            }
        }
    }
    Ok(mat_to_carrier(&g))
}

pub fn hom_object(m: &FLModule, n: &FLModule) -> Result<FLHom> {
    if m.ell != n.ell {
        return Err(Error::Domain("Hom across different primes".into()));
    }
    let ell = m.ell;
    let d = m.dim * n.dim;
    let (lo, hi) = (n.a - m.b, n.b - m.a);
    let (a, b) = if d == 0 {
        (0, 0)
    } else {
        let a = (lo..=hi).rev().find(|&i| hom_fil(m, n, i).dim() == d).unwrap_or(lo);
        let b = (lo..=hi).rev().find(|&i| hom_fil(m, n, i).dim() > 0).unwrap_or(lo);
        (a, b)
    };
    if b - a > ell as i64 - 2 {
        return Err(Error::Inadmissible(format!("Hom weights span [{a}, {b}], longer than ell - 2 = {}", ell - 2)));
    }
    let (gens, u) = generators(m)?;
    let fil: Vec<Subspace> = (a..=b + 1).map(|i| hom_fil(m, n, i)).collect();
    let phi = (a..=b)
        .map(|i| {
            let cols = fil[(i - a) as usize]
                .basis()
                .iter()
                .map(|f| phi_stage(m, n, &gens, &u, i, f))
                .collect::<Result<Vec<_>>>()?;
            Ok(FpMat::from_columns(ell, d, &cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let object = FLModule::new(ell, (a, b), d, fil, phi)?;
    Ok(FLHom { source: m.clone(), target: n.clone(), object, gens, u })
}

pub fn ext1_dim(m: &FLModule, n: &FLModule) -> Result<usize> {
    let h = hom_object(m, n)?;
    let e = h.ext1_dim()?;
    debug_assert_eq!(e, h.carrier_dim() - h.fil(0).dim() + h.hom_c_dim()?);
    Ok(e)
}
