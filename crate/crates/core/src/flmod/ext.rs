use serde::Serialize;

use super::fp::{FpMat, Subspace};
use super::hom::{carrier_to_mat, hom_object, FLHom};
use super::module::{unit_object, FLModule};
use crate::error::{Error, Result};

/// `N ⊕_f M`: carrier `N ⊕ M` (N first), `E^i = N^i ⊕ M^i` and
/// `φ^i(n, m) = (φ^i_N n + f(φ^i_M m), φ^i_M m)`.
#[derive(Debug, Clone)]
pub struct FLExtension {
    pub f: Vec<u64>,
    pub sub: FLModule,
    pub quotient: FLModule,
    pub object: FLModule,
}

pub fn build_extension(f: &[u64], m: &FLModule, n: &FLModule) -> Result<FLExtension> {
    if m.ell != n.ell {
        return Err(Error::Domain("extension across different primes".into()));
    }
    if f.len() != m.dim * n.dim {
        return Err(Error::Domain(format!("f has length {}, expected {}", f.len(), m.dim * n.dim)));
    }
    let ell = m.ell;
    let fm = carrier_to_mat(f, m.dim, n.dim, ell);
    let (a, b) = (m.a.min(n.a), m.b.max(n.b));
    let d = n.dim + m.dim;
    let mut fil = Vec::new();
    let mut phi = Vec::new();
    for i in a..=b + 1 {
        let mut vs: Vec<Vec<u64>> = n.fil_at(i).basis().iter().map(|v| [v.clone(), vec![0; m.dim]].concat()).collect();
        vs.extend(m.fil_at(i).basis().iter().map(|v| [vec![0; n.dim], v.clone()].concat()));
        let sub = Subspace::span(ell, d, &vs);
        if i <= b {
            let cols: Vec<Vec<u64>> = sub
                .basis()
                .iter()
                .map(|v| {
                    let (x, y) = v.split_at(n.dim);
                    let py = m.phi_apply(i, y).expect("component in M^i");
                    let px = n.phi_apply(i, x).expect("component in N^i");
                    let top: Vec<u64> = px.iter().zip(fm.apply(&py)).map(|(s, t)| (s + t) % ell).collect();
                    [top, py].concat()
                })
                .collect();
            phi.push(FpMat::from_columns(ell, d, &cols));
        }
        fil.push(sub);
    }
    let object = FLModule::new(ell, (a, b), d, fil, phi)
        .map_err(|e| Error::InvalidObject(format!("extension failed validation: {e}")))?;
    Ok(FLExtension { f: f.to_vec(), sub: n.clone(), quotient: m.clone(), object })
}

/// Whether the `dim B × dim A` matrix `map` respects filtrations and every `φ^i`.
pub fn is_fl_morphism(src: &FLModule, dst: &FLModule, map: &FpMat) -> bool {
    if map.nrows() != dst.dim || map.ncols() != src.dim {
        return false;
    }
    let (a, b) = (src.a.min(dst.a), src.b.max(dst.b));
    for i in a..=b {
        let target = dst.fil_at(i);
        for v in src.fil_at(i).basis() {
            let w = map.apply(v);
            if !target.contains(&w) {
                return false;
            }
            let lhs = map.apply(&src.phi_apply(i, v).expect("v in A^i"));
            if Some(lhs) != dst.phi_apply(i, &w) {
                return false;
            }
        }
    }
    true
}

const SEARCH_LIMIT: u128 = 1 << 20;

/// Every carrier vector of length `len` over `F_ℓ`, when there are at most
/// `SEARCH_LIMIT` of them.
fn all_vectors(ell: u64, len: usize) -> Option<impl Iterator<Item = Vec<u64>>> {
    let total = (ell as u128).checked_pow(len as u32)?;
    (total <= SEARCH_LIMIT).then(|| {
        (0..total as u64).map(move |mut k| {
            (0..len)
                .map(|_| {
                    let d = k % ell;
                    k /= ell;
                    d
                })
                .collect()
        })
    })
}

/// The map `(n, m) ↦ (n + h m, m)` on `N ⊕ M`, or `(n, m) ↦ (h m, m)` when
/// `keep_sub` is false.
fn block_map(h: &[u64], m_dim: usize, n_dim: usize, ell: u64, keep_sub: bool) -> FpMat {
    let hm = carrier_to_mat(h, m_dim, n_dim, ell);
    let d = n_dim + m_dim;
    let mut e = FpMat::zeros(ell, d, d);
    for r in 0..n_dim {
        if keep_sub {
            e.set(r, r, 1);
        }
        for c in 0..m_dim {
            e.set(r, n_dim + c, hm.get(r, c));
        }
    }
    for c in 0..m_dim {
        e.set(n_dim + c, n_dim + c, 1);
    }
    e
}

/// Searches for an FL endomorphism of the extension of the form
/// `(n, m) ↦ (g m, m)`, an idempotent with kernel `N`; it exists exactly
/// when the extension splits. Reads only the realized object.
/// `None` if the search space is too large.
pub fn split_by_search(ext: &FLExtension) -> Option<bool> {
    let (dm, dn, ell) = (ext.quotient.dim, ext.sub.dim, ext.object.ell);
    let mut found = false;
    for g in all_vectors(ell, dm * dn)? {
        let e = block_map(&g, dm, dn, ell, false);
        debug_assert_eq!(e.mul(&e), e);
        if is_fl_morphism(&ext.object, &ext.object, &e) {
            found = true;
            break;
        }
    }
    Some(found)
}

/// The cohomological test: `f ∈ im(φ^0 − 1)`.
pub fn split_by_cohomology(ext: &FLExtension) -> Result<bool> {
    let h = hom_object(&ext.quotient, &ext.sub)?;
    Ok(h.coboundaries()?.contains(&ext.f))
}

/// An isomorphism `(n, m) ↦ (n + h m, m)` from `N ⊕_f M` to `N ⊕_{f'} M`, if
/// one exists. `None` if the search space is too large.
pub fn find_isomorphism(e1: &FLExtension, e2: &FLExtension) -> Option<Option<Vec<u64>>> {
    let (dm, dn, ell) = (e1.quotient.dim, e1.sub.dim, e1.object.ell);
    if (e2.quotient.dim, e2.sub.dim) != (dm, dn) {
        return Some(None);
    }
    for h in all_vectors(ell, dm * dn)? {
        let iso = block_map(&h, dm, dn, ell, true);
        if is_fl_morphism(&e1.object, &e2.object, &iso) {
            return Some(Some(h));
        }
    }
    Some(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjunctionReport {
    pub ell: u64,
    pub hom_interval: (i64, i64),
    /// `𝟏` and `Hom(M, N)` share an admissible interval containing 0.
    pub hypotheses_hold: bool,
    pub excluded: Option<String>,
    pub ext1_lhs: usize,
    pub ext1_rhs: usize,
    /// `ψ` carries `im(φ − 1)` onto `im(φ' − 1)`.
    pub coboundaries_match: bool,
    pub bijective: bool,
}

/// Compares `Ext¹(M, N)` with `Ext¹(𝟏, Hom(M, N))` through the map sending
/// the class of `f` to the class of `Hom(M, N) ⊕_{a ↦ af} 𝟏`. On carriers it
/// is the identity `Hom(M, N) = Hom(𝟏, Hom(M, N))`.
pub fn adjunction_check(m: &FLModule, n: &FLModule) -> Result<AdjunctionReport> {
    let ell = m.ell;
    let h = match hom_object(m, n) {
        Ok(h) => h,
        Err(Error::Inadmissible(why)) => {
            let (lo, hi) = (n.a - m.b, n.b - m.a);
            return Ok(AdjunctionReport {
                ell,
                hom_interval: (lo, hi),
                hypotheses_hold: false,
                excluded: Some(why),
                ext1_lhs: 0,
                ext1_rhs: 0,
                coboundaries_match: false,
                bijective: false,
            });
        }
        Err(e) => return Err(e),
    };
    let (a, b) = h.interval();
    let (lo, hi) = (a.min(0), b.max(0));
    let hypotheses_hold = hi - lo <= ell as i64 - 2;
    let excluded =
        (!hypotheses_hold).then(|| format!("0 and the Hom weights [{a}, {b}] span more than ell - 2 = {}", ell - 2));
    let lhs = h.ext1_dim()?;
    let rhs_hom: FLHom = hom_object(&unit_object(ell), &h.object)?;
    let rhs = rhs_hom.ext1_dim()?;
    let coboundaries_match = h.coboundaries()? == rhs_hom.coboundaries()?;
    Ok(AdjunctionReport {
        ell,
        hom_interval: (a, b),
        hypotheses_hold,
        excluded,
        ext1_lhs: lhs,
        ext1_rhs: rhs,
        coboundaries_match,
        bijective: coboundaries_match && lhs == rhs,
    })
}
