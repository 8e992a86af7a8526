//! The Hecke algebra as a lattice in `∏_g Z_(ℓ)`, its Eisenstein ideal,
//! and the principality criterion comparing `#T/J` with congruence depths.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::number::{int_valuation, Valuation, Q};
use crate::arith::IntMatrix;
use crate::congruence::{EigenSystem, Operator};
use crate::error::{Error, Result};

/// A full-rank sublattice of `Z^ncomp`, read `ℓ`-locally. Columns of `gens`
/// generate it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OLattice {
    pub ell: u64,
    pub residue_degree: u32,
    gens: IntMatrix,
}

impl OLattice {
    pub fn new(ell: u64, gens: IntMatrix) -> Result<Self> {
        let lat = OLattice { ell, residue_degree: 1, gens };
        if lat.gens.rank() != lat.ncomp() {
            return Err(Error::Degenerate(format!(
                "generators have rank {} in {} components",
                lat.gens.rank(),
                lat.ncomp()
            )));
        }
        Ok(lat)
    }

    pub fn with_residue_degree(mut self, d: u32) -> Self {
        self.residue_degree = d;
        self
    }

    pub fn ncomp(&self) -> usize {
        self.gens.nrows()
    }

    pub fn gens(&self) -> &IntMatrix {
        &self.gens
    }

    /// A `Z`-basis, as the rows of a Hermite normal form.
    pub fn basis(&self) -> Vec<Vec<BigInt>> {
        let h = self.gens.transpose().row_hnf();
        (0..h.nrows()).map(|i| h.row(i)).collect()
    }

    /// `val_ℓ [Z^ncomp : L]` via Smith invariants.
    pub fn ell_index(&self) -> i64 {
        sum_valuations(&self.gens.smith_invariants(), self.ell)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let mut cols = self.gens.columns();
        let before = self.gens.smith_invariants();
        cols.push(v.to_vec());
        IntMatrix::from_columns(&cols).smith_invariants() == before
    }
}

fn sum_valuations(invariants: &[BigInt], ell: u64) -> i64 {
    invariants.iter().map(|d| int_valuation(d, ell).finite().expect("Smith invariants are nonzero")).sum()
}

fn hadamard(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| x * y).collect()
}

/// Clears denominators prime to `ℓ`; such scalars are units locally.
fn local_integral(v: &[Q], ell: u64) -> Result<Vec<BigInt>> {
    let l = BigInt::from(ell);
    let mut den = BigInt::one();
    for q in v {
        if q.denom().is_multiple_of(&l) {
            return Err(Error::IntegralityViolation(format!("eigenvalue {q} is not {ell}-integral")));
        }
        den = den.lcm(q.denom());
    }
    Ok(v.iter().map(|q| (q * Q::from_integer(den.clone())).to_integer()).collect())
}

fn eigenvalue_vector(systems: &[EigenSystem], op: &Operator) -> Result<Vec<Q>> {
    systems
        .iter()
        .map(|s| {
            s.rational(op).cloned().ok_or_else(|| Error::IncompleteInput(format!("{} has no rational {op}", s.label)))
        })
        .collect()
}

/// The lattice spanned by `1` and all products of at most `ncomp − 1`
/// eigenvalue vectors `(λ_g(T))_g`, `T` in `ops`.
pub fn lattice_from_eigensystems(systems: &[EigenSystem], ops: &[Operator], ell: u64) -> Result<OLattice> {
    if systems.is_empty() {
        return Err(Error::Degenerate("no eigensystems".into()));
    }
    let n = systems.len();
    let tvecs =
        ops.iter().map(|op| local_integral(&eigenvalue_vector(systems, op)?, ell)).collect::<Result<Vec<_>>>()?;
    let mut gens = vec![vec![BigInt::one(); n]];
    let mut layer = gens.clone();
    for _ in 1..n {
        let mut next = Vec::new();
        for m in &layer {
            for t in &tvecs {
                next.push(hadamard(m, t));
            }
        }
        // keep the generating set small: a basis of the span so far
        gens.extend(next.iter().cloned());
        let h = IntMatrix::from_rows(gens.clone()).row_hnf();
        gens = (0..h.nrows()).map(|i| h.row(i)).collect();
        layer = next;
    }
    OLattice::new(ell, IntMatrix::from_columns(&gens))
}

/// A lattice `T` together with generators of an ideal `J ⊆ T` and the
/// component depths `m_g = val_ℓ(J_g)`.
#[derive(Debug, Clone)]
pub struct EisensteinIdealData {
    pub lattice: OLattice,
    pub ideal_gens: Vec<Vec<BigInt>>,
    pub depths: Vec<Valuation>,
    pub operators: Vec<Operator>,
}

impl EisensteinIdealData {
    /// Depths are read off the projections `J_g = ℓ^{m_g} Z_(ℓ)`.
    pub fn new(lattice: OLattice, ideal_gens: Vec<Vec<BigInt>>) -> Result<Self> {
        let n = lattice.ncomp();
        if ideal_gens.iter().any(|g| g.len() != n) {
            return Err(Error::Degenerate("ideal generator of wrong length".into()));
        }
        for g in &ideal_gens {
            if !lattice.contains(g) {
                return Err(Error::Degenerate("ideal generator outside the lattice".into()));
            }
        }
        let depths = (0..n)
            .map(|c| ideal_gens.iter().map(|g| int_valuation(&g[c], lattice.ell)).min().unwrap_or(Valuation::Infinite))
            .collect();
        Ok(EisensteinIdealData { lattice, ideal_gens, depths, operators: Vec::new() })
    }

    /// Generators of `J` as a lattice: all `x ⊙ b` with `x` an ideal
    /// generator and `b` in a basis of `T`.
    pub fn ideal_lattice_gens(&self) -> Vec<Vec<BigInt>> {
        let basis = self.lattice.basis();
        let mut out = Vec::new();
        for g in &self.ideal_gens {
            for b in &basis {
                let v = hadamard(g, b);
                if v.iter().any(|x| !x.is_zero()) {
                    out.push(v);
                }
            }
        }
        out
    }
}

/// `J` generated by `T − λ_E(T)` for `T` in `ops`, inside the lattice of the
/// cusp systems.
pub fn eisenstein_ideal(
    systems: &[EigenSystem],
    eisenstein: &EigenSystem,
    ops: &[Operator],
    ell: u64,
) -> Result<EisensteinIdealData> {
    let lattice = lattice_from_eigensystems(systems, ops, ell)?;
    let mut gens = Vec::new();
    for op in ops {
        let lam_e = eisenstein
            .rational(op)
            .ok_or_else(|| Error::IncompleteInput(format!("{} has no rational {op}", eisenstein.label)))?;
        let v: Vec<Q> = eigenvalue_vector(systems, op)?.into_iter().map(|x| x - lam_e).collect();
        gens.push(local_integral(&v, ell)?);
    }
    let mut data = EisensteinIdealData::new(lattice, gens)?;
    data.operators = ops.to_vec();
    for (s, d) in systems.iter().zip(&data.depths) {
        if *d == Valuation::Finite(0) {
            return Err(Error::Domain(format!("{} is not congruent to the Eisenstein system", s.label)));
        }
        if d.is_infinite() {
            return Err(Error::Degenerate(format!("{} equals the Eisenstein system on {ops:?}", s.label)));
        }
    }
    Ok(data)
}

/// `val_ℓ [T : J]`; `Infinite` when `J` has lower rank (e.g. `J = 0`).
pub fn ideal_index(data: &EisensteinIdealData) -> Valuation {
    let gens = data.ideal_lattice_gens();
    if gens.is_empty() {
        return Valuation::Infinite;
    }
    let m = IntMatrix::from_columns(&gens);
    if m.rank() < data.lattice.ncomp() {
        return Valuation::Infinite;
    }
    let ell = data.lattice.ell;
    Valuation::Finite(sum_valuations(&m.smith_invariants(), ell) - data.lattice.ell_index())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrincipalityReport {
    pub lhs: Valuation,
    pub rhs: i64,
    pub certified: bool,
    /// `#T/J = #F` together with `Σ m_g > 1`.
    pub corollary_shortcut: bool,
    pub component_depths: Vec<Valuation>,
    pub residue_degree: u32,
    pub operator_set: Vec<Operator>,
}

/// `J` is not principal when `val_ℓ #T/J < d·Σ m_g`.
pub fn principality_criterion(data: &EisensteinIdealData) -> Result<PrincipalityReport> {
    let lhs = ideal_index(data);
    let mut sum = 0i64;
    for d in &data.depths {
        sum += d.finite().ok_or_else(|| Error::Degenerate("a component has infinite depth".into()))?;
    }
    let d = i64::from(data.lattice.residue_degree);
    let rhs = d * sum;
    let certified = matches!(lhs, Valuation::Finite(v) if v < rhs);
    let corollary_shortcut = lhs == Valuation::Finite(d) && sum > 1;
    Ok(PrincipalityReport {
        lhs,
        rhs,
        certified,
        corollary_shortcut,
        component_depths: data.depths.clone(),
        residue_degree: data.lattice.residue_degree,
        operator_set: data.operators.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::number::q_int;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn indices() {
        let ell = 5;
        assert_eq!(OLattice::new(ell, IntMatrix::identity(3)).unwrap().ell_index(), 0);
        let fib = OLattice::new(ell, IntMatrix::from_columns(&[big(&[1, 1]), big(&[0, 5])])).unwrap();
        assert_eq!(fib.ell_index(), 1);
        let d = OLattice::new(ell, IntMatrix::from_columns(&[big(&[5, 0]), big(&[0, 25])])).unwrap();
        assert_eq!(d.ell_index(), 3);
        assert!(OLattice::new(ell, IntMatrix::from_columns(&[big(&[1, 1])])).is_err());
    }

    #[test]
    fn lattice_from_two_systems() {
        let ell = 7;
        let op = Operator::T(2);
        let a = EigenSystem::new("a", 4, 2).with(op, q_int(0));
        let b = EigenSystem::new("b", 4, 2).with(op, q_int(7));
        let lat = lattice_from_eigensystems(&[a.clone(), b], &[op], ell).unwrap();
        assert_eq!(lat.ell_index(), 1);
        let one = lattice_from_eigensystems(&[a], &[op], ell).unwrap();
        assert_eq!(one.ell_index(), 0);
    }

    #[test]
    fn ideal_in_z() {
        let ell = 3;
        let lat = OLattice::new(ell, IntMatrix::identity(1)).unwrap();
        let data = EisensteinIdealData::new(lat.clone(), vec![big(&[9])]).unwrap();
        assert_eq!(ideal_index(&data), Valuation::Finite(2));
        let r = principality_criterion(&EisensteinIdealData::new(lat.clone(), vec![big(&[3])]).unwrap()).unwrap();
        assert_eq!((r.lhs, r.rhs, r.certified), (Valuation::Finite(1), 1, false));
        let zero = EisensteinIdealData::new(lat, vec![big(&[0])]).unwrap();
        assert_eq!(ideal_index(&zero), Valuation::Infinite);
    }
}
