//! Hecke eigensystems, local spin factors, and congruences between
//! eigensystems modulo powers of a prime.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::arith::ntheory::{big_pow, is_prime};
use crate::arith::number::{fmt_rational, q_big, valuation, Valuation, Q};
use crate::arith::{IntPoly, Poly};
use crate::error::{Error, Result};
use crate::klingen::rational_field;
use crate::qexp::QExpansion;

/// A Hecke operator away from the level: `T(p)` or `T1(p^2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Operator {
    T(u64),
    T1(u64),
}

impl Operator {
    pub fn prime(&self) -> u64 {
        match *self {
            Operator::T(p) | Operator::T1(p) => p,
        }
    }

    /// `{T(2), T(3), T(5), T1(4), T1(9), T1(25)}`.
    pub fn default_set() -> Vec<Operator> {
        let mut v: Vec<Operator> = [2, 3, 5].into_iter().map(Operator::T).collect();
        v.extend([2, 3, 5].into_iter().map(Operator::T1));
        v
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::T(p) => write!(f, "T({p})"),
            Operator::T1(p) => write!(f, "T1({p}^2)"),
        }
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse { line: 0, msg: format!("bad operator label {s:?}") };
        let s = s.trim();
        let (t1, inner) = if let Some(rest) = s.strip_prefix("T1(") {
            (true, rest)
        } else if let Some(rest) = s.strip_prefix("T(") {
            (false, rest)
        } else {
            return Err(bad());
        };
        let inner = inner.strip_suffix(')').ok_or_else(bad)?;
        let p: u64 = if t1 {
            // accept both "p^2" and the square itself
            match inner.strip_suffix("^2") {
                Some(base) => base.parse().map_err(|_| bad())?,
                None => {
                    let sq: u64 = inner.parse().map_err(|_| bad())?;
                    let r = num_integer::Roots::sqrt(&sq);
                    if r * r != sq {
                        return Err(bad());
                    }
                    r
                }
            }
        } else {
            inner.parse().map_err(|_| bad())?
        };
        if !is_prime(p) {
            return Err(Error::Parse { line: 0, msg: format!("{p} in {s:?} is not prime") });
        }
        Ok(if t1 { Operator::T1(p) } else { Operator::T(p) })
    }
}

impl Serialize for Operator {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A rational eigenvalue, or the Galois orbit `shift + α` for `α` running
/// over the roots of `minpoly`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraicNumber {
    Rational(Q),
    Orbit { minpoly: IntPoly, shift: Q },
}

impl AlgebraicNumber {
    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            AlgebraicNumber::Rational(q) => Some(q),
            AlgebraicNumber::Orbit { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenSystem {
    pub label: String,
    pub weight: u32,
    pub genus: u8,
    pub values: BTreeMap<Operator, AlgebraicNumber>,
}

impl EigenSystem {
    pub fn new(label: impl Into<String>, weight: u32, genus: u8) -> Self {
        EigenSystem { label: label.into(), weight, genus, values: BTreeMap::new() }
    }

    pub fn with(mut self, op: Operator, value: Q) -> Self {
        self.values.insert(op, AlgebraicNumber::Rational(value));
        self
    }

    pub fn rational(&self, op: &Operator) -> Option<&Q> {
        self.values.get(op).and_then(AlgebraicNumber::as_rational)
    }

    /// Operators with rational values in both systems, ascending.
    pub fn shared_rational_ops(&self, other: &EigenSystem) -> Vec<Operator> {
        self.values.keys().filter(|op| self.rational(op).is_some() && other.rational(op).is_some()).copied().collect()
    }

    /// Genus-1 eigensystem of a normalized eigenform: `T(p) ↦ a(p)`.
    pub fn from_eigenform(label: &str, phi: &QExpansion, primes: &[u64]) -> Result<Self> {
        let mut e = EigenSystem::new(label, phi.weight(), 1);
        for &p in primes {
            let a = phi.coeff(p as usize).ok_or(Error::Precision { needed: p as usize + 1, have: phi.prec() })?;
            e.values.insert(Operator::T(p), AlgebraicNumber::Rational(a.clone()));
        }
        Ok(e)
    }

    pub fn read_jsonl<R: BufRead>(reader: R) -> Result<Self> {
        let mut sys: Option<EigenSystem> = None;
        for (i, line) in reader.lines().enumerate() {
            let lineno = i + 1;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse { line: lineno, msg };
            let v: Value = serde_json::from_str(&line).map_err(|e| perr(e.to_string()))?;
            let Value::Object(obj) = v else {
                return Err(perr("expected a JSON object".into()));
            };
            let Some(op) = obj.get("op") else {
                let label = obj.get("label").and_then(Value::as_str).unwrap_or("").to_owned();
                let weight = obj
                    .get("weight")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| perr("header needs an integer weight".into()))?;
                let genus = obj.get("genus").and_then(Value::as_u64).unwrap_or(2);
                if !(1..=2).contains(&genus) {
                    return Err(perr(format!("genus {genus} unsupported")));
                }
                sys = Some(EigenSystem::new(label, weight as u32, genus as u8));
                continue;
            };
            let s = sys.as_mut().ok_or_else(|| perr("eigenvalue before header".into()))?;
            let op: Operator = op
                .as_str()
                .ok_or_else(|| perr("op must be a string".into()))?
                .parse()
                .map_err(|e: Error| perr(e.to_string()))?;
            let value = if let Some(mp) = obj.get("minpoly") {
                let coeffs = mp
                    .as_array()
                    .ok_or_else(|| perr("minpoly must be an array".into()))?
                    .iter()
                    .map(|c| {
                        let q = rational_field(Some(c), "minpoly", lineno)?;
                        if !q.is_integer() {
                            return Err(perr("minpoly coefficients must be integers".into()));
                        }
                        Ok(q.to_integer())
                    })
                    .collect::<Result<Vec<BigInt>>>()?;
                let shift = match obj.get("shift") {
                    None => Q::zero(),
                    some => rational_field(some, "shift", lineno)?,
                };
                AlgebraicNumber::Orbit { minpoly: Poly::new(coeffs), shift }
            } else {
                AlgebraicNumber::Rational(rational_field(obj.get("value"), "value", lineno)?)
            };
            s.values.insert(op, value);
        }
        sys.ok_or(Error::Parse { line: 0, msg: "missing eigensystem header".into() })
    }

    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        let header = serde_json::json!({"label": self.label, "weight": self.weight, "genus": self.genus});
        writeln!(w, "{header}")?;
        for (op, v) in &self.values {
            let line = match v {
                AlgebraicNumber::Rational(q) => {
                    serde_json::json!({"op": op.to_string(), "value": fmt_rational(q)})
                }
                AlgebraicNumber::Orbit { minpoly, shift } => {
                    let cs: Vec<Value> = minpoly
                        .coeffs()
                        .iter()
                        .map(|c| Value::Number(c.to_string().parse().expect("integer literal")))
                        .collect();
                    serde_json::json!({"op": op.to_string(), "minpoly": cs, "shift": fmt_rational(shift)})
                }
            };
            writeln!(w, "{line}")?;
        }
        Ok(())
    }
}

/// Local spin factor as a polynomial in `X = p^{−s}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinFactor {
    pub p: u64,
    pub weight: u32,
    pub poly: Poly<Q>,
}

impl SpinFactor {
    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }
}

fn pq(p: u64, e: u32) -> Q {
    q_big(big_pow(p, e))
}

/// `1 − λX + p^{k−1}X²`.
pub fn spin_factor_genus1(lam: &Q, k: u32, p: u64) -> SpinFactor {
    let poly = Poly::new(vec![Q::one(), -lam.clone(), pq(p, k - 1)]);
    SpinFactor { p, weight: k, poly }
}

/// `1 − λX + (λ² − λ₁ − p^{2k−4})X² − λp^{2k−3}X³ + p^{4k−6}X⁴` with
/// `λ = λ(T(p))`, `λ₁ = λ(T1(p²))`.
pub fn spin_factor_genus2(lam_p: &Q, lam_t1: &Q, k: u32, p: u64) -> SpinFactor {
    let c2 = lam_p * lam_p - lam_t1 - pq(p, 2 * k - 4);
    let poly = Poly::new(vec![Q::one(), -lam_p.clone(), c2, -lam_p * pq(p, 2 * k - 3), pq(p, 4 * k - 6)]);
    SpinFactor { p, weight: k, poly }
}

/// Eigenvalues of the Klingen Eisenstein series attached to `φ`:
/// `λ(T(p)) = a(p)(1 + p^{k−2})` and `λ(T1(p²))` from matching
/// the spin factor with `(1 − aX + p^{k−1}X²)(1 − p^{k−2}aX + p^{3k−5}X²)`.
pub fn eisenstein_eigensystem(phi: &EigenSystem, k: u32, primes: &[u64]) -> Result<EigenSystem> {
    let mut e = EigenSystem::new(format!("E^(2,1)[{}]", phi.label), k, 2);
    for &p in primes {
        let a = phi
            .rational(&Operator::T(p))
            .ok_or_else(|| Error::IncompleteInput(format!("{} has no rational T({p})", phi.label)))?;
        let lam = a * (Q::one() + pq(p, k - 2));
        let x2 = pq(p, k - 1) + pq(p, k - 2) * a * a + pq(p, 3 * k - 5);
        let lam_t1 = &lam * &lam - pq(p, 2 * k - 4) - x2;
        e.values.insert(Operator::T(p), AlgebraicNumber::Rational(lam));
        e.values.insert(Operator::T1(p), AlgebraicNumber::Rational(lam_t1));
    }
    Ok(e)
}

fn comparable_ops(e1: &EigenSystem, e2: &EigenSystem, ops: Option<&[Operator]>) -> Result<Vec<Operator>> {
    if e1.weight != e2.weight || e1.genus != e2.genus {
        return Err(Error::Incomparable(format!(
            "{} (weight {}, genus {}) vs {} (weight {}, genus {})",
            e1.label, e1.weight, e1.genus, e2.label, e2.weight, e2.genus
        )));
    }
    let mut shared = e1.shared_rational_ops(e2);
    if let Some(ops) = ops {
        shared.retain(|o| ops.contains(o));
    }
    if shared.is_empty() {
        return Err(Error::Incomparable(format!("{} and {} share no rational operators", e1.label, e2.label)));
    }
    Ok(shared)
}

/// `val_ℓ(λ₁(T) − λ₂(T)) ≥ power` for every shared rational operator.
pub fn congruent_mod(e1: &EigenSystem, e2: &EigenSystem, ell: u64, power: i64) -> Result<bool> {
    Ok(congruence_depth(e1, e2, ell, None)?.depth.at_least(power))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DepthReport {
    pub ell: u64,
    pub depth: Valuation,
    pub operators: Vec<Operator>,
    pub per_operator: BTreeMap<String, Valuation>,
}

/// `min_T val_ℓ(λ₁(T) − λ₂(T))` over the shared operators, optionally
/// restricted to `ops`; `Infinite` when the systems agree there.
pub fn congruence_depth(e1: &EigenSystem, e2: &EigenSystem, ell: u64, ops: Option<&[Operator]>) -> Result<DepthReport> {
    let shared = comparable_ops(e1, e2, ops)?;
    let mut per_operator = BTreeMap::new();
    let mut depth = Valuation::Infinite;
    for op in &shared {
        let d = e1.rational(op).expect("shared") - e2.rational(op).expect("shared");
        let v = valuation(&d, ell);
        depth = depth.min(v);
        per_operator.insert(op.to_string(), v);
    }
    Ok(DepthReport { ell, depth, operators: shared, per_operator })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormTest {
    pub op: Operator,
    pub ell: u64,
    /// `Res(minpoly(x), u − v·x)` where `λ − shift = u/v`.
    #[serde(serialize_with = "ser_bigint")]
    pub resultant: BigInt,
    pub residue: u64,
    pub noncongruent: bool,
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(x)
}

/// Certifies `λ_e(op) ≢ shift + α (mod ℓ)` for every root `α` of `minpoly` at
/// once through the norm `∏(λ_e − shift − α) = Res(minpoly(x), λ_e − shift − x)`.
pub fn norm_noncongruence(e: &EigenSystem, minpoly: &IntPoly, shift: &Q, op: Operator, ell: u64) -> Result<NormTest> {
    if !minpoly.is_monic() || minpoly.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidOrbit(format!("{minpoly} is not monic of positive degree")));
    }
    if !minpoly.is_squarefree() {
        return Err(Error::InvalidOrbit(format!("{minpoly} is not squarefree")));
    }
    let lam = e.rational(&op).ok_or_else(|| Error::IncompleteInput(format!("{} has no rational {op}", e.label)))?;
    let a = lam - shift;
    let (u, v) = (a.numer().clone(), a.denom().clone());
    let resultant = minpoly.resultant(&Poly::new(vec![u, -v.clone()]));
    let l = BigInt::from(ell);
    let residue = u64::try_from(resultant.mod_floor(&l)).expect("residue fits");
    // a non-ℓ-integral difference can never be congruent to an integer
    let noncongruent = v.is_multiple_of(&l) || residue != 0;
    Ok(NormTest { op, ell, resultant, residue, noncongruent })
}

/// Checks that `spin_factor_genus2` on the Eisenstein eigenvalues equals the
/// product of the two genus-1 factors `φ` and `φ` twisted by `p^{k−2}`.
pub fn eisenstein_spin_identity(a: &Q, k: u32, p: u64) -> bool {
    let phi = EigenSystem::new("phi", k, 1).with(Operator::T(p), a.clone());
    let e = match eisenstein_eigensystem(&phi, k, &[p]) {
        Ok(e) => e,
        Err(_) => return false,
    };
    let quartic = spin_factor_genus2(
        e.rational(&Operator::T(p)).expect("present"),
        e.rational(&Operator::T1(p)).expect("present"),
        k,
        p,
    );
    let f1 = spin_factor_genus1(a, k, p).poly;
    let f2 = Poly::new(vec![Q::one(), -(pq(p, k - 2) * a), pq(p, 3 * k - 5)]);
    quartic.poly == &f1 * &f2
}

impl fmt::Display for EigenSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (weight {}, genus {}):", self.label, self.weight, self.genus)?;
        for (op, v) in &self.values {
            match v {
                AlgebraicNumber::Rational(q) => write!(f, " {op}={}", fmt_rational(q))?,
                AlgebraicNumber::Orbit { minpoly, shift } => {
                    write!(f, " {op}={} + root of {minpoly}", fmt_rational(shift))?
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::number::{q_frac, q_int};

    #[test]
    fn operator_labels() {
        assert_eq!("T(2)".parse::<Operator>().unwrap(), Operator::T(2));
        assert_eq!("T1(3^2)".parse::<Operator>().unwrap(), Operator::T1(3));
        assert_eq!("T1(25)".parse::<Operator>().unwrap(), Operator::T1(5));
        assert!("T(4)".parse::<Operator>().is_err());
        assert!("S(2)".parse::<Operator>().is_err());
        assert_eq!(Operator::T1(2).to_string(), "T1(2^2)");
    }

    #[test]
    fn genus_one_factors() {
        let f = spin_factor_genus1(&q_int(-48), 26, 2);
        assert_eq!(f.poly, Poly::new(vec![q_int(1), q_int(48), pq(2, 25)]));
        let f = spin_factor_genus1(&q_int(-24), 12, 2);
        assert_eq!(f.poly, Poly::new(vec![q_int(1), q_int(24), q_int(2048)]));
        assert_eq!(spin_factor_genus1(&Q::zero(), 12, 3).poly.coeff(1), Q::zero());
    }

    #[test]
    fn genus_two_shape() {
        let (k, p) = (10, 3);
        let f = spin_factor_genus2(&Q::zero(), &-pq(p, 2 * k - 4), k, p);
        assert_eq!(f.poly, Poly::new(vec![q_int(1), Q::zero(), Q::zero(), Q::zero(), pq(p, 4 * k - 6)]));
        assert_eq!(f.degree(), 4);
    }

    #[test]
    fn eisenstein_eigenvalue_at_two() {
        let phi = EigenSystem::new("phi26", 26, 1).with(Operator::T(2), q_int(-48));
        let e = eisenstein_eigensystem(&phi, 26, &[2]).unwrap();
        assert_eq!(e.rational(&Operator::T(2)), Some(&q_int(-805306416)));
        assert!(eisenstein_eigensystem(&phi, 26, &[3]).is_err());
        for p in [2, 3] {
            assert!(eisenstein_spin_identity(&q_int(-48), 26, p));
        }
    }

    #[test]
    fn depth_rules() {
        let ell = 7;
        let a = EigenSystem::new("a", 4, 2).with(Operator::T(2), q_int(1)).with(Operator::T(3), q_int(5));
        let b = EigenSystem::new("b", 4, 2).with(Operator::T(2), q_int(1 + 49)).with(Operator::T(3), q_int(5));
        assert_eq!(congruence_depth(&a, &b, ell, None).unwrap().depth, Valuation::Finite(2));
        let c = EigenSystem::new("c", 4, 2).with(Operator::T(2), q_int(1)).with(Operator::T(3), q_int(12));
        assert_eq!(congruence_depth(&a, &c, ell, None).unwrap().depth, Valuation::Finite(1));
        assert_eq!(congruence_depth(&a, &a, ell, None).unwrap().depth, Valuation::Infinite);
        assert!(congruent_mod(&a, &a, ell, 100).unwrap());
        let d = EigenSystem::new("d", 4, 2).with(Operator::T(5), q_int(1));
        assert!(matches!(congruent_mod(&a, &d, ell, 1), Err(Error::Incomparable(_))));
    }

    #[test]
    fn norm_test_constructed() {
        let mp = IntPoly::from_i64(&[-2, 0, 1]);
        let e = EigenSystem::new("e", 4, 2).with(Operator::T(2), q_int(10));
        // 10 − 8 = 2 and x² − 2 at 2 is 2: divisible by 2
        let t = norm_noncongruence(&e, &mp, &q_int(8), Operator::T(2), 2).unwrap();
        assert!(!t.noncongruent);
        let t = norm_noncongruence(&e, &mp, &q_int(9), Operator::T(2), 2).unwrap();
        assert_eq!(t.resultant, BigInt::from(-1));
        assert!(t.noncongruent);
        let root = IntPoly::from_i64(&[-4, 0, 1]);
        let t = norm_noncongruence(&e, &root, &q_int(8), Operator::T(2), 5).unwrap();
        assert!(!t.noncongruent);
        assert!(norm_noncongruence(&e, &IntPoly::from_i64(&[1, 2, 1]), &q_int(0), Operator::T(2), 5).is_err());
        assert!(norm_noncongruence(&e, &IntPoly::from_i64(&[1, 2]), &q_int(0), Operator::T(2), 5).is_err());
        let half = EigenSystem::new("h", 4, 2).with(Operator::T(2), q_frac(1, 5));
        assert!(norm_noncongruence(&half, &mp, &q_int(0), Operator::T(2), 5).unwrap().noncongruent);
    }

    #[test]
    fn jsonl_round_trip() {
        let mut e = EigenSystem::new("sk", 26, 2).with(Operator::T(3), q_frac(-7, 2));
        e.values.insert(
            Operator::T(2),
            AlgebraicNumber::Orbit { minpoly: IntPoly::from_i64(&[-2, 0, 1]), shift: q_int(50331648) },
        );
        let mut buf = Vec::new();
        e.write_jsonl(&mut buf).unwrap();
        assert_eq!(EigenSystem::read_jsonl(buf.as_slice()).unwrap(), e);
        assert!(EigenSystem::read_jsonl(r#"{"op":"T(2)","value":"1"}"#.as_bytes()).is_err());
    }
}
