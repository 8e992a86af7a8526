use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::Value;

use super::HalfIntegralMatrix;
use crate::arith::number::{fmt_rational, parse_rational, q_big, valuation, Valuation, Q};
use crate::error::{Error, Result};
use crate::lvalues::RationalLValue;
use crate::qexp::QExpansion;

/// Fourier coefficients `a(T)` of a degree-2 form keyed by canonical `T`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SiegelCoeffTable {
    pub weight: u32,
    pub label: Option<String>,
    pub provenance: Option<String>,
    entries: BTreeMap<HalfIntegralMatrix, Q>,
}

impl SiegelCoeffTable {
    pub fn new(weight: u32) -> Self {
        SiegelCoeffTable { weight, ..Default::default() }
    }

    /// Stores `a(T)` under the canonical representative of `T`.
    pub fn insert(&mut self, t: HalfIntegralMatrix, c: Q) -> Result<()> {
        self.entries.insert(t.canonical()?, c);
        Ok(())
    }

    pub fn get(&self, t: &HalfIntegralMatrix) -> Option<&Q> {
        self.entries.get(&t.canonical().ok()?)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&HalfIntegralMatrix, &Q)> {
        self.entries.iter()
    }

    pub fn scaled(&self, s: &Q) -> Self {
        SiegelCoeffTable {
            weight: self.weight,
            label: self.label.clone(),
            provenance: self.provenance.clone(),
            entries: self.entries.iter().map(|(t, c)| (*t, c * s)).collect(),
        }
    }

    /// Minimum `ℓ`-valuation over the entries (`Infinite` if all vanish).
    pub fn min_valuation(&self, ell: u64) -> Valuation {
        self.entries.values().map(|c| valuation(c, ell)).min().unwrap_or(Valuation::Infinite)
    }

    /// Writes the header line and one entry per line, sorted by `(|2T|, m, r)`.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        let mut header = serde_json::Map::new();
        header.insert("weight".into(), self.weight.into());
        if let Some(l) = &self.label {
            header.insert("label".into(), l.clone().into());
        }
        if let Some(p) = &self.provenance {
            header.insert("provenance".into(), p.clone().into());
        }
        writeln!(w, "{}", Value::Object(header))?;
        for (t, c) in &self.entries {
            writeln!(w, "{{\"m\":{},\"r\":{},\"n\":{},\"c\":\"{}\"}}", t.m, t.r, t.n, fmt_rational(c))?;
        }
        Ok(())
    }
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn int_field(obj: &serde_json::Map<String, Value>, key: &str, line: usize) -> Result<i64> {
    obj.get(key).and_then(Value::as_i64).ok_or_else(|| parse_err(line, format!("missing or non-integer field {key:?}")))
}

/// Reads an exact rational from a JSON string or integer literal.
pub(crate) fn rational_field(v: Option<&Value>, key: &str, line: usize) -> Result<Q> {
    match v {
        Some(Value::String(s)) => parse_rational(s).map_err(|e| parse_err(line, format!("field {key:?}: {e}"))),
        Some(Value::Number(n)) => {
            let text = n.to_string();
            if text.contains(['.', 'e', 'E']) {
                return Err(parse_err(line, format!("field {key:?} must be exact, got {text}")));
            }
            Ok(q_big(text.parse().map_err(|_| parse_err(line, "bad integer"))?))
        }
        _ => Err(parse_err(line, format!("missing field {key:?}"))),
    }
}

/// Parses the JSON-lines coefficient format. Blank lines are skipped; a line
/// without `"m"` is a header and must agree with `weight` if it names one.
pub fn ingest_lmfdb_table<R: BufRead>(reader: R, weight: u32) -> Result<SiegelCoeffTable> {
    let mut table = SiegelCoeffTable::new(weight);
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(&line).map_err(|e| parse_err(lineno, e.to_string()))?;
        let Value::Object(obj) = v else {
            return Err(parse_err(lineno, "expected a JSON object"));
        };
        if !obj.contains_key("m") {
            if let Some(w) = obj.get("weight") {
                if w.as_u64() != Some(weight.into()) {
                    return Err(parse_err(lineno, format!("header weight {w} differs from {weight}")));
                }
            }
            table.label = obj.get("label").and_then(Value::as_str).map(str::to_owned);
            table.provenance = obj.get("provenance").and_then(Value::as_str).map(str::to_owned);
            continue;
        }
        let t = HalfIntegralMatrix::new(
            int_field(&obj, "m", lineno)?,
            int_field(&obj, "r", lineno)?,
            int_field(&obj, "n", lineno)?,
        );
        let key = t.canonical().map_err(|_| parse_err(lineno, format!("{t} is not positive semidefinite")))?;
        let c = rational_field(obj.get("c"), "c", lineno)?;
        if let Some(old) = table.entries.get(&key) {
            if old != &c {
                return Err(parse_err(lineno, format!("conflicting value for class of {t}")));
            }
        }
        table.entries.insert(key, c);
    }
    Ok(table)
}

/// The scalar `s` with `s·a(diag(n, 0)) = a(n; φ)` on every usable singular
/// entry of the table.
pub fn infer_rescale(table: &SiegelCoeffTable, phi: &QExpansion) -> Result<Q> {
    let mut ratio: Option<(Q, HalfIntegralMatrix)> = None;
    let mut used = 0;
    for (t, c) in table.iter().filter(|(t, _)| t.is_singular() && t.m > 0) {
        let Some(a) = phi.coeff(t.m as usize) else {
            continue;
        };
        if a.is_zero() {
            if !c.is_zero() {
                return Err(Error::NormalizationConflict(format!("a{t} ≠ 0 but a({}; φ) = 0", t.m)));
            }
            continue;
        }
        if c.is_zero() {
            return Err(Error::NormalizationConflict(format!("a{t} = 0 but a({}; φ) ≠ 0", t.m)));
        }
        let s = a / c;
        match &ratio {
            Some((s0, t0)) if *s0 != s => {
                return Err(Error::NormalizationConflict(format!(
                    "ratio {} at {t0} but {} at {t}",
                    fmt_rational(s0),
                    fmt_rational(&s)
                )));
            }
            Some(_) => {}
            None => ratio = Some((s, *t)),
        }
        used += 1;
    }
    match ratio {
        Some((s, _)) if used >= 2 => Ok(s),
        _ => Err(Error::InsufficientData(format!("{used} usable singular entries, need at least 2"))),
    }
}

/// `G = ℓ^{−c}·L·table` with `c` the minimum valuation of `L·table` over
/// the entries supplied.
#[derive(Debug, Clone)]
pub struct Normalized {
    pub table: SiegelCoeffTable,
    pub c: i64,
    pub support: usize,
}

pub fn normalize_g(table: &SiegelCoeffTable, symsq: &RationalLValue, ell: u64) -> Result<Normalized> {
    if table.is_empty() {
        return Err(Error::InsufficientData("empty coefficient table".into()));
    }
    let h = table.scaled(&symsq.value);
    let c =
        h.min_valuation(ell).finite().ok_or_else(|| Error::InsufficientData("every coefficient vanishes".into()))?;
    let l = q_big(ell.into());
    let shift =
        if c >= 0 { Q::one() / num_traits::pow(l, c as usize) } else { num_traits::pow(l, c.unsigned_abs() as usize) };
    Ok(Normalized { table: h.scaled(&shift), c, support: table.len() })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct YamauchiReport {
    pub ell: u64,
    pub singular_divisible: bool,
    /// First singular `T` (in table order) whose coefficient is an `ℓ`-unit.
    pub singular_counterexample: Option<HalfIntegralMatrix>,
    pub unit_definite_witness: Option<HalfIntegralMatrix>,
    pub support: usize,
}

impl YamauchiReport {
    pub fn certified(&self) -> bool {
        self.singular_divisible && self.unit_definite_witness.is_some()
    }
}

/// Checks `ℓ | a(T)` for all singular `T` and looks for a definite `T` with
/// `a(T)` an `ℓ`-unit, over the table's support.
pub fn yamauchi_check(table: &SiegelCoeffTable, ell: u64) -> Result<YamauchiReport> {
    let mut report = YamauchiReport {
        ell,
        singular_divisible: true,
        singular_counterexample: None,
        unit_definite_witness: None,
        support: table.len(),
    };
    for (t, c) in table.iter() {
        let v = valuation(c, ell);
        if !v.at_least(0) {
            return Err(Error::IntegralityViolation(format!("{t}: {}", fmt_rational(c))));
        }
        if t.is_singular() {
            if !v.at_least(1) && report.singular_divisible {
                report.singular_divisible = false;
                report.singular_counterexample = Some(*t);
            }
        } else if v == Valuation::Finite(0) && report.unit_definite_witness.is_none() {
            report.unit_definite_witness = Some(*t);
        }
    }
    Ok(report)
}
