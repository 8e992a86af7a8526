//! Machine-readable run reports, the flat `key = value` config format, and
//! the end-to-end Klingen congruence pipeline.

use std::collections::BTreeMap;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::arith::number::{fmt_rational, parse_rational, valuation, Q};
use crate::congruence::{
    congruence_depth, eisenstein_eigensystem, norm_noncongruence, AlgebraicNumber, EigenSystem, Operator,
};
use crate::error::{Error, Result};
use crate::klingen::{infer_rescale, ingest_lmfdb_table, normalize_g, yamauchi_check, HalfIntegralMatrix};
use crate::lvalues::{bernoulli_divisible, RationalLValue};
use crate::qexp::victor_miller_basis;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }
}

/// Everything a command reports. Maps are ordered, so identical runs
/// serialize to identical bytes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub status: Status,
    pub inputs: Inputs,
    pub findings: BTreeMap<String, Value>,
    pub caveats: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Inputs {
    pub parameters: BTreeMap<String, String>,
    /// File name to hex SHA-256 of its contents.
    pub files: BTreeMap<String, String>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            status: Status::Pass,
            inputs: Inputs::default(),
            findings: BTreeMap::new(),
            caveats: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.inputs.parameters.insert(key.into(), value.to_string());
        self
    }

    pub fn finding(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        let v = serde_json::to_value(value).expect("findings serialize");
        self.findings.insert(key.into(), v);
        self
    }

    pub fn caveat(&mut self, c: impl Into<String>) -> &mut Self {
        self.caveats.push(c.into());
        self
    }

    pub fn fail(&mut self) -> &mut Self {
        self.status = Status::Fail;
        self
    }

    /// Reads a file and records its digest under its display name.
    pub fn read_input(&mut self, path: &Path) -> Result<Vec<u8>> {
        let bytes = fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let name = path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into());
        self.inputs.files.insert(name, hex::encode(Sha256::digest(&bytes)));
        Ok(bytes)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A rational as its canonical string, for findings.
pub fn q_str(x: &Q) -> String {
    fmt_rational(x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Exclusion {
    /// `ℓ ∤ B_k` rules out a congruence with the Siegel Eisenstein series.
    Herbrand,
    /// A norm computation rules out the Saito–Kurokawa lifts.
    Norm,
}

/// Inputs of the end-to-end check. Paths are resolved against the config
/// file's directory.
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub ell: u64,
    pub weight: u32,
    pub klingen_table: PathBuf,
    pub symsq: Q,
    pub cusp_forms: Vec<PathBuf>,
    pub sk_orbit: Option<PathBuf>,
    pub exclusion: Exclusion,
    pub expected_partner: Option<String>,
    pub witness: HalfIntegralMatrix,
}

impl Config {
    pub fn parse(text: &str, base: &Path) -> Result<Self> {
        let mut kv = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: i + 1, msg: format!("expected key = value, got {line:?}") })?;
            if kv.insert(k.trim().to_string(), (i + 1, v.trim().to_string())).is_some() {
                return Err(Error::Parse { line: i + 1, msg: format!("duplicate key {:?}", k.trim()) });
            }
        }
        let take = |kv: &mut BTreeMap<String, (usize, String)>, key: &str| {
            kv.remove(key).ok_or_else(|| Error::IncompleteInput(format!("config is missing {key:?}")))
        };
        let num = |(line, v): (usize, String)| -> Result<u64> {
            v.parse().map_err(|_| Error::Parse { line, msg: format!("expected an integer, got {v:?}") })
        };
        let path = |v: &str| base.join(v);
        let ell = num(take(&mut kv, "ell")?)?;
        let weight = num(take(&mut kv, "weight")?)? as u32;
        let klingen_table = path(&take(&mut kv, "klingen_table")?.1);
        let (line, s) = take(&mut kv, "symsq")?;
        let symsq = parse_rational(&s).map_err(|e| Error::Parse { line, msg: e.to_string() })?;
        let cusp_forms =
            take(&mut kv, "cusp_forms")?.1.split(',').map(str::trim).filter(|s| !s.is_empty()).map(path).collect();
        let sk_orbit = kv.remove("sk_orbit").map(|(_, v)| path(&v));
        let exclusion = match kv.remove("exclusion") {
            None => Exclusion::Herbrand,
            Some((_, v)) if v == "herbrand" => Exclusion::Herbrand,
            Some((_, v)) if v == "norm" => Exclusion::Norm,
            Some((line, v)) => {
                return Err(Error::Parse { line, msg: format!("exclusion must be herbrand or norm, got {v:?}") })
            }
        };
        let expected_partner = kv.remove("expected_partner").map(|(_, v)| v);
        let witness = match kv.remove("witness") {
            None => HalfIntegralMatrix::new(1, 1, 1),
            Some((line, v)) => parse_matrix(&v).map_err(|msg| Error::Parse { line, msg })?,
        };
        if let Some((k, (line, _))) = kv.into_iter().next() {
            return Err(Error::Parse { line, msg: format!("unknown key {k:?}") });
        }
        if exclusion == Exclusion::Norm && sk_orbit.is_none() {
            return Err(Error::IncompleteInput("exclusion = norm needs sk_orbit".into()));
        }
        Ok(Config { ell, weight, klingen_table, symsq, cusp_forms, sk_orbit, exclusion, expected_partner, witness })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Config::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

/// Parses `m,r,n` or `(m, r, n)`.
pub fn parse_matrix(s: &str) -> std::result::Result<HalfIntegralMatrix, String> {
    let parts: Vec<&str> = s.trim_matches(|c| c == '(' || c == ')').split(',').map(str::trim).collect();
    match parts.as_slice() {
        [m, r, n] => {
            let p = |x: &str| x.parse::<i64>().map_err(|_| format!("bad matrix entry {x:?}"));
            Ok(HalfIntegralMatrix::new(p(m)?, p(r)?, p(n)?))
        }
        _ => Err(format!("expected m,r,n, got {s:?}")),
    }
}

pub fn read_eigensystem(report: &mut RunReport, path: &Path) -> Result<EigenSystem> {
    let bytes = report.read_input(path)?;
    EigenSystem::read_jsonl(BufReader::new(bytes.as_slice()))
}

/// Records a stage outcome; returns whether it passed.
fn stage(report: &mut RunReport, name: &str, passed: bool, detail: Value) -> bool {
    let mut d = detail;
    d["passed"] = json!(passed);
    report.finding(&format!("stage.{name}"), d);
    if !passed {
        report.fail();
        report.finding("failed_stage", name);
    }
    passed
}

/// Runs rescale inference, normalization, the Yamauchi hypotheses, the
/// exclusion step and the final eigenvalue comparison in order, stopping at
/// the first stage that fails.
pub fn verify_example(cfg: &Config) -> Result<RunReport> {
    let mut r = RunReport::new("verify-example");
    let (ell, k) = (cfg.ell, cfg.weight);
    r.param("ell", ell).param("weight", k).param("exclusion", format!("{:?}", cfg.exclusion).to_lowercase());
    r.param("symsq", q_str(&cfg.symsq));

    let table_bytes = r.read_input(&cfg.klingen_table)?;
    let table = ingest_lmfdb_table(BufReader::new(table_bytes.as_slice()), k)?;
    let cusp = cfg.cusp_forms.iter().map(|p| read_eigensystem(&mut r, p)).collect::<Result<Vec<_>>>()?;

    // φ: the unique normalized cusp form of weight k
    let max_m = table.iter().filter(|(t, _)| t.is_singular()).map(|(t, _)| t.m).max().unwrap_or(1);
    let primes: Vec<u64> = {
        let mut ps: Vec<u64> = cusp.iter().flat_map(|s| s.values.keys()).map(Operator::prime).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    };
    let prec = (max_m as usize + 1).max(primes.iter().copied().max().unwrap_or(2) as usize + 1).max(4);
    let basis = victor_miller_basis(k, prec, true)?;
    if basis.dim() != 1 {
        return Err(Error::Domain(format!("S_{k} has dimension {}, need a single eigenform", basis.dim())));
    }
    let phi = basis.basis[0].clone();
    r.finding("phi_prefix", phi.to_string());

    let s = match infer_rescale(&table, &phi) {
        Ok(s) => s,
        Err(e @ (Error::NormalizationConflict(_) | Error::InsufficientData(_))) => {
            stage(&mut r, "rescale", false, json!({ "error": e.to_string() }));
            return Ok(r);
        }
        Err(e) => return Err(e),
    };
    stage(&mut r, "rescale", true, json!({ "scalar": q_str(&s) }));
    let klingen = table.scaled(&s);

    let norm = normalize_g(&klingen, &RationalLValue::new(cfg.symsq.clone(), "L_alg(2k-2, Sym^2 phi)"), ell)?;
    let w = cfg.witness.canonical()?;
    let a_w = norm.table.get(&w).cloned();
    stage(
        &mut r,
        "normalize",
        true,
        json!({
            "c": norm.c,
            "support": norm.support,
            "witness": w.to_string(),
            "witness_coefficient_valuation": a_w.as_ref().map(|a| valuation(a, ell)),
        }),
    );

    let y = yamauchi_check(&norm.table, ell)?;
    let detail = serde_json::to_value(&y).expect("report serializes");
    if !stage(&mut r, "yamauchi", y.certified(), detail) {
        if !y.singular_divisible {
            r.caveat(format!(
                "singular coefficients are not all divisible by {ell}; first unit at {}",
                y.singular_counterexample.map(|t| t.to_string()).unwrap_or_default()
            ));
        }
        return Ok(r);
    }
    r.caveat(format!("Yamauchi hypotheses checked over the {} supplied coefficients only", y.support));

    let phi_sys = EigenSystem::from_eigenform("phi", &phi, &primes)?;
    let eis = eisenstein_eigensystem(&phi_sys, k, &primes)?;

    match cfg.exclusion {
        Exclusion::Herbrand => {
            let divides = bernoulli_divisible(ell, k);
            let d = json!({ "bernoulli_index": k, "ell_divides_numerator": divides });
            if !stage(&mut r, "exclusion", !divides, d) {
                return Ok(r);
            }
        }
        Exclusion::Norm => {
            let path = cfg.sk_orbit.as_ref().expect("checked at parse time");
            let sk = read_eigensystem(&mut r, path)?;
            let mut all = true;
            let mut tests = Vec::new();
            for (op, v) in &sk.values {
                if let AlgebraicNumber::Orbit { minpoly, shift } = v {
                    let t = norm_noncongruence(&eis, minpoly, shift, *op, ell)?;
                    all &= t.noncongruent;
                    tests.push(t);
                }
            }
            if tests.is_empty() {
                return Err(Error::IncompleteInput(format!("{} has no orbit entries", sk.label)));
            }
            if !stage(&mut r, "exclusion", all, json!({ "norm_tests": tests })) {
                return Ok(r);
            }
        }
    }

    let mut partners = Vec::new();
    let mut depths = BTreeMap::new();
    let mut op_set = Vec::new();
    for sys in &cusp {
        let d = congruence_depth(&eis, sys, ell, None)?;
        if d.depth.at_least(1) {
            partners.push(sys.label.clone());
        }
        op_set = d.operators.clone();
        depths.insert(sys.label.clone(), d);
    }
    let expected_ok = cfg.expected_partner.as_ref().map_or(partners.len() == 1, |p| partners == [p.clone()]);
    let ops: Vec<String> = op_set.iter().map(Operator::to_string).collect();
    r.caveat(format!("eigenvalue congruence relative to the operator set {{{}}}", ops.join(", ")));
    stage(&mut r, "congruence", expected_ok, json!({ "partners": partners, "depths": depths }));
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let text = "# comment\nell = 163\nweight = 26\nklingen_table = k.jsonl\nsymsq = 2^3/5\n\
                    cusp_forms = a.jsonl, b.jsonl\nexclusion = herbrand\n";
        let c = Config::parse(text, Path::new("/d")).unwrap();
        assert_eq!(c.ell, 163);
        assert_eq!(c.cusp_forms, vec![PathBuf::from("/d/a.jsonl"), PathBuf::from("/d/b.jsonl")]);
        assert_eq!(c.symsq, Q::new(8.into(), 5.into()));
        assert_eq!(c.witness, HalfIntegralMatrix::new(1, 1, 1));
        assert!(Config::parse(&format!("{text}color = red\n"), Path::new("/")).is_err());
        assert!(Config::parse("ell = 163\n", Path::new("/")).is_err());
        assert!(Config::parse(&text.replace("herbrand", "norm"), Path::new("/")).is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let mk = || {
            let mut r = RunReport::new("x");
            r.finding("b", 2).finding("a", vec![1, 2]).param("z", 1).param("y", "q");
            r.to_json()
        };
        assert_eq!(mk(), mk());
        assert!(mk().find("\"a\"").unwrap() < mk().find("\"b\"").unwrap());
    }
}
