//! The subcommands behind the `eiscong` binary. Each returns a report;
//! errors map to exit code 2.

use std::path::Path;

use serde_json::json;

use crate::arith::number::{lambda_valuation, valuation};
use crate::congruence::{congruence_depth, eisenstein_eigensystem, EigenSystem, Operator};
use crate::eislattice::{eisenstein_ideal, principality_criterion};
use crate::error::{Error, Result};
use crate::flmod::{adjunction_check, ext1_dim, hom_object, object_mn, FLModule, FLModuleJson};
use crate::klingen::{infer_rescale, ingest_lmfdb_table, HalfIntegralMatrix};
use crate::lvalues::{bernoulli, l_alg_quadratic};
use crate::qexp::{charpoly, default_hecke_prec, hecke_matrix, space_dimension, victor_miller_basis};
use crate::report::{q_str, read_eigensystem, verify_example, Config, RunReport};

pub fn basis(k: u32, prec: Option<usize>, cuspidal: bool) -> Result<RunReport> {
    let mut r = RunReport::new("basis");
    r.param("weight", k).param("cuspidal", cuspidal);
    let dim = space_dimension(k, cuspidal)?;
    let prec = prec.unwrap_or(dim + 2).max(dim + 2);
    r.param("prec", prec);
    let b = victor_miller_basis(k, prec, cuspidal)?;
    let coeffs: Vec<Vec<String>> = b.basis.iter().map(|f| f.coeffs().iter().map(q_str).collect()).collect();
    r.finding("dimension", b.dim())
        .finding("basis", b.basis.iter().map(ToString::to_string).collect::<Vec<_>>())
        .finding("coefficients", coeffs);
    Ok(r)
}

pub fn hecke(k: u32, p: u64, prec: Option<usize>, cuspidal: bool) -> Result<RunReport> {
    let mut r = RunReport::new("hecke");
    let prec = prec.map_or_else(|| default_hecke_prec(k, p, cuspidal), Ok)?;
    r.param("weight", k).param("p", p).param("prec", prec).param("cuspidal", cuspidal);
    let b = victor_miller_basis(k, prec, cuspidal)?;
    let m = hecke_matrix(k, p, &b)?;
    let rows: Vec<Vec<String>> =
        (0..m.entries.nrows()).map(|i| m.entries.row(i).iter().map(ToString::to_string).collect()).collect();
    let cp = charpoly(&m);
    r.finding("matrix", rows)
        .finding("charpoly", cp.to_string())
        .finding("charpoly_coefficients", cp.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>());
    Ok(r)
}

pub fn lvalue(k: u32, t: HalfIntegralMatrix, ells: &[u64]) -> Result<RunReport> {
    let mut r = RunReport::new("lvalue");
    r.param("weight", k).param("T", t);
    let l = l_alg_quadratic(k, &t)?;
    let (delta, f) = t.discriminant_split()?;
    r.finding("label", &l.label)
        .finding("value", q_str(&l.value))
        .finding("discriminant", -(delta as i64))
        .finding("conductor_f", f)
        .finding("bernoulli_k", q_str(&bernoulli(k)));
    for &ell in ells {
        r.finding(&format!("valuation_{ell}"), lambda_valuation(&l.value, ell)?);
    }
    Ok(r)
}

fn cusp_eigenform(k: u32, prec: usize) -> Result<crate::qexp::QExpansion> {
    let b = victor_miller_basis(k, prec, true)?;
    if b.dim() != 1 {
        return Err(Error::Domain(format!("S_{k} has dimension {}, need exactly one eigenform", b.dim())));
    }
    Ok(b.basis[0].clone())
}

pub fn klingen_coeff(table: &Path, k: u32, t: HalfIntegralMatrix, rescale: bool, ells: &[u64]) -> Result<RunReport> {
    let mut r = RunReport::new("klingen-coeff");
    r.param("weight", k).param("T", t).param("rescale", rescale);
    let bytes = r.read_input(table)?;
    let tab = ingest_lmfdb_table(bytes.as_slice(), k)?;
    let canon = t.canonical()?;
    r.finding("canonical", canon.to_string()).finding("det2", t.det2());
    let raw = tab.get(&canon).cloned().ok_or_else(|| Error::IncompleteInput(format!("{canon} is not in the table")))?;
    r.finding("table_value", q_str(&raw));
    let value = if rescale {
        let max_m = tab.iter().map(|(t, _)| t.m).max().unwrap_or(1) as usize;
        let phi = cusp_eigenform(k, max_m + 2)?;
        let s = infer_rescale(&tab, &phi)?;
        r.finding("rescale", q_str(&s));
        let v = raw * s;
        r.finding("value", q_str(&v));
        if t.is_singular() {
            let e = t.reduce_singular()?;
            r.finding("singular_reduction", e);
            if let Some(a) = phi.coeff(e as usize) {
                r.finding("matches_phi_coefficient", *a == v);
            }
        }
        v
    } else {
        raw
    };
    if t.is_positive_definite() {
        let (delta, f) = t.discriminant_split()?;
        r.finding("discriminant_split", (delta, f));
    }
    for &ell in ells {
        r.finding(&format!("valuation_{ell}"), valuation(&value, ell));
    }
    Ok(r)
}

/// An eigensystem source: a JSONL path, or `klingen:K` for the Klingen
/// Eisenstein series attached to the unique eigenform in `S_K`.
pub fn load_system(r: &mut RunReport, source: &str, primes: &[u64]) -> Result<EigenSystem> {
    if let Some(k) = source.strip_prefix("klingen:") {
        let k: u32 = k.parse().map_err(|_| Error::Parse { line: 0, msg: format!("bad weight in {source:?}") })?;
        let prec = primes.iter().copied().max().unwrap_or(2) as usize + 1;
        let phi = cusp_eigenform(k, prec.max(4))?;
        let sys = EigenSystem::from_eigenform("phi", &phi, primes)?;
        return eisenstein_eigensystem(&sys, k, primes);
    }
    read_eigensystem(r, Path::new(source))
}

fn primes_of(ops: Option<&[Operator]>) -> Vec<u64> {
    let mut ps: Vec<u64> = ops.map_or_else(|| vec![2, 3, 5], |o| o.iter().map(Operator::prime).collect());
    ps.sort_unstable();
    ps.dedup();
    ps
}

pub fn check_congruence(a: &str, b: &str, ell: u64, power: i64) -> Result<RunReport> {
    let mut r = RunReport::new("check-congruence");
    r.param("a", a).param("b", b).param("ell", ell).param("power", power);
    let primes = primes_of(None);
    let e1 = load_system(&mut r, a, &primes)?;
    let e2 = load_system(&mut r, b, &primes)?;
    let d = congruence_depth(&e1, &e2, ell, None)?;
    let ok = d.depth.at_least(power);
    let ops: Vec<String> = d.operators.iter().map(ToString::to_string).collect();
    r.finding("congruent", ok).finding("depth", d.depth).finding("per_operator", &d.per_operator);
    r.caveat(format!("relative to the operator set {{{}}}", ops.join(", ")));
    if !ok {
        r.fail();
    }
    Ok(r)
}

pub fn depth(a: &str, b: &str, ell: u64, ops: Option<&[Operator]>) -> Result<RunReport> {
    let mut r = RunReport::new("depth");
    r.param("a", a).param("b", b).param("ell", ell);
    let primes = primes_of(ops);
    let e1 = load_system(&mut r, a, &primes)?;
    let e2 = load_system(&mut r, b, &primes)?;
    let d = congruence_depth(&e1, &e2, ell, ops)?;
    let names: Vec<String> = d.operators.iter().map(ToString::to_string).collect();
    r.finding("depth", d.depth).finding("per_operator", &d.per_operator);
    r.caveat(format!("depth relative to the operator set {{{}}}", names.join(", ")));
    Ok(r)
}

pub fn eisenstein_ideal_cmd(
    systems: &[String],
    eisenstein: &str,
    ell: u64,
    ops: &[Operator],
    residue_degree: u32,
) -> Result<RunReport> {
    let mut r = RunReport::new("eisenstein-ideal");
    r.param("ell", ell).param("residue_degree", residue_degree).param("eisenstein", eisenstein);
    let primes = primes_of(Some(ops));
    let sys = systems.iter().map(|s| load_system(&mut r, s, &primes)).collect::<Result<Vec<_>>>()?;
    let eis = load_system(&mut r, eisenstein, &primes)?;
    let mut data = eisenstein_ideal(&sys, &eis, ops, ell)?;
    data.lattice = data.lattice.with_residue_degree(residue_degree);
    let rep = principality_criterion(&data)?;
    let names: Vec<String> = ops.iter().map(ToString::to_string).collect();
    r.finding("lattice_index", data.lattice.ell_index()).finding("criterion", &rep);
    r.caveat(format!("J and the depths are taken over the operator set {{{}}}", names.join(", ")));
    if !rep.certified {
        r.caveat("non-principality not certified");
        r.fail();
    }
    Ok(r)
}

/// `M<n>` names the one-dimensional object of weight `n`; anything else is
/// read as a JSON object file.
pub fn fl_object(r: &mut RunReport, source: &str, ell: u64, interval: Option<(i64, i64)>) -> Result<FLModule> {
    if let Some(n) = source.strip_prefix('M').and_then(|s| s.parse::<i64>().ok()) {
        let (a, b) = interval.unwrap_or((n, n));
        return object_mn(n, a, b, ell);
    }
    let bytes = r.read_input(Path::new(source))?;
    let j: FLModuleJson =
        serde_json::from_slice(&bytes).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
    if j.ell != ell {
        return Err(Error::InvalidObject(format!("{source} is over F_{}, not F_{ell}", j.ell)));
    }
    FLModule::from_json(&j)
}

pub fn fl_pair(m: &str, n: &str, ell: u64, interval: Option<(i64, i64)>) -> Result<RunReport> {
    let mut r = RunReport::new("fl-ext");
    r.param("ell", ell).param("M", m).param("N", n);
    if let Some((a, b)) = interval {
        r.param("interval", format!("[{a}, {b}]"));
    }
    let mo = fl_object(&mut r, m, ell, interval)?;
    let no = fl_object(&mut r, n, ell, interval)?;
    let h = hom_object(&mo, &no)?;
    let adj = adjunction_check(&mo, &no)?;
    r.finding("hom_dim", h.carrier_dim())
        .finding("hom0_dim", h.fil(0).dim())
        .finding("hom_c_dim", h.hom_c_dim()?)
        .finding("ext1_dim", h.ext1_dim()?)
        .finding("hom_weights", h.object.weights())
        .finding("adjunction", &adj);
    if adj.hypotheses_hold && !adj.bijective {
        r.fail();
    }
    Ok(r)
}

/// `Ext¹(M_m, M_n)` for all weights in `[a, b]`, checked against
/// `dim = 1 if m ≥ n else 0`, with the adjunction on every admissible pair.
pub fn fl_table(ell: u64, a: i64, b: i64) -> Result<RunReport> {
    let mut r = RunReport::new("fl-ext");
    r.param("ell", ell).param("interval", format!("[{a}, {b}]"));
    let mut rows = Vec::new();
    let mut all_ok = true;
    for m in a..=b {
        for n in a..=b {
            let mm = object_mn(m, a, b, ell)?;
            let nn = object_mn(n, a, b, ell)?;
            let e = ext1_dim(&mm, &nn)?;
            let expected = usize::from(m >= n);
            let adj = adjunction_check(&mm, &nn)?;
            let ok = e == expected && (!adj.hypotheses_hold || adj.bijective);
            all_ok &= ok;
            rows.push(json!({
                "M": format!("M{m}"),
                "N": format!("M{n}"),
                "ext1_dim": e,
                "expected": expected,
                "adjunction_checked": adj.hypotheses_hold,
                "adjunction_bijective": adj.bijective,
            }));
        }
    }
    r.finding("table", rows).finding("all_match", all_ok);
    if !all_ok {
        r.fail();
    }
    Ok(r)
}

pub fn verify_example_cmd(config: &Path) -> Result<RunReport> {
    let cfg = Config::load(config)?;
    let mut r = verify_example(&cfg)?;
    r.read_input(config)?;
    r.param("config", config.file_name().map(|n| n.to_string_lossy().to_string()).unwrap_or_default());
    Ok(r)
}
