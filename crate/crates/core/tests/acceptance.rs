//! One PASS/FAIL line per acceptance criterion.
//!
//! Criterion 2 is stated with a shift under which it cannot hold; it is
//! listed in `KNOWN_FAILURES` and reported as FAIL. Any other failure, or
//! criterion 2 unexpectedly passing, makes this target fail.

mod common;

use std::path::Path;
use std::time::{Duration, Instant};

use common::{data, random_extension, random_principal_ideal, rng, sys, OPS};
use eiscong::arith::number::{lambda_valuation, parse_rational, q_int, Valuation};
use eiscong::arith::IntPoly;
use eiscong::congruence::{eisenstein_eigensystem, norm_noncongruence, EigenSystem, Operator};
use eiscong::eislattice::{eisenstein_ideal, ideal_index, principality_criterion};
use eiscong::flmod::{adjunction_check, ext1_dim, object_mn, split_by_cohomology, split_by_search};
use eiscong::klingen::{theta_qexp, HalfIntegralMatrix};
use eiscong::lvalues::bernoulli_divisible;
use eiscong::qexp::{charpoly, default_hecke_prec, hecke_matrix, victor_miller_basis};
use eiscong::report::{verify_example, Config, Status};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::Value;

const KNOWN_FAILURES: [u32; 1] = [2];

const SYMSQ_50: &str = "2^41*163*187273/(3^26*5^10*7^7*11^4*13^2*17^2*19*23^2*29*31*37*41*43*47*657931)";

/// `c(x)`, lowest coefficient first.
const C_X: [&str; 4] = ["-13634883228742736412672", "-566746931810304", "24225168", "1"];

type Outcome = Result<String, String>;

fn check(ok: bool, detail: impl Into<String>) -> Outcome {
    if ok {
        Ok(detail.into())
    } else {
        Err(detail.into())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    check(t < limit, format!("{:.2?} (limit {limit:?})", t))
}

fn c_poly() -> IntPoly {
    IntPoly::new(C_X.iter().map(|s| s.parse::<BigInt>().unwrap()).collect())
}

fn stated_shift() -> BigInt {
    (BigInt::one() << 49) + (BigInt::one() << 48)
}

fn phi_26() -> EigenSystem {
    let phi = victor_miller_basis(26, 4, true).unwrap().basis[0].clone();
    EigenSystem::from_eigenform("phi", &phi, &[2, 3]).unwrap()
}

fn c1() -> Outcome {
    let start = Instant::now();
    let b = victor_miller_basis(26, 4, true).map_err(|e| e.to_string())?;
    let phi = &b.basis[0];
    let (a2, a3) = (phi.coeff(2).unwrap().clone(), phi.coeff(3).unwrap().clone());
    check(b.dim() == 1 && a2 == q_int(-48) && a3 == q_int(-195804), format!("a(2) = {a2}, a(3) = {a3}"))?;
    within(start, Duration::from_secs(1)).map(|t| format!("a(2) = {a2}, a(3) = {a3}, {t}"))
}

fn c2() -> Outcome {
    let start = Instant::now();
    let prec = default_hecke_prec(50, 2, true).map_err(|e| e.to_string())?;
    let b = victor_miller_basis(50, prec, true).map_err(|e| e.to_string())?;
    let q = charpoly(&hecke_matrix(50, 2, &b).map_err(|e| e.to_string())?);
    within(start, Duration::from_secs(10))?;
    let c = c_poly();
    let shifted = q.shift(&stated_shift());
    check(shifted == c, format!("q(x + 2^49 + 2^48) != c(x); unshifted q(x) = c(x): {}", q == c))
}

fn c3() -> Outcome {
    let e = eisenstein_eigensystem(&phi_26(), 26, &[2]).map_err(|e| e.to_string())?;
    let lam = e.rational(&Operator::T(2)).unwrap().clone();
    check(lam == q_int(-805306416), format!("lambda_E(2) = {lam}"))
}

/// `c(λ_E(2) − shift) mod ℓ` by Horner's rule over `Z/ℓ`.
fn brute_residue(lam: &BigInt, shift: &BigInt, ell: u64) -> BigInt {
    let l = BigInt::from(ell);
    let x = (lam - shift).mod_floor(&l);
    let mut acc = BigInt::zero();
    for c in C_X.iter().rev() {
        acc = (acc * &x + c.parse::<BigInt>().unwrap()).mod_floor(&l);
    }
    acc
}

fn c4() -> Outcome {
    let ell = 187273;
    let e = eisenstein_eigensystem(&phi_26(), 26, &[2]).map_err(|e| e.to_string())?;
    let shift = stated_shift();
    let t = norm_noncongruence(&e, &c_poly(), &shift.clone().into(), Operator::T(2), ell).map_err(|e| e.to_string())?;
    let lam = e.rational(&Operator::T(2)).unwrap().to_integer();
    let brute = brute_residue(&lam, &shift, ell);
    check(
        brute == BigInt::from(RECORDED_RESIDUE),
        format!("brute-force residue {brute}, recorded {RECORDED_RESIDUE}"),
    )?;
    // Res(c, u − x) = c(u) for cubic monic c
    check(
        t.noncongruent && BigInt::from(t.residue) == brute,
        format!("noncongruent = {}, residue {} mod {ell}", t.noncongruent, t.residue),
    )
}

const RECORDED_RESIDUE: u64 = 54396;

fn c5() -> Outcome {
    let start = Instant::now();
    let d = bernoulli_divisible(163, 26);
    check(!d, format!("163 | num(B_26): {d}"))?;
    within(start, Duration::from_secs(1)).map(|t| format!("163 does not divide num(B_26), {t}"))
}

fn c6() -> Outcome {
    let x = parse_rational(SYMSQ_50).map_err(|e| e.to_string())?;
    let v: Vec<i64> = [163, 187273, 3].iter().map(|&l| lambda_valuation(&x, l).unwrap()).collect();
    check(v == [1, 1, -26], format!("valuations at 163, 187273, 3: {v:?}"))
}

fn c7() -> Outcome {
    let mut notes = Vec::new();
    for (ell, partner) in [(163, "Upsilon2"), (187273, "Upsilon1")] {
        let cfg = Config::load(Path::new(&data(&format!("example_{ell}.conf")))).map_err(|e| e.to_string())?;
        let r = verify_example(&cfg).map_err(|e| e.to_string())?;
        let f = &r.findings;
        let scalar = f["stage.rescale"]["scalar"].as_str().unwrap_or("");
        let witness = &f["stage.yamauchi"]["unit_definite_witness"];
        let y = &f["stage.yamauchi"];
        let partners = &f["stage.congruence"]["partners"];
        let per_op = &f["stage.congruence"]["depths"][partner]["per_operator"];
        let all_ops = per_op.as_object().is_some_and(|m| !m.is_empty() && m.values().all(|v| v.as_i64() >= Some(1)));
        check(
            r.status == Status::Pass
                && scalar == "-1/11024345014848"
                && y["singular_divisible"] == Value::Bool(true)
                && *witness == serde_json::json!({"m": 1, "n": 1, "r": 1})
                && *partners == serde_json::json!([partner])
                && all_ops,
            format!("ell = {ell}: status {:?}, scalar {scalar}, partners {partners}, depths {per_op}", r.status),
        )?;
        notes.push(format!("{ell} -> {partner}"));
    }
    Ok(format!("{}; scalar -1/(2^6*3^3*11*19*163*187273)", notes.join(", ")))
}

fn naive_counts(t: &HalfIntegralMatrix, prec: usize) -> Vec<u64> {
    let mut b = vec![0u64; prec];
    for x in -30i64..=30 {
        for y in -30i64..=30 {
            let q = t.eval(x, y);
            if (0..prec as i64).contains(&q) {
                b[q as usize] += 1;
            }
        }
    }
    b
}

fn c8() -> Outcome {
    let t = HalfIntegralMatrix::new(1, 1, 1);
    let got = theta_qexp(&t, 7, 1).map_err(|e| e.to_string())?.coeffs;
    let want = naive_counts(&t, 7);
    check(got == want, format!("b(0..6) = {got:?}, naive {want:?}"))
}

fn c9() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    let mut adjunctions = 0;
    for (ell, (a, b)) in [(5u64, (-2i64, 1i64)), (7, (-2, 2)), (11, (-2, 2))] {
        for m in a..=b {
            for n in a..=b {
                let (mm, mn) = (object_mn(m, a, b, ell).unwrap(), object_mn(n, a, b, ell).unwrap());
                let e = ext1_dim(&mm, &mn).map_err(|e| e.to_string())?;
                check(e == usize::from(m >= n), format!("ell = {ell}: Ext1(M_{m}, M_{n}) = {e}"))?;
                let r = adjunction_check(&mm, &mn).map_err(|e| e.to_string())?;
                if r.hypotheses_hold {
                    check(r.bijective, format!("ell = {ell}: adjunction fails for (M_{m}, M_{n})"))?;
                    adjunctions += 1;
                }
                pairs += 1;
            }
        }
    }
    within(start, Duration::from_secs(5)).map(|t| format!("{pairs} pairs, {adjunctions} admissible adjunctions, {t}"))
}

fn c10() -> Outcome {
    let mut r = rng(10);
    let mut split = 0;
    for k in 0..50 {
        let ext = random_extension(&mut r, k % 2 == 0);
        let search = split_by_search(&ext).ok_or("search space too large")?;
        let cohom = split_by_cohomology(&ext).map_err(|e| e.to_string())?;
        check(search == cohom, format!("f = {:?}: search {search}, cohomology {cohom}", ext.f))?;
        split += usize::from(cohom);
    }
    Ok(format!("50 extensions, {split} split, {} non-split", 50 - split))
}

fn c11() -> Outcome {
    let data =
        eisenstein_ideal(&[sys("g1", 5, 5), sys("g2", -5, 5)], &sys("E", 0, 0), &OPS, 5).map_err(|e| e.to_string())?;
    let p = principality_criterion(&data).map_err(|e| e.to_string())?;
    check(
        p.lhs == Valuation::Finite(1) && p.rhs == 2 && p.certified && p.corollary_shortcut,
        format!("fibre product: lhs {:?}, rhs {}, certified {}", p.lhs, p.rhs, p.certified),
    )?;
    let mut r = rng(11);
    for _ in 0..20 {
        let (d, sum) = random_principal_ideal(&mut r);
        let p = principality_criterion(&d).map_err(|e| e.to_string())?;
        check(
            ideal_index(&d) == Valuation::Finite(sum) && p.rhs == sum && !p.certified,
            format!("principal ideal {:?}: lhs {:?}, sum {sum}", d.ideal_gens, p.lhs),
        )?;
    }
    Ok("fibre product (1, 2) certified; 20 principal ideals with lhs = sum m_g, none certified".into())
}

fn c12() -> Outcome {
    Ok("existence, Selmer and R = T statements are not computations; their computable \
        hypotheses are exercised by criteria 1-11 and the property suites"
        .into())
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 12] = [
        (1, c1),
        (2, c2),
        (3, c3),
        (4, c4),
        (5, c5),
        (6, c6),
        (7, c7),
        (8, c8),
        (9, c9),
        (10, c10),
        (11, c11),
        (12, c12),
    ];
    let mut unexpected = Vec::new();
    for (n, f) in criteria {
        let outcome = f();
        let known = KNOWN_FAILURES.contains(&n);
        match &outcome {
            Ok(d) => println!("PASS criterion {n}: {d}"),
            Err(d) => println!("FAIL criterion {n}: {d}{}", if known { " (known)" } else { "" }),
        }
        if outcome.is_ok() == known {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
