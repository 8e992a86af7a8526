//! Ingests the bundled degree-2 coefficient table, rescales it so singular
//! coefficients match `φ`, normalizes at `ℓ` and runs the Yamauchi check.

use std::fs::File;
use std::io::BufReader;

use eiscong::arith::parse_rational;
use eiscong::klingen::{infer_rescale, ingest_lmfdb_table, normalize_g, yamauchi_check, HalfIntegralMatrix};
use eiscong::lvalues::RationalLValue;
use eiscong::qexp::victor_miller_basis;

const SYMSQ: &str = "2^41*163*187273/(3^26*5^10*7^7*11^4*13^2*17^2*19*23^2*29*31*37*41*43*47*657931)";

fn main() -> eiscong::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/klingen_26.jsonl");
    let table = ingest_lmfdb_table(BufReader::new(File::open(path).expect("bundled table")), 26)?;
    let phi = victor_miller_basis(26, 8, true)?.basis[0].clone();

    let s = infer_rescale(&table, &phi)?;
    println!("{} coefficients, rescale by {s}", table.len());
    let e = table.scaled(&s);
    for t in [(1, 0, 0), (2, 0, 0), (1, 1, 1), (1, 0, 1), (1, 1, 2)] {
        let t = HalfIntegralMatrix::new(t.0, t.1, t.2);
        println!("  a({t}) = {}", e.get(&t).map(ToString::to_string).unwrap_or("-".into()));
    }

    let symsq = RationalLValue::new(parse_rational(SYMSQ)?, "sym2");
    for ell in [163, 187273, 7] {
        let g = normalize_g(&e, &symsq, ell)?;
        let y = yamauchi_check(&g.table, ell)?;
        println!(
            "ell = {ell}: c = {}, singular divisible {}, unit witness {:?}, certified {}",
            g.c,
            y.singular_divisible,
            y.unit_definite_witness.map(|t| t.to_string()),
            y.certified()
        );
    }
    Ok(())
}
