//! Eigenvalue congruences between the Klingen Eisenstein series and the
//! bundled cusp forms, and the norm test against the Saito–Kurokawa orbit.

use std::fs::File;
use std::io::BufReader;

use eiscong::congruence::{congruence_depth, eisenstein_eigensystem, norm_noncongruence, AlgebraicNumber, EigenSystem};
use eiscong::qexp::victor_miller_basis;

fn load(name: &str) -> eiscong::Result<EigenSystem> {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    EigenSystem::read_jsonl(BufReader::new(File::open(path).expect("bundled system")))
}

fn main() -> eiscong::Result<()> {
    let phi = victor_miller_basis(26, 4, true)?.basis[0].clone();
    let phi = EigenSystem::from_eigenform("phi", &phi, &[2, 3])?;
    let eis = eisenstein_eigensystem(&phi, 26, &[2, 3])?;
    println!("{eis}");

    for name in ["upsilon1_26.jsonl", "upsilon2_26.jsonl"] {
        let g = load(name)?;
        for ell in [163, 187273] {
            let d = congruence_depth(&eis, &g, ell, None)?;
            println!("{} mod {ell}: depth {} over {:?}", g.label, d.depth, d.operators);
        }
    }

    let sk = load("saito_kurokawa_26.jsonl")?;
    for (op, v) in &sk.values {
        if let AlgebraicNumber::Orbit { minpoly, shift } = v {
            let t = norm_noncongruence(&eis, minpoly, shift, *op, 187273)?;
            println!("{op}: resultant {} = {} mod 187273, noncongruent {}", t.resultant, t.residue, t.noncongruent);
        }
    }
    Ok(())
}
