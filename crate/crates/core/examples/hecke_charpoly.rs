//! Victor–Miller bases and Hecke characteristic polynomials.
//!
//! `cargo run --example hecke_charpoly -- 50 2`

use eiscong::qexp::{charpoly, default_hecke_prec, hecke_matrix, victor_miller_basis};

fn main() -> eiscong::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let (k, p) = (args.first().copied().unwrap_or(50), args.get(1).copied().unwrap_or(2));

    let b = victor_miller_basis(k, 8, true)?;
    println!("S_{k} has dimension {}", b.dim());
    for f in &b.basis {
        println!("  {f}");
    }

    let prec = default_hecke_prec(k, p as u64, true)?;
    let basis = victor_miller_basis(k, prec, true)?;
    let t = hecke_matrix(k, p as u64, &basis)?;
    println!("T({p}) on S_{k}:\n{}", t.entries);
    println!("charpoly: {}", charpoly(&t));
    Ok(())
}
