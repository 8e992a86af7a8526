//! Fontaine–Laffaille modules killed by `ℓ`: internal Hom, `Ext¹`, explicit
//! extensions and the Hom-tensor adjunction.

use eiscong::flmod::{
    adjunction_check, build_extension, ext1_dim, hom_object, object_mn, split_by_cohomology, split_by_search,
};

fn main() -> eiscong::Result<()> {
    let ell = 7;
    let m = |n| object_mn(n, -2, 2, ell);

    println!("Ext^1(M_m, M_n) over F_{ell}:");
    for a in -2..=2 {
        let row: Vec<String> =
            (-2..=2).map(|b| ext1_dim(&m(a)?, &m(b)?).map(|e| e.to_string())).collect::<Result<_, _>>()?;
        println!("  m = {a:>2}: {}", row.join(" "));
    }

    let (m0, m1) = (m(0)?, m(-1)?);
    let h = hom_object(&m0, &m1)?;
    println!(
        "Hom(M_0, M_-1) lives on {:?}, carrier dim {}, coboundaries dim {}",
        h.interval(),
        h.carrier_dim(),
        h.coboundaries()?.dim()
    );
    for f in [0, 1, 3] {
        let e = build_extension(&[f], &m0, &m1)?;
        println!("f = {f}: split by search {:?}, by cohomology {}", split_by_search(&e), split_by_cohomology(&e)?);
    }

    let sum = m(0)?.direct_sum(&m(1)?)?;
    let r = adjunction_check(&sum, &m(-1)?)?;
    println!("{}", serde_json::to_string_pretty(&r).expect("report serializes"));
    println!("{}", serde_json::to_string(&sum.to_json()).expect("object serializes"));
    Ok(())
}
