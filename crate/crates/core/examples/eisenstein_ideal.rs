//! The Eisenstein ideal of a fibre product `O ×_F O` and the principality
//! criterion, next to a single-form case where it cannot certify anything.

use eiscong::arith::number::q_int;
use eiscong::congruence::{EigenSystem, Operator};
use eiscong::eislattice::{eisenstein_ideal, ideal_index, principality_criterion};

fn sys(label: &str, t2: i64, t3: i64) -> EigenSystem {
    EigenSystem::new(label, 10, 2).with(Operator::T(2), q_int(t2)).with(Operator::T(3), q_int(t3))
}

fn main() -> eiscong::Result<()> {
    let ops = [Operator::T(2), Operator::T(3)];
    let eis = sys("E", 0, 0);
    let cases = [
        vec![sys("g1", 5, 5), sys("g2", -5, 5)],
        vec![sys("g", 25, 10)],
        vec![sys("g1", 5, 5), sys("g2", -5, 5), sys("g3", 25, -20)],
    ];
    for systems in cases {
        let data = eisenstein_ideal(&systems, &eis, &ops, 5)?;
        let r = principality_criterion(&data)?;
        let labels: Vec<&str> = systems.iter().map(|s| s.label.as_str()).collect();
        let depths: Vec<String> = r.component_depths.iter().map(ToString::to_string).collect();
        println!(
            "{labels:?}: v([Z^n : T]) = {}, v(#T/J) = {}, depths [{}], certified non-principal {}",
            data.lattice.ell_index(),
            ideal_index(&data),
            depths.join(", "),
            r.certified
        );
    }
    Ok(())
}
