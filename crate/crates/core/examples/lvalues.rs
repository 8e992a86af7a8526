//! Bernoulli numbers and algebraic parts of quadratic Dirichlet L-values.

use eiscong::arith::number::valuation;
use eiscong::klingen::HalfIntegralMatrix;
use eiscong::lvalues::{bernoulli, bernoulli_divisible, generalized_bernoulli, l_alg_quadratic, QuadraticCharacter};

fn main() -> eiscong::Result<()> {
    for n in [12, 26, 50] {
        println!("B_{n} = {}", bernoulli(n));
    }
    println!("163 | num(B_26): {}", bernoulli_divisible(163, 26));
    println!("691 | num(B_12): {}", bernoulli_divisible(691, 12));

    let chi = QuadraticCharacter::new(-3)?;
    println!("B_25,chi_-3 = {}", generalized_bernoulli(25, &chi));

    let k = 26;
    for t in [(1, 1, 1), (1, 0, 1), (1, 1, 2), (2, 1, 3)] {
        let t = HalfIntegralMatrix::new(t.0, t.1, t.2);
        let l = l_alg_quadratic(k, &t)?;
        println!("L_alg({}, chi_{t}) = {}   v_163 = {}", k - 1, l.value, valuation(&l.value, 163));
    }
    Ok(())
}
