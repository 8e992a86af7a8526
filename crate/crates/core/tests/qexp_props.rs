use eiscong::arith::number::q_int;
use eiscong::qexp::{default_hecke_prec, hecke_matrix, victor_miller_basis};
use proptest::prelude::*;

#[test]
fn hecke_operators_commute() {
    for k in [12, 26, 50] {
        let prec = default_hecke_prec(k, 5, true).unwrap();
        let b = victor_miller_basis(k, prec, true).unwrap();
        let ms: Vec<_> = [2, 3, 5].iter().map(|&p| hecke_matrix(k, p, &b).unwrap().entries).collect();
        for i in 0..3 {
            for j in i + 1..3 {
                assert_eq!(&ms[i] * &ms[j], &ms[j] * &ms[i], "k = {k}");
            }
        }
    }
}

#[test]
fn eigenform_coefficients_are_multiplicative() {
    let phi = victor_miller_basis(26, 8, true).unwrap().basis[0].clone();
    let a = |n: usize| phi.coeff(n).unwrap().clone();
    assert_eq!(a(6), a(2) * a(3));
    assert_eq!(a(4), a(2) * a(2) - q_int(1 << 25));
    assert_eq!((a(2), a(3)), (q_int(-48), q_int(-195804)));
}

proptest! {
    #[test]
    fn basis_is_integral_and_stable_in_precision(half in 2u32..26, cusp in any::<bool>(), extra in 0usize..6) {
        let k = 2 * half;
        let dim = eiscong::qexp::space_dimension(k, cusp).unwrap();
        let p1 = dim + 2;
        let small = victor_miller_basis(k, p1, cusp).unwrap();
        let large = victor_miller_basis(k, p1 + 1 + extra, cusp).unwrap();
        prop_assert_eq!(small.dim(), large.dim());
        for (f, g) in small.basis.iter().zip(&large.basis) {
            prop_assert!(g.is_integral());
            prop_assert_eq!(f, &g.truncate(p1));
        }
    }
}
