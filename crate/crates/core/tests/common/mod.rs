#![allow(dead_code)]

use eiscong::arith::number::{int_valuation, q_int};
use eiscong::congruence::{EigenSystem, Operator};
use eiscong::eislattice::{lattice_from_eigensystems, EisensteinIdealData, OLattice};
use eiscong::flmod::{build_extension, hom_object, FLExtension, FLModule, FpMat};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const OPS: [Operator; 2] = [Operator::T(2), Operator::T(3)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn sys(label: &str, t2: i64, t3: i64) -> EigenSystem {
    EigenSystem::new(label, 10, 2).with(Operator::T(2), q_int(t2)).with(Operator::T(3), q_int(t3))
}

/// The order spanned by products of `T(2)`, `T(3)` eigenvalue vectors of
/// `n` random systems.
pub fn random_order(rng: &mut ChaCha8Rng, ell: u64, n: usize) -> OLattice {
    loop {
        let systems: Vec<EigenSystem> =
            (0..n).map(|i| sys(&format!("g{i}"), rng.gen_range(-30..30), rng.gen_range(-30..30))).collect();
        if let Ok(l) = lattice_from_eigensystems(&systems, &OPS, ell) {
            return l;
        }
    }
}

pub fn random_element(rng: &mut ChaCha8Rng, lat: &OLattice, scale: i64, range: i64) -> Vec<BigInt> {
    let mut x = vec![BigInt::zero(); lat.ncomp()];
    for b in lat.basis() {
        let c = BigInt::from(rng.gen_range(-range..=range) * scale);
        for (xi, bi) in x.iter_mut().zip(&b) {
            *xi += &c * bi;
        }
    }
    x
}

/// `(J = xT, Σ val_ℓ(x_g))` with `x ∈ ℓT` having no zero component.
pub fn random_principal_ideal(rng: &mut ChaCha8Rng) -> (EisensteinIdealData, i64) {
    loop {
        let ell = [3u64, 5, 7][rng.gen_range(0..3)];
        let n = rng.gen_range(1..=4);
        let lat = random_order(rng, ell, n);
        let x = random_element(rng, &lat, ell as i64, 3);
        if x.iter().any(Zero::is_zero) {
            continue;
        }
        let sum = x.iter().map(|v| int_valuation(v, ell).finite().unwrap()).sum();
        return (EisensteinIdealData::new(lat, vec![x]).unwrap(), sum);
    }
}

pub fn random_invertible(rng: &mut ChaCha8Rng, ell: u64, n: usize) -> FpMat {
    loop {
        let rows: Vec<Vec<u64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(0..ell)).collect()).collect();
        let m = FpMat::from_rows(ell, n, &rows);
        if m.rank() == n {
            return m;
        }
    }
}

pub fn random_object(rng: &mut ChaCha8Rng, ell: u64, (a, b): (i64, i64), dim: usize) -> FLModule {
    let weights: Vec<i64> = (0..dim).map(|_| rng.gen_range(a..=b)).collect();
    FLModule::from_graded(ell, (a, b), &weights, &random_invertible(rng, ell, dim)).unwrap()
}

/// A random extension over a small pair, with `f` drawn from `im(φ − 1)`
/// when `coboundary` is set.
pub fn random_extension(rng: &mut ChaCha8Rng, coboundary: bool) -> FLExtension {
    loop {
        let ell = [3u64, 5, 7][rng.gen_range(0..3)];
        let a = rng.gen_range(-2..=0);
        let b = a + rng.gen_range(0..=(ell as i64 - 2).min(2));
        let dm = rng.gen_range(1..=2);
        let dn = rng.gen_range(1..=2);
        if dm * dn > 3 && ell > 3 {
            continue;
        }
        let m = random_object(rng, ell, (a, b), dm);
        let n = random_object(rng, ell, (a, b), dn);
        let Ok(h) = hom_object(&m, &n) else { continue };
        let f: Vec<u64> = if coboundary {
            let pm = h.phi_minus_one().unwrap();
            let mut f = vec![0u64; h.carrier_dim()];
            for col in pm.columns() {
                let c = rng.gen_range(0..ell);
                for (x, y) in f.iter_mut().zip(&col) {
                    *x = (*x + c * y) % ell;
                }
            }
            f
        } else {
            (0..h.carrier_dim()).map(|_| rng.gen_range(0..ell)).collect()
        };
        return build_extension(&f, &m, &n).unwrap();
    }
}
