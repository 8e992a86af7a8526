//! Numeric cross-check of `l_alg_quadratic` against
//! `Δ^{k−3/2} L(k−1, χ) / π^{k−1}` evaluated in fixed point.

use eiscong::klingen::HalfIntegralMatrix;
use eiscong::lvalues::{l_alg_quadratic, QuadraticCharacter};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const DIGITS: u32 = 80;

fn scale() -> BigInt {
    num_traits::pow(BigInt::from(10), DIGITS as usize)
}

fn fixed(q: &BigRational) -> BigInt {
    (q * BigRational::from_integer(scale())).round().to_integer()
}

/// Akiyama–Tanigawa: `B_n` with `B_1 = +1/2`.
fn bernoulli_at(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n + 1);
    let mut a: Vec<BigRational> = Vec::new();
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let d = &a[j - 1] - &a[j];
            a[j - 1] = BigRational::from_integer(BigInt::from(j)) * d;
        }
        out.push(a[0].clone());
    }
    out
}

/// `π` by Machin's formula, in fixed point.
fn pi_fixed() -> BigInt {
    let s = scale() * BigInt::from(1000);
    let arctan_inv = |x: i64| {
        let x = BigInt::from(x);
        let x2 = &x * &x;
        let mut term = &s / &x;
        let mut sum = BigInt::zero();
        let mut k = 0i64;
        while !term.is_zero() {
            let t = &term / BigInt::from(2 * k + 1);
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            term /= &x2;
            k += 1;
        }
        sum
    };
    (BigInt::from(16) * arctan_inv(5) - BigInt::from(4) * arctan_inv(239)) / BigInt::from(1000)
}

/// `ζ(s, a/D)` by Euler–Maclaurin with `N` direct terms and `M` corrections.
fn hurwitz(s: u32, a: i64, d: i64, bern: &[BigRational]) -> BigRational {
    const N: i64 = 50;
    const M: usize = 20;
    let x = BigRational::new(BigInt::from(a), BigInt::from(d));
    let pow = |b: &BigRational, e: i64| -> BigRational {
        if e >= 0 {
            num_traits::pow(b.clone(), e as usize)
        } else {
            num_traits::pow(b.recip(), (-e) as usize)
        }
    };
    let mut acc = BigRational::zero();
    for j in 0..N {
        acc += pow(&(BigRational::from_integer(j.into()) + &x), -(s as i64));
    }
    let nx = BigRational::from_integer(N.into()) + &x;
    acc += pow(&nx, 1 - s as i64) / BigRational::from_integer((s - 1).into());
    acc += pow(&nx, -(s as i64)) / BigRational::from_integer(2.into());
    let mut fact = BigInt::one(); // (2j)!
    let mut rising = BigInt::from(s); // s(s+1)…(s+2j−2)
    for j in 1..=M {
        fact *= BigInt::from(2 * j - 1) * BigInt::from(2 * j);
        if j > 1 {
            rising *= BigInt::from(s as usize + 2 * j - 3) * BigInt::from(s as usize + 2 * j - 2);
        }
        let c = &bern[2 * j] * BigRational::new(rising.clone(), fact.clone());
        acc += c * pow(&nx, -(s as i64) - 2 * j as i64 + 1);
    }
    acc
}

/// `Δ^{n−1/2} L(n, χ)/π^n` with `L(n, χ) = Δ^{−n} Σ_a χ(a) ζ(n, a/Δ)`.
fn l_alg_numeric(k: u32, t: &HalfIntegralMatrix) -> BigInt {
    let chi = QuadraticCharacter::of_matrix(t).unwrap();
    let d = chi.modulus() as i64;
    let n = k - 1;
    let bern = bernoulli_at(2 * 20 + 2);
    let mut sum = BigRational::zero();
    for a in 1..=d {
        let c = chi.value(a);
        if c != 0 {
            sum += BigRational::from_integer(c.into()) * hurwitz(n, a, d, &bern);
        }
    }
    // Δ^{n−1/2} · Δ^{−n} = 1/√Δ
    let sq = (BigInt::from(d) * scale() * scale()).sqrt();
    let pi = pi_fixed();
    let mut v = fixed(&sum) * scale() / sq;
    for _ in 0..n {
        v = v * scale() / &pi;
    }
    v
}

#[test]
fn l_alg_matches_numeric_oracle() {
    let cases = [
        (4, HalfIntegralMatrix::new(1, 1, 1)),
        (6, HalfIntegralMatrix::new(1, 0, 1)),
        (8, HalfIntegralMatrix::new(1, 1, 2)),
        (10, HalfIntegralMatrix::new(1, 0, 2)),
        (12, HalfIntegralMatrix::new(2, 1, 3)),
        (4, HalfIntegralMatrix::new(1, 0, 3)),
        (26, HalfIntegralMatrix::new(1, 1, 1)),
    ];
    let tol = num_traits::pow(BigInt::from(10), (DIGITS - 20) as usize);
    for (k, t) in cases {
        let exact = fixed(&l_alg_quadratic(k, &t).unwrap().value);
        let numeric = l_alg_numeric(k, &t);
        let bound = &tol * exact.abs().max(scale()) / scale();
        assert!((&exact - &numeric).abs() <= bound, "k = {k}, T = {t}: exact {exact} vs numeric {numeric}");
    }
}

#[test]
fn oracle_bernoulli_agrees_on_even_indices() {
    let b = bernoulli_at(30);
    for n in (2..=30).step_by(2) {
        assert_eq!(b[n], eiscong::lvalues::bernoulli(n as u32), "B_{n}");
    }
}
