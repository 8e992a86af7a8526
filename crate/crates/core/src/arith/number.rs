//! Exact rationals, their canonical string form, and ℓ-adic valuations.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

/// An ℓ-adic valuation; `Infinite` is the valuation of zero and the neutral
/// element for minimums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    /// `self >= m` with `Infinite` above every integer.
    pub fn at_least(self, m: i64) -> bool {
        match self {
            Valuation::Finite(v) => v >= m,
            Valuation::Infinite => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_big(n: BigInt) -> Q {
    Q::from_integer(n)
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"n"`, `"n/d"`, or a product/power expression such as
/// `"2^41*163/(3^26*5^10)"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse { line: 0, msg: "empty rational".into() });
    }
    let mut p = ExprParser { s: s.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(Error::Parse { line: 0, msg: format!("trailing input in rational {s:?}") });
    }
    Ok(v)
}

// Grammar: expr := term (('*'|'/') term)* ; term := ['-'|'+'] atom ['^' uint] ;
// atom := digits | '(' expr ')'. Enough for factored constants, no sums.
struct ExprParser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl ExprParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { line: 0, msg: format!("{msg} at offset {}", self.pos) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Q> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc *= self.term()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.term()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc /= d;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Q> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let base = self.atom()?;
        let v = if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.digits()?;
            let e: i32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            num_traits::pow::Pow::pow(&base, e)
        } else {
            base
        };
        Ok(if neg { -v } else { v })
    }

    fn atom(&mut self) -> Result<Q> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(q_big(self.digits()?)),
            _ => Err(self.err("expected number")),
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }
}

/// Canonical string form: `"n"` for integers, `"n/d"` otherwise, reduced with
/// positive denominator.
pub fn fmt_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `v_ℓ(n)` for a nonzero integer.
pub fn int_valuation(n: &BigInt, ell: u64) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let l = BigInt::from(ell);
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&l);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        n = q;
        v += 1;
    }
}

/// ℓ-adic valuation of an exact rational; zero maps to `Infinite`.
pub fn valuation(x: &Q, ell: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    match (int_valuation(x.numer(), ell), int_valuation(x.denom(), ell)) {
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        _ => unreachable!("nonzero rational"),
    }
}

/// Strict form of [`valuation`]: zero is an error.
pub fn lambda_valuation(x: &Q, ell: u64) -> Result<i64> {
    valuation(x, ell).finite().ok_or(Error::ValuationOfZero)
}

/// Reduction of an ℓ-integral rational modulo ℓ.
pub fn reduce_mod(x: &Q, ell: u64) -> Option<u64> {
    let l = BigInt::from(ell);
    let den = x.denom().mod_floor(&l);
    if den.is_zero() {
        return None;
    }
    let num = x.numer().mod_floor(&l);
    let inv = modinv(&den, &l)?;
    let r = (num * inv).mod_floor(&l);
    Some(u64::try_from(r).expect("residue fits"))
}

fn modinv(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_factored_constants() {
        let x = parse_rational("2^2*5*43/(11*19*163*187273)").unwrap();
        assert_eq!(x, q_frac(860, 6379829291));
        assert_eq!(parse_rational("-7/21").unwrap(), q_frac(-1, 3));
        assert_eq!(parse_rational(" 12 ").unwrap(), q_int(12));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("3/").is_err());
    }

    #[test]
    fn canonical_strings() {
        assert_eq!(fmt_rational(&q_frac(4, -6)), "-2/3");
        assert_eq!(fmt_rational(&q_int(-5)), "-5");
    }

    #[test]
    fn valuations() {
        assert_eq!(lambda_valuation(&q_frac(163, 3), 163), Ok(1));
        assert_eq!(lambda_valuation(&q_frac(1, 657931), 657931), Ok(-1));
        assert_eq!(lambda_valuation(&q_int(0), 5), Err(Error::ValuationOfZero));
        assert_eq!(valuation(&q_int(0), 5), Valuation::Infinite);
        assert!(Valuation::Finite(1_000_000) < Valuation::Infinite);
    }

    #[test]
    fn reduction() {
        assert_eq!(reduce_mod(&q_frac(1, 2), 7), Some(4));
        assert_eq!(reduce_mod(&q_frac(-1, 3), 5), Some(3));
        assert_eq!(reduce_mod(&q_frac(1, 7), 7), None);
    }
}
