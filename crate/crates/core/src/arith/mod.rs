//! Exact arithmetic substrate: rationals, integer matrices, polynomials and
//! elementary number theory.

pub mod intmat;
pub mod ntheory;
pub mod number;
pub mod poly;

pub use intmat::IntMatrix;
pub use number::{fmt_rational, lambda_valuation, parse_rational, valuation, Valuation, Q};
pub use poly::{IntPoly, Poly};
