//! Exact arithmetic around Klingen Eisenstein congruences for degree-2
//! Siegel modular forms.

pub mod arith;
pub mod cli;
pub mod congruence;
pub mod eislattice;
pub mod error;
pub mod flmod;
pub mod klingen;
pub mod lvalues;
pub mod qexp;
pub mod report;

pub use error::{Error, Result};
