//! Degree-2 Siegel Fourier coefficients of Klingen Eisenstein series:
//! half-integral indices, binary theta series, Mizumoto's formula and
//! coefficient tables with their normalizations.

mod matrix;
mod mizumoto;
mod table;
mod theta;

pub use matrix::HalfIntegralMatrix;
pub use mizumoto::{m_t, mizumoto_coefficient, outer_constant};
pub(crate) use table::rational_field;
pub use table::{
    infer_rescale, ingest_lmfdb_table, normalize_g, yamauchi_check, Normalized, SiegelCoeffTable, YamauchiReport,
};
pub use theta::{theta_qexp, ThetaExpansion};
