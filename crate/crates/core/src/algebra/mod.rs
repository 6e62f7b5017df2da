//! Exact coefficient arithmetic and truncated series.

pub mod curve;
mod lambda;
pub mod laurent;
pub mod parse;
pub mod render;
pub mod scalar;
pub mod series;
pub mod upoly;

pub use curve::{CurveData, CurveMode};
pub use laurent::LaurentPoly;
pub use parse::parse_scalar;
pub use scalar::{q_factorial, q_int, Scalar};
pub use series::TruncatedSeries;
pub use upoly::{RationalFunction, ScalarPoly};
