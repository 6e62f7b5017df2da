//! Exact generating functions for moduli of sheaves on ruled surfaces.

pub mod algebra;
pub mod blowup;
pub mod error;
pub mod genfun;
pub mod hall;
pub mod phi;
pub mod quot;
pub mod surface;
pub mod verify;
pub mod wallcross;

pub use algebra::{CurveData, CurveMode, Scalar, TruncatedSeries};
pub use error::{Error, Result};
