//! Exact lattice algebra and verification tools for wavelet frames with
//! rational dilations: oversampling conditions, Calderon-type sums, frame
//! functionals and shift-invariance gain, all over exact rational (and
//! quadratic-irrational) arithmetic.

pub mod approx;
pub mod builtins;
pub mod cli;
pub mod conditions;
pub mod error;
pub mod exactnum;
pub mod frames;
pub mod lattice;
pub mod sigain;

pub use error::{Error, Result};
