//! Riemann's auxiliary function R(s): evaluation, zero catalogs, and numerical
//! checks of the statistics of its zeros.

// `!(x >= y)` is used on purpose so that NaN inputs are rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::excessive_precision)]

pub mod config;
pub mod error;
pub mod quad;
pub mod rzeta;
pub mod special;
pub mod verify;
pub mod xray;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use num_complex::Complex64;
