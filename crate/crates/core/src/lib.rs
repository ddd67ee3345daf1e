//! Entanglement, correlation energy and energy statistics of two coupled
//! harmonic oscillators (the Moshinsky model), with an independent
//! quadrature-based verification layer.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod distributions;
pub mod energetics;
pub mod entanglement;
pub mod error;
pub mod figures;
pub mod model;
pub mod oracle;
pub mod separable;
pub mod special;
pub mod verify;

pub use error::{Error, Result};
pub use model::CouplingParams;
