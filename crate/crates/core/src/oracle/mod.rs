//! Brute-force verification layer: quadrature over explicit wavefunction
//! descriptors, truncated spectral sums and bracketed root finding. Nothing
//! here evaluates the closed forms it is used to check.

mod integrate;
mod quadrature;
mod roots;
mod spectral;
mod wavefunction;

pub use integrate::{energy_expectation, normalized, overlap, overlap_checked};
pub use quadrature::QuadratureRule;
pub use roots::find_root_bracketed;
pub use spectral::{spectral_sum, SpectralFunctional, SPECTRAL_CAP};
pub use wavefunction::{Orbital, PairFactor, PairState};

/// Gauss–Hermite order per dimension used unless a caller asks otherwise.
pub const DEFAULT_ORDER: usize = 80;
