//! Truncated sums over the reduced-density spectrum with analytic tail bounds.

use crate::distributions::{moshinsky_diagonal, Truncation, MOSHINSKY_MAX_LEVEL};
use crate::error::{domain, Error, Result};
use crate::model::CouplingParams;

/// Cap on the number of spectral levels summed.
pub const SPECTRAL_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpectralFunctional {
    /// Σ deg·μ, which must be 1.
    Normalization,
    /// Σ deg·μ².
    Purity,
    /// −Σ deg·μ log₂ μ.
    Entropy,
    /// Tr[ρ e^{−ξ H}] for the 3D unit oscillator H, summed over the energy basis.
    Partition { xi: f64 },
}

/// Evaluates `functional` on the exact reduced state of the ground state.
pub fn spectral_sum(p: &CouplingParams, functional: SpectralFunctional, tail_tol: f64) -> Result<f64> {
    if !(tail_tol > 0.0) {
        return Err(domain("tail_tol", tail_tol, "(0, inf)"));
    }
    if let SpectralFunctional::Partition { xi } = functional {
        return partition_sum(p, xi, tail_tol);
    }
    let chi = p.chi();
    let big = 4.0 * chi / ((1.0 + chi) * (1.0 + chi));
    let ratio = ((1.0 - chi) / (1.0 + chi)).powi(2);
    if ratio == 0.0 {
        return Ok(match functional {
            SpectralFunctional::Entropy => 0.0,
            _ => 1.0,
        });
    }
    let ln_first = 3.0 * big.ln();
    let ln_ratio = ratio.ln();
    let mut total = 0.0;
    for k in 0..SPECTRAL_CAP {
        let kf = k as f64;
        let deg = (kf + 1.0) * (kf + 2.0) / 2.0;
        let ln_mu = ln_first + kf * ln_ratio;
        let mu = ln_mu.exp();
        let (term, step) = match functional {
            SpectralFunctional::Normalization => (deg * mu, ratio),
            SpectralFunctional::Purity => (deg * mu * mu, ratio * ratio),
            SpectralFunctional::Entropy => {
                let grow = (ln_mu + ln_ratio) / ln_mu;
                (-deg * mu * ln_mu / std::f64::consts::LN_2, ratio * grow)
            }
            SpectralFunctional::Partition { .. } => unreachable!(),
        };
        total += term;
        // Consecutive-term ratio for j > k is at most step·(k+4)/(k+2) < 1
        // once k is large enough; the tail is then geometric.
        let q = step * (kf + 4.0) / (kf + 2.0);
        if q < 1.0 {
            let next = term * step * (kf + 3.0) / (kf + 1.0);
            let tail = next / (1.0 - q);
            if tail < tail_tol {
                return Ok(total);
            }
        }
    }
    Err(Error::TruncationCap {
        what: "spectral sum",
        cap: SPECTRAL_CAP,
        tail: f64::NAN,
    })
}

/// (Σ_l p_l e^{−ξ(l+½)})³ over the 1D energy diagonal of the reduced state.
fn partition_sum(p: &CouplingParams, xi: f64, tail_tol: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(domain("xi", xi, "[0, inf)"));
    }
    let mut levels = 64;
    loop {
        let dist = moshinsky_diagonal(p, Truncation::Fixed(levels))?;
        let mass: f64 = dist.probs.iter().sum();
        let axis: f64 = dist
            .probs
            .iter()
            .enumerate()
            .map(|(l, &pl)| pl * (-xi * (l as f64 + 0.5)).exp())
            .sum();
        let missing = (1.0 - mass).max(0.0);
        let axis_tail = missing * (-xi * (levels as f64 + 1.5)).exp();
        let tail = 3.0 * (axis + axis_tail).powi(2) * axis_tail;
        if tail < tail_tol {
            return Ok(axis.powi(3));
        }
        if levels >= MOSHINSKY_MAX_LEVEL {
            return Err(Error::TruncationCap {
                what: "partition sum",
                cap: MOSHINSKY_MAX_LEVEL,
                tail,
            });
        }
        levels = (2 * levels).min(MOSHINSKY_MAX_LEVEL);
    }
}
