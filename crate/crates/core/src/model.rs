//! Parameterization of the coupled-oscillator model and its exact and
//! Hartree–Fock energetics.
//!
//! Two identical 3D oscillators with an extra repulsive quadratic coupling
//! `K` between them. All energies are dimensionless (ħ = ω = m = 1). The
//! effective coupling χ = (1 − 2K)^{1/4} is the frequency of the relative
//! mode; χ = 1 is the decoupled point and χ → 0 the degenerate limit K → 1/2.

use serde::Serialize;

use crate::error::{domain, Result};

/// Limit of the correlation energy as K → 1/2: (3/2)(√2 − 1).
pub const MAX_CORRELATION_ENERGY: f64 = 1.5 * (std::f64::consts::SQRT_2 - 1.0);

/// One point of the model, parameterized equivalently by `K` or `χ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingParams {
    k: f64,
    chi: f64,
    zeta: f64,
    beta: f64,
}

impl CouplingParams {
    /// Builds the point from the bare coupling, 0 ≤ K < 1/2.
    pub fn from_k(k: f64) -> Result<Self> {
        if !(0.0..0.5).contains(&k) {
            return Err(domain("K", k, "[0, 1/2)"));
        }
        let chi = (1.0 - 2.0 * k).sqrt().sqrt();
        Ok(Self::assemble(k, chi))
    }

    /// Builds the point from the effective coupling, 0 < χ ≤ 1.
    pub fn from_chi(chi: f64) -> Result<Self> {
        if !(chi > 0.0 && chi <= 1.0) {
            return Err(domain("chi", chi, "(0, 1]"));
        }
        // 1 − χ⁴ factored so the subtraction stays accurate near χ = 1
        let one_minus_chi4 = (1.0 - chi) * (1.0 + chi) * (1.0 + chi * chi);
        Ok(Self::assemble(0.5 * one_minus_chi4, chi))
    }

    fn assemble(k: f64, chi: f64) -> Self {
        let chi2 = chi * chi;
        let chi4 = chi2 * chi2;
        let one_minus_chi4 = 2.0 * k;
        Self {
            k,
            chi,
            zeta: (1.0 - chi2) / (1.0 + chi2),
            beta: one_minus_chi4 * one_minus_chi4 / (4.0 * (1.0 + chi4)),
        }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }

    /// Scaled coupling ζ = (1 − χ²)/(1 + χ²) ∈ [0, 1).
    pub fn zeta(&self) -> f64 {
        self.zeta
    }

    /// Ohmic-bath coupling paired with this point, β = (1 − χ⁴)²/(4(1 + χ⁴)).
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// χ² = √(1 − 2K).
    pub fn chi2(&self) -> f64 {
        self.chi * self.chi
    }

    /// √(1 − K), the exponent of the Hartree–Fock orbitals.
    pub fn hf_exponent(&self) -> f64 {
        (1.0 - self.k).sqrt()
    }
}

/// E_{n,m} = 3/2 (1 + χ²) + n + m χ².
pub fn energy_level(p: &CouplingParams, n: u32, m: u32) -> f64 {
    let chi2 = p.chi2();
    1.5 * (1.0 + chi2) + n as f64 + m as f64 * chi2
}

/// Hartree–Fock energy 3 √(1 − K).
pub fn hf_energy(p: &CouplingParams) -> f64 {
    3.0 * p.hf_exponent()
}

/// E_HF − E_{0,0} = 3√(1−K) − (3/2)(1 + √(1−2K)).
///
/// Evaluated in the rationalized form 3K² / ((1 − K + √(1−2K))(2√(1−K) + 1 + √(1−2K)))
/// which has no cancellation at small K.
pub fn correlation_energy(p: &CouplingParams) -> f64 {
    let k = p.k;
    let s = p.hf_exponent();
    let t = p.chi2();
    3.0 * k * k / ((1.0 - k + t) * (2.0 * s + 1.0 + t))
}

/// Squared fidelity |⟨Ψ_HF|Ψ₀⟩|².
pub fn hf_overlap(p: &CouplingParams) -> f64 {
    let k = p.k;
    let s = p.hf_exponent();
    let t = p.chi2();
    let denom = (1.0 + s) * (1.0 + t) - k;
    64.0 * (1.0 - k).powf(1.5) * t.powf(1.5) / (denom * denom * denom)
}

/// Inverts [`correlation_energy`]: the effective coupling χ at which the
/// correlation energy equals `e`, for 0 ≤ e < (3/2)(√2 − 1).
///
/// Uses the rationalized form of the quartic-root expression
/// χ⁴ = 1 − (4/9)(√(2E(E+3)(2E+3)²) − 3E(E+3)), written for χ² as
/// 4(Ē − E)(3/√2 + E + 3/2) / (3(2E + 3 + 2√(2E(E+3)))) to stay accurate as E → Ē.
pub fn chi_from_correlation_energy(e: f64) -> Result<f64> {
    if !(0.0..MAX_CORRELATION_ENERGY).contains(&e) {
        return Err(domain("E_corr", e, "[0, (3/2)(sqrt2 - 1))"));
    }
    let b = e + 1.5;
    let gap = MAX_CORRELATION_ENERGY - e;
    let chi2 = 4.0 * gap * (1.5 * std::f64::consts::SQRT_2 + b)
        / (3.0 * (2.0 * b + (8.0 * e * (e + 3.0)).sqrt()));
    Ok(chi2.sqrt().min(1.0))
}

/// The printed quartic-root form of [`chi_from_correlation_energy`], kept for
/// cross-checking the rationalized evaluation.
pub fn chi_from_correlation_energy_quartic(e: f64) -> f64 {
    let ee = e * (e + 3.0);
    let inner = (2.0 * ee * (2.0 * e + 3.0).powi(2)).sqrt() - 3.0 * ee;
    (1.0 - 4.0 / 9.0 * inner).max(0.0).powf(0.25)
}

/// Convenience: the model point at a given correlation energy.
pub fn params_from_correlation_energy(e: f64) -> Result<CouplingParams> {
    CouplingParams::from_chi(chi_from_correlation_energy(e)?)
}
