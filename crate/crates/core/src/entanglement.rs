//! Reduced one-particle state of the ground state: its spectrum and the
//! entanglement measures built on it, plus their relation to the correlation
//! energy and to single-particle uncertainties.

use std::f64::consts::{LN_2, SQRT_2};

use serde::Serialize;

use crate::error::{domain, Result};
use crate::model::{
    chi_from_correlation_energy, hf_overlap, CouplingParams, MAX_CORRELATION_ENERGY,
};
use crate::oracle::find_root_bracketed;

/// Geometric spectrum μ_k = base³·ratio^k of the reduced density matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedSpectrum {
    pub base: f64,
    pub ratio: f64,
}

impl ReducedSpectrum {
    pub fn new(p: &CouplingParams) -> Self {
        let chi = p.chi();
        let s = 1.0 + chi;
        Self {
            base: 4.0 * chi / (s * s),
            ratio: ((1.0 - chi) / s).powi(2),
        }
    }

    pub fn eigenvalue(&self, k: usize) -> f64 {
        if self.ratio == 0.0 {
            return if k == 0 { self.base.powi(3) } else { 0.0 };
        }
        (3.0 * self.base.ln() + k as f64 * self.ratio.ln()).exp()
    }
}

/// Squared position and momentum deviations of one particle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyPair {
    pub dq2: f64,
    pub dp2: f64,
}

impl UncertaintyPair {
    /// Validates positivity and the Heisenberg bound (with a 1e−12 allowance).
    pub fn new(dq2: f64, dp2: f64) -> Result<Self> {
        if !(dq2 > 0.0) {
            return Err(domain("dq2", dq2, "(0, inf)"));
        }
        if !(dp2 > 0.0) {
            return Err(domain("dp2", dp2, "(0, inf)"));
        }
        if dq2 * dp2 < 0.25 - 1e-12 {
            return Err(domain("dq2*dp2", dq2 * dp2, "[1/4, inf)"));
        }
        Ok(Self { dq2, dp2 })
    }

    pub fn product(&self) -> f64 {
        self.dq2 * self.dp2
    }
}

pub fn reduced_eigenvalue(p: &CouplingParams, k: usize) -> f64 {
    ReducedSpectrum::new(p).eigenvalue(k)
}

/// Number of (l, m, n) with l + m + n = k.
pub fn degeneracy(k: usize) -> usize {
    (k + 1) * (k + 2) / 2
}

pub fn purity(p: &CouplingParams) -> f64 {
    let chi = p.chi();
    let s = 1.0 + chi * chi;
    8.0 * chi.powi(3) / (s * s * s)
}

pub fn concurrence(p: &CouplingParams) -> f64 {
    1.0 - purity(p)
}

/// Von Neumann entropy of the reduced state, in bits.
pub fn von_neumann_entropy(p: &CouplingParams) -> f64 {
    let chi = p.chi();
    if chi == 1.0 {
        return 0.0;
    }
    let up = chi + 1.0;
    let down = chi - 1.0;
    let bracket =
        up * up * up.ln() - 2.0 * chi * (4.0 * chi).ln() - down * down * down.abs().ln();
    (3.0 / (4f64.ln() * chi) * bracket).max(0.0)
}

/// Leading term −3 log₂ χ of the entropy as χ → 0.
pub fn entropy_divergent_leading(p: &CouplingParams) -> f64 {
    -3.0 * p.chi().log2()
}

/// Weak-coupling form −3K²(1+2K) ln K / (8 ln 2) of the entropy.
pub fn entropy_small_k_expansion(k: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&k) {
        return Err(domain("K", k, "[0, 1/2)"));
    }
    if k > 0.05 {
        log::warn!("weak-coupling entropy expansion used at K = {k}, where it is inaccurate");
    }
    if k == 0.0 {
        return Ok(0.0);
    }
    Ok(-3.0 * k * k * (1.0 + 2.0 * k) * k.ln() / (8.0 * LN_2))
}

pub fn uncertainties(p: &CouplingParams) -> UncertaintyPair {
    let chi2 = p.chi2();
    UncertaintyPair {
        dq2: (chi2 + 1.0) / (4.0 * chi2),
        dp2: (chi2 + 1.0) / 4.0,
    }
}

/// Cube of the ratio between the geometric and arithmetic means of Δq², Δp².
pub fn purity_from_uncertainties(u: &UncertaintyPair) -> Result<f64> {
    if !(u.dq2 > 0.0 && u.dp2 > 0.0) || u.product() < 0.25 - 1e-12 {
        return Err(domain("dq2*dp2", u.product(), "[1/4, inf)"));
    }
    Ok((u.product().sqrt() / (0.5 * (u.dq2 + u.dp2))).powi(3))
}

/// Temperature at which a single oscillator's thermal state has the same
/// spectrum as the reduced state.
pub fn effective_temperature(p: &CouplingParams) -> Result<f64> {
    let chi = p.chi();
    if chi >= 1.0 {
        return Err(domain("chi", chi, "(0, 1)"));
    }
    // ln((1+χ)/(1−χ)) = 2 atanh χ
    Ok(3.0 * chi / (4.0 * chi.atanh()))
}

fn check_correlation_energy(e: f64) -> Result<()> {
    if !(0.0..MAX_CORRELATION_ENERGY).contains(&e) {
        return Err(domain("correlation energy", e, "[0, 3(sqrt2-1)/2)"));
    }
    Ok(())
}

/// Concurrence as an algebraic function of the correlation energy.
pub fn concurrence_from_correlation_energy(e: f64) -> Result<f64> {
    check_correlation_energy(e)?;
    let s = e * (e + 3.0);
    let f = (9.0 + 12.0 * s - 4.0 * SQRT_2 * (s * (2.0 * e + 3.0).powi(2)).sqrt()).max(0.0);
    Ok(1.0 - 24.0 * 3f64.sqrt() * f.powf(0.75) / (f.sqrt() + 3.0).powi(3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InversionMode {
    /// Half-integer power series about zero concurrence.
    SmallExpansion,
    /// Fractional power series about unit concurrence.
    LargeExpansion,
    /// Bisection on the exact algebraic relation.
    ExactRoot,
}

pub fn correlation_energy_from_concurrence(c: f64, mode: InversionMode) -> Result<f64> {
    if !(0.0..1.0).contains(&c) {
        return Err(domain("concurrence", c, "[0, 1)"));
    }
    match mode {
        InversionMode::SmallExpansion => {
            Ok(c - (2.0f64 / 3.0).sqrt() * c.powf(1.5) + 2.0 / 3.0 * c * c)
        }
        InversionMode::LargeExpansion => {
            let d = 1.0 - c;
            Ok(MAX_CORRELATION_ENERGY - 0.375 * d.powf(2.0 / 3.0)
                + 3.0 / 64.0 * (SQRT_2 - 4.0) * d.powf(4.0 / 3.0))
        }
        InversionMode::ExactRoot => {
            if c == 0.0 {
                return Ok(0.0);
            }
            let hi = MAX_CORRELATION_ENERGY - 1e-12;
            if concurrence_from_correlation_energy(hi)? <= c {
                return Ok(hi);
            }
            find_root_bracketed(
                |e| concurrence_from_correlation_energy(e).unwrap_or(f64::NAN) - c,
                0.0,
                hi,
                1e-12,
            )
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EntropyMode {
    Exact,
    /// Logarithmically corrected linear law near zero correlation energy.
    SmallExpansion,
    /// Logarithmic divergence at the maximal correlation energy.
    DivergentExpansion,
}

/// Entanglement entropy (bits) as a function of the correlation energy.
pub fn entropy_vs_correlation_energy(e: f64, mode: EntropyMode) -> Result<f64> {
    check_correlation_energy(e)?;
    match mode {
        EntropyMode::Exact => {
            let chi = chi_from_correlation_energy(e)?;
            Ok(von_neumann_entropy(&CouplingParams::from_chi(chi)?))
        }
        EntropyMode::SmallExpansion => {
            if e == 0.0 {
                return Ok(0.0);
            }
            Ok((1.0 + 6f64.ln() - e.ln()) / (2.0 * LN_2) * e)
        }
        EntropyMode::DivergentExpansion => {
            Ok(-3.0 * (MAX_CORRELATION_ENERGY - e).ln() / 4f64.ln())
        }
    }
}

/// (entropy, overlap with the Hartree–Fock state) along a χ grid.
pub fn fidelity_vs_entropy_curve(chi_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    chi_grid
        .iter()
        .map(|&chi| {
            let p = CouplingParams::from_chi(chi)?;
            Ok((von_neumann_entropy(&p), hf_overlap(&p)))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::correlation_energy;
    use crate::oracle::{spectral_sum, SpectralFunctional};
    use crate::special::linspace;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn at(chi: f64) -> CouplingParams {
        CouplingParams::from_chi(chi).unwrap()
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(reduced_eigenvalue(&at(1.0), 0), 1.0);
        assert_eq!(reduced_eigenvalue(&at(1.0), 3), 0.0);
        assert_abs_diff_eq!(reduced_eigenvalue(&at(0.5), 0), (8.0f64 / 9.0).powi(3), epsilon = 1e-15);
    }

    #[test]
    fn degeneracy_counts_triples() {
        for k in 0..12 {
            let mut count = 0;
            for l in 0..=k {
                for m in 0..=(k - l) {
                    let _n = k - l - m;
                    count += 1;
                }
            }
            assert_eq!(degeneracy(k), count);
            assert_eq!(degeneracy(k), k * (k + 3) / 2 + 1);
        }
        assert_eq!(degeneracy(5), 21);
    }

    #[test]
    fn spectrum_identities() {
        for chi in linspace(0.01, 1.0, 60) {
            let s = ReducedSpectrum::new(&at(chi));
            assert_abs_diff_eq!(1.0 - s.ratio, s.base, epsilon = 1e-14);
            let norm = s.base.powi(3) / (1.0 - s.ratio).powi(3);
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn purity_examples() {
        assert_eq!(purity(&at(1.0)), 1.0);
        assert_abs_diff_eq!(purity(&at(0.5)), 0.512, epsilon = 1e-15);
        assert_abs_diff_eq!(concurrence(&at(0.5)), 0.488, epsilon = 1e-15);
        assert!(concurrence(&at(1e-4)) > 0.999_999);
    }

    #[test]
    fn purity_three_ways() {
        for chi in linspace(0.02, 1.0, 50) {
            let p = at(chi);
            let s = ReducedSpectrum::new(&p);
            let geometric = s.base.powi(3) / (1.0 + s.ratio).powi(3);
            assert_abs_diff_eq!(purity(&p), geometric, epsilon = 1e-14);
            let from_u = purity_from_uncertainties(&uncertainties(&p)).unwrap();
            assert_abs_diff_eq!(purity(&p), from_u, epsilon = 1e-14);
        }
    }

    #[test]
    fn entropy_matches_spectral_sum() {
        for chi in linspace(0.05, 0.99, 25) {
            let p = at(chi);
            let sum = spectral_sum(&p, SpectralFunctional::Entropy, 1e-13).unwrap();
            assert_abs_diff_eq!(von_neumann_entropy(&p), sum, epsilon = 1e-8);
        }
        assert_eq!(von_neumann_entropy(&at(1.0)), 0.0);
        assert_abs_diff_eq!(von_neumann_entropy(&at(0.5)), 1.698497, epsilon = 1e-6);
    }

    #[test]
    fn entropy_log_divergence() {
        let p = at(0.01);
        let s = von_neumann_entropy(&p);
        assert_abs_diff_eq!(entropy_divergent_leading(&p), 19.93, epsilon = 0.01);
        assert!((s - entropy_divergent_leading(&p)).abs() < 10.0);
    }

    #[test]
    fn small_k_expansion() {
        assert_eq!(entropy_small_k_expansion(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(entropy_small_k_expansion(1e-3).unwrap(), 3.7446e-6, epsilon = 1e-9);
        let mut last = f64::INFINITY;
        for k in [1e-2, 1e-3, 1e-4] {
            let exact = von_neumann_entropy(&CouplingParams::from_k(k).unwrap());
            let gap = (1.0 - entropy_small_k_expansion(k).unwrap() / exact).abs();
            assert!(gap < last);
            last = gap;
        }
        assert!(entropy_small_k_expansion(0.5).is_err());
    }

    #[test]
    fn uncertainty_examples() {
        let u = uncertainties(&at(1.0));
        assert_eq!((u.dq2, u.dp2), (0.5, 0.5));
        let u = uncertainties(&at(0.5));
        assert_abs_diff_eq!(u.dq2, 1.25, epsilon = 1e-15);
        assert_abs_diff_eq!(u.dp2, 0.3125, epsilon = 1e-15);
        assert_abs_diff_eq!(u.dp2 / u.dq2, 0.25, epsilon = 1e-15);
        assert_eq!(
            purity_from_uncertainties(&UncertaintyPair { dq2: 1.0, dp2: 1.0 }).unwrap(),
            1.0
        );
        assert!(purity_from_uncertainties(&UncertaintyPair { dq2: 0.4, dp2: 0.4 }).is_err());
        assert!(UncertaintyPair::new(0.4, 0.4).is_err());
    }

    #[test]
    fn minimal_packet_only_without_coupling() {
        assert_eq!(uncertainties(&CouplingParams::from_k(0.0).unwrap()).product(), 0.25);
        for k in [1e-6, 0.1, 0.3, 0.49] {
            assert!(uncertainties(&CouplingParams::from_k(k).unwrap()).product() > 0.25);
        }
    }

    #[test]
    fn effective_temperature_behaviour() {
        assert_abs_diff_eq!(
            effective_temperature(&at(0.5)).unwrap(),
            1.5 / (2.0 * 3f64.ln()),
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(effective_temperature(&at(1e-6)).unwrap(), 0.75, epsilon = 1e-9);
        assert!(effective_temperature(&at(1.0)).is_err());
        let grid = linspace(0.01, 0.99, 50);
        for w in grid.windows(2) {
            assert!(effective_temperature(&at(w[1])).unwrap() < effective_temperature(&at(w[0])).unwrap());
        }
    }

    #[test]
    fn concurrence_energy_relation() {
        assert_abs_diff_eq!(concurrence_from_correlation_energy(0.0).unwrap(), 0.0, epsilon = 1e-15);
        for chi in linspace(0.02, 1.0, 50) {
            let p = at(chi);
            let c = concurrence_from_correlation_energy(correlation_energy(&p)).unwrap();
            assert_abs_diff_eq!(c, concurrence(&p), epsilon = 1e-10);
        }
        assert!(concurrence_from_correlation_energy(MAX_CORRELATION_ENERGY - 1e-9).unwrap() > 0.999);
        assert!(concurrence_from_correlation_energy(MAX_CORRELATION_ENERGY).is_err());
        assert!(concurrence_from_correlation_energy(-0.1).is_err());
    }

    #[test]
    fn inversion_modes() {
        for mode in [
            InversionMode::SmallExpansion,
            InversionMode::ExactRoot,
        ] {
            assert_eq!(correlation_energy_from_concurrence(0.0, mode).unwrap(), 0.0);
        }
        let e = correlation_energy_from_concurrence(0.488, InversionMode::ExactRoot).unwrap();
        assert_abs_diff_eq!(e, correlation_energy(&at(0.5)), epsilon = 1e-10);
        assert!(correlation_energy_from_concurrence(1.0, InversionMode::ExactRoot).is_err());
    }

    #[test]
    fn small_expansion_residual_order() {
        for c in [1e-2, 1e-3, 1e-4] {
            let exact = correlation_energy_from_concurrence(c, InversionMode::ExactRoot).unwrap();
            let approx = correlation_energy_from_concurrence(c, InversionMode::SmallExpansion).unwrap();
            assert!(((exact - approx) / c.powf(2.5)).abs() < 1.0);
        }
    }

    #[test]
    fn large_expansion_residual_order() {
        for d in [1e-1, 1e-2, 1e-3] {
            let c = 1.0 - d;
            let exact = correlation_energy_from_concurrence(c, InversionMode::ExactRoot).unwrap();
            let approx = correlation_energy_from_concurrence(c, InversionMode::LargeExpansion).unwrap();
            assert!(((exact - approx) / (d * d)).abs() < 1.0);
        }
    }

    #[test]
    fn entropy_vs_energy() {
        assert_eq!(entropy_vs_correlation_energy(0.0, EntropyMode::Exact).unwrap(), 0.0);
        let e = correlation_energy(&at(0.5));
        assert_abs_diff_eq!(
            entropy_vs_correlation_energy(e, EntropyMode::Exact).unwrap(),
            1.698497,
            epsilon = 1e-6
        );
        let grid = linspace(1e-4, MAX_CORRELATION_ENERGY - 1e-4, 100);
        for w in grid.windows(2) {
            assert!(
                entropy_vs_correlation_energy(w[1], EntropyMode::Exact).unwrap()
                    > entropy_vs_correlation_energy(w[0], EntropyMode::Exact).unwrap()
            );
        }
        let mut last = f64::INFINITY;
        for e in [1e-2, 1e-3, 1e-4, 1e-5] {
            let r = entropy_vs_correlation_energy(e, EntropyMode::SmallExpansion).unwrap()
                / entropy_vs_correlation_energy(e, EntropyMode::Exact).unwrap();
            assert!((1.0 - r).abs() < last);
            last = (1.0 - r).abs();
        }
    }

    #[test]
    fn fidelity_entropy_is_monotone() {
        let grid = linspace(0.02, 1.0, 50);
        let curve = fidelity_vs_entropy_curve(&grid).unwrap();
        assert_eq!(*curve.last().unwrap(), (0.0, 1.0));
        for w in curve.windows(2) {
            assert!(w[1].0 < w[0].0);
            assert!(w[1].1 > w[0].1);
        }
        let far = fidelity_vs_entropy_curve(&[1e-6]).unwrap()[0];
        assert!(far.0 > 50.0 && far.1 < 1e-6);
    }

    proptest! {
        #[test]
        fn heisenberg_holds(chi in 1e-3f64..=1.0) {
            let u = uncertainties(&at(chi));
            prop_assert!(u.product() >= 0.25 - 1e-15);
            prop_assert!(UncertaintyPair::new(u.dq2, u.dp2).is_ok());
        }

        #[test]
        fn measures_in_range(chi in 1e-3f64..=1.0) {
            let p = at(chi);
            prop_assert!(purity(&p) > 0.0 && purity(&p) <= 1.0);
            prop_assert!(von_neumann_entropy(&p) >= 0.0);
            assert_relative_eq!(
                purity(&p),
                purity_from_uncertainties(&uncertainties(&p)).unwrap(),
                max_relative = 1e-13
            );
        }
    }
}
