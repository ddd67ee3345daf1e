//! Cross-checks of every closed form against the oracle layer, collected into
//! a single pass/fail report.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distributions::{
    factorized_gaussian_diagonal, gaussian_axis_amplitude, ground_state_amplitude,
    legendre_distribution, moshinsky_diagonal, Truncation, MOSHINSKY_MAX_LEVEL,
};
use crate::energetics::{
    cumulants, ohmic_uncertainties, partition_function, purity_from_energy_moments,
};
use crate::entanglement::{
    concurrence, concurrence_from_correlation_energy, correlation_energy_from_concurrence,
    purity, purity_from_uncertainties, uncertainties, von_neumann_entropy, InversionMode,
    UncertaintyPair,
};
use crate::error::Result;
use crate::model::{
    chi_from_correlation_energy, correlation_energy, hf_energy, hf_overlap, CouplingParams,
};
use crate::oracle::{
    energy_expectation, normalized, overlap, spectral_sum, Orbital, PairFactor, PairState,
    SpectralFunctional, DEFAULT_ORDER,
};
use crate::separable::{
    gaussian_energy_gap, gaussian_overlap, generalized_overlap, witness_expectation_ground,
    WavepacketCoefficients,
};
use crate::special::linspace;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Default,
    /// Every tolerance divided by 10.
    Strict,
}

impl Profile {
    fn scale(&self) -> f64 {
        match self {
            Profile::Default => 1.0,
            Profile::Strict => 0.1,
        }
    }
}

/// The closed forms under test. Swapping one out lets a harness confirm the
/// corresponding check notices.
#[derive(Clone, Copy)]
pub struct ClosedForms {
    pub entropy: fn(&CouplingParams) -> f64,
    pub purity: fn(&CouplingParams) -> f64,
    pub hf_overlap: fn(&CouplingParams) -> f64,
    pub correlation_energy: fn(&CouplingParams) -> f64,
    pub gaussian_overlap: fn(&CouplingParams, f64) -> Result<f64>,
    pub partition_function: fn(&UncertaintyPair, f64) -> Result<f64>,
}

impl Default for ClosedForms {
    fn default() -> Self {
        Self {
            entropy: von_neumann_entropy,
            purity,
            hf_overlap,
            correlation_energy,
            gaussian_overlap,
            partition_function,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    /// Largest deviation found (absolute unless the name says otherwise).
    pub error: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Set when the check could not be evaluated.
    pub failure: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub profile: Profile,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&CheckResult> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

fn chi_points(lo: f64, hi: f64, n: usize) -> Result<Vec<CouplingParams>> {
    linspace(lo, hi, n)
        .into_iter()
        .map(CouplingParams::from_chi)
        .collect()
}

fn max_abs(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, |m, v| {
        if v.is_nan() {
            f64::INFINITY
        } else {
            m.max(v.abs())
        }
    })
}

type CheckFn = fn(&ClosedForms) -> Result<f64>;

fn checks() -> Vec<(&'static str, f64, CheckFn)> {
    vec![
        ("entropy vs spectral sum", 1e-8, |c| {
            let pts = chi_points(0.05, 0.99, 10)?;
            let mut errs = Vec::new();
            for p in &pts {
                let sum = spectral_sum(p, SpectralFunctional::Entropy, 1e-13)?;
                errs.push((c.entropy)(p) - sum);
            }
            Ok(max_abs(errs))
        }),
        ("purity vs spectral sum", 1e-12, |c| {
            let mut errs = Vec::new();
            for p in &chi_points(0.05, 0.99, 10)? {
                errs.push((c.purity)(p) - spectral_sum(p, SpectralFunctional::Purity, 1e-15)?);
            }
            Ok(max_abs(errs))
        }),
        ("spectral normalization", 1e-12, |_| {
            let mut errs = Vec::new();
            for p in &chi_points(0.05, 1.0, 10)? {
                errs.push(spectral_sum(p, SpectralFunctional::Normalization, 1e-14)? - 1.0);
            }
            Ok(max_abs(errs))
        }),
        ("purity from uncertainties", 1e-12, |c| {
            let mut errs = Vec::new();
            for p in &chi_points(0.02, 1.0, 50)? {
                errs.push((c.purity)(p) - purity_from_uncertainties(&uncertainties(p))?);
            }
            Ok(max_abs(errs))
        }),
        ("hartree-fock overlap vs quadrature", 1e-10, |c| {
            let mut errs = Vec::new();
            for k in [0.0, 0.05, 0.25, 0.4, 0.49] {
                let p = CouplingParams::from_k(k)?;
                let q = overlap(&PairState::hartree_fock(&p), &PairState::moshinsky_ground(&p), DEFAULT_ORDER);
                errs.push((c.hf_overlap)(&p) - q.norm_sqr());
            }
            Ok(max_abs(errs))
        }),
        ("gaussian overlap vs quadrature", 1e-10, |c| {
            let mut errs = Vec::new();
            for p in &chi_points(0.2, 1.0, 5)? {
                for a in [0.3, p.chi(), 1.0, 1.8] {
                    let q = overlap(&PairState::gaussian_product(a), &PairState::moshinsky_ground(p), DEFAULT_ORDER);
                    errs.push((c.gaussian_overlap)(p, a)? - q.norm_sqr());
                }
            }
            Ok(max_abs(errs))
        }),
        ("deformed wavepacket overlap vs quadrature", 1e-10, |_| {
            let mut rng = ChaCha8Rng::seed_from_u64(17);
            let mut errs = Vec::new();
            for _ in 0..10 {
                let p = CouplingParams::from_chi(rng.gen_range(0.2..1.0))?;
                let coeffs: [Vec<Complex64>; 3] = std::array::from_fn(|_| {
                    (0..rng.gen_range(1..=4))
                        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                        .collect()
                });
                let state = normalized(&PairState::wavepacket(&p, &coeffs), DEFAULT_ORDER);
                let q = overlap(&state, &PairState::moshinsky_ground(&p), DEFAULT_ORDER).norm_sqr();
                let w = WavepacketCoefficients::new(coeffs)?;
                errs.push(generalized_overlap(&p, &w)? - q);
            }
            Ok(max_abs(errs))
        }),
        ("coupling round trip through correlation energy", 1e-10, |c| {
            let mut errs = Vec::new();
            for p in &chi_points(0.02, 1.0, 50)? {
                errs.push(chi_from_correlation_energy((c.correlation_energy)(p))? - p.chi());
            }
            Ok(max_abs(errs))
        }),
        ("concurrence round trip through correlation energy", 1e-10, |_| {
            let mut errs = Vec::new();
            for cc in linspace(0.0, 0.99, 50) {
                let e = correlation_energy_from_concurrence(cc, InversionMode::ExactRoot)?;
                errs.push(concurrence_from_correlation_energy(e)? - cc);
            }
            Ok(max_abs(errs))
        }),
        ("concurrence from correlation energy", 1e-10, |c| {
            let mut errs = Vec::new();
            for p in &chi_points(0.02, 1.0, 50)? {
                let via = concurrence_from_correlation_energy((c.correlation_energy)(p))?;
                errs.push(via - (1.0 - (c.purity)(p)));
            }
            Ok(max_abs(errs))
        }),
        ("exact-state distribution vs gaussian form", 1e-12, |_| {
            let mut errs = Vec::new();
            for p in &chi_points(0.1, 0.9, 9)? {
                let m = moshinsky_diagonal(p, Truncation::Fixed(20))?;
                let l = legendre_distribution(&uncertainties(p), Truncation::Fixed(20))?;
                errs.extend(m.probs.iter().zip(&l.probs).map(|(a, b)| a - b));
            }
            Ok(max_abs(errs))
        }),
        ("distribution normalization", 1e-10, |_| {
            let mut errs = Vec::new();
            for p in &chi_points(0.25, 1.0, 8)? {
                errs.push(moshinsky_diagonal(p, Truncation::default())?.total() - 1.0);
            }
            for a in [0.2, 0.5, 1.0, 2.0, 4.0] {
                errs.push(factorized_gaussian_diagonal(a, Truncation::default())?.total() - 1.0);
            }
            for (dq2, dp2) in [(0.5, 0.5), (0.4, 1.2), (2.0, 0.3), (1.0, 1.0)] {
                let u = UncertaintyPair::new(dq2, dp2)?;
                errs.push(legendre_distribution(&u, Truncation::default())?.total() - 1.0);
            }
            Ok(max_abs(errs))
        }),
        ("ground-state amplitudes vs quadrature", 1e-10, |_| {
            let mut errs = Vec::new();
            for chi in [0.3, 0.5, 0.8] {
                let p = CouplingParams::from_chi(chi)?;
                let g = PairState::moshinsky_ground(&p);
                for (a, b) in [([0, 0, 0], [0, 0, 0]), ([2, 1, 0], [0, 1, 2]), ([1, 3, 0], [3, 1, 2])] {
                    let q = overlap(&PairState::ho_basis(a, b), &g, DEFAULT_ORDER).re;
                    errs.push(ground_state_amplitude(&p, a, b) - q);
                }
            }
            Ok(max_abs(errs))
        }),
        ("gaussian amplitudes vs quadrature", 1e-10, |_| {
            let mut errs = Vec::new();
            for a in [0.3, 0.5, 2.0] {
                for l in 0..8 {
                    let basis = PairState::isotropic(PairFactor::Product(Orbital::ho_eigenstate(l), Orbital::ho_eigenstate(0)));
                    let state = PairState::isotropic(PairFactor::Product(Orbital::gaussian(a), Orbital::gaussian(1.0)));
                    let q = overlap(&basis, &state, DEFAULT_ORDER).re.cbrt();
                    errs.push(gaussian_axis_amplitude(a, l)? - q);
                }
            }
            Ok(max_abs(errs))
        }),
        ("cumulants vs moment sums (relative)", 1e-8, |_| {
            let mut errs = Vec::new();
            for p in &chi_points(0.2, 0.95, 10)? {
                let u = uncertainties(p);
                let series = cumulants(&u, 6)?;
                let oracle = moment_cumulants(&u, 6)?;
                errs.extend(series.values.iter().zip(&oracle).map(|(a, b)| (a - b) / b));
            }
            Ok(max_abs(errs))
        }),
        ("minimal packet cumulants", 1e-12, |_| {
            let c = cumulants(&UncertaintyPair { dq2: 0.5, dp2: 0.5 }, 20)?;
            Ok(max_abs(
                std::iter::once(c.values[0] - 1.5).chain(c.values[1..].iter().copied()),
            ))
        }),
        ("purity from energy moments", 1e-10, |c| {
            let mut errs = Vec::new();
            for p in &chi_points(0.02, 1.0, 50)? {
                let k = cumulants(&uncertainties(p), 2)?;
                errs.push(purity_from_energy_moments(k.mean(), k.second())? - (c.purity)(p));
            }
            Ok(max_abs(errs))
        }),
        ("partition function vs spectral sum", 1e-8, |c| {
            let mut errs = Vec::new();
            for chi in [0.4, 0.5, 0.8] {
                let p = CouplingParams::from_chi(chi)?;
                for xi in [0.0, 0.5, 1.0, 2.0] {
                    let z = (c.partition_function)(&uncertainties(&p), xi)?;
                    errs.push(z - spectral_sum(&p, SpectralFunctional::Partition { xi }, 1e-12)?);
                }
            }
            Ok(max_abs(errs))
        }),
        ("hartree-fock stationarity and energy gap", 1e-10, |_| {
            let mut errs = Vec::new();
            for k in [0.0, 0.1, 0.3, 0.45] {
                let p = CouplingParams::from_k(k)?;
                for a in [0.4, p.hf_exponent(), 1.3] {
                    let e = energy_expectation(&PairState::gaussian_product(a), &p, DEFAULT_ORDER);
                    errs.push(e - hf_energy(&p) - gaussian_energy_gap(&p, a)?);
                }
            }
            Ok(max_abs(errs))
        }),
        ("witness expectation on the ground state", 1e-10, |c| {
            let mut errs = Vec::new();
            for p in &chi_points(0.1, 1.0, 10)? {
                let e = energy_expectation(&PairState::moshinsky_ground(p), p, DEFAULT_ORDER);
                errs.push(e - hf_energy(p) - witness_expectation_ground(p));
                errs.push(witness_expectation_ground(p) + (c.correlation_energy)(p));
            }
            Ok(max_abs(errs))
        }),
        ("heisenberg bound of bath variances", 1e-12, |_| {
            let mut worst = 0.0f64;
            for beta in linspace(0.0, 0.25, 60) {
                let u = ohmic_uncertainties(beta, 10.0)?;
                worst = worst.max(0.25 - u.product());
            }
            Ok(worst.max(0.0))
        }),
        ("concurrence two ways", 1e-12, |c| {
            let mut errs = Vec::new();
            for p in &chi_points(0.02, 1.0, 20)? {
                errs.push(concurrence(p) - (1.0 - (c.purity)(p)));
            }
            Ok(max_abs(errs))
        }),
    ]
}

/// 3D cumulants of the unit-oscillator energy from raw moments of the
/// one-axis level distribution.
pub fn moment_cumulants(u: &UncertaintyPair, order: usize) -> Result<Vec<f64>> {
    let d = legendre_distribution(u, Truncation::Fixed(MOSHINSKY_MAX_LEVEL))?;
    let mean: f64 = d.probs.iter().enumerate().map(|(l, p)| p * (l as f64 + 0.5)).sum();
    let central: Vec<f64> = (0..=order)
        .map(|k| {
            d.probs
                .iter()
                .enumerate()
                .map(|(l, p)| p * (l as f64 + 0.5 - mean).powi(k as i32))
                .sum()
        })
        .collect();
    // m_n = Σ_{k=0}^{n−1} C(n−1,k) κ_{k+1} m_{n−1−k}, with κ₁ = 0 for central moments.
    let mut kappa = vec![0.0; order + 1];
    for n in 2..=order {
        let mut acc = central[n];
        let mut binom = 1.0;
        for k in 0..n - 1 {
            if k > 0 {
                binom = binom * (n - k) as f64 / k as f64;
            }
            acc -= binom * kappa[k + 1] * central[n - 1 - k];
        }
        kappa[n] = acc;
    }
    kappa[1] = mean;
    Ok(kappa[1..].iter().map(|k| 3.0 * k).collect())
}

pub fn verify(profile: Profile) -> VerifyReport {
    verify_with(profile, &ClosedForms::default())
}

pub fn verify_with(profile: Profile, forms: &ClosedForms) -> VerifyReport {
    let checks = checks()
        .into_par_iter()
        .map(|(name, tol, f)| {
            let tolerance = tol * profile.scale();
            match f(forms) {
                Ok(error) => CheckResult {
                    name,
                    error,
                    tolerance,
                    passed: error <= tolerance,
                    failure: None,
                },
                Err(e) => CheckResult {
                    name,
                    error: f64::INFINITY,
                    tolerance,
                    passed: false,
                    failure: Some(e.to_string()),
                },
            }
        })
        .collect();
    VerifyReport { profile, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_profile_passes() {
        let r = verify(Profile::Default);
        for c in &r.checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn misgrouped_entropy_is_caught() {
        fn regrouped(p: &CouplingParams) -> f64 {
            let chi = p.chi();
            let bracket = (chi + 1.0).powi(2) * (chi + 1.0).ln()
                - 2.0 * chi * (4.0 * chi).ln()
                - (chi - 1.0).powi(2) * (chi - 1.0).abs().ln();
            3.0 / 4f64.ln() * chi * bracket
        }
        let forms = ClosedForms {
            entropy: regrouped,
            ..ClosedForms::default()
        };
        let r = verify_with(Profile::Default, &forms);
        let failed: Vec<_> = r.failures().iter().map(|c| c.name).collect();
        assert_eq!(failed, vec!["entropy vs spectral sum"]);
    }
}
