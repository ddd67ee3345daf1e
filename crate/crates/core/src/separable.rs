//! Symmetric separable pure states near the Hartree–Fock state: the gaussian
//! family, its Hermite deformations, and the energy gap they leave below them.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::model::{correlation_energy, hf_overlap, CouplingParams};
use crate::oracle::find_root_bracketed;
use crate::special::ln_factorial;

/// Product state with both particles in the gaussian orbital of exponent `a`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussianSeparableState {
    pub a: f64,
}

impl GaussianSeparableState {
    pub fn new(a: f64) -> Result<Self> {
        if !(a > 0.0 && a.is_finite()) {
            return Err(domain("a", a, "(0, inf)"));
        }
        Ok(Self { a })
    }

    pub fn hartree_fock(p: &CouplingParams) -> Self {
        Self { a: p.hf_exponent() }
    }

    /// The member of the family closest to the exact ground state.
    pub fn max_overlap(p: &CouplingParams) -> Self {
        Self { a: p.chi() }
    }
}

/// Per-axis Hermite coefficients of a symmetric deformed wavepacket.
#[derive(Debug, Clone, PartialEq)]
pub struct WavepacketCoefficients {
    axes: [Vec<Complex64>; 3],
}

impl WavepacketCoefficients {
    pub fn new(axes: [Vec<Complex64>; 3]) -> Result<Self> {
        for c in &axes {
            if c.iter().all(|z| z.norm_sqr() == 0.0) {
                return Err(Error::InvalidArgument(
                    "every axis needs a nonzero coefficient".into(),
                ));
            }
        }
        Ok(Self { axes })
    }

    pub fn axes(&self) -> &[Vec<Complex64>; 3] {
        &self.axes
    }
}

pub fn gaussian_overlap(p: &CouplingParams, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(domain("a", a, "(0, inf)"));
    }
    let chi = p.chi();
    let v = 4.0 * a * chi / ((a + 1.0) * (chi * chi + a));
    Ok(v * v * v)
}

/// The exponent below χ whose gaussian state has the same overlap with the
/// ground state as the Hartree–Fock state.
pub fn a_low(p: &CouplingParams) -> Result<f64> {
    let chi = p.chi();
    if chi == 1.0 {
        return Ok(1.0);
    }
    let target = hf_overlap(p);
    find_root_bracketed(
        |a| gaussian_overlap(p, a).unwrap_or(f64::NAN) - target,
        1e-12,
        chi,
        1e-12,
    )
}

/// Estimate of lim a_low/χ² as χ → 0, read off at the smallest grid points.
pub fn a_low_quadratic_coefficient() -> Result<f64> {
    let mut estimates = Vec::new();
    for chi in [1e-3, 2e-3, 4e-3] {
        let p = CouplingParams::from_chi(chi)?;
        estimates.push(a_low(&p)? / (chi * chi));
    }
    // Richardson step assuming a linear correction in χ.
    Ok(2.0 * estimates[0] - estimates[1])
}

/// One axis factor |Σⱼ 2ʲ j! cⱼ² tʲ|² / (Σⱼ 2ʲ j! |cⱼ|²)² with t = (χ−1)/(χ+1).
pub fn wavepacket_axis_factor(chi: f64, coeffs: &[Complex64]) -> f64 {
    let t = (chi - 1.0) / (chi + 1.0);
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    for (j, c) in coeffs.iter().enumerate() {
        let w = (j as f64 * 2f64.ln() + ln_factorial(j)).exp();
        num += c * c * (w * t.powi(j as i32));
        den += w * c.norm_sqr();
    }
    num.norm_sqr() / (den * den)
}

pub fn generalized_overlap(p: &CouplingParams, w: &WavepacketCoefficients) -> Result<f64> {
    let base = gaussian_overlap(p, p.chi())?;
    Ok(base
        * w.axes
            .iter()
            .map(|c| wavepacket_axis_factor(p.chi(), c))
            .product::<f64>())
}

/// ⟨H⟩ − E_HF over the gaussian family.
pub fn gaussian_energy_gap(p: &CouplingParams, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(domain("a", a, "(0, inf)"));
    }
    let d = a - p.hf_exponent();
    Ok(1.5 * d * d / a)
}

/// Expectation of H − E_HF in the exact ground state.
pub fn witness_expectation_ground(p: &CouplingParams) -> f64 {
    -correlation_energy(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{hf_energy, MAX_CORRELATION_ENERGY};
    use crate::oracle::{energy_expectation, normalized, overlap, PairState, DEFAULT_ORDER};
    use crate::special::linspace;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn at(chi: f64) -> CouplingParams {
        CouplingParams::from_chi(chi).unwrap()
    }

    fn random_coeffs(rng: &mut ChaCha8Rng) -> [Vec<Complex64>; 3] {
        std::array::from_fn(|_| {
            let n = rng.gen_range(1..=5);
            (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
    }

    #[test]
    fn gaussian_overlap_examples() {
        assert_eq!(gaussian_overlap(&at(1.0), 1.0).unwrap(), 1.0);
        let peak = gaussian_overlap(&at(0.5), 0.5).unwrap();
        assert_abs_diff_eq!(peak, 8.0 / 1.5f64.powi(6), epsilon = 1e-15);
        assert_abs_diff_eq!(peak, 0.70233, epsilon = 1e-5);
        assert!(gaussian_overlap(&at(0.5), 0.0).is_err());
        for k in linspace(0.0, 0.49, 30) {
            let p = CouplingParams::from_k(k).unwrap();
            let g = gaussian_overlap(&p, p.hf_exponent()).unwrap();
            assert_abs_diff_eq!(g, hf_overlap(&p), epsilon = 1e-12);
        }
    }

    #[test]
    fn gaussian_overlap_matches_quadrature() {
        let p = at(0.4);
        for a in [0.1, 0.4, 0.9, 1.7] {
            let q = overlap(&PairState::gaussian_product(a), &PairState::moshinsky_ground(&p), DEFAULT_ORDER);
            assert_abs_diff_eq!(q.norm_sqr(), gaussian_overlap(&p, a).unwrap(), epsilon = 1e-12);
        }
    }

    #[test]
    fn max_overlap_at_chi() {
        let p = at(0.3);
        let peak = gaussian_overlap(&p, 0.3).unwrap();
        for a in linspace(0.01, 3.0, 300) {
            assert!(gaussian_overlap(&p, a).unwrap() <= peak + 1e-15);
        }
    }

    #[test]
    fn a_low_properties() {
        assert_eq!(a_low(&at(1.0)).unwrap(), 1.0);
        let p = at(0.5);
        let a = a_low(&p).unwrap();
        assert!((gaussian_overlap(&p, a).unwrap() - hf_overlap(&p)).abs() < 1e-12);
        for chi in linspace(0.02, 0.99, 40) {
            let p = at(chi);
            let a = a_low(&p).unwrap();
            assert!(a <= chi && chi <= p.hf_exponent());
        }
        assert!(a_low(&at(0.999)).unwrap() > 0.99);
        let gamma = a_low_quadratic_coefficient().unwrap();
        assert!(gamma.is_finite() && gamma > 0.0);
    }

    #[test]
    fn generalized_overlap_examples() {
        let one = vec![Complex64::new(1.0, 0.0)];
        let w = WavepacketCoefficients::new([one.clone(), one.clone(), one]).unwrap();
        let p = at(0.5);
        assert_abs_diff_eq!(
            generalized_overlap(&p, &w).unwrap(),
            gaussian_overlap(&p, 0.5).unwrap(),
            epsilon = 1e-15
        );
        let excited = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
        let w = WavepacketCoefficients::new([excited.clone(), excited.clone(), excited]).unwrap();
        assert_eq!(generalized_overlap(&at(1.0), &w).unwrap(), 0.0);
        assert!(WavepacketCoefficients::new([vec![], vec![Complex64::new(1.0, 0.0)], vec![Complex64::new(1.0, 0.0)]]).is_err());
    }

    #[test]
    fn generalized_overlap_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for chi in [0.3, 0.7] {
            let p = at(chi);
            for _ in 0..4 {
                let c = random_coeffs(&mut rng);
                let w = WavepacketCoefficients::new(c.clone()).unwrap();
                let state = normalized(&PairState::wavepacket(&p, &c), DEFAULT_ORDER);
                let q = overlap(&state, &PairState::moshinsky_ground(&p), DEFAULT_ORDER).norm_sqr();
                assert_abs_diff_eq!(q, generalized_overlap(&p, &w).unwrap(), epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn axis_factors_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let chi = rng.gen_range(0.01..1.0);
            let c = random_coeffs(&mut rng);
            for axis in &c {
                let f = wavepacket_axis_factor(chi, axis);
                assert!((0.0..=1.0 + 1e-14).contains(&f));
            }
            let w = WavepacketCoefficients::new(c).unwrap();
            let p = at(chi);
            assert!(generalized_overlap(&p, &w).unwrap() <= gaussian_overlap(&p, chi).unwrap() + 1e-15);
        }
    }

    #[test]
    fn energy_gap_examples() {
        let p = CouplingParams::from_k(0.0).unwrap();
        assert_abs_diff_eq!(gaussian_energy_gap(&p, 2.0).unwrap(), 0.75, epsilon = 1e-15);
        let p = CouplingParams::from_k(0.3).unwrap();
        assert_eq!(gaussian_energy_gap(&p, p.hf_exponent()).unwrap(), 0.0);
        assert!(gaussian_energy_gap(&p, p.chi()).unwrap() > 0.0);
        assert!(gaussian_energy_gap(&p, -1.0).is_err());
    }

    #[test]
    fn energy_gap_matches_quadrature() {
        for k in [0.0, 0.2, 0.45] {
            let p = CouplingParams::from_k(k).unwrap();
            for a in [0.3, 0.8, p.hf_exponent(), 1.6] {
                let e = energy_expectation(&PairState::gaussian_product(a), &p, DEFAULT_ORDER);
                assert_abs_diff_eq!(e - hf_energy(&p), gaussian_energy_gap(&p, a).unwrap(), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn separable_wavepackets_stay_above_hf() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        for _ in 0..100 {
            let chi = rng.gen_range(0.05..1.0);
            let p = at(chi);
            let state = PairState::wavepacket(&p, &random_coeffs(&mut rng));
            let e = energy_expectation(&state, &p, 40);
            assert!(e >= hf_energy(&p) - 1e-10);
        }
    }

    #[test]
    fn witness_on_ground_state() {
        assert_eq!(witness_expectation_ground(&CouplingParams::from_k(0.0).unwrap()), 0.0);
        assert_abs_diff_eq!(
            witness_expectation_ground(&CouplingParams::from_k(0.25).unwrap()),
            -0.037416,
            epsilon = 1e-6
        );
        let p = CouplingParams::from_k(0.5 - 1e-15).unwrap();
        assert_abs_diff_eq!(witness_expectation_ground(&p), -MAX_CORRELATION_ENERGY, epsilon = 1e-6);
    }
}
