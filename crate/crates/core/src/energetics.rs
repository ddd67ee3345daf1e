//! Statistics of the single-oscillator energy in a gaussian one-particle
//! state: partition function, cumulants, and the comparison between the
//! exact reduced state and an oscillator damped by an Ohmic bath.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::entanglement::{uncertainties, UncertaintyPair};
use crate::error::{domain, Error, Result};
use crate::model::CouplingParams;

/// Highest cumulant order computed.
pub const MAX_CUMULANT_ORDER: usize = 20;

/// Default bath cutoff in units of the oscillator frequency.
pub const DEFAULT_CUTOFF_RATIO: f64 = 10.0;

/// Default number of cumulants in the slope fit.
pub const DEFAULT_FIT_ORDER: usize = 8;

/// Cumulants ⟨⟨Hⁿ⟩⟩, n = 1..=order, of the 3D unit-oscillator Hamiltonian.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CumulantSeries {
    pub values: Vec<f64>,
    pub source: UncertaintyPair,
}

impl CumulantSeries {
    pub fn order(&self) -> usize {
        self.values.len()
    }

    pub fn mean(&self) -> f64 {
        self.values[0]
    }

    pub fn second(&self) -> f64 {
        self.values.get(1).copied().unwrap_or(0.0)
    }
}

/// Tr[ρ e^{−ξH}] for a 3D isotropic gaussian state with the given variances.
pub fn partition_function(u: &UncertaintyPair, xi: f64) -> Result<f64> {
    if !(xi >= 0.0) {
        return Err(domain("xi", xi, "[0, inf)"));
    }
    let bracket = (u.dp2 + u.dq2) * xi.sinh()
        + 2.0 * u.dq2 * u.dp2 * (xi.cosh() - 1.0)
        + 0.5 * (1.0 + xi.cosh());
    Ok(bracket.powf(-1.5))
}

/// The bracket whose −3/2 power is Z(ξ) equals e^ξ·G(ξ) with
/// G = A + B e^{−ξ} + C e^{−2ξ}, A = (Δq²+½)(Δp²+½), B = ½ − 2Δq²Δp²,
/// C = (Δq²−½)(Δp²−½) and A + B + C = 1. Returns the Taylor coefficients of G.
fn bracket_series(u: &UncertaintyPair, n: usize) -> Vec<f64> {
    let b = 0.5 - 2.0 * u.dq2 * u.dp2;
    let c = (u.dq2 - 0.5) * (u.dp2 - 0.5);
    let mut g = vec![0.0; n + 1];
    g[0] = 1.0;
    let mut inv_fact = 1.0;
    let mut pow2 = 1.0;
    for (k, gk) in g.iter_mut().enumerate().skip(1) {
        inv_fact /= k as f64;
        pow2 *= 2.0;
        let sign = if k % 2 == 1 { -1.0 } else { 1.0 };
        *gk = sign * (b + pow2 * c) * inv_fact;
    }
    g
}

/// Coefficients of ln B for a series B with B_0 = 1.
fn log_series(b: &[f64]) -> Vec<f64> {
    let mut l = vec![0.0; b.len()];
    for n in 1..b.len() {
        let mut acc = b[n];
        for k in 1..n {
            acc -= (k as f64 / n as f64) * l[k] * b[n - k];
        }
        l[n] = acc;
    }
    l
}

/// Cumulants from the exact Taylor coefficients of ln Z at ξ = 0.
pub fn cumulants(u: &UncertaintyPair, order: usize) -> Result<CumulantSeries> {
    if order == 0 || order > MAX_CUMULANT_ORDER {
        return Err(Error::InvalidArgument(format!(
            "cumulant order must be in 1..={MAX_CUMULANT_ORDER}, got {order}"
        )));
    }
    let mut l = log_series(&bracket_series(u, order));
    // ln of the bracket is ξ + ln G.
    l[1] += 1.0;
    let mut values = Vec::with_capacity(order);
    let mut fact = 1.0;
    for (n, ln) in l.iter().enumerate().skip(1) {
        fact *= n as f64;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        values.push(sign * fact * -1.5 * ln);
    }
    // The mean is known exactly; keep it free of rounding from the recursion.
    values[0] = 1.5 * (u.dp2 + u.dq2);
    Ok(CumulantSeries { values, source: *u })
}

/// Stationary variances of a damped oscillator coupled to a zero-temperature
/// Ohmic bath with coupling `beta` and cutoff `cutoff_ratio` (underdamped).
pub fn ohmic_uncertainties(beta: f64, cutoff_ratio: f64) -> Result<UncertaintyPair> {
    if !(0.0..1.0).contains(&beta) {
        return Err(domain("beta", beta, "[0, 1)"));
    }
    if !(cutoff_ratio > 1.0) {
        return Err(domain("cutoff ratio", cutoff_ratio, "(1, inf)"));
    }
    let root = (1.0 - beta * beta).sqrt();
    let dq2 = (1.0 - 2.0 / PI * (beta / root).atan()) / (2.0 * root);
    let dp2 = (1.0 - 2.0 * beta * beta) * dq2 + 2.0 * beta / PI * cutoff_ratio.ln();
    if dq2 * dp2 < 0.25 - 1e-12 {
        return Err(domain("ohmic dq2*dp2", dq2 * dp2, "[1/4, inf)"));
    }
    Ok(UncertaintyPair { dq2, dp2 })
}

/// Bath coupling paired with the effective coupling χ.
pub fn beta_from_chi(chi: f64) -> Result<f64> {
    Ok(CouplingParams::from_chi(chi)?.beta())
}

/// Ordinary least-squares line through (n, ln κ_n), n = 1..=N.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
}

pub fn fit_log_slope(series: &CumulantSeries) -> Result<SlopeFit> {
    let n = series.values.len();
    if n < 2 {
        return Err(Error::DegenerateFit("need at least two cumulants".into()));
    }
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for (i, &v) in series.values.iter().enumerate() {
        if !(v > 0.0) {
            return Err(Error::DegenerateFit(format!(
                "cumulant of order {} is {v}, logarithm undefined",
                i + 1
            )));
        }
        xs.push((i + 1) as f64);
        ys.push(v.ln());
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(SlopeFit {
        slope,
        intercept,
        residual: (sse / nf).sqrt(),
    })
}

/// Slope fits for both models at one χ and the relative difference
/// R = 1 − slope_ohmic/slope_exact.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SlopeComparison {
    pub chi: f64,
    pub exact: SlopeFit,
    pub ohmic: SlopeFit,
    pub r: f64,
}

pub fn slope_ratio_r(chi: f64, order: usize, cutoff_ratio: f64) -> Result<SlopeComparison> {
    if !(chi > 0.0 && chi < 1.0) {
        return Err(domain("chi", chi, "(0, 1)"));
    }
    if order < 3 {
        return Err(Error::InvalidArgument(format!(
            "slope fit needs at least 3 cumulants, got {order}"
        )));
    }
    let p = CouplingParams::from_chi(chi)?;
    let exact = fit_log_slope(&cumulants(&uncertainties(&p), order)?)?;
    let ohmic = fit_log_slope(&cumulants(
        &ohmic_uncertainties(p.beta(), cutoff_ratio)?,
        order,
    )?)?;
    if exact.slope.abs() < 1e-12 {
        return Err(Error::DegenerateFit(format!(
            "exact-state slope vanishes at chi = {chi}"
        )));
    }
    Ok(SlopeComparison {
        chi,
        exact,
        ohmic,
        r: 1.0 - ohmic.slope / exact.slope,
    })
}

/// Purity of a gaussian state recovered from the first two energy cumulants.
pub fn purity_from_energy_moments(mean: f64, second_cumulant: f64) -> Result<f64> {
    if !(mean >= 1.5 - 1e-12) {
        return Err(domain("mean energy", mean, "[3/2, inf)"));
    }
    let radicand = 8.0 * mean * mean - 12.0 * second_cumulant - 9.0;
    if radicand < 0.0 {
        return Err(domain("8 mean^2 - 12 cum2 - 9", radicand, "[0, inf)"));
    }
    Ok((radicand.sqrt() / (2.0 * mean)).powi(3))
}

/// Concurrence assigned to a state through its first two energy cumulants.
pub fn concurrence_from_energy_moments(u: &UncertaintyPair) -> Result<f64> {
    let c = cumulants(u, 2)?;
    Ok(1.0 - purity_from_energy_moments(c.mean(), c.second())?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondCumulantRow {
    pub chi: f64,
    pub beta: f64,
    pub exact: f64,
    pub ohmic: f64,
}

/// ⟨⟨H²⟩⟩ for both models along a χ grid; rows keep the grid order.
pub fn second_cumulant_sweep(chi_grid: &[f64], cutoff_ratio: f64) -> Result<Vec<SecondCumulantRow>> {
    chi_grid
        .par_iter()
        .map(|&chi| {
            let p = CouplingParams::from_chi(chi)?;
            let exact = cumulants(&uncertainties(&p), 2)?.second();
            let ohmic = cumulants(&ohmic_uncertainties(p.beta(), cutoff_ratio)?, 2)?.second();
            Ok(SecondCumulantRow {
                chi,
                beta: p.beta(),
                exact,
                ohmic,
            })
        })
        .collect()
}
