//! Amplitudes of two-particle states in the unit-oscillator energy basis and
//! the resulting one-particle energy distributions.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::entanglement::UncertaintyPair;
use crate::error::{domain, Error, Result};
use crate::model::CouplingParams;
use crate::special::{double_factorial, ln_double_factorial, ln_factorial, parity_step};

/// Highest level for which the exact-state diagonal is tabulated.
pub const MOSHINSKY_MAX_LEVEL: usize = 500;

/// Default tail tolerance for automatic truncation.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// How many levels a distribution keeps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Truncation {
    /// Levels 0..=L.
    Fixed(usize),
    /// Smallest L whose geometric tail estimate is below `tol`.
    Auto { tol: f64 },
}

impl Default for Truncation {
    fn default() -> Self {
        Truncation::Auto {
            tol: DEFAULT_TAIL_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DistributionSource {
    Moshinsky { chi: f64 },
    FactorizedGaussian { a: f64 },
    Gaussian { dq2: f64, dp2: f64 },
}

/// Probabilities of the one-particle, one-axis energy levels l = 0..=L.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyDistribution {
    pub probs: Vec<f64>,
    pub source: DistributionSource,
    /// Estimated probability mass above the last kept level.
    pub tail_estimate: f64,
}

impl EnergyDistribution {
    pub fn max_level(&self) -> usize {
        self.probs.len() - 1
    }

    pub fn total(&self) -> f64 {
        self.probs.iter().sum()
    }
}

/// Builds probs[0..=L] from a term generator, stopping per `truncation`.
/// `ratio` is the asymptotic ratio p_{l+1}/p_l used for the tail estimate.
fn truncate(
    truncation: Truncation,
    ratio: f64,
    cap: usize,
    what: &'static str,
    mut term: impl FnMut(usize) -> f64,
) -> Result<(Vec<f64>, f64)> {
    let tail_after = |probs: &[f64]| {
        let last = probs.iter().rev().take(2).fold(0.0f64, |m, &p| m.max(p));
        if ratio < 1.0 {
            last * ratio / (1.0 - ratio)
        } else {
            f64::INFINITY
        }
    };
    match truncation {
        Truncation::Fixed(levels) => {
            if levels > cap {
                return Err(Error::TruncationCap {
                    what,
                    cap,
                    tail: f64::NAN,
                });
            }
            let probs: Vec<f64> = (0..=levels).map(&mut term).collect();
            let tail = tail_after(&probs);
            Ok((probs, tail))
        }
        Truncation::Auto { tol } => {
            if !(tol > 0.0) {
                return Err(domain("truncation tolerance", tol, "(0, inf)"));
            }
            let mut probs = Vec::new();
            for l in 0..=cap {
                probs.push(term(l));
                let tail = tail_after(&probs);
                if l >= 1 && tail < tol {
                    return Ok((probs, tail));
                }
            }
            Err(Error::TruncationCap {
                what,
                cap,
                tail: tail_after(&probs),
            })
        }
    }
}

/// Overlap integral of H_m(x₁)H_{m2}(x₂) with the ground state along one
/// axis, up to the normalization of the basis states.
pub fn chessboard_amplitude(p: &CouplingParams, m: usize, m2: usize) -> f64 {
    let total = m + m2;
    if total % 2 == 1 {
        return 0.0;
    }
    let zeta = p.zeta();
    let sign = if m2.is_multiple_of(2) { 1.0 } else { -1.0 };
    2.0 * PI
        * parity_step(total)
        * sign
        * double_factorial(total as i64 - 1)
        * (1.0 + zeta).sqrt()
        * zeta.powi((total / 2) as i32)
}

/// ⟨φ_l φ_{l2}|ψ_axis⟩ for one axis of the ground state.
pub fn ground_state_axis_amplitude(p: &CouplingParams, l: usize, l2: usize) -> f64 {
    let total = l + l2;
    if total % 2 == 1 {
        return 0.0;
    }
    let zeta = p.zeta();
    if zeta == 0.0 {
        return if total == 0 { 1.0 } else { 0.0 };
    }
    let sign = if l2.is_multiple_of(2) { 1.0 } else { -1.0 };
    // χ^{1/2}/π · chessboard / √(2^{l+l2} l! l2!), in logarithms
    let ln_mag = 0.5 * p.chi().ln() + ln_double_factorial(total as i64 - 1)
        + 0.5 * (1.0 + zeta).ln()
        + (total / 2) as f64 * zeta.ln()
        - 0.5 * (total as f64 * 2f64.ln() + ln_factorial(l) + ln_factorial(l2));
    sign * ln_mag.exp()
}

/// ⟨φ_l φ_m φ_n ⊗ φ_{l2} φ_{m2} φ_{n2}|Ψ₀⟩ in the unit-oscillator basis.
pub fn ground_state_amplitude(p: &CouplingParams, first: [usize; 3], second: [usize; 3]) -> f64 {
    (0..3)
        .map(|i| ground_state_axis_amplitude(p, first[i], second[i]))
        .product()
}

fn check_exponent(a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(domain("a", a, "(0, inf)"));
    }
    Ok(())
}

/// ∫ H_l(x) e^{−(1+a)x²/2} dx.
pub fn gaussian_amplitude(a: f64, l: usize) -> Result<f64> {
    check_exponent(a)?;
    if l % 2 == 1 {
        return Ok(0.0);
    }
    let alpha2 = 1.0 + a;
    let half = (l / 2) as i32;
    // (2 − α²)^{l/2} = (1 − a)^{l/2}, real for even l
    Ok(parity_step(l)
        * 2f64.powf(l as f64 + 1.5)
        * alpha2.powf(-0.5 * (l as f64 + 1.0))
        * (1.0 - a).powi(half)
        * gamma_half_integer(l + 1))
}

/// Γ(n/2) for positive integer n.
fn gamma_half_integer(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        ln_factorial(n / 2 - 1).exp()
    } else {
        // Γ(k + 1/2) = (2k−1)!! √π / 2^k
        let k = (n - 1) / 2;
        double_factorial(2 * k as i64 - 1) * PI.sqrt() / 2f64.powi(k as i32)
    }
}

/// ⟨φ_l|g_a⟩ for the normalized gaussian g_a = (a/π)^{1/4} e^{−ax²/2}.
pub fn gaussian_axis_amplitude(a: f64, l: usize) -> Result<f64> {
    check_exponent(a)?;
    if l % 2 == 1 {
        return Ok(0.0);
    }
    let x = (1.0 - a) / (1.0 + a);
    if x == 0.0 {
        return Ok(if l == 0 { (2.0 * a.sqrt() / (1.0 + a)).sqrt() } else { 0.0 });
    }
    // a^{1/4} π^{−1/2} A_l / √(2^l l!), with A_l from gaussian_amplitude
    let ln_mag = 0.25 * a.ln() - 0.5 * PI.ln() + (l as f64 + 1.5) * 2f64.ln()
        - 0.5 * (l as f64 + 1.0) * (1.0 + a).ln()
        + (l / 2) as f64 * (1.0 - a).abs().ln()
        + ln_gamma_half_integer(l + 1)
        - 0.5 * (l as f64 * 2f64.ln() + ln_factorial(l))
        - 2f64.ln();
    let sign = if x < 0.0 && (l / 2) % 2 == 1 { -1.0 } else { 1.0 };
    Ok(sign * ln_mag.exp())
}

fn ln_gamma_half_integer(n: usize) -> f64 {
    if n.is_multiple_of(2) {
        ln_factorial(n / 2 - 1)
    } else {
        let k = (n - 1) / 2;
        ln_double_factorial(2 * k as i64 - 1) + 0.5 * PI.ln() - k as f64 * 2f64.ln()
    }
}

/// Coefficients of l!·Q_l(ζ), where ρ_l ∝ ζ^l Q_l(ζ)/(4 − ζ²)^l, converted
/// to s_k = q_k/(l!·4^l).
fn moshinsky_table() -> &'static Vec<Vec<f64>> {
    static TABLE: OnceLock<Vec<Vec<f64>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows = Vec::with_capacity(MOSHINSKY_MAX_LEVEL + 1);
        let mut q: Vec<BigInt> = vec![BigInt::from(1)];
        let mut scale = BigInt::from(1);
        for l in 0..=MOSHINSKY_MAX_LEVEL {
            rows.push(
                q.iter()
                    .map(|c| {
                        if c.is_zero() {
                            0.0
                        } else {
                            BigRational::new_raw(c.clone(), scale.clone())
                                .to_f64()
                                .unwrap_or(0.0)
                        }
                    })
                    .collect(),
            );
            // l!Q: next = q'·(4 − ζ²) + (2l+1) ζ q
            let mut next = vec![BigInt::zero(); q.len() + 1];
            for (j, c) in q.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if j >= 1 {
                    let d = c * j;
                    next[j - 1] += &d * 4u32;
                    next[j + 1] -= d;
                }
                next[j + 1] += c * (2 * l + 1);
            }
            q = next;
            scale *= 4u32 * (l as u32 + 1);
        }
        rows
    })
}

/// Y and U of the homogenized Legendre recurrence for given uncertainties.
fn legendre_invariants(dq2: f64, dp2: f64) -> (f64, f64, f64) {
    let w = (2.0 * dp2 + 1.0) * (2.0 * dq2 + 1.0);
    let u = (2.0 * dp2 - 1.0) * (2.0 * dq2 - 1.0);
    let y = 4.0 * dp2 * dq2 - 1.0;
    (y / w, u / w, w)
}

/// Asymptotic |p_{l+1}/p_l| of the three-term recurrence.
fn asymptotic_ratio(y: f64, u: f64) -> f64 {
    let disc = y * y - u;
    if disc >= 0.0 {
        y.abs() + disc.sqrt()
    } else {
        u.sqrt()
    }
}

/// Energy distribution of one axis of one particle in the exact ground state.
pub fn moshinsky_diagonal(p: &CouplingParams, truncation: Truncation) -> Result<EnergyDistribution> {
    let chi = p.chi();
    let zeta = p.zeta();
    let source = DistributionSource::Moshinsky { chi };
    if zeta == 0.0 {
        let levels = match truncation {
            Truncation::Fixed(l) => l,
            Truncation::Auto { .. } => 0,
        };
        let mut probs = vec![0.0; levels + 1];
        probs[0] = 1.0;
        return Ok(EnergyDistribution {
            probs,
            source,
            tail_estimate: 0.0,
        });
    }
    let table = moshinsky_table();
    let chi2 = chi * chi;
    let y = (1.0 - chi2).powi(2) / ((chi2 + 3.0) * (3.0 * chi2 + 1.0));
    let ratio = asymptotic_ratio(y, -y);
    let base = 2.0 * chi * (1.0 + zeta) / (4.0 - zeta * zeta).sqrt();
    let ln_step = zeta.ln() - (1.0 - 0.25 * zeta * zeta).ln();
    let (probs, tail_estimate) = truncate(
        truncation,
        ratio,
        MOSHINSKY_MAX_LEVEL,
        "exact-state energy distribution",
        |l| {
            let poly = table[l].iter().rev().fold(0.0, |acc, &s| acc * zeta + s);
            base * poly * (l as f64 * ln_step).exp()
        },
    )?;
    Ok(EnergyDistribution {
        probs,
        source,
        tail_estimate,
    })
}

/// Energy distribution of one axis of the gaussian orbital of exponent `a`.
pub fn factorized_gaussian_diagonal(a: f64, truncation: Truncation) -> Result<EnergyDistribution> {
    check_exponent(a)?;
    let x = (1.0 - a) / (1.0 + a);
    let lead = 2.0 * a.sqrt() / (1.0 + a);
    let (probs, tail_estimate) = truncate(
        truncation,
        x.abs(),
        MOSHINSKY_MAX_LEVEL,
        "gaussian energy distribution",
        |l| {
            if l % 2 == 1 {
                return 0.0;
            }
            if x == 0.0 {
                return if l == 0 { lead } else { 0.0 };
            }
            let ln_mag = 2.0 * ln_double_factorial(l as i64 - 1) - ln_factorial(l)
                + l as f64 * x.abs().ln();
            lead * ln_mag.exp()
        },
    )?;
    Ok(EnergyDistribution {
        probs,
        source: DistributionSource::FactorizedGaussian { a },
        tail_estimate,
    })
}

/// Energy distribution of one axis of a centred gaussian state with the
/// given position and momentum variances.
pub fn legendre_distribution(u: &UncertaintyPair, truncation: Truncation) -> Result<EnergyDistribution> {
    let (dq2, dp2) = (u.dq2, u.dp2);
    if !(dq2 > 0.0 && dp2 > 0.0) || dq2 * dp2 < 0.25 - 1e-12 {
        return Err(domain("dq2*dp2", dq2 * dp2, "[1/4, inf)"));
    }
    let (y, uu, w) = legendre_invariants(dq2, dp2);
    let lead = 2.0 / w.sqrt();
    // P̃_l = U^{l/2} P_l(Y/√U), kept real for either sign of U.
    let mut prev = 0.0;
    let mut cur = 1.0;
    let (probs, tail_estimate) = truncate(
        truncation,
        asymptotic_ratio(y, uu),
        MOSHINSKY_MAX_LEVEL,
        "gaussian energy distribution",
        |l| {
            if l >= 1 {
                let lf = (l - 1) as f64;
                let next = ((2.0 * lf + 1.0) * y * cur - lf * uu * prev) / (lf + 1.0);
                prev = cur;
                cur = next;
            }
            lead * cur
        },
    )?;
    Ok(EnergyDistribution {
        probs,
        source: DistributionSource::Gaussian { dq2, dp2 },
        tail_estimate,
    })
}

/// Rectangular lattice of (Δq, Δp) values, both running lo, lo+step, …, hi.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeviationLattice {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl Default for DeviationLattice {
    fn default() -> Self {
        Self {
            lo: 0.1,
            hi: 3.0,
            step: 0.1,
        }
    }
}

impl DeviationLattice {
    pub fn values(&self) -> Result<Vec<f64>> {
        if !(self.step > 0.0 && self.lo > 0.0 && self.hi >= self.lo) {
            return Err(Error::InvalidArgument(format!(
                "lattice needs 0 < lo <= hi and step > 0, got {self:?}"
            )));
        }
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        // Snap to 12 decimals so 0.1-steps print as written.
        Ok((0..=n)
            .map(|i| ((self.lo + i as f64 * self.step) * 1e12).round() / 1e12)
            .collect())
    }

    /// Physical (Δq², Δp²) pairs of the lattice, ΔqΔp ≥ 1/2.
    pub fn physical_points(&self) -> Result<Vec<UncertaintyPair>> {
        let v = self.values()?;
        let mut out = Vec::new();
        for &q in &v {
            for &pp in &v {
                if q * pp >= 0.5 - 1e-12 {
                    out.push(UncertaintyPair {
                        dq2: q * q,
                        dp2: pp * pp,
                    });
                }
            }
        }
        Ok(out)
    }
}

/// Maximum of probs[l] for l = 0..levels over the physical lattice points.
pub fn distribution_maxima(lattice: &DeviationLattice, levels: usize) -> Result<Vec<f64>> {
    let mut best = vec![0.0f64; levels];
    for u in lattice.physical_points()? {
        let d = legendre_distribution(&u, Truncation::Fixed(levels.saturating_sub(1)))?;
        for (b, &p) in best.iter_mut().zip(&d.probs) {
            *b = b.max(p);
        }
    }
    Ok(best)
}
