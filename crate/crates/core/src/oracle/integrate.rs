//! Tensor-product Gauss–Hermite integration of overlaps and energy
//! expectations between [`PairState`] descriptors.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::quadrature::QuadratureRule;
use super::wavefunction::{PairFactor, PairState};
use crate::error::{Error, Result};
use crate::model::CouplingParams;

/// Per-axis integrals: ⟨a|b⟩ and ⟨a|h|b⟩ for the one-axis Hamiltonian
/// h = −½(∂₁² + ∂₂²) + ½(x₁² + x₂²) − (K/2)(x₁ − x₂)².
#[derive(Debug, Clone, Copy)]
struct AxisIntegrals {
    overlap: Complex64,
    energy: Complex64,
}

fn axis_integrals(
    a: &PairFactor,
    b: &PairFactor,
    rule: &QuadratureRule,
    coupling: Option<f64>,
) -> AxisIntegrals {
    let env = a.envelope() + b.envelope();
    // Gaussian weight e^{−u²−v²} after R = u/√q_RR, r = v/√q_rr.
    let sc = env.rr_center.sqrt();
    let sr = env.rr_relative.sqrt();
    let jacobian = 1.0 / (sc * sr);
    let mut overlap = Complex64::new(0.0, 0.0);
    let mut energy = Complex64::new(0.0, 0.0);
    for (&u, &wu) in rule.nodes.iter().zip(&rule.weights) {
        let big_r = u / sc;
        for (&v, &wv) in rule.nodes.iter().zip(&rule.weights) {
            let small_r = v / sr;
            let x1 = (big_r + small_r) * FRAC_1_SQRT_2;
            let x2 = (big_r - small_r) * FRAC_1_SQRT_2;
            let weight = wu * wv * (-env.cross * big_r * small_r).exp();
            let (va, ga1, ga2) = a.eval(x1, x2);
            let (vb, gb1, gb2) = b.eval(x1, x2);
            let va = va.conj();
            overlap += va * vb * weight;
            if let Some(k) = coupling {
                let kinetic = 0.5 * (ga1.conj() * gb1 + ga2.conj() * gb2);
                let potential = 0.5 * (x1 * x1 + x2 * x2) - 0.5 * k * (x1 - x2) * (x1 - x2);
                energy += (kinetic + va * vb * potential) * weight;
            }
        }
    }
    AxisIntegrals {
        overlap: overlap * jacobian,
        energy: energy * jacobian,
    }
}

/// ⟨a|b⟩ by tensor-product quadrature of the given order per dimension.
pub fn overlap(a: &PairState, b: &PairState, order: usize) -> Complex64 {
    let rule = QuadratureRule::gauss_hermite(order);
    a.axes
        .iter()
        .zip(&b.axes)
        .map(|(fa, fb)| axis_integrals(fa, fb, &rule, None).overlap)
        .product()
}

/// [`overlap`] at `order` and `2·order`; fails if the two differ by more than `tol`.
pub fn overlap_checked(a: &PairState, b: &PairState, order: usize, tol: f64) -> Result<Complex64> {
    let coarse = overlap(a, b, order);
    let fine = overlap(a, b, 2 * order);
    let change = (fine - coarse).norm();
    if change > tol {
        return Err(Error::NotConverged { order, change });
    }
    Ok(fine)
}

/// ⟨ψ|Ĥ|ψ⟩/⟨ψ|ψ⟩ for the two-particle Hamiltonian at coupling `p`.
pub fn energy_expectation(state: &PairState, p: &CouplingParams, order: usize) -> f64 {
    let rule = QuadratureRule::gauss_hermite(order);
    state
        .axes
        .iter()
        .map(|f| {
            let ints = axis_integrals(f, f, &rule, Some(p.k()));
            ints.energy.re / ints.overlap.re
        })
        .sum()
}

/// Rescales every axis factor so that ⟨ψ|ψ⟩ = 1.
pub fn normalized(state: &PairState, order: usize) -> PairState {
    let rule = QuadratureRule::gauss_hermite(order);
    let axes = state.axes.clone().map(|f| {
        let n = axis_integrals(&f, &f, &rule, None).overlap.re;
        match f {
            PairFactor::Product(mut a, mut b) => {
                let s = n.powf(-0.25);
                a.norm *= s;
                b.norm *= s;
                PairFactor::Product(a, b)
            }
            PairFactor::Correlated {
                center,
                relative,
                norm,
            } => PairFactor::Correlated {
                center,
                relative,
                norm: norm / n.sqrt(),
            },
        }
    });
    PairState { axes }
}
