//! Algebraic descriptors of the states that appear in the model: products of
//! (Hermite polynomial × gaussian) factors, plus the correlated gaussian of
//! the exact ground state. The descriptors carry no closed-form results, only
//! enough structure to be integrated by quadrature.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::model::CouplingParams;
use crate::special::{hermite_all, ln_factorial};

/// One-particle, one-axis orbital `norm · Σⱼ cⱼ Hⱼ(scale·x) · exp(−exponent·x²/2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Orbital {
    pub coeffs: Vec<Complex64>,
    pub scale: f64,
    pub exponent: f64,
    pub norm: f64,
}

impl Orbital {
    /// Normalized gaussian (exponent/π)^{1/4} e^{−exponent x²/2}.
    pub fn gaussian(exponent: f64) -> Self {
        Self {
            coeffs: vec![Complex64::new(1.0, 0.0)],
            scale: 1.0,
            exponent,
            norm: (exponent / PI).powf(0.25),
        }
    }

    /// Normalized eigenfunction φ_l of the unit-frequency oscillator.
    pub fn ho_eigenstate(l: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); l + 1];
        coeffs[l] = Complex64::new(1.0, 0.0);
        let ln_norm = -0.5 * (l as f64 * 2f64.ln() + ln_factorial(l) + 0.5 * PI.ln());
        Self {
            coeffs,
            scale: 1.0,
            exponent: 1.0,
            norm: ln_norm.exp(),
        }
    }

    /// Hermite series Σⱼ cⱼ Hⱼ(√χ x) e^{−χx²/2} of natural-orbital frequency χ,
    /// left unnormalized (norm = 1).
    pub fn hermite_series(chi: f64, coeffs: Vec<Complex64>) -> Self {
        Self {
            coeffs,
            scale: chi.sqrt(),
            exponent: chi,
            norm: 1.0,
        }
    }

    /// Polynomial part and its derivative at `x` (gaussian factor excluded).
    pub(crate) fn poly_and_derivative(&self, x: f64) -> (Complex64, Complex64) {
        let n = self.coeffs.len();
        let h = hermite_all(n, self.scale * x);
        let mut value = Complex64::new(0.0, 0.0);
        let mut deriv = Complex64::new(0.0, 0.0);
        for (j, c) in self.coeffs.iter().enumerate() {
            value += c * h[j];
            if j > 0 {
                deriv += c * (2.0 * j as f64 * self.scale * h[j - 1]);
            }
        }
        (value * self.norm, deriv * self.norm)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// Quadratic form q_RR R² + q_rr r² + q_Rr R r in the centre-of-mass and
/// relative coordinates R = (x₁+x₂)/√2, r = (x₁−x₂)/√2.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub(crate) struct Envelope {
    pub rr_center: f64,
    pub rr_relative: f64,
    pub cross: f64,
}

impl std::ops::Add for Envelope {
    type Output = Envelope;
    fn add(self, o: Envelope) -> Envelope {
        Envelope {
            rr_center: self.rr_center + o.rr_center,
            rr_relative: self.rr_relative + o.rr_relative,
            cross: self.cross + o.cross,
        }
    }
}

/// Two-particle factor along one Cartesian axis.
#[derive(Debug, Clone, PartialEq)]
pub enum PairFactor {
    /// φ(x₁) ψ(x₂).
    Product(Orbital, Orbital),
    /// norm · exp(−center·R²/2 − relative·r²/2).
    Correlated { center: f64, relative: f64, norm: f64 },
}

impl PairFactor {
    /// The gaussian exponent Q with ψ ∝ e^{−Q}.
    pub(crate) fn envelope(&self) -> Envelope {
        match self {
            PairFactor::Product(a, b) => Envelope {
                rr_center: 0.25 * (a.exponent + b.exponent),
                rr_relative: 0.25 * (a.exponent + b.exponent),
                cross: 0.5 * (a.exponent - b.exponent),
            },
            PairFactor::Correlated {
                center, relative, ..
            } => Envelope {
                rr_center: 0.5 * center,
                rr_relative: 0.5 * relative,
                cross: 0.0,
            },
        }
    }

    /// Non-gaussian part P and ∂P/∂x₁, ∂P/∂x₂ − P ∂Q/∂x₁, ∂Q/∂x₂, i.e. the
    /// full gradient of ψ divided by e^{−Q}.
    pub(crate) fn eval(&self, x1: f64, x2: f64) -> (Complex64, Complex64, Complex64) {
        match self {
            PairFactor::Product(a, b) => {
                let (pa, da) = a.poly_and_derivative(x1);
                let (pb, db) = b.poly_and_derivative(x2);
                let value = pa * pb;
                let g1 = da * pb - value * (a.exponent * x1);
                let g2 = pa * db - value * (b.exponent * x2);
                (value, g1, g2)
            }
            PairFactor::Correlated {
                center,
                relative,
                norm,
            } => {
                let big_r = (x1 + x2) * FRAC_1_SQRT_2;
                let small_r = (x1 - x2) * FRAC_1_SQRT_2;
                let value = Complex64::new(*norm, 0.0);
                let dq1 = (center * big_r + relative * small_r) * FRAC_1_SQRT_2;
                let dq2 = (center * big_r - relative * small_r) * FRAC_1_SQRT_2;
                (value, -value * dq1, -value * dq2)
            }
        }
    }
}

/// A two-particle state in 3D as a product over the three Cartesian axes.
#[derive(Debug, Clone, PartialEq)]
pub struct PairState {
    pub axes: [PairFactor; 3],
}

impl PairState {
    pub fn isotropic(factor: PairFactor) -> Self {
        Self {
            axes: [factor.clone(), factor.clone(), factor],
        }
    }

    /// Exact ground state (χ/π)^{3/2} e^{−R²/2} e^{−χ²r²/2}.
    pub fn moshinsky_ground(p: &CouplingParams) -> Self {
        let chi = p.chi();
        Self::isotropic(PairFactor::Correlated {
            center: 1.0,
            relative: chi * chi,
            norm: (chi / PI).sqrt(),
        })
    }

    /// Hartree–Fock state π^{−3/2}(1−K)^{3/4} e^{−√(1−K)(R²+r²)/2}.
    pub fn hartree_fock(p: &CouplingParams) -> Self {
        Self::gaussian_product(p.hf_exponent())
    }

    /// Separable gaussian (a/π)^{3/2} e^{−a(R²+r²)/2}.
    pub fn gaussian_product(a: f64) -> Self {
        let orb = Orbital::gaussian(a);
        Self::isotropic(PairFactor::Product(orb.clone(), orb))
    }

    /// Product of unit-frequency oscillator eigenstates |l,m,n⟩₁|l',m',n'⟩₂.
    pub fn ho_basis(first: [usize; 3], second: [usize; 3]) -> Self {
        let f = |i: usize| {
            PairFactor::Product(
                Orbital::ho_eigenstate(first[i]),
                Orbital::ho_eigenstate(second[i]),
            )
        };
        Self {
            axes: [f(0), f(1), f(2)],
        }
    }

    /// Symmetric Hermite-deformed wavepacket around the maximal-overlap
    /// gaussian: per axis (Σⱼ cⱼ Hⱼ(√χ x₁))(Σⱼ cⱼ Hⱼ(√χ x₂)) e^{−χ(x₁²+x₂²)/2}.
    /// The result is unnormalized; see [`crate::oracle::normalized`].
    pub fn wavepacket(p: &CouplingParams, coeffs: &[Vec<Complex64>; 3]) -> Self {
        let f = |c: &Vec<Complex64>| {
            let orb = Orbital::hermite_series(p.chi(), c.clone());
            PairFactor::Product(orb.clone(), orb)
        };
        Self {
            axes: [f(&coeffs[0]), f(&coeffs[1]), f(&coeffs[2])],
        }
    }
}
