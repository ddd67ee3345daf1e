//! Gauss–Hermite rules for ∫ f(x) e^{−x²} dx.

use std::f64::consts::PI;

/// Nodes and weights of an `order`-point Gauss–Hermite rule.
#[derive(Debug, Clone)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    /// Builds the rule by Newton iteration on the orthonormal Hermite
    /// recurrence, starting from the usual asymptotic root estimates.
    /// Nodes are returned in increasing order and are exactly symmetric.
    pub fn gauss_hermite(order: usize) -> Self {
        assert!(order >= 1, "quadrature order must be positive");
        let n = order;
        let m = n.div_ceil(2);
        let pim4 = PI.powf(-0.25);
        let mut upper = vec![(0.0, 0.0); m];
        let mut z = 0.0f64;
        for i in 0..m {
            z = match i {
                0 => (2.0 * n as f64 + 1.0).sqrt() - 1.85575 * (2.0 * n as f64 + 1.0).powf(-1.0 / 6.0),
                1 => z - 1.14 * (n as f64).powf(0.426) / z,
                2 => 1.86 * z - 0.86 * upper[0].0,
                3 => 1.91 * z - 0.91 * upper[1].0,
                _ => 2.0 * z - upper[i - 2].0,
            };
            let mut pp = 0.0;
            for _ in 0..100 {
                let (p1, p2) = orthonormal_hermite(n, z, pim4);
                pp = (2.0 * n as f64).sqrt() * p2;
                let dz = p1 / pp;
                z -= dz;
                if dz.abs() <= 1e-15 * z.abs().max(1.0) {
                    break;
                }
            }
            let (_, p2) = orthonormal_hermite(n, z, pim4);
            pp = if pp == 0.0 { 1.0 } else { (2.0 * n as f64).sqrt() * p2 };
            upper[i] = (z, 2.0 / (pp * pp));
        }
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for (i, &(x, w)) in upper.iter().enumerate() {
            nodes[n - 1 - i] = x;
            weights[n - 1 - i] = w;
            nodes[i] = -x;
            weights[i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self {
            nodes,
            weights,
            order,
        }
    }

    /// ∑ wᵢ f(xᵢ).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

// (p_n(z), p_{n-1}(z)) for the orthonormal Hermite functions without the weight.
fn orthonormal_hermite(n: usize, z: f64, pim4: f64) -> (f64, f64) {
    let mut p1 = pim4;
    let mut p2 = 0.0;
    for j in 1..=n {
        let p3 = p2;
        p2 = p1;
        p1 = z * (2.0 / j as f64).sqrt() * p2 - ((j as f64 - 1.0) / j as f64).sqrt() * p3;
    }
    (p1, p2)
}

#[cfg(test)]
mod tests {
    use super::*;

    // ∫ (x/σ)^k e^{-x²} dx = Γ((k+1)/2)/σ^k for even k; σ keeps high powers finite.
    fn scaled_moment(k: usize, sigma: f64) -> f64 {
        if k % 2 == 1 {
            return 0.0;
        }
        (0..k / 2).fold(PI.sqrt(), |m, j| m * (j as f64 + 0.5) / (sigma * sigma))
    }

    #[test]
    fn exact_on_monomials() {
        for &order in &[1usize, 2, 5, 20, 80, 160] {
            let rule = QuadratureRule::gauss_hermite(order);
            let sigma = (order as f64).sqrt().max(1.0);
            for k in 0..(2 * order) {
                let got = rule.integrate(|x| (x / sigma).powi(k as i32));
                if k % 2 == 0 {
                    let want = scaled_moment(k, sigma);
                    assert!(
                        ((got - want) / want).abs() < 1e-12,
                        "order {order}, k {k}: {got} vs {want}"
                    );
                } else {
                    // Symmetric nodes: odd moments cancel up to summation rounding.
                    let scale = scaled_moment(k + 1, sigma).max(scaled_moment(k - 1, sigma));
                    assert!(got.abs() < 1e-13 * scale, "order {order}, k {k}: {got}");
                }
            }
        }
    }

    #[test]
    fn nodes_sorted_and_weights_positive() {
        let rule = QuadratureRule::gauss_hermite(81);
        assert!(rule.nodes.windows(2).all(|w| w[0] < w[1]));
        assert!(rule.weights.iter().all(|&w| w > 0.0));
        assert_eq!(rule.nodes[40], 0.0);
        let total: f64 = rule.weights.iter().sum();
        assert!((total - PI.sqrt()).abs() < 1e-13);
    }
}
