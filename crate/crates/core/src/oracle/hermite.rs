//! Gauss-Hermite rules for the weight `e^{-x²}` on the real line.

use alloc::vec;
use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

const NEWTON_TOLERANCE: f64 = 3e-14;
const MAX_NEWTON_STEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermite {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussHermite {
    /// `order`-point rule, exact for polynomials of degree `2·order - 1`.
    ///
    /// Roots are found by Newton iteration on the orthonormal Hermite
    /// recurrence, seeded with the usual asymptotic guesses and ordered from
    /// the largest node down.
    pub fn new(order: usize) -> Self {
        assert!(order > 0, "Gauss-Hermite order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let pi_m4 = core::f64::consts::PI.powf(-0.25);
        let mut z: f64 = 0.0;
        for i in 0..n.div_ceil(2) {
            z = match i {
                0 => {
                    let m = (2 * n + 1) as f64;
                    m.sqrt() - 1.85575 * m.powf(-1.0 / 6.0)
                }
                1 => z - 1.14 * (n as f64).powf(0.426) / z,
                2 => 1.86 * z - 0.86 * nodes[0],
                3 => 1.91 * z - 0.91 * nodes[1],
                _ => 2.0 * z - nodes[i - 2],
            };
            let mut pp = 0.0;
            for _ in 0..MAX_NEWTON_STEPS {
                let (p1, p2) = orthonormal_hermite(n, z, pi_m4);
                pp = (2.0 * n as f64).sqrt() * p2;
                let step = p1 / pp;
                z -= step;
                if step.abs() <= NEWTON_TOLERANCE * z.abs().max(1.0) {
                    let (_, p2) = orthonormal_hermite(n, z, pi_m4);
                    pp = (2.0 * n as f64).sqrt() * p2;
                    break;
                }
            }
            nodes[i] = z;
            nodes[n - 1 - i] = -z;
            weights[i] = 2.0 / (pp * pp);
            weights[n - 1 - i] = weights[i];
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `∫ e^{-x²} f(x) dx`.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        let mut acc = crate::CompensatedSum::new();
        for (&x, &w) in self.nodes.iter().zip(&self.weights) {
            acc.add(num_complex::Complex64::new(w * f(x), 0.0));
        }
        acc.value().re
    }
}

/// Values `(h_n(z), h_{n-1}(z))` of the Hermite polynomials normalized
/// against `e^{-x²}`.
fn orthonormal_hermite(n: usize, z: f64, pi_m4: f64) -> (f64, f64) {
    let mut p1 = pi_m4;
    let mut p2 = 0.0;
    for j in 0..n {
        let p3 = p2;
        p2 = p1;
        let jf = j as f64;
        p1 = z * (2.0 / (jf + 1.0)).sqrt() * p2 - (jf / (jf + 1.0)).sqrt() * p3;
    }
    (p1, p2)
}
