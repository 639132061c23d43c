//! Parameterized physical states: displaced thermal fields, the cat-state
//! projection basis, the vacuum/single-photon mixture and the atom/thermal
//! field pair, together with their overlap kernels and purities.

use num_complex::Complex64;

use crate::{BipartiteMatrix, Error, Result};
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Default distance from `λ = 1` used to probe the infinite-temperature limit.
pub const INFINITE_TEMPERATURE_EPSILON: f64 = 1e-3;

/// `<a|b>` for coherent states, `exp(-(|a|²+|b|²)/2 + a* b)`.
pub fn coherent_overlap(a: Complex64, b: Complex64) -> Complex64 {
    (a.conj() * b - (a.norm_sqr() + b.norm_sqr()) * 0.5).exp()
}

/// Displaced thermal field with quadrature variance `V` and real
/// displacement `d`.
///
/// Its Glauber P-function is `2/(π(V-1)) exp(-2|α-d|²/(V-1))`, a point mass
/// at `d` when `V = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalParams {
    variance: f64,
    displacement: f64,
}

impl ThermalParams {
    pub fn new(variance: f64, displacement: f64) -> Result<Self> {
        if !(variance >= 1.0) || !variance.is_finite() {
            return Err(Error::parameter(
                "V",
                variance,
                "variance must be finite and >= 1",
            ));
        }
        if !displacement.is_finite() {
            return Err(Error::parameter(
                "d",
                displacement,
                "displacement must be finite",
            ));
        }
        Ok(Self {
            variance,
            displacement,
        })
    }

    /// Thermal field with a given mean photon number and displacement;
    /// `V = 2(n̄ - d²) + 1`.
    pub fn from_mean_photons(mean_photons: f64, displacement: f64) -> Result<Self> {
        Self::new(
            2.0 * (mean_photons - displacement * displacement) + 1.0,
            displacement,
        )
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn displacement(&self) -> f64 {
        self.displacement
    }

    /// `n̄ = (V-1)/2 + d²`.
    pub fn mean_photons(&self) -> f64 {
        (self.variance - 1.0) / 2.0 + self.displacement * self.displacement
    }

    /// Width parameter `s = (V-1)/2` of the P-function, which is
    /// `exp(-|α-d|²/s) / (π s)`.
    pub fn p_width(&self) -> f64 {
        (self.variance - 1.0) / 2.0
    }

    /// `Tr[ρ²] = 1/V`; displacement is unitary and leaves it unchanged.
    pub fn purity(&self) -> f64 {
        1.0 / self.variance
    }

    /// Same field displaced to `-d`.
    pub fn mirrored(&self) -> Self {
        Self {
            variance: self.variance,
            displacement: -self.displacement,
        }
    }
}

/// Even/odd cat states `|±>_γ = N±(|γ> ± |-γ>)` with real amplitude `γ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatBasis {
    gamma: f64,
    norm_plus: f64,
    norm_minus: f64,
}

impl CatBasis {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::parameter(
                "gamma",
                gamma,
                "cat amplitude must be finite and > 0",
            ));
        }
        let e = (-2.0 * gamma * gamma).exp();
        Ok(Self {
            gamma,
            norm_plus: 1.0 / (2.0 * (1.0 + e)).sqrt(),
            // 1 - e^{-x} loses digits for small γ
            norm_minus: 1.0 / (-2.0 * (-2.0 * gamma * gamma).exp_m1()).sqrt(),
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `N+`.
    pub fn norm_plus(&self) -> f64 {
        self.norm_plus
    }

    /// `N-`.
    pub fn norm_minus(&self) -> f64 {
        self.norm_minus
    }

    /// `N±` for the given parity.
    pub fn norm(&self, even: bool) -> f64 {
        if even {
            self.norm_plus
        } else {
            self.norm_minus
        }
    }

    /// `(<+|α>, <-|α>)`.
    pub fn project_coherent(&self, alpha: Complex64) -> [Complex64; 2] {
        let g = Complex64::new(self.gamma, 0.0);
        let up = coherent_overlap(g, alpha);
        let down = coherent_overlap(-g, alpha);
        [(up + down) * self.norm_plus, (up - down) * self.norm_minus]
    }
}

/// Vacuum/single-photon mixture `½(|0><0| + r|0><1| + r|1><0| + |1><1|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MicroState {
    coherence: f64,
}

impl MicroState {
    pub fn new(coherence: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&coherence) {
            return Err(Error::parameter(
                "r",
                coherence,
                "coherence must lie in [0, 1]",
            ));
        }
        Ok(Self { coherence })
    }

    pub fn coherence(&self) -> f64 {
        self.coherence
    }

    /// `(1 + r²)/2`.
    pub fn purity(&self) -> f64 {
        (1.0 + self.coherence * self.coherence) / 2.0
    }

    /// The state as a 2×2 matrix (second factor of dimension 1).
    pub fn matrix(&self) -> BipartiteMatrix {
        let h = 0.5;
        let c = 0.5 * self.coherence;
        BipartiteMatrix::from_real(2, 1, &[h, c, c, h]).expect("2x2 shape")
    }
}

/// Atom `p|e><e| + (1-p)|g><g|` and thermal field `(1-λ) Σ λ^k |k><k|`
/// coupled for a scaled time `gt`, projected on the field onto `|n>, |n+1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AtomFieldParams {
    excited: f64,
    boltzmann: f64,
    gt: f64,
    n: usize,
}

impl AtomFieldParams {
    pub fn new(excited: f64, boltzmann: f64, gt: f64, n: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&excited) {
            return Err(Error::parameter(
                "p",
                excited,
                "excited weight must lie in [0, 1]",
            ));
        }
        if !(0.0..1.0).contains(&boltzmann) {
            return Err(Error::parameter(
                "lambda",
                boltzmann,
                "Boltzmann ratio must lie in [0, 1); probe λ → 1 with infinite_temperature",
            ));
        }
        if !(gt >= 0.0) || !gt.is_finite() {
            return Err(Error::parameter(
                "gt",
                gt,
                "coupling-time product must be finite and >= 0",
            ));
        }
        Ok(Self {
            excited,
            boltzmann,
            gt,
            n,
        })
    }

    /// Field at `λ = 1 - epsilon`.
    pub fn infinite_temperature(excited: f64, gt: f64, n: usize, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon <= 1.0) {
            return Err(Error::parameter("epsilon", epsilon, "must lie in (0, 1]"));
        }
        Self::new(excited, 1.0 - epsilon, gt, n)
    }

    /// `p`.
    pub fn excited(&self) -> f64 {
        self.excited
    }

    /// `λ`.
    pub fn boltzmann(&self) -> f64 {
        self.boltzmann
    }

    pub fn gt(&self) -> f64 {
        self.gt
    }

    /// Lower Fock index of the field projection.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Thermal occupation `P_k = (1-λ)λ^k`; zero for negative `k`.
    pub fn occupation(&self, k: i64) -> f64 {
        if k < 0 {
            return 0.0;
        }
        let lambda = self.boltzmann;
        if lambda == 0.0 {
            return if k == 0 { 1.0 } else { 0.0 };
        }
        (1.0 - lambda) * lambda.powi(k as i32)
    }

    /// `2(p - 1/2)² + 1/2`.
    pub fn atom_purity(&self) -> f64 {
        atom_purity(self.excited)
    }

    /// `(1-λ)/(1+λ)`.
    pub fn field_purity(&self) -> f64 {
        field_purity(self.boltzmann)
    }
}

pub fn atom_purity(excited: f64) -> f64 {
    2.0 * (excited - 0.5).powi(2) + 0.5
}

pub fn field_purity(boltzmann: f64) -> f64 {
    (1.0 - boltzmann) / (1.0 + boltzmann)
}

/// `C_γ`, `S_γ`, `R_γ` of a displaced thermal field against the cat basis,
/// stored relative to a common scale so that huge displacements do not
/// underflow: `C_γ = c·e^{ln_scale}` and likewise for `s`, `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kernels {
    pub ln_scale: f64,
    pub c: f64,
    pub s: f64,
    pub r: f64,
}

impl Kernels {
    pub fn new(thermal: &ThermalParams, basis: &CatBasis) -> Self {
        let v = thermal.variance;
        let d = thermal.displacement;
        let g = basis.gamma;
        let pre = (4.0 / (v + 1.0)).ln();
        let x = -2.0 * (g * g + d * d) / (v + 1.0);
        let y = 4.0 * g * d / (v + 1.0);
        // e^x cosh y = e^{x+|y|} (1 + e^{-2|y|})/2
        let ln_c = pre + x + y.abs() + ((1.0 + (-2.0 * y.abs()).exp()) / 2.0).ln();
        let ln_r = pre - 2.0 * (v * g * g + d * d) / (v + 1.0);
        Self {
            ln_scale: ln_c,
            c: 1.0,
            s: y.tanh(),
            r: (ln_r - ln_c).exp(),
        }
    }

    /// Absolute values `(C_γ, S_γ, R_γ)`; underflow to zero for `d ≫ √V`.
    pub fn absolute(&self) -> (f64, f64, f64) {
        let k = self.ln_scale.exp();
        (self.c * k, self.s * k, self.r * k)
    }

    /// Kernels of the mirrored field (`d → -d`).
    pub fn mirrored(&self) -> Self {
        Self {
            s: -self.s,
            ..*self
        }
    }
}

/// Closed-form `(C_γ, S_γ, R_γ)`.
pub fn cgamma_sgamma_rgamma(thermal: &ThermalParams, basis: &CatBasis) -> (f64, f64, f64) {
    Kernels::new(thermal, basis).absolute()
}

/// `ln ∫d²α P(α) exp(-|α|² + uα + vα*)` for real `u`, `v`.
///
/// Every projected entry of the cross-Kerr schemes is a signed sum of such
/// Gaussian moments times overlap prefactors.
pub fn ln_thermal_moment(thermal: &ThermalParams, u: f64, v: f64) -> f64 {
    let s = thermal.p_width();
    let d = thermal.displacement;
    let denom = 1.0 + s;
    -denom.ln() + s * (u - d) * (v - d) / denom - d * d + (u + v) * d
}

/// `ln ∫d²α P(α) <a|α><α|b>` for real coherent amplitudes `a`, `b`.
pub fn ln_overlap_kernel(thermal: &ThermalParams, a: f64, b: f64) -> f64 {
    -(a * a + b * b) / 2.0 + ln_thermal_moment(thermal, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn overlap_identities() {
        assert_eq!(coherent_overlap(c(0.0, 0.0), c(0.0, 0.0)), c(1.0, 0.0));
        let z = coherent_overlap(c(2.0, 0.0), c(-2.0, 0.0));
        assert!((z.re - (-8.0f64).exp()).abs() < 1e-18 && z.im == 0.0);
        let a = c(0.7, -1.3);
        assert!((coherent_overlap(a, a) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(coherent_overlap(a, c(-0.4, 2.0)).norm() <= 1.0);
    }

    #[test]
    fn cat_basis_is_orthonormal_on_grid() {
        for i in 0..=90 {
            let gamma = 0.5 + 0.05 * i as f64;
            let basis = CatBasis::new(gamma).unwrap();
            let (np, nm) = (basis.norm_plus(), basis.norm_minus());
            // equal in f64 once e^{-2γ²} drops below machine epsilon
            assert!(nm >= np && np > 0.0);
            if gamma <= 3.0 {
                assert!(nm > np);
            }
            let g = c(gamma, 0.0);
            let gg = coherent_overlap(g, g);
            let gm = coherent_overlap(g, -g);
            let plus_plus = np * np * (gg + gm + gm + gg);
            let minus_minus = nm * nm * (gg - gm - gm + gg);
            let plus_minus = np * nm * (gg - gm + gm - gg);
            assert!((plus_plus.re - 1.0).abs() < 1e-12, "γ={gamma}");
            assert!((minus_minus.re - 1.0).abs() < 1e-12, "γ={gamma}");
            assert!(plus_minus.norm() < 1e-12);
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(ThermalParams::new(0.99, 0.0).is_err());
        assert!(ThermalParams::new(f64::INFINITY, 0.0).is_err());
        assert!(ThermalParams::new(2.0, f64::NAN).is_err());
        assert!(CatBasis::new(0.0).is_err());
        assert!(MicroState::new(1.01).is_err());
        assert!(MicroState::new(-0.1).is_err());
        assert!(AtomFieldParams::new(0.5, 1.0, 0.1, 0).is_err());
        assert!(AtomFieldParams::new(1.1, 0.5, 0.1, 0).is_err());
        assert!(AtomFieldParams::new(1.0, 0.5, -0.1, 0).is_err());
        let inf = AtomFieldParams::infinite_temperature(1.0, 0.3, 0, INFINITE_TEMPERATURE_EPSILON)
            .unwrap();
        assert!((inf.boltzmann() - 0.999).abs() < 1e-15);
    }

    #[test]
    fn mean_photons_round_trip() {
        let t = ThermalParams::new(1.0, 0.0).unwrap();
        assert_eq!(t.mean_photons(), 0.0);
        let t = ThermalParams::from_mean_photons(7.5, 2.0).unwrap();
        assert!((t.variance() - 8.0).abs() < 1e-15);
        assert!((t.mean_photons() - 7.5).abs() < 1e-15);
        let mut last = -1.0;
        for v in [1.0, 2.0, 5.0, 40.0] {
            let n = ThermalParams::new(v, 0.0).unwrap().mean_photons();
            assert!(n > last);
            last = n;
        }
        let mut last = -1.0;
        for d in [0.0, -0.5, 1.0, -3.0] {
            let n = ThermalParams::new(3.0, d).unwrap().mean_photons();
            assert!(n > last);
            last = n;
        }
    }

    #[test]
    fn purities() {
        assert_eq!(atom_purity(1.0), 1.0);
        assert_eq!(atom_purity(0.5), 0.5);
        assert_eq!(field_purity(0.0), 1.0);
        assert!(field_purity(1.0 - 1e-9) < 1e-9);
        for &(v, d) in &[(1.0, 0.0), (4.0, 3.0), (1000.0, -20.0)] {
            let t = ThermalParams::new(v, d).unwrap();
            assert!((t.purity() * v - 1.0).abs() < 1e-15);
        }
        assert!((ThermalParams::new(4.0, 1.5).unwrap().purity() - 0.25).abs() < 1e-15);
        assert!((MicroState::new(0.6).unwrap().purity() - 0.68).abs() < 1e-15);
        let p: f64 = (0..2000)
            .map(|k| {
                AtomFieldParams::new(1.0, 0.9, 0.0, 0)
                    .unwrap()
                    .occupation(k)
            })
            .sum();
        assert!((p - 1.0).abs() < 1e-12);
    }

    #[test]
    fn micro_state_matrix() {
        let pure = MicroState::new(1.0).unwrap().matrix();
        assert!((crate::qlinalg::purity(&pure).unwrap() - 1.0).abs() < 1e-15);
        let mixed = MicroState::new(0.0).unwrap().matrix();
        assert_eq!(mixed, BipartiteMatrix::identity(2, 1).scale(0.5));
        let m = MicroState::new(0.3).unwrap().matrix();
        assert_eq!(m.trace().re, 1.0);
        assert!(crate::qlinalg::min_eigenvalue(&m).unwrap() >= 0.0);
    }

    #[test]
    fn kernels_at_vacuum() {
        for gamma in [0.5, 1.0, 2.0, 3.0] {
            for v in [1.0, 3.0, 100.0] {
                let basis = CatBasis::new(gamma).unwrap();
                let (cg, sg, rg) =
                    cgamma_sgamma_rgamma(&ThermalParams::new(v, 0.0).unwrap(), &basis);
                assert_eq!(sg, 0.0);
                if v == 1.0 {
                    let expected = 2.0 * (-gamma * gamma).exp();
                    assert!((cg - expected).abs() < 1e-15 * expected.max(1.0));
                    assert!((rg - expected).abs() < 1e-15 * expected.max(1.0));
                }
            }
        }
    }

    #[test]
    fn kernels_match_printed_closed_forms() {
        let basis = CatBasis::new(2.0).unwrap();
        for &(v, d) in &[(1.0, 0.3), (10.0, 5.0), (2.0, -1.0), (1000.0, 30.0)] {
            let (cg, sg, rg) = cgamma_sgamma_rgamma(&ThermalParams::new(v, d).unwrap(), &basis);
            let g = 2.0f64;
            let pre = 4.0 / (v + 1.0) * (-2.0 / (v + 1.0) * (g * g + d * d)).exp();
            let arg = 4.0 * g * d / (v + 1.0);
            let r = 4.0 / (v + 1.0) * (-2.0 / (v + 1.0) * (v * g * g + d * d)).exp();
            assert!((cg - pre * arg.cosh()).abs() <= 1e-14 * cg);
            assert!((sg - pre * arg.sinh()).abs() <= 1e-14 * cg);
            assert!((rg - r).abs() <= 1e-14 * r);
        }
    }

    #[test]
    fn kernels_survive_huge_displacement() {
        let basis = CatBasis::new(2.0).unwrap();
        let k = Kernels::new(&ThermalParams::new(10.0, 1500.0).unwrap(), &basis);
        assert!(k.ln_scale.is_finite() && k.ln_scale < -1e5);
        assert!(k.s > 0.99 && k.s <= 1.0 && k.r >= 0.0);
        assert_eq!(k.absolute().0, 0.0);
    }

    #[test]
    fn kernel_sums_reproduce_c_s_r() {
        // C = K(γ,γ)+K(-γ,-γ), S = K(γ,γ)-K(-γ,-γ), R = 2K(γ,-γ)
        let g = 1.5;
        let basis = CatBasis::new(g).unwrap();
        let t = ThermalParams::new(7.0, 2.5).unwrap();
        let k = |a: f64, b: f64| ln_overlap_kernel(&t, a, b).exp();
        let (cg, sg, rg) = cgamma_sgamma_rgamma(&t, &basis);
        let parts: Vec<f64> = [k(g, g) + k(-g, -g), k(g, g) - k(-g, -g), 2.0 * k(g, -g)].to_vec();
        assert!((parts[0] - cg).abs() < 1e-14 * cg);
        assert!((parts[1] - sg).abs() < 1e-14 * cg);
        assert!((parts[2] - rg).abs() < 1e-14 * rg);
    }
}
