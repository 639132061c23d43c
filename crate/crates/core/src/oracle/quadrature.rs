//! Gauss-Hermite quadrature over the thermal P-function.
//!
//! Every cross-Kerr state is an integral of coherent-state outer products
//! against `P(α) = exp(-|α-d|²/s)/(πs)`, `s = (V-1)/2`. The overlaps with the
//! cat basis decay like `e^{-|α|²}`, so for large `V` the integrand is far
//! narrower than `P` itself. Nodes are therefore placed on the Gaussian
//! `P(α)·e^{-κ|α|²}` (center `d/(1+κs)`, variance `s/(1+κs)`), and the ratio
//! of `P` to that envelope is folded into the weights.

use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use super::hermite::GaussHermite;
use crate::qlinalg::BipartiteMatrix;
use crate::schemes::{ScaledMatrix, SchemeParams, Sign};
use crate::states::{coherent_overlap, CatBasis, MicroState, ThermalParams};
use crate::{CompensatedSum, Error, Result};

pub const DEFAULT_ORDER: usize = 80;
/// Maximum entry change allowed when the order is doubled.
pub const SELF_CONVERGENCE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureGrid {
    /// Gauss-Hermite points per real axis.
    pub order: usize,
    /// Decay rate `κ` of the overlap factors, `|integrand| ~ e^{-κ|α|²}`.
    pub envelope: f64,
    /// Re-run at twice the order and fail if any entry moves by more than
    /// [`SELF_CONVERGENCE_TOLERANCE`].
    pub check_convergence: bool,
}

impl Default for QuadratureGrid {
    fn default() -> Self {
        Self {
            order: DEFAULT_ORDER,
            envelope: 1.0,
            check_convergence: true,
        }
    }
}

impl QuadratureGrid {
    pub fn with_order(order: usize) -> Self {
        Self {
            order,
            ..Self::default()
        }
    }

    fn doubled(&self) -> Self {
        Self {
            order: 2 * self.order,
            check_convergence: false,
            ..*self
        }
    }
}

/// Node set for `∫d²α P(α) f(α) ≈ Σ_k e^{ln w_k} f(α_k)`.
#[derive(Debug, Clone)]
pub struct ThermalRule {
    /// `(α_k, ln w_k)`.
    pub points: Vec<(Complex64, f64)>,
}

impl ThermalRule {
    pub fn new(thermal: &ThermalParams, grid: &QuadratureGrid) -> Self {
        let d = Complex64::new(thermal.displacement(), 0.0);
        let s = thermal.p_width();
        if s == 0.0 {
            return Self {
                points: alloc::vec![(d, 0.0)],
            };
        }
        let kappa = grid.envelope;
        let center = d / (1.0 + kappa * s);
        let sigma = (s / (1.0 + kappa * s)).sqrt();
        let ln_ratio = -(1.0 + kappa * s).ln() - core::f64::consts::PI.ln();
        let rule = GaussHermite::new(grid.order);
        let mut points = Vec::with_capacity(grid.order * grid.order);
        for (&x, &wx) in rule.nodes.iter().zip(&rule.weights) {
            for (&y, &wy) in rule.nodes.iter().zip(&rule.weights) {
                let alpha = center + Complex64::new(x, y) * sigma;
                // P(α)/g(α) with g the envelope density
                let ln_w = (wx * wy).ln() + ln_ratio + x * x + y * y - (alpha - d).norm_sqr() / s;
                points.push((alpha, ln_w));
            }
        }
        Self { points }
    }

    pub fn integrate<const K: usize>(
        &self,
        f: impl Fn(Complex64) -> [Complex64; K],
    ) -> [Complex64; K] {
        let mut acc = [CompensatedSum::new(); K];
        for &(alpha, ln_w) in &self.points {
            let w = ln_w.exp();
            for (a, v) in acc.iter_mut().zip(f(alpha)) {
                a.add(v * w);
            }
        }
        acc.map(|a| a.value())
    }

    /// `Σ_k e^{ln w_k + h(α_k) - L} f(α_k)` together with `L`, the largest
    /// exponent. `f` is expected to carry the factor `e^{-h}`.
    pub fn integrate_scaled<const K: usize>(
        &self,
        h: impl Fn(Complex64) -> f64,
        f: impl Fn(Complex64) -> [Complex64; K],
    ) -> ([Complex64; K], f64) {
        let shift = self
            .points
            .iter()
            .map(|&(a, ln_w)| ln_w + h(a))
            .fold(f64::NEG_INFINITY, f64::max);
        let mut acc = [CompensatedSum::new(); K];
        for &(alpha, ln_w) in &self.points {
            let w = (ln_w + h(alpha) - shift).exp();
            if w == 0.0 {
                continue;
            }
            for (a, v) in acc.iter_mut().zip(f(alpha)) {
                a.add(v * w);
            }
        }
        (acc.map(|a| a.value()), shift)
    }
}

/// `ln` of the scale `e^{-|α|²/2 + γ|Re α|}` bounding `|<±γ|α>|·e^{γ²/2}`.
fn ln_projection_scale(gamma: f64, alpha: Complex64) -> f64 {
    -alpha.norm_sqr() / 2.0 + gamma * alpha.re.abs()
}

/// `[<+|α>, <-|α>]` divided by `e^{ln_projection_scale}`.
fn scaled_projection(basis: &CatBasis, alpha: Complex64) -> [Complex64; 2] {
    let g = basis.gamma();
    let base = -g * alpha.re.abs() - g * g / 2.0;
    let up = (alpha * g + base).exp();
    let down = (-alpha * g + base).exp();
    [
        (up + down) * basis.norm_plus(),
        (up - down) * basis.norm_minus(),
    ]
}

/// Coherent sign flips `ξ ∈ {+1, -1}` indexed by 0, 1.
const FLIP: [f64; 2] = [1.0, -1.0];

/// Single-mode projections `M[i][j][s][t] = e^{-ln_scale} ∫P <s|ξ_i α><ξ_j α|t>`
/// together with the traces `T[i][j] = ∫P <ξ_j α|ξ_i α>`.
struct SingleMode {
    m: [[[[Complex64; 2]; 2]; 2]; 2],
    ln_scale: f64,
    tr: [[Complex64; 2]; 2],
}

fn single_mode(rule: &ThermalRule, basis: &CatBasis) -> SingleMode {
    let g = basis.gamma();
    let (raw, ln_scale) = rule.integrate_scaled::<16>(
        |alpha| 2.0 * ln_projection_scale(g, alpha),
        |alpha| {
            let v = [
                scaled_projection(basis, alpha * FLIP[0]),
                scaled_projection(basis, alpha * FLIP[1]),
            ];
            let mut out = [Complex64::new(0.0, 0.0); 16];
            for i in 0..2 {
                for j in 0..2 {
                    for s in 0..2 {
                        for t in 0..2 {
                            out[8 * i + 4 * j + 2 * s + t] = v[i][s] * v[j][t].conj();
                        }
                    }
                }
            }
            out
        },
    );
    // ∫P <-α|α> = ∫P <α|-α>; ∫P = 1
    let [cross] = rule.integrate::<1>(|alpha| [coherent_overlap(-alpha, alpha)]);
    let one = Complex64::new(1.0, 0.0);
    let mut m = [[[[Complex64::new(0.0, 0.0); 2]; 2]; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            for s in 0..2 {
                for t in 0..2 {
                    m[i][j][s][t] = raw[8 * i + 4 * j + 2 * s + t];
                }
            }
        }
    }
    SingleMode {
        m,
        ln_scale,
        tr: [[one, cross], [cross, one]],
    }
}

/// Weights `c_ij = <±|i> ρ_ij <j|±>` left after conditioning the microscopic
/// state on `(|0> ± |1>)/√2`.
fn conditioned_micro(micro: &MicroState, sign: Sign) -> [[f64; 2]; 2] {
    let rho = micro.matrix();
    let proj = [1.0 / 2f64.sqrt(), sign.value() / 2f64.sqrt()];
    let mut c = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = proj[i] * rho[(i, j)].re * proj[j];
        }
    }
    c
}

fn normalize_by(m: BipartiteMatrix, ln_scale: f64, probability: Complex64) -> Result<ScaledMatrix> {
    let p = probability.re;
    if !(p > 0.0) {
        return Err(Error::DegenerateState { trace: p });
    }
    Ok(ScaledMatrix {
        matrix: m.scale(1.0 / p),
        ln_scale,
    })
}

/// Kerr at `χt = π` maps `|i>|α> → |i>|(-1)^i α>`.
fn kerr_micro_thermal(micro: &MicroState, mode: &SingleMode) -> ScaledMatrix {
    let rho = micro.matrix();
    let matrix = BipartiteMatrix::from_fn(2, 2, |row, col| {
        let (i, s) = (row / 2, row % 2);
        let (j, t) = (col / 2, col % 2);
        rho[(i, j)] * mode.m[i][j][s][t]
    });
    ScaledMatrix {
        matrix,
        ln_scale: mode.ln_scale,
    }
}

fn two_thermal(micro: &MicroState, sign: Sign, mode: &SingleMode) -> Result<ScaledMatrix> {
    let c = conditioned_micro(micro, sign);
    let mut prob = Complex64::new(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            prob += mode.tr[i][j] * mode.tr[i][j] * c[i][j];
        }
    }
    let m = BipartiteMatrix::from_fn(2, 2, |row, col| {
        let (s1, s2) = (row / 2, row % 2);
        let (t1, t2) = (col / 2, col % 2);
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                acc += mode.m[i][j][s1][t1] * mode.m[i][j][s2][t2] * c[i][j];
            }
        }
        acc
    });
    normalize_by(m, 2.0 * mode.ln_scale, prob)
}

/// `U|α>|β> = ½(|α,β> + |α,-β> + |-α,β> - |-α,-β>)`.
const CONTROLLED_PHASE_EXPANSION: [[f64; 2]; 2] = [[0.5, 0.5], [0.5, -0.5]];

fn direct_kerr(mode: &SingleMode) -> ScaledMatrix {
    let c = CONTROLLED_PHASE_EXPANSION;
    let matrix = BipartiteMatrix::from_fn(2, 2, |row, col| {
        let (s1, s2) = (row / 2, row % 2);
        let (t1, t2) = (col / 2, col % 2);
        let mut acc = Complex64::new(0.0, 0.0);
        for e1 in 0..2 {
            for e2 in 0..2 {
                for f1 in 0..2 {
                    for f2 in 0..2 {
                        acc += mode.m[e1][f1][s1][t1]
                            * mode.m[e2][f2][s2][t2]
                            * (c[e1][e2] * c[f1][f2]);
                    }
                }
            }
        }
        acc
    });
    ScaledMatrix {
        matrix,
        ln_scale: 2.0 * mode.ln_scale,
    }
}

/// After conditioning, `|ξα>` enters a 50:50 beam splitter and leaves as
/// `|ξα/√2>|-ξα/√2>`.
fn beam_splitter(
    micro: &MicroState,
    sign: Sign,
    rule: &ThermalRule,
    basis: &CatBasis,
) -> Result<ScaledMatrix> {
    let c = conditioned_micro(micro, sign);
    let g = basis.gamma();
    let half = core::f64::consts::FRAC_1_SQRT_2;
    let (raw, ln_scale) = rule.integrate_scaled::<16>(
        |alpha| 4.0 * ln_projection_scale(g, alpha * half),
        |alpha| {
            let delta = alpha * half;
            let mut out = [Complex64::new(0.0, 0.0); 16];
            let mut outputs = [[Complex64::new(0.0, 0.0); 4]; 2];
            for (i, v) in outputs.iter_mut().enumerate() {
                let a = scaled_projection(basis, delta * FLIP[i]);
                let b = scaled_projection(basis, -delta * FLIP[i]);
                for s in 0..4 {
                    v[s] = a[s / 2] * b[s % 2];
                }
            }
            for i in 0..2 {
                for j in 0..2 {
                    if c[i][j] == 0.0 {
                        continue;
                    }
                    for row in 0..4 {
                        for col in 0..4 {
                            out[4 * row + col] +=
                                outputs[i][row] * outputs[j][col].conj() * c[i][j];
                        }
                    }
                }
            }
            out
        },
    );
    // diagonal terms integrate ∫P = 1
    let [cross] = rule.integrate::<1>(|alpha| {
        let (x, y) = (alpha * half, -alpha * half);
        [coherent_overlap(y, x) * coherent_overlap(-y, -x)]
    });
    let prob = cross * (c[0][1] + c[1][0]) + c[0][0] + c[1][1];
    let m = BipartiteMatrix::from_fn(2, 2, |row, col| raw[4 * row + col]);
    normalize_by(m, ln_scale, prob)
}

fn evaluate(params: &SchemeParams, grid: &QuadratureGrid) -> Result<ScaledMatrix> {
    match *params {
        SchemeParams::JaynesCummings(_) => Err(Error::parameter(
            "scheme",
            f64::NAN,
            "the Jaynes-Cummings scheme is validated in Fock space, not by quadrature",
        )),
        SchemeParams::KerrMicroThermal {
            micro,
            thermal,
            basis,
        } => {
            let rule = ThermalRule::new(&thermal, grid);
            Ok(kerr_micro_thermal(&micro, &single_mode(&rule, &basis)))
        }
        SchemeParams::BeamSplitter {
            micro,
            thermal,
            basis,
            sign,
        } => {
            let rule = ThermalRule::new(&thermal, grid);
            beam_splitter(&micro, sign, &rule, &basis)
        }
        SchemeParams::TwoThermal {
            micro,
            thermal,
            basis,
            sign,
        } => {
            let rule = ThermalRule::new(&thermal, grid);
            two_thermal(&micro, sign, &single_mode(&rule, &basis))
        }
        SchemeParams::DirectKerr { thermal, basis } => {
            let rule = ThermalRule::new(&thermal, grid);
            Ok(direct_kerr(&single_mode(&rule, &basis)))
        }
    }
}

/// Projected matrix of a cross-Kerr scheme by direct quadrature of coherent
/// overlaps, in the same normalization as the closed forms. Two-mode schemes
/// use the tensor product of two single-mode grids, evaluated through the
/// cached single-mode integrals. The order-doubling check compares
/// trace-normalized entries.
pub fn quadrature_projected(params: &SchemeParams, grid: &QuadratureGrid) -> Result<ScaledMatrix> {
    let m = evaluate(params, grid)?;
    if grid.check_convergence {
        let fine = evaluate(params, &grid.doubled())?;
        let (a, b) = (&m.matrix, &fine.matrix);
        let (ta, tb) = (a.trace(), b.trace());
        let n = a.dim();
        for row in 0..n {
            for col in 0..n {
                let change = (a[(row, col)] / ta - b[(row, col)] / tb).norm();
                if change > SELF_CONVERGENCE_TOLERANCE || !change.is_finite() {
                    return Err(Error::OracleUnstable {
                        row,
                        col,
                        change,
                        order: grid.order,
                        doubled: 2 * grid.order,
                    });
                }
            }
        }
    }
    Ok(m)
}

/// `(C_γ, S_γ, R_γ)` recovered from quadrature of the thermal state against
/// the cat basis.
pub fn quadrature_kernels(
    thermal: &ThermalParams,
    basis: &CatBasis,
    grid: &QuadratureGrid,
) -> (f64, f64, f64) {
    let rule = ThermalRule::new(thermal, grid);
    let mode = single_mode(&rule, basis);
    let scale = mode.ln_scale.exp();
    let a = mode.m[0][0].map(|row| row.map(|z| z * scale));
    let (np, nm) = (basis.norm_plus(), basis.norm_minus());
    let plus = a[0][0].re / (np * np);
    let minus = a[1][1].re / (nm * nm);
    (
        (plus + minus) / 2.0,
        a[0][1].re / (np * nm),
        (plus - minus) / 2.0,
    )
}

/// `<s|σ(V,d)|t>` on the cat basis, `σ = ∫P |α><-α|`.
pub fn quadrature_sigma_block(
    thermal: &ThermalParams,
    basis: &CatBasis,
    grid: &QuadratureGrid,
) -> [[Complex64; 2]; 2] {
    let rule = ThermalRule::new(thermal, grid);
    let mode = single_mode(&rule, basis);
    let scale = mode.ln_scale.exp();
    mode.m[0][1].map(|row| row.map(|z| z * scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::cgamma_sgamma_rgamma;

    #[test]
    fn rule_integrates_overlap_moments() {
        for &(v, d) in &[(1.0, 0.7), (2.0, 1.0), (10.0, 5.0), (1000.0, 30.0)] {
            let t = ThermalParams::new(v, d).unwrap();
            let rule = ThermalRule::new(&t, &QuadratureGrid::default());
            for &(a, b) in &[(0.0, 0.0), (1.5, 1.5), (2.0, -2.0), (-1.0, 0.5)] {
                let [got] = rule.integrate::<1>(|x| {
                    let ca = Complex64::new(a, 0.0);
                    let cb = Complex64::new(b, 0.0);
                    [coherent_overlap(x, ca) * coherent_overlap(cb, x)]
                });
                let want = crate::states::ln_overlap_kernel(&t, a, b).exp();
                assert!(
                    (got.re - want).abs() < 1e-12,
                    "V={v} a={a} b={b}: {got} {want}"
                );
                assert!(got.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn kernels_match_closed_forms() {
        let t = ThermalParams::new(10.0, 5.0).unwrap();
        let b = CatBasis::new(2.0).unwrap();
        let (c, s, r) = quadrature_kernels(&t, &b, &QuadratureGrid::default());
        let (c0, s0, r0) = cgamma_sgamma_rgamma(&t, &b);
        assert!((c - c0).abs() <= 1e-8 * c0, "{c} {c0}");
        assert!((s - s0).abs() <= 1e-8 * c0, "{s} {s0}");
        assert!((r - r0).abs() <= 1e-8 * c0.max(r0), "{r} {r0}");
    }

    #[test]
    fn sigma_is_symmetric_without_displacement() {
        let t = ThermalParams::new(6.0, 0.0).unwrap();
        let b = CatBasis::new(1.5).unwrap();
        let sigma = quadrature_sigma_block(&t, &b, &QuadratureGrid::default());
        assert!(sigma[0][0].im.abs() < 1e-14);
        assert!((sigma[0][1] - sigma[1][0]).norm() < 1e-14);
    }

    #[test]
    fn coherent_limit_is_a_point_evaluation() {
        let t = ThermalParams::new(1.0, 2.0).unwrap();
        let rule = ThermalRule::new(&t, &QuadratureGrid::default());
        assert_eq!(rule.points, alloc::vec![(Complex64::new(2.0, 0.0), 0.0)]);
    }

    #[test]
    fn jc_is_rejected() {
        let p =
            SchemeParams::JaynesCummings(crate::AtomFieldParams::new(1.0, 0.5, 0.1, 0).unwrap());
        assert!(quadrature_projected(&p, &QuadratureGrid::default()).is_err());
    }
}
