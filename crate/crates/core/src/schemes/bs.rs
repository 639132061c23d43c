//! Conditioned Kerr output split on a 50:50 beam splitter.
//!
//! The two output modes carry `|δ>|-δ>` or `|-δ>|δ>` with `δ = α/√2`. Each
//! cat-basis entry expands into products of four coherent overlaps, and each
//! product is a Gaussian moment `∫P(α) exp(-|α|² + uα + vα*)` with
//! `u, v ∈ {0, ±√2γ}`, evaluated in log space and summed against the largest
//! term.

use alloc::vec::Vec;

use super::{to_matrix, ScaledMatrix, SchemeOutput, SchemeParams, Sign};
use crate::states::{ln_thermal_moment, CatBasis, MicroState, ThermalParams};
use crate::{Error, Result};
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// `|x1 δ><y1 δ| ⊗ |x2 δ><y2 δ|` with the given coefficient; the second
/// entry is `[x1, y1, x2, y2]`.
type Term = (f64, [f64; 4]);

fn terms(micro: &MicroState, sign: Sign) -> [Term; 4] {
    let w = sign.value() * micro.coherence();
    [
        (1.0, [1.0, 1.0, -1.0, -1.0]),
        (1.0, [-1.0, -1.0, 1.0, 1.0]),
        (w, [1.0, -1.0, -1.0, 1.0]),
        (w, [-1.0, 1.0, 1.0, -1.0]),
    ]
}

/// `N = (2 ± 2r e^{-2d²/V}/V)^{-1}`.
fn normalization(micro: &MicroState, thermal: &ThermalParams, sign: Sign) -> Result<f64> {
    let v = thermal.variance();
    let d = thermal.displacement();
    let denom = 2.0 + sign.value() * 2.0 * micro.coherence() * (-2.0 * d * d / v).exp() / v;
    if !(denom > 0.0) {
        return Err(Error::DegenerateState { trace: denom });
    }
    Ok(1.0 / denom)
}

/// `<s|ηγ>` expansion sign: `|+>` sums both components, `|->` weights `-γ`
/// by `-1`.
fn parity_sign(odd: usize, eta: f64) -> f64 {
    if odd == 1 {
        eta
    } else {
        1.0
    }
}

pub(super) fn matrix(
    micro: &MicroState,
    thermal: &ThermalParams,
    basis: &CatBasis,
    sign: Sign,
) -> Result<ScaledMatrix> {
    let norm = normalization(micro, thermal, sign)?;
    let g = basis.gamma();
    let amp = g * core::f64::consts::FRAC_1_SQRT_2;
    let terms = terms(micro, sign);

    // (signed weight, log magnitude) for every entry
    let mut parts: Vec<[Vec<(f64, f64)>; 4]> = Vec::with_capacity(4);
    let mut ln_max = f64::NEG_INFINITY;
    for row in 0..4 {
        let (s1, s2) = (row / 2, row % 2);
        let mut row_parts: [Vec<(f64, f64)>; 4] = Default::default();
        for (col, out) in row_parts.iter_mut().enumerate() {
            let (t1, t2) = (col / 2, col % 2);
            let prefactor = basis.norm(s1 == 0)
                * basis.norm(t1 == 0)
                * basis.norm(s2 == 0)
                * basis.norm(t2 == 0);
            for &(coeff, [x1, y1, x2, y2]) in &terms {
                if coeff == 0.0 {
                    continue;
                }
                for mask in 0..16u32 {
                    let eta = |bit: u32| if mask >> bit & 1 == 0 { 1.0 } else { -1.0 };
                    let (e1, e2, e3, e4) = (eta(0), eta(1), eta(2), eta(3));
                    let weight = coeff
                        * prefactor
                        * parity_sign(s1, e1)
                        * parity_sign(t1, e2)
                        * parity_sign(s2, e3)
                        * parity_sign(t2, e4);
                    let u = amp * (e1 * x1 + e3 * x2);
                    let v = amp * (e2 * y1 + e4 * y2);
                    let ln_mag = -2.0 * g * g + ln_thermal_moment(thermal, u, v);
                    ln_max = ln_max.max(ln_mag);
                    out.push((weight, ln_mag));
                }
            }
        }
        parts.push(row_parts);
    }

    let mut m = [[0.0; 4]; 4];
    for (row, row_parts) in parts.iter().enumerate() {
        for (col, entry) in row_parts.iter().enumerate() {
            let mut acc = crate::CompensatedSum::new();
            for &(w, ln_mag) in entry {
                acc.add(num_complex::Complex64::new(
                    w * (ln_mag - ln_max).exp(),
                    0.0,
                ));
            }
            m[row][col] = acc.value().re;
        }
    }
    Ok(ScaledMatrix {
        matrix: to_matrix(&m),
        ln_scale: norm.ln() + ln_max,
    })
}

/// Beam-splitter scheme, both output modes projected onto `{|+>_γ, |->_γ}`.
pub fn bs_scheme_projected(
    micro: &MicroState,
    thermal: &ThermalParams,
    basis: &CatBasis,
    sign: Sign,
) -> Result<SchemeOutput> {
    SchemeParams::BeamSplitter {
        micro: *micro,
        thermal: *thermal,
        basis: *basis,
        sign,
    }
    .evaluate()
}
