//! Cross-Kerr schemes whose projections reduce to the single-mode kernels
//! `C_γ`, `S_γ`, `R_γ`.
//!
//! With `U = exp(iπ a†a b†b)` a coherent amplitude picks up a sign per photon
//! of the other mode, so each scheme is a combination of two single-mode
//! blocks projected onto the cat basis:
//!
//! * `A(d) = <s|ρ_th(V,d)|t> = [[N+²(C+R), N+N-·S], [N+N-·S, N-²(C-R)]]`
//! * `B(d) = <s|σ(V,d)|t>    = [[N+²(C+R), -N+N-·S], [N+N-·S, N-²(R-C)]]`
//!
//! where `σ(V,d) = ∫d²α P(α) |α><-α|`. Mirroring `d → -d` flips the sign of
//! `S` only.

use super::{
    kron, to_matrix, Block, ScaledMatrix, SchemeOutput, SchemeParams, Sign, Transcription,
};
use crate::states::{CatBasis, Kernels, MicroState, ThermalParams};
use crate::{Error, Result};
#[cfg(not(feature = "std"))]
use num_traits::Float;

fn thermal_block(k: &Kernels, basis: &CatBasis) -> Block {
    let (np, nm) = (basis.norm_plus(), basis.norm_minus());
    [
        [np * np * (k.c + k.r), np * nm * k.s],
        [np * nm * k.s, nm * nm * (k.c - k.r)],
    ]
}

fn sigma_block(k: &Kernels, basis: &CatBasis) -> Block {
    let (np, nm) = (basis.norm_plus(), basis.norm_minus());
    [
        [np * np * (k.c + k.r), -np * nm * k.s],
        [np * nm * k.s, nm * nm * (k.r - k.c)],
    ]
}

pub(super) fn micro_thermal_matrix(
    micro: &MicroState,
    thermal: &ThermalParams,
    basis: &CatBasis,
    form: Transcription,
) -> ScaledMatrix {
    let k = Kernels::new(thermal, basis);
    let r = micro.coherence();
    let m = match form {
        Transcription::Derived => {
            // ½{|0><0|⊗A(d) + |1><1|⊗A(-d) + r|0><1|⊗B(d) + r|1><0|⊗B(-d)}
            let blocks = [
                [thermal_block(&k, basis), sigma_block(&k, basis)],
                [
                    sigma_block(&k.mirrored(), basis),
                    thermal_block(&k.mirrored(), basis),
                ],
            ];
            let weight = [[0.5, 0.5 * r], [0.5 * r, 0.5]];
            let mut out = [[0.0; 4]; 4];
            for (i, row) in out.iter_mut().enumerate() {
                for (j, e) in row.iter_mut().enumerate() {
                    *e = weight[i / 2][j / 2] * blocks[i / 2][j / 2][i % 2][j % 2];
                }
            }
            out
        }
        Transcription::Printed => printed_micro_thermal(&k, basis, r),
    };
    ScaledMatrix {
        matrix: to_matrix(&m),
        ln_scale: k.ln_scale,
    }
}

fn printed_micro_thermal(k: &Kernels, basis: &CatBasis, r: f64) -> [[f64; 4]; 4] {
    let (pp, pm, mm) = (
        basis.norm_plus() * basis.norm_plus(),
        basis.norm_plus() * basis.norm_minus(),
        basis.norm_minus() * basis.norm_minus(),
    );
    let (c, s) = (k.c, k.s);
    let first = [
        [pp * c, pm * s, r * pp * c, -r * pm * s],
        [pm * s, mm * c, r * pm * s, -r * mm * c],
        [r * pp * c, r * pm * s, pp * c, -pm * s],
        [-r * pm * s, -r * mm * c, -pm * s, mm * c],
    ];
    let second = [
        [pp, pm, r * pp, -r * pm],
        [pm, -mm, -r * pm, r * mm],
        [r * pp, -r * pm, pp, pm],
        [-r * pm, r * mm, pm, -mm],
    ];
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = first[i][j] + k.r * second[i][j];
        }
    }
    out
}

/// Microscopic superposition and displaced thermal field after a cross-Kerr
/// interaction of duration `π/χ`, projected onto `{|0>,|1>} ⊗ {|+>_γ,|->_γ}`.
pub fn kerr_micro_thermal_projected(
    micro: &MicroState,
    thermal: &ThermalParams,
    basis: &CatBasis,
) -> Result<SchemeOutput> {
    kerr_micro_thermal_projected_with(micro, thermal, basis, Transcription::Derived)
}

pub fn kerr_micro_thermal_projected_with(
    micro: &MicroState,
    thermal: &ThermalParams,
    basis: &CatBasis,
    form: Transcription,
) -> Result<SchemeOutput> {
    SchemeParams::KerrMicroThermal {
        micro: *micro,
        thermal: *thermal,
        basis: *basis,
    }
    .evaluate_with(form)
}

/// `N = 1/(2 ± 2r e^{-4d²/V}/V²)`, the inverse probability weight of the
/// conditioning outcome (up to the factor ¼ common to both terms).
fn two_thermal_normalization(
    micro: &MicroState,
    thermal: &ThermalParams,
    sign: Sign,
) -> Result<f64> {
    let v = thermal.variance();
    let d = thermal.displacement();
    let tr_sigma = (-2.0 * d * d / v).exp() / v;
    let denom = 2.0 + sign.value() * 2.0 * micro.coherence() * tr_sigma * tr_sigma;
    if !(denom > 0.0) {
        return Err(Error::DegenerateState { trace: denom });
    }
    Ok(1.0 / denom)
}

pub(super) fn two_thermal_matrix(
    micro: &MicroState,
    thermal: &ThermalParams,
    basis: &CatBasis,
    sign: Sign,
) -> Result<ScaledMatrix> {
    let norm = two_thermal_normalization(micro, thermal, sign)?;
    let k = Kernels::new(thermal, basis);
    let km = k.mirrored();
    let a = kron(&thermal_block(&k, basis), &thermal_block(&k, basis));
    let am = kron(&thermal_block(&km, basis), &thermal_block(&km, basis));
    let b = kron(&sigma_block(&k, basis), &sigma_block(&k, basis));
    let bm = kron(&sigma_block(&km, basis), &sigma_block(&km, basis));
    let w = sign.value() * micro.coherence();
    let mut out = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[i][j] = a[i][j] + am[i][j] + w * (b[i][j] + bm[i][j]);
        }
    }
    Ok(ScaledMatrix {
        matrix: to_matrix(&out),
        ln_scale: norm.ln() + 2.0 * k.ln_scale,
    })
}

/// Two displaced thermal fields sharing one Kerr-coupled microscopic
/// superposition, conditioned on the microscopic outcome `(|0> ± |1>)/√2`
/// and projected onto the cat basis on both modes.
pub fn tt_scheme_projected(
    micro: &MicroState,
    thermal: &ThermalParams,
    basis: &CatBasis,
    sign: Sign,
) -> Result<SchemeOutput> {
    SchemeParams::TwoThermal {
        micro: *micro,
        thermal: *thermal,
        basis: *basis,
        sign,
    }
    .evaluate()
}

/// `U` is diagonal on cat pairs: `-1` on `|->|->`, `+1` elsewhere.
const CONTROLLED_PHASE: [f64; 4] = [1.0, 1.0, 1.0, -1.0];

pub(super) fn direct_matrix(
    thermal: &ThermalParams,
    basis: &CatBasis,
    form: Transcription,
) -> ScaledMatrix {
    let k = Kernels::new(thermal, basis);
    let block = match form {
        Transcription::Derived => thermal_block(&k, basis),
        Transcription::Printed => [[k.c + k.r, k.s], [k.s, k.c - k.r]],
    };
    let mut m = kron(&block, &block);
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e *= CONTROLLED_PHASE[i] * CONTROLLED_PHASE[j];
        }
    }
    ScaledMatrix {
        matrix: to_matrix(&m),
        ln_scale: 2.0 * k.ln_scale,
    }
}

/// Two identical displaced thermal fields after `U = exp(iπ a†a b†b)`,
/// projected onto the cat basis on both modes.
pub fn direct_kerr_projected(thermal: &ThermalParams, basis: &CatBasis) -> Result<SchemeOutput> {
    direct_kerr_projected_with(thermal, basis, Transcription::Derived)
}

pub fn direct_kerr_projected_with(
    thermal: &ThermalParams,
    basis: &CatBasis,
    form: Transcription,
) -> Result<SchemeOutput> {
    SchemeParams::DirectKerr {
        thermal: *thermal,
        basis: *basis,
    }
    .evaluate_with(form)
}
