//! Atom and thermal field after a resonant Jaynes-Cummings interaction, with
//! the field projected onto `span{|n>, |n+1>}`.

use num_complex::Complex64;

use super::{SchemeOutput, SchemeParams, Transcription};
use crate::qlinalg::BipartiteMatrix;
use crate::states::AtomFieldParams;
use crate::Result;
#[cfg(not(feature = "std"))]
use num_traits::Float;

/// Row order of the projected matrix. As a bipartite matrix, factor A is
/// the field level (`n`, `n+1`) and factor B the atom (`g`, `e`).
pub const JC_BASIS_ORDER: [&str; 4] = ["|g,n>", "|e,n>", "|g,n+1>", "|e,n+1>"];

/// `(cos, sin)` of `gt·√(k+1)`; `k = -1` gives `(1, 0)`.
fn rabi(gt: f64, k: i64) -> (f64, f64) {
    let angle = gt * ((k + 1) as f64).sqrt();
    (angle.cos(), angle.sin())
}

pub(super) fn matrix(params: &AtomFieldParams, form: Transcription) -> BipartiteMatrix {
    let n = params.n() as i64;
    let p = params.excited();
    let q = 1.0 - p;
    let gt = params.gt();
    let occ = |k: i64| params.occupation(k);
    let (c_prev, s_prev) = rabi(gt, n - 1);
    let (c_n, s_n) = rabi(gt, n);
    let (c_next, s_next) = rabi(gt, n + 1);

    // q-weighted |e,n><e,n| comes from |g,n+1> rotating at gt√(n+1)
    let q_excited = match form {
        Transcription::Derived => occ(n + 1) * s_n * s_n,
        Transcription::Printed => occ(n + 1) * s_next * s_next,
    };

    let d0 = p * occ(n - 1) * s_prev * s_prev + q * occ(n) * c_prev * c_prev;
    let d1 = p * occ(n) * c_n * c_n + q * q_excited;
    let d2 = p * occ(n) * s_n * s_n + q * occ(n + 1) * c_n * c_n;
    let d3 = p * occ(n + 1) * c_next * c_next + q * occ(n + 2) * s_next * s_next;
    let coh = p * occ(n) * c_n * s_n - q * occ(n + 1) * c_n * s_n;

    let mut m = BipartiteMatrix::zeros(2, 2);
    m[(0, 0)] = Complex64::new(d0, 0.0);
    m[(1, 1)] = Complex64::new(d1, 0.0);
    m[(2, 2)] = Complex64::new(d2, 0.0);
    m[(3, 3)] = Complex64::new(d3, 0.0);
    m[(1, 2)] = Complex64::new(0.0, coh);
    m[(2, 1)] = Complex64::new(0.0, -coh);
    m
}

/// Projected atom-field state after the Jaynes-Cummings interaction.
pub fn jc_projected(params: &AtomFieldParams) -> Result<SchemeOutput> {
    jc_projected_with(params, Transcription::Derived)
}

pub fn jc_projected_with(params: &AtomFieldParams, form: Transcription) -> Result<SchemeOutput> {
    SchemeParams::JaynesCummings(*params).evaluate_with(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::FRAC_PI_2;

    #[test]
    fn no_interaction_gives_diagonal_product() {
        for &(p, lambda, n) in &[(1.0, 0.999, 0), (0.3, 0.5, 4), (0.5, 0.0, 0)] {
            let out = jc_projected(&AtomFieldParams::new(p, lambda, 0.0, n).unwrap()).unwrap();
            let m = out.matrix();
            for i in 0..4 {
                for j in 0..4 {
                    if i != j {
                        assert_eq!(m[(i, j)].norm(), 0.0);
                    }
                }
            }
            assert_eq!(out.npt(), 0.0);
        }
    }

    fn npt(p: f64, lambda: f64, gt: f64, n: usize) -> f64 {
        jc_projected(&AtomFieldParams::new(p, lambda, gt, n).unwrap())
            .unwrap()
            .npt()
    }

    #[test]
    fn excited_atom_vacuum_sector_zeros() {
        assert!(npt(1.0, 0.999, FRAC_PI_2, 0) <= 1e-10);
        for k in 1..40 {
            let gt = k as f64 * FRAC_PI_2 / 40.0;
            assert!(npt(1.0, 0.999, gt, 0) > 0.0, "gt={gt}");
        }
    }

    #[test]
    fn higher_projections_cover_the_vacuum_sector_zeros() {
        // n = 0 vanishes at gt = kπ/2; the other projections do not
        for k in 1..4 {
            let gt = k as f64 * FRAC_PI_2;
            assert!(npt(1.0, 0.999, gt, 10) > 0.0 || npt(1.0, 0.999, gt, 100) > 0.0);
        }
        for n in [10, 100] {
            let positive = (1..200)
                .filter(|&k| npt(1.0, 0.999, k as f64 * 0.01, n) > 0.0)
                .count();
            assert!(positive > 0, "n={n}");
        }
    }

    #[test]
    fn matrix_is_hermitian_with_trace_at_most_one() {
        let m = matrix(
            &AtomFieldParams::new(0.7, 0.6, 1.1, 2).unwrap(),
            Transcription::Derived,
        );
        assert_eq!(m.hermiticity_deviation(), 0.0);
        let t = m.trace().re;
        assert!(t > 0.0 && t <= 1.0);
    }

    #[test]
    fn printed_form_differs_only_in_one_entry() {
        let params = AtomFieldParams::new(0.4, 0.5, 0.9, 3).unwrap();
        let derived = matrix(&params, Transcription::Derived);
        let printed = matrix(&params, Transcription::Printed);
        for i in 0..4 {
            for j in 0..4 {
                if (i, j) != (1, 1) {
                    assert_eq!(derived[(i, j)], printed[(i, j)]);
                }
            }
        }
        assert!((derived[(1, 1)] - printed[(1, 1)]).norm() > 1e-3);
        // and p = 1 removes the q-weighted term entirely
        let params = AtomFieldParams::new(1.0, 0.5, 0.9, 3).unwrap();
        assert_eq!(
            matrix(&params, Transcription::Derived),
            matrix(&params, Transcription::Printed)
        );
    }

    #[test]
    fn rabi_kernels_are_periodic() {
        for k in [0i64, 3, 10] {
            let period = 2.0 * core::f64::consts::PI / ((k + 1) as f64).sqrt();
            for gt in [0.1, 0.7, 1.3] {
                let (c0, s0) = rabi(gt, k);
                let (c1, s1) = rabi(gt + period, k);
                assert!((c0 - c1).abs() < 1e-12 && (s0 - s1).abs() < 1e-12);
            }
        }
    }
}
