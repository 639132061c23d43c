//! Dense complex linear algebra on small bipartite matrices: partial
//! transpose, Hermitian eigendecomposition, negativity and purity.

mod eigen;
mod matrix;

pub use eigen::{eigh, Eigen};
pub use matrix::BipartiteMatrix;

use crate::{Error, Result};

/// Hermiticity deviations up to this (relative to the largest entry, or
/// absolute below unit scale) are symmetrized away; larger ones are rejected.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Tensor factor selector for the partial transpose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    A,
    B,
}

/// Transposes the selected tensor factor.
///
/// For `Factor::B`: `out[(a,b),(a',b')] = m[(a,b'),(a',b)]`.
pub fn partial_transpose(m: &BipartiteMatrix, which: Factor) -> BipartiteMatrix {
    let db = m.dim_b();
    BipartiteMatrix::from_fn(m.dim_a(), db, |i, j| {
        let (a, b) = (i / db, i % db);
        let (ap, bp) = (j / db, j % db);
        match which {
            Factor::B => m[(a * db + bp, ap * db + b)],
            Factor::A => m[(ap * db + b, a * db + bp)],
        }
    })
}

/// Checks finiteness and Hermiticity, returning the symmetrized matrix.
pub fn hermitize(m: &BipartiteMatrix) -> Result<BipartiteMatrix> {
    m.check_finite()?;
    let deviation = m.hermiticity_deviation();
    if deviation > HERMITIAN_TOLERANCE * m.max_abs().max(1.0) {
        return Err(Error::NotHermitian { deviation });
    }
    Ok(m.hermitian_part())
}

/// Full eigendecomposition of a (near-)Hermitian matrix.
pub fn eigen_decomposition(m: &BipartiteMatrix) -> Result<Eigen> {
    let h = hermitize(m)?;
    eigh(h.dim(), h.entries())
}

/// Smallest eigenvalue of `(m + m†)/2`.
pub fn min_eigenvalue(m: &BipartiteMatrix) -> Result<f64> {
    Ok(eigen_decomposition(m)?.values[0])
}

/// Negativity of the partial transpose, `-2 min(0, ε)`, where `ε` is the
/// smallest eigenvalue of the partial transpose (on B) of `m / Tr m`.
pub fn npt(m: &BipartiteMatrix) -> Result<f64> {
    let normalized = normalize(m)?;
    let eps = min_eigenvalue(&partial_transpose(&normalized, Factor::B))?;
    Ok(if eps < 0.0 { -2.0 * eps } else { 0.0 })
}

/// `Tr[(m/Tr m)^2]`.
pub fn purity(m: &BipartiteMatrix) -> Result<f64> {
    let h = hermitize(m)?;
    let t = h.trace().re;
    if !(t > 0.0) {
        return Err(Error::DegenerateState { trace: t });
    }
    // Tr[H^2] = Σ |h_ij|^2 for Hermitian H
    let sq: f64 = h.entries().iter().map(|z| z.norm_sqr()).sum();
    Ok(sq / (t * t))
}

/// `m / Tr m`, rejecting non-positive traces.
pub fn normalize(m: &BipartiteMatrix) -> Result<BipartiteMatrix> {
    m.check_finite()?;
    let t = m.trace().re;
    if !(t > 0.0) {
        return Err(Error::DegenerateState { trace: t });
    }
    Ok(m.scale(1.0 / t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn bell() -> BipartiteMatrix {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let v = [
            Complex64::new(h, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(h, 0.0),
        ];
        BipartiteMatrix::projector(2, 2, &v).unwrap()
    }

    #[test]
    fn identity_is_fixed_by_partial_transpose() {
        let id = BipartiteMatrix::identity(2, 2);
        assert_eq!(partial_transpose(&id, Factor::B), id);
        assert_eq!(partial_transpose(&id, Factor::A), id);
    }

    #[test]
    fn bell_projector() {
        let pt = partial_transpose(&bell(), Factor::B);
        assert!((min_eigenvalue(&pt).unwrap() + 0.5).abs() < 1e-15);
        assert!((npt(&bell()).unwrap() - 1.0).abs() < 1e-12);
        assert!((purity(&bell()).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_transposes_on_a_and_b_are_related_by_full_transpose() {
        let m = BipartiteMatrix::from_fn(2, 3, |i, j| Complex64::new(i as f64, (3 * j) as f64));
        let full_t = BipartiteMatrix::from_fn(2, 3, |i, j| m[(j, i)]);
        let lhs = partial_transpose(&partial_transpose(&m, Factor::A), Factor::B);
        assert_eq!(lhs, full_t);
    }

    #[test]
    fn diagonal_min_eigenvalue() {
        let m = BipartiteMatrix::from_real(
            2,
            2,
            &[
                0.1, 0.0, 0.0, 0.0, 0.0, 0.2, 0.0, 0.0, 0.0, 0.0, 0.3, 0.0, 0.0, 0.0, 0.0, 0.4,
            ],
        )
        .unwrap();
        assert_eq!(min_eigenvalue(&m).unwrap(), 0.1);
    }

    #[test]
    fn maximally_mixed_purity() {
        let m = BipartiteMatrix::identity(2, 2).scale(0.25);
        assert!((purity(&m).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(npt(&m).unwrap(), 0.0);
    }

    #[test]
    fn thermal_qubit_purity() {
        let m = BipartiteMatrix::from_real(2, 1, &[0.9, 0.0, 0.0, 0.1]).unwrap();
        assert!((purity(&m).unwrap() - 0.82).abs() < 1e-15);
    }

    #[test]
    fn error_paths() {
        let zero = BipartiteMatrix::zeros(2, 2);
        assert!(matches!(purity(&zero), Err(Error::DegenerateState { .. })));
        assert!(matches!(npt(&zero), Err(Error::DegenerateState { .. })));

        let mut nan = BipartiteMatrix::identity(2, 2);
        nan[(1, 2)] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(
            min_eigenvalue(&nan),
            Err(Error::NonFinite { row: 1, col: 2 })
        ));

        let mut skew = BipartiteMatrix::identity(2, 2);
        skew[(0, 1)] = Complex64::new(1e-3, 0.0);
        assert!(matches!(
            min_eigenvalue(&skew),
            Err(Error::NotHermitian { .. })
        ));

        // float noise below the tolerance is symmetrized silently
        let mut noisy = BipartiteMatrix::identity(2, 2);
        noisy[(0, 1)] = Complex64::new(1e-13, 0.0);
        assert!(min_eigenvalue(&noisy).is_ok());
    }
}
