//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, Result};
#[cfg(not(feature = "std"))]
use num_traits::Float;

const MAX_SWEEPS: usize = 100;
/// Convergence when the off-diagonal Frobenius norm drops below this fraction
/// of the full Frobenius norm.
const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;

/// Eigenvalues in ascending order with matching unit eigenvectors.
#[derive(Debug, Clone)]
pub struct Eigen {
    n: usize,
    pub values: Vec<f64>,
    /// Column-major: column `k` is the eigenvector of `values[k]`.
    vectors: Vec<Complex64>,
}

impl Eigen {
    pub fn vector(&self, k: usize) -> &[Complex64] {
        &self.vectors[k * self.n..(k + 1) * self.n]
    }

    pub fn dim(&self) -> usize {
        self.n
    }
}

/// Diagonalizes the Hermitian matrix stored row-major in `a` (`n × n`).
///
/// Only the Hermitian part of the input is seen by the rotations; callers are
/// expected to have checked Hermiticity.
pub fn eigh(n: usize, a: &[Complex64]) -> Result<Eigen> {
    assert_eq!(a.len(), n * n, "eigh: slice is not n*n");
    let mut m: Vec<Complex64> = a.to_vec();
    for i in 0..n {
        m[i * n + i] = Complex64::new(m[i * n + i].re, 0.0);
        for j in i + 1..n {
            let h = (m[i * n + j] + m[j * n + i].conj()) * 0.5;
            m[i * n + j] = h;
            m[j * n + i] = h.conj();
        }
    }
    // Row-major accumulator of rotations; columns are eigenvectors.
    let mut v = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }

    let total = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let threshold = OFF_DIAGONAL_TOLERANCE * total;
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(n, &m);
        if off <= threshold || off == 0.0 {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(n, &mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].re.total_cmp(&m[j * n + j].re));
    let values = order.iter().map(|&i| m[i * n + i].re).collect();
    let mut vectors = Vec::with_capacity(n * n);
    for &k in &order {
        vectors.extend((0..n).map(|i| v[i * n + k]));
    }
    Ok(Eigen { n, values, vectors })
}

fn off_diagonal_norm(n: usize, m: &[Complex64]) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One Jacobi rotation annihilating `m[p][q]`: a phase rotation that makes
/// the pivot real, followed by the real symmetric rotation.
fn rotate(n: usize, m: &mut [Complex64], v: &mut [Complex64], p: usize, q: usize) {
    let apq = m[p * n + q];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    let phase = apq / b;

    let theta = (aqq - app) / (2.0 * b);
    let t = if theta.is_infinite() {
        0.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // J restricted to (p, q): [[c, s], [-s e^{-iφ}, c e^{-iφ}]]
    let jpp = Complex64::new(c, 0.0);
    let jpq = Complex64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    // m <- m J
    for k in 0..n {
        let mkp = m[k * n + p];
        let mkq = m[k * n + q];
        m[k * n + p] = mkp * jpp + mkq * jqp;
        m[k * n + q] = mkp * jpq + mkq * jqq;
    }
    // m <- J† m
    for k in 0..n {
        let mpk = m[p * n + k];
        let mqk = m[q * n + k];
        m[p * n + k] = jpp.conj() * mpk + jqp.conj() * mqk;
        m[q * n + k] = jpq.conj() * mpk + jqq.conj() * mqk;
    }
    m[p * n + q] = Complex64::new(0.0, 0.0);
    m[q * n + p] = Complex64::new(0.0, 0.0);
    m[p * n + p].im = 0.0;
    m[q * n + q].im = 0.0;

    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * jpp + vkq * jqp;
        v[k * n + q] = vkp * jpq + vkq * jqq;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let a = [
            c(0.3, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.1, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.2, 0.0),
        ];
        let e = eigh(3, &a).unwrap();
        assert_eq!(e.values, [0.1, 0.2, 0.3]);
        assert_eq!(e.vector(0)[1], c(1.0, 0.0));
    }

    #[test]
    fn pauli_y_has_eigenvalues_pm_one() {
        let a = [c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)];
        let e = eigh(2, &a).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        // (1, -i)/√2 for -1
        let v = e.vector(0);
        let r = [a[0] * v[0] + a[1] * v[1], a[2] * v[0] + a[3] * v[1]];
        assert!((r[0] + v[0]).norm() < 1e-15 && (r[1] + v[1]).norm() < 1e-15);
    }

    #[test]
    fn empty_and_scalar() {
        assert!(eigh(0, &[]).unwrap().values.is_empty());
        assert_eq!(eigh(1, &[c(-2.5, 0.0)]).unwrap().values, [-2.5]);
    }
}
