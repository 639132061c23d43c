use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::{Error, Result};

/// Square complex matrix acting on a two-party space `C^dim_a ⊗ C^dim_b`.
///
/// Entries are stored row-major; the composite index of `(a, b)` is
/// `a * dim_b + b`. Projected states are Hermitian but generally not of unit
/// trace.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteMatrix {
    dim_a: usize,
    dim_b: usize,
    entries: Vec<Complex64>,
}

impl BipartiteMatrix {
    pub fn new(dim_a: usize, dim_b: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::InvalidShape("factor dimensions must be positive"));
        }
        let n = dim_a * dim_b;
        if entries.len() != n * n {
            return Err(Error::InvalidShape("entry count is not (dim_a*dim_b)^2"));
        }
        Ok(Self {
            dim_a,
            dim_b,
            entries,
        })
    }

    /// Real-valued constructor, convenient for the closed-form schemes.
    pub fn from_real(dim_a: usize, dim_b: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            dim_a,
            dim_b,
            entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zeros(dim_a: usize, dim_b: usize) -> Self {
        let n = dim_a * dim_b;
        Self {
            dim_a,
            dim_b,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(dim_a: usize, dim_b: usize) -> Self {
        let mut m = Self::zeros(dim_a, dim_b);
        for i in 0..m.dim() {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(
        dim_a: usize,
        dim_b: usize,
        mut f: impl FnMut(usize, usize) -> Complex64,
    ) -> Self {
        let n = dim_a * dim_b;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self {
            dim_a,
            dim_b,
            entries,
        }
    }

    /// Projector `|v><v|` onto an (unnormalized) vector of the joint space.
    pub fn projector(dim_a: usize, dim_b: usize, v: &[Complex64]) -> Result<Self> {
        if v.len() != dim_a * dim_b {
            return Err(Error::InvalidShape("vector length is not dim_a*dim_b"));
        }
        Ok(Self::from_fn(dim_a, dim_b, |i, j| v[i] * v[j].conj()))
    }

    /// Kronecker product; the result has factor dimensions
    /// `(self.dim(), other.dim())`.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim(), other.dim());
        Self::from_fn(n, m, |i, j| self[(i / m, j / m)] * other[(i % m, j % m)])
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    /// Side length of the matrix, `dim_a * dim_b`.
    pub fn dim(&self) -> usize {
        self.dim_a * self.dim_b
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Complex64> {
        self.entries
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim_a, self.dim_b, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            dim_a: self.dim_a,
            dim_b: self.dim_b,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise distance to another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.dim_a != other.dim_a || self.dim_b != other.dim_b {
            return Err(Error::InvalidShape("factor dimensions differ"));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }

    /// `max |m_ij - conj(m_ji)|`.
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim();
        let mut dev: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_finite(&self) -> bool {
        self.entries
            .iter()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub(crate) fn check_finite(&self) -> Result<()> {
        let n = self.dim();
        match self
            .entries
            .iter()
            .position(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            Some(k) => Err(Error::NonFinite {
                row: k / n,
                col: k % n,
            }),
            None => Ok(()),
        }
    }

    /// `(m + m†)/2`.
    pub fn hermitian_part(&self) -> Self {
        Self::from_fn(self.dim_a, self.dim_b, |i, j| {
            (self[(i, j)] + self[(j, i)].conj()) * 0.5
        })
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::InvalidShape("matrix sizes differ"));
        }
        let n = self.dim();
        let mut out = Self::zeros(self.dim_a, self.dim_b);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }
}

impl Index<(usize, usize)> for BipartiteMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.entries[i * self.dim() + j]
    }
}

impl IndexMut<(usize, usize)> for BipartiteMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        let n = self.dim();
        &mut self.entries[i * n + j]
    }
}
