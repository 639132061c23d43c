//! Truncated Fock-space simulation of the Jaynes-Cummings scheme.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::qlinalg::{eigh, BipartiteMatrix};
use crate::states::AtomFieldParams;
use crate::{Error, Result};

pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-12;
/// Largest truncation chosen automatically. The evolved state is stored as
/// 2×2 excitation blocks, so memory grows linearly with `n_max`.
pub const MAX_ADAPTIVE_N_MAX: usize = 1 << 15;

/// Fock states `|0>, ..., |n_max>` of one bosonic mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockSpace {
    n_max: usize,
    tail_tolerance: f64,
}

impl FockSpace {
    pub fn new(n_max: usize, tail_tolerance: f64) -> Result<Self> {
        if n_max < 1 {
            return Err(Error::parameter("n_max", n_max as f64, "must be >= 1"));
        }
        Ok(Self {
            n_max,
            tail_tolerance,
        })
    }

    /// Smallest truncation whose thermal tail `λ^{n_max+1}` is below
    /// `tail_tolerance`, but never below `min_n_max`.
    pub fn for_thermal(boltzmann: f64, tail_tolerance: f64, min_n_max: usize) -> Result<Self> {
        let mut n_max = min_n_max.max(1);
        while thermal_tail(boltzmann, n_max) > tail_tolerance {
            if n_max >= MAX_ADAPTIVE_N_MAX {
                return Err(Error::TruncationTail {
                    n_max,
                    tail: thermal_tail(boltzmann, n_max),
                    tolerance: tail_tolerance,
                });
            }
            n_max = (n_max * 2).min(MAX_ADAPTIVE_N_MAX);
        }
        // bisect down to the smallest admissible value
        let (mut lo, mut hi) = (min_n_max.max(1), n_max);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if thermal_tail(boltzmann, mid) <= tail_tolerance {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Self::new(hi, tail_tolerance)
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn tail_tolerance(&self) -> f64 {
        self.tail_tolerance
    }

    pub fn dim(&self) -> usize {
        self.n_max + 1
    }

    fn check_tail(&self, boltzmann: f64) -> Result<()> {
        let tail = thermal_tail(boltzmann, self.n_max);
        if tail > self.tail_tolerance {
            return Err(Error::TruncationTail {
                n_max: self.n_max,
                tail,
                tolerance: self.tail_tolerance,
            });
        }
        Ok(())
    }
}

/// `Σ_{k > n_max} (1-λ)λ^k = λ^{n_max+1}`.
pub fn thermal_tail(boltzmann: f64, n_max: usize) -> f64 {
    boltzmann.powf((n_max + 1) as f64)
}

/// `<k|a|k+1> = √(k+1)`.
fn lowering_element(k: usize) -> f64 {
    ((k + 1) as f64).sqrt()
}

/// Fock amplitudes `<m|a> = e^{-|a|²/2} a^m / √(m!)` for `m = 0..=n_max`.
pub fn coherent_amplitudes(a: Complex64, n_max: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut c = Complex64::new((-a.norm_sqr() / 2.0).exp(), 0.0);
    out.push(c);
    for m in 1..=n_max {
        c = c * a / (m as f64).sqrt();
        out.push(c);
    }
    out
}

/// Atom level in the product basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Atom {
    Ground,
    Excited,
}

/// `H_JC / g = |e><g| a + |g><e| a†` applied to `|atom, k>` in the truncated
/// space, as a list of `(atom', k', amplitude)`.
pub fn jc_hamiltonian_action(atom: Atom, k: usize, space: &FockSpace) -> Vec<(Atom, usize, f64)> {
    match atom {
        // |e><g| a |g,k> = √k |e,k-1>
        Atom::Ground if k > 0 => vec![(Atom::Excited, k - 1, lowering_element(k - 1))],
        Atom::Ground => Vec::new(),
        // |g><e| a† |e,k> = √(k+1) |g,k+1>
        Atom::Excited if k < space.n_max => vec![(Atom::Ground, k + 1, lowering_element(k))],
        Atom::Excited => Vec::new(),
    }
}

/// Total excitation `a†a + |e><e|`.
pub fn excitation(atom: Atom, k: usize) -> usize {
    k + usize::from(atom == Atom::Excited)
}

/// Position of a basis state inside the excitation blocks: `Some((k, slot))`
/// for the doublet `{|e,k>, |g,k+1>}`, `None` for an uncoupled singleton.
fn doublet_slot(atom: Atom, k: usize, space: &FockSpace) -> Option<(usize, usize)> {
    match atom {
        Atom::Excited if k < space.n_max => Some((k, 0)),
        Atom::Ground if k > 0 => Some((k - 1, 1)),
        _ => None,
    }
}

type Block = [Complex64; 4];

fn block_mul(a: &Block, b: &Block) -> Block {
    [
        a[0] * b[0] + a[1] * b[2],
        a[0] * b[1] + a[1] * b[3],
        a[2] * b[0] + a[3] * b[2],
        a[2] * b[1] + a[3] * b[3],
    ]
}

fn block_adjoint(a: &Block) -> Block {
    [a[0].conj(), a[2].conj(), a[1].conj(), a[3].conj()]
}

/// Evolved atom-field state, block diagonal in the total excitation.
#[derive(Debug, Clone)]
pub struct JcEvolution {
    space: FockSpace,
    /// Propagators on `{|e,k>, |g,k+1>}`, row-major.
    pub propagators: Vec<Block>,
    /// Evolved density blocks on the same doublets.
    pub blocks: Vec<Block>,
    /// Initial doublet populations `(p P_k, q P_{k+1})`.
    pub initial: Vec<[f64; 2]>,
    /// Weight of `|g,0>`, which does not evolve.
    pub ground_vacuum: f64,
    /// Weight of `|e,n_max>`, whose partner lies outside the truncation.
    pub excited_edge: f64,
}

impl JcEvolution {
    pub fn new(params: &AtomFieldParams, space: FockSpace) -> Result<Self> {
        space.check_tail(params.boltzmann())?;
        let p = params.excited();
        let q = 1.0 - p;
        let occ = |k: usize| params.occupation(k as i64);
        let mut propagators = Vec::with_capacity(space.n_max);
        let mut blocks = Vec::with_capacity(space.n_max);
        let mut initial = Vec::with_capacity(space.n_max);
        for k in 0..space.n_max {
            let u = doublet_propagator(k, params.gt(), &space)?;
            let rho0 = [p * occ(k), q * occ(k + 1)];
            let diag = [
                Complex64::new(rho0[0], 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(0.0, 0.0),
                Complex64::new(rho0[1], 0.0),
            ];
            blocks.push(block_mul(&block_mul(&u, &diag), &block_adjoint(&u)));
            propagators.push(u);
            initial.push(rho0);
        }
        Ok(Self {
            space,
            propagators,
            blocks,
            initial,
            ground_vacuum: q * occ(0),
            excited_edge: p * occ(space.n_max),
        })
    }

    pub fn space(&self) -> &FockSpace {
        &self.space
    }

    /// `<atom,k| ρ(t) |atom',k'>`.
    pub fn element(&self, (a, k): (Atom, usize), (b, l): (Atom, usize)) -> Complex64 {
        let zero = Complex64::new(0.0, 0.0);
        match (
            doublet_slot(a, k, &self.space),
            doublet_slot(b, l, &self.space),
        ) {
            (Some((i, x)), Some((j, y))) if i == j => self.blocks[i][2 * x + y],
            (None, None) if (a, k) == (b, l) => match a {
                Atom::Ground => Complex64::new(self.ground_vacuum, 0.0),
                Atom::Excited => Complex64::new(self.excited_edge, 0.0),
            },
            _ => zero,
        }
    }

    /// Largest `|U†U - I|` entry over all doublet propagators.
    pub fn unitarity_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for u in &self.propagators {
            let prod = block_mul(&block_adjoint(u), u);
            let id = [1.0, 0.0, 0.0, 1.0];
            for (z, e) in prod.iter().zip(id) {
                worst = worst.max((z - e).norm());
            }
        }
        worst
    }

    /// Population of each total-excitation sector `0..=n_max` before and
    /// after the evolution.
    pub fn excitation_populations(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.space.n_max;
        let mut before = vec![0.0; n + 2];
        let mut after = vec![0.0; n + 2];
        before[0] += self.ground_vacuum;
        after[0] += self.ground_vacuum;
        for (k, (init, block)) in self.initial.iter().zip(&self.blocks).enumerate() {
            let ex = excitation(Atom::Excited, k);
            debug_assert_eq!(ex, excitation(Atom::Ground, k + 1));
            before[ex] += init[0] + init[1];
            after[ex] += block[0].re + block[3].re;
        }
        before[n + 1] += self.excited_edge;
        after[n + 1] += self.excited_edge;
        (before, after)
    }
}

/// `exp(-i·gt·H_JC/g)` on the doublet `{|e,k>, |g,k+1>}`, from the
/// Hamiltonian action and a Hermitian eigendecomposition.
fn doublet_propagator(k: usize, gt: f64, space: &FockSpace) -> Result<Block> {
    let basis = [(Atom::Excited, k), (Atom::Ground, k + 1)];
    let mut h = [Complex64::new(0.0, 0.0); 4];
    for (col, &(atom, level)) in basis.iter().enumerate() {
        for (out_atom, out_level, amp) in jc_hamiltonian_action(atom, level, space) {
            let row = basis
                .iter()
                .position(|&s| s == (out_atom, out_level))
                .expect("JC coupling leaves the excitation doublet");
            h[2 * row + col] += Complex64::new(amp, 0.0);
        }
    }
    let e = eigh(2, &h)?;
    let mut u = [Complex64::new(0.0, 0.0); 4];
    for (m, &val) in e.values.iter().enumerate() {
        let phase = Complex64::new(0.0, -gt * val).exp();
        let v = e.vector(m);
        for i in 0..2 {
            for j in 0..2 {
                u[2 * i + j] += v[i] * phase * v[j].conj();
            }
        }
    }
    Ok(u)
}

/// Brute-force projected state in the basis `|g,n>, |e,n>, |g,n+1>, |e,n+1>`.
pub fn jc_fock_projected(params: &AtomFieldParams, space: &FockSpace) -> Result<BipartiteMatrix> {
    let n = params.n();
    if n + 2 > space.n_max {
        return Err(Error::ProjectionOutOfRange {
            n,
            n_max: space.n_max,
        });
    }
    let evolution = JcEvolution::new(params, *space)?;
    let basis = [
        (Atom::Ground, n),
        (Atom::Excited, n),
        (Atom::Ground, n + 1),
        (Atom::Excited, n + 1),
    ];
    Ok(BipartiteMatrix::from_fn(2, 2, |i, j| {
        evolution.element(basis[i], basis[j])
    }))
}

/// Default adaptive space for a projection at level `n`.
pub fn adaptive_space(params: &AtomFieldParams) -> Result<FockSpace> {
    FockSpace::for_thermal(params.boltzmann(), DEFAULT_TAIL_TOLERANCE, params.n() + 2)
}

/// Displaced thermal state `D(d) ρ_th D(d)†` as a Fock matrix, with
/// `D(d) = exp(d(a† - a))` obtained from the eigendecomposition of its
/// Hermitian generator `i d (a† - a)` on the truncated space.
pub fn displaced_thermal_fock(
    variance: f64,
    displacement: f64,
    space: &FockSpace,
) -> Result<BipartiteMatrix> {
    let dim = space.dim();
    let n_th = (variance - 1.0) / 2.0;
    let lambda = n_th / (n_th + 1.0);
    space.check_tail(lambda)?;
    let mut generator = vec![Complex64::new(0.0, 0.0); dim * dim];
    for k in 0..space.n_max {
        // <k+1| i d a† |k> and <k| -i d a |k+1>
        let x = displacement * lowering_element(k);
        generator[(k + 1) * dim + k] = Complex64::new(0.0, x);
        generator[k * dim + k + 1] = Complex64::new(0.0, -x);
    }
    let e = eigh(dim, &generator)?;
    let mut d_op = vec![Complex64::new(0.0, 0.0); dim * dim];
    for (m, &val) in e.values.iter().enumerate() {
        let phase = Complex64::new(0.0, -val).exp();
        let v = e.vector(m);
        for i in 0..dim {
            let vi = v[i] * phase;
            for j in 0..dim {
                d_op[i * dim + j] += vi * v[j].conj();
            }
        }
    }
    let thermal: Vec<f64> = (0..dim)
        .map(|k| (1.0 - lambda) * lambda.powi(k as i32))
        .collect();
    Ok(BipartiteMatrix::from_fn(dim, 1, |i, j| {
        (0..dim)
            .map(|k| d_op[i * dim + k] * thermal[k] * d_op[j * dim + k].conj())
            .sum()
    }))
}
