//! Closed-form locally projected density matrices of the five interaction
//! schemes, each a 4×4 matrix on two qubit-like subspaces.
//!
//! Cat-basis factors are ordered `{|+>_γ, |->_γ}`; two-mode matrices use the
//! composite index `2·s1 + s2`.

mod bs;
mod jc;
mod kerr;

use alloc::format;
use alloc::string::String;

use crate::qlinalg::{self, BipartiteMatrix};
use crate::states::{AtomFieldParams, CatBasis, MicroState, ThermalParams};
use crate::{Error, Result};
#[cfg(not(feature = "std"))]
use num_traits::Float;

pub use bs::bs_scheme_projected;
pub use jc::{jc_projected, jc_projected_with, JC_BASIS_ORDER};
pub use kerr::{
    direct_kerr_projected, direct_kerr_projected_with, kerr_micro_thermal_projected,
    kerr_micro_thermal_projected_with, tt_scheme_projected,
};

/// Which variant of the closed-form matrices to build.
///
/// `Derived` is the form validated against the brute-force oracles.
/// `Printed` keeps an alternative set of entries that the oracles disagree
/// with:
/// * Jaynes-Cummings: the `q`-weighted `|e,n><e,n|` entry uses `S_{n+1}`
///   instead of `S_n`.
/// * Cross-Kerr with a microscopic superposition: the `R_γ` matrix carries
///   `N+N-` entries between even and odd cat components, which vanish
///   identically (a vacuum field has no odd-cat component), and the overall
///   factor ½ is dropped.
/// * Direct cross-Kerr: the cat normalizations `N±` are dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Transcription {
    #[default]
    Derived,
    Printed,
}

/// Outcome of the conditioning measurement on the microscopic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    JaynesCummings,
    KerrMicroThermal,
    BeamSplitter,
    TwoThermal,
    DirectKerr,
}

impl Scheme {
    pub const ALL: [Scheme; 5] = [
        Scheme::JaynesCummings,
        Scheme::KerrMicroThermal,
        Scheme::BeamSplitter,
        Scheme::TwoThermal,
        Scheme::DirectKerr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::JaynesCummings => "jc",
            Scheme::KerrMicroThermal => "kerr_micro_thermal",
            Scheme::BeamSplitter => "bs",
            Scheme::TwoThermal => "tt",
            Scheme::DirectKerr => "direct_kerr",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Scheme::ALL.into_iter().find(|s| s.name() == name)
    }
}

/// Inputs of one scheme evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchemeParams {
    JaynesCummings(AtomFieldParams),
    KerrMicroThermal {
        micro: MicroState,
        thermal: ThermalParams,
        basis: CatBasis,
    },
    BeamSplitter {
        micro: MicroState,
        thermal: ThermalParams,
        basis: CatBasis,
        sign: Sign,
    },
    TwoThermal {
        micro: MicroState,
        thermal: ThermalParams,
        basis: CatBasis,
        sign: Sign,
    },
    DirectKerr {
        thermal: ThermalParams,
        basis: CatBasis,
    },
}

impl SchemeParams {
    pub fn scheme(&self) -> Scheme {
        match self {
            SchemeParams::JaynesCummings(_) => Scheme::JaynesCummings,
            SchemeParams::KerrMicroThermal { .. } => Scheme::KerrMicroThermal,
            SchemeParams::BeamSplitter { .. } => Scheme::BeamSplitter,
            SchemeParams::TwoThermal { .. } => Scheme::TwoThermal,
            SchemeParams::DirectKerr { .. } => Scheme::DirectKerr,
        }
    }

    /// Closed-form projected matrix, kept on a logarithmic scale.
    pub fn projected_matrix(&self, form: Transcription) -> Result<ScaledMatrix> {
        match *self {
            SchemeParams::JaynesCummings(p) => Ok(ScaledMatrix::unscaled(jc::matrix(&p, form))),
            SchemeParams::KerrMicroThermal {
                micro,
                thermal,
                basis,
            } => Ok(kerr::micro_thermal_matrix(&micro, &thermal, &basis, form)),
            SchemeParams::BeamSplitter {
                micro,
                thermal,
                basis,
                sign,
            } => bs::matrix(&micro, &thermal, &basis, sign),
            SchemeParams::TwoThermal {
                micro,
                thermal,
                basis,
                sign,
            } => kerr::two_thermal_matrix(&micro, &thermal, &basis, sign),
            SchemeParams::DirectKerr { thermal, basis } => {
                Ok(kerr::direct_matrix(&thermal, &basis, form))
            }
        }
    }

    /// Evaluates the derived closed form.
    pub fn evaluate(&self) -> Result<SchemeOutput> {
        self.evaluate_with(Transcription::Derived)
    }

    pub fn evaluate_with(&self, form: Transcription) -> Result<SchemeOutput> {
        SchemeOutput::new(self.projected_matrix(form)?, *self)
    }

    /// Short `key=value` description, used in reports.
    pub fn describe(&self) -> String {
        match self {
            SchemeParams::JaynesCummings(p) => format!(
                "jc p={} lambda={} gt={} n={}",
                p.excited(),
                p.boltzmann(),
                p.gt(),
                p.n()
            ),
            SchemeParams::KerrMicroThermal {
                micro,
                thermal,
                basis,
            } => format!(
                "kerr_micro_thermal r={} V={} d={} gamma={}",
                micro.coherence(),
                thermal.variance(),
                thermal.displacement(),
                basis.gamma()
            ),
            SchemeParams::BeamSplitter {
                micro,
                thermal,
                basis,
                sign,
            }
            | SchemeParams::TwoThermal {
                micro,
                thermal,
                basis,
                sign,
            } => format!(
                "{} sign={} r={} V={} d={} gamma={}",
                self.scheme().name(),
                sign.value(),
                micro.coherence(),
                thermal.variance(),
                thermal.displacement(),
                basis.gamma()
            ),
            SchemeParams::DirectKerr { thermal, basis } => format!(
                "direct_kerr V={} d={} gamma={}",
                thermal.variance(),
                thermal.displacement(),
                basis.gamma()
            ),
        }
    }
}

/// A matrix `matrix · e^{ln_scale}`. Projections of far-displaced thermal
/// fields underflow in absolute terms while their normalized form is fine.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledMatrix {
    pub matrix: BipartiteMatrix,
    pub ln_scale: f64,
}

impl ScaledMatrix {
    pub fn unscaled(matrix: BipartiteMatrix) -> Self {
        Self {
            matrix,
            ln_scale: 0.0,
        }
    }

    /// Absolute matrix.
    pub fn raw(&self) -> BipartiteMatrix {
        self.matrix.scale(self.ln_scale.exp())
    }
}

/// A projected state with its negativity.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeOutput {
    state: BipartiteMatrix,
    ln_trace: f64,
    npt: f64,
    params: SchemeParams,
}

impl SchemeOutput {
    fn new(scaled: ScaledMatrix, params: SchemeParams) -> Result<Self> {
        let t = scaled.matrix.trace().re;
        if !(t > 0.0) {
            return Err(Error::DegenerateState { trace: t });
        }
        let state = qlinalg::normalize(&scaled.matrix)?;
        let npt = qlinalg::npt(&state)?;
        Ok(Self {
            state,
            ln_trace: t.ln() + scaled.ln_scale,
            npt,
            params,
        })
    }

    /// Projected matrix as produced by the local projection (trace ≤ 1).
    pub fn matrix(&self) -> BipartiteMatrix {
        self.state.scale(self.trace())
    }

    /// Trace-normalized projected state.
    pub fn state(&self) -> &BipartiteMatrix {
        &self.state
    }

    /// Raw trace, the success probability of the local projection.
    pub fn trace(&self) -> f64 {
        self.ln_trace.exp()
    }

    pub fn ln_trace(&self) -> f64 {
        self.ln_trace
    }

    /// NPT of the trace-normalized state.
    pub fn npt(&self) -> f64 {
        self.npt
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }
}

type Block = [[f64; 2]; 2];

/// `x ⊗ y` as a row-major 4×4 array.
fn kron(x: &Block, y: &Block) -> [[f64; 4]; 4] {
    let mut out = [[0.0; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = x[i / 2][j / 2] * y[i % 2][j % 2];
        }
    }
    out
}

fn to_matrix(m: &[[f64; 4]; 4]) -> BipartiteMatrix {
    let flat: alloc::vec::Vec<f64> = m.iter().flatten().copied().collect();
    BipartiteMatrix::from_real(2, 2, &flat).expect("4x4 shape")
}
