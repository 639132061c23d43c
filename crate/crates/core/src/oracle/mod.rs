//! Independent brute-force validators for the closed forms in
//! [`crate::schemes`].
//!
//! * [`fock`]: the Jaynes-Cummings scheme evolved exactly in a truncated Fock
//!   space, one excitation doublet at a time.
//! * [`quadrature`]: the cross-Kerr schemes as Gauss-Hermite integrals of
//!   coherent-state overlaps over the thermal P-function.

pub mod fock;
pub mod hermite;
pub mod quadrature;

pub use fock::{adaptive_space, displaced_thermal_fock, jc_fock_projected, FockSpace, JcEvolution};
pub use quadrature::{quadrature_projected, QuadratureGrid};

use crate::qlinalg::{self, BipartiteMatrix};
use crate::schemes::{SchemeParams, Transcription};
use crate::{Error, Result};

/// Outcome of comparing a closed form with its oracle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossCheck {
    /// NPT of the oracle state, `None` when the projection has zero
    /// probability.
    pub oracle_npt: Option<f64>,
    /// Largest elementwise deviation. The Jaynes-Cummings scheme compares
    /// projected matrices, the cross-Kerr schemes compare trace-normalized
    /// states.
    pub max_deviation: f64,
}

/// Evaluates the oracle matching `params` and compares it with the closed
/// form in `form`.
pub fn cross_check(
    params: &SchemeParams,
    form: Transcription,
    grid: &QuadratureGrid,
) -> Result<CrossCheck> {
    if let SchemeParams::JaynesCummings(p) = params {
        let closed = params.projected_matrix(form)?.raw();
        let oracle = jc_fock_projected(p, &adaptive_space(p)?)?;
        return Ok(CrossCheck {
            oracle_npt: npt_if_possible(&oracle)?,
            max_deviation: closed.max_abs_diff(&oracle)?,
        });
    }
    let closed = params.evaluate_with(form);
    let oracle = quadrature_projected(params, grid);
    match (closed, oracle) {
        (Ok(c), Ok(o)) => {
            let o = qlinalg::normalize(&o.matrix)?;
            Ok(CrossCheck {
                oracle_npt: Some(qlinalg::npt(&o)?),
                max_deviation: c.state().max_abs_diff(&o)?,
            })
        }
        (Err(Error::DegenerateState { .. }), Err(Error::DegenerateState { .. })) => {
            Ok(CrossCheck {
                oracle_npt: None,
                max_deviation: 0.0,
            })
        }
        (Err(Error::DegenerateState { .. }), Ok(o)) => Ok(CrossCheck {
            oracle_npt: npt_if_possible(&o.matrix)?,
            max_deviation: f64::INFINITY,
        }),
        (Ok(_), Err(Error::DegenerateState { .. })) => Ok(CrossCheck {
            oracle_npt: None,
            max_deviation: f64::INFINITY,
        }),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

fn npt_if_possible(m: &BipartiteMatrix) -> Result<Option<f64>> {
    if m.trace().re > 0.0 {
        Ok(Some(qlinalg::npt(m)?))
    } else {
        Ok(None)
    }
}
