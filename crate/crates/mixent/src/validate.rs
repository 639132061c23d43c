//! Closed form against oracle on fixed parameter grids.

use std::time::{Duration, Instant};

use mixent_core::oracle::{cross_check, QuadratureGrid};
use mixent_core::{
    AtomFieldParams, CatBasis, MicroState, SchemeParams, Sign, ThermalParams, Transcription,
};
use rayon::prelude::*;

use crate::error::{CliError, Result};
use crate::sweep::pool;

pub const GRIDS: [&str; 5] = ["jc-grid", "kerr-grid", "bs-grid", "tt-grid", "direct-grid"];

pub fn jc_grid() -> Vec<SchemeParams> {
    let mut out = Vec::new();
    for p in [0.0, 0.5, 1.0] {
        for lambda in [0.0, 0.5, 0.9, 0.99] {
            for gt in [0.1, 0.7, 1.3, 2.9] {
                for n in [0, 3, 10] {
                    let a = AtomFieldParams::new(p, lambda, gt, n).expect("valid grid point");
                    out.push(SchemeParams::JaynesCummings(a));
                }
            }
        }
    }
    out
}

/// `(V, d, γ, r)` over V ∈ {1, 2, 10, 100, 1000}, d ∈ {0, 1, √V, 5√V},
/// γ ∈ {1, 2, 3}, r ∈ {0, 0.1, 1}.
fn thermal_points() -> Vec<(ThermalParams, CatBasis, MicroState)> {
    let mut out = Vec::new();
    for v in [1.0f64, 2.0, 10.0, 100.0, 1000.0] {
        for d in [0.0, 1.0, v.sqrt(), 5.0 * v.sqrt()] {
            for gamma in [1.0, 2.0, 3.0] {
                for r in [0.0, 0.1, 1.0] {
                    out.push((
                        ThermalParams::new(v, d).expect("valid grid point"),
                        CatBasis::new(gamma).expect("valid grid point"),
                        MicroState::new(r).expect("valid grid point"),
                    ));
                }
            }
        }
    }
    out
}

pub fn grid(name: &str) -> Result<Vec<SchemeParams>> {
    let pts = thermal_points();
    let signed = |two_thermal: bool| {
        pts.iter()
            .flat_map(|&(thermal, basis, micro)| {
                [Sign::Plus, Sign::Minus].map(|sign| {
                    if two_thermal {
                        SchemeParams::TwoThermal {
                            micro,
                            thermal,
                            basis,
                            sign,
                        }
                    } else {
                        SchemeParams::BeamSplitter {
                            micro,
                            thermal,
                            basis,
                            sign,
                        }
                    }
                })
            })
            .collect()
    };
    Ok(match name {
        "jc-grid" => jc_grid(),
        "kerr-grid" => pts
            .iter()
            .map(|&(thermal, basis, micro)| SchemeParams::KerrMicroThermal {
                micro,
                thermal,
                basis,
            })
            .collect(),
        "bs-grid" => signed(false),
        "tt-grid" => signed(true),
        "direct-grid" => {
            // r plays no role here
            pts.iter()
                .filter(|(_, _, m)| m.coherence() == 0.0)
                .map(|&(thermal, basis, _)| SchemeParams::DirectKerr { thermal, basis })
                .collect()
        }
        _ => {
            return Err(CliError::usage(format!(
                "unknown validation grid {name:?} (expected one of {}, all)",
                GRIDS.join(", ")
            )))
        }
    })
}

pub fn tolerance(name: &str) -> f64 {
    if name == "jc-grid" {
        1e-10
    } else {
        1e-8
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridReport {
    pub name: String,
    pub points: usize,
    /// Points where the projection has zero probability in both evaluations.
    pub impossible: usize,
    pub max_deviation: f64,
    pub worst: String,
    pub tolerance: f64,
    pub elapsed: Duration,
}

impl GridReport {
    pub fn passed(&self) -> bool {
        self.max_deviation <= self.tolerance
    }

    pub fn line(&self) -> String {
        format!(
            "{:<12} {} points={} impossible={} max_dev={:.3e} tol={:.0e} worst=[{}] {:.2?}",
            self.name,
            if self.passed() { "PASS" } else { "FAIL" },
            self.points,
            self.impossible,
            self.max_deviation,
            self.tolerance,
            self.worst,
            self.elapsed
        )
    }
}

pub fn run_grid(name: &str, tol: Option<f64>) -> Result<GridReport> {
    let points = grid(name)?;
    let start = Instant::now();
    let grid = QuadratureGrid::default();
    let checks = pool()?.install(|| {
        points
            .par_iter()
            .map(|p| {
                cross_check(p, Transcription::Derived, &grid).map_err(|e| {
                    CliError::Validation(format!("{}: oracle failed: {e}", p.describe()))
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    let mut report = GridReport {
        name: name.to_string(),
        points: points.len(),
        impossible: 0,
        max_deviation: 0.0,
        worst: String::new(),
        tolerance: tol.unwrap_or_else(|| tolerance(name)),
        elapsed: Duration::ZERO,
    };
    for (p, c) in points.iter().zip(&checks) {
        if c.oracle_npt.is_none()
            && c.max_deviation == 0.0
            && !matches!(p, SchemeParams::JaynesCummings(_))
        {
            report.impossible += 1;
        }
        if !(c.max_deviation <= report.max_deviation) {
            report.max_deviation = c.max_deviation;
            report.worst = p.describe();
        }
    }
    report.elapsed = start.elapsed();
    Ok(report)
}

/// Runs one grid, or every grid for `all`.
pub fn run_validation(name: &str, tol: Option<f64>) -> Result<Vec<GridReport>> {
    if name == "all" {
        GRIDS.iter().map(|g| run_grid(g, tol)).collect()
    } else {
        Ok(vec![run_grid(name, tol)?])
    }
}
