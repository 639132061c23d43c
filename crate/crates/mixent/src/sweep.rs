//! One-parameter sweeps.

use mixent_core::oracle::{cross_check, CrossCheck, QuadratureGrid};
use mixent_core::{Error, Scheme, Transcription};
use rayon::prelude::*;

use crate::csv::{self, Table};
use crate::error::{CliError, Result};
use crate::params::ParamSet;

/// Tolerance used by `--validate` without a value.
pub fn default_tolerance(scheme: Scheme) -> f64 {
    match scheme {
        Scheme::JaynesCummings => 1e-10,
        _ => 1e-8,
    }
}

/// Linearly spaced values of one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepAxis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepAxis {
    pub fn new(name: &str, start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(CliError::usage(format!(
                "sweep count must be at least 2, got {count}"
            )));
        }
        if !(start < stop) || !start.is_finite() || !stop.is_finite() {
            return Err(CliError::usage(format!(
                "sweep needs start < stop, got {start}:{stop}"
            )));
        }
        Ok(Self {
            name: name.to_string(),
            start,
            stop,
            count,
        })
    }

    /// Parses `name:start:stop:count`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(':').collect();
        let [name, start, stop, count] = parts[..] else {
            return Err(CliError::usage(format!(
                "expected name:start:stop:count, got {text:?}"
            )));
        };
        let num = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| CliError::usage(format!("sweep bound {s:?} is not a number")))
        };
        let count = count.trim().parse::<usize>().map_err(|_| {
            CliError::usage(format!("sweep count {count:?} is not a positive integer"))
        })?;
        Self::new(name.trim(), num(start)?, num(stop)?, count)
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub params: ParamSet,
    pub axis: SweepAxis,
    pub form: Transcription,
    /// Oracle tolerance when validation is requested.
    pub validate: Option<f64>,
}

impl SweepSpec {
    pub fn new(params: ParamSet, axis: SweepAxis) -> Result<Self> {
        params.check_name(&axis.name)?;
        if axis.name == "sign" {
            return Err(CliError::usage("sign cannot be swept"));
        }
        Ok(Self {
            params,
            axis,
            form: Transcription::Derived,
            validate: None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub x: f64,
    /// NaN when the projection has zero probability.
    pub npt: f64,
    pub trace: f64,
    pub check: Option<CrossCheck>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutput {
    pub spec: SweepSpec,
    pub rows: Vec<Row>,
}

impl SweepOutput {
    pub fn failures(&self) -> Vec<&Row> {
        let Some(tol) = self.spec.validate else {
            return Vec::new();
        };
        self.rows
            .iter()
            .filter(|r| r.check.is_some_and(|c| !(c.max_deviation <= tol)))
            .collect()
    }

    pub fn header(&self) -> Vec<String> {
        let mut h = vec![self.spec.axis.name.clone(), "npt".into(), "trace".into()];
        if self.spec.validate.is_some() {
            h.push("oracle_npt".into());
            h.push("max_dev".into());
        }
        h
    }

    pub fn row_fields(&self, row: &Row) -> Vec<String> {
        let mut f = vec![
            csv::float(row.x),
            csv::float(row.npt),
            csv::float(row.trace),
        ];
        if let Some(c) = row.check {
            f.push(csv::float(c.oracle_npt.unwrap_or(f64::NAN)));
            f.push(csv::float(c.max_deviation));
        }
        f
    }

    /// Fixed parameters, excluding the swept one, as `k=v` pairs.
    pub fn describe(&self) -> String {
        let mut s = format!("scheme={}", self.spec.params.scheme().name());
        for (k, v) in self.spec.params.iter() {
            if k != self.spec.axis.name {
                s.push_str(&format!(" {k}={v}"));
            }
        }
        if self.spec.form == Transcription::Printed {
            s.push_str(" transcription=printed");
        }
        s
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(self.header());
        t.comments.push(self.describe());
        t.rows = self.rows.iter().map(|r| self.row_fields(r)).collect();
        t
    }
}

fn evaluate_point(spec: &SweepSpec, x: f64) -> Result<Row> {
    let mut params = spec.params.clone();
    params.set(&spec.axis.name, x)?;
    let sp = params.to_scheme_params()?;
    let (npt, trace) = match sp.evaluate_with(spec.form) {
        Ok(out) => (out.npt(), out.trace()),
        Err(Error::DegenerateState { trace }) => (f64::NAN, trace),
        Err(e) => return Err(e.into()),
    };
    let check = match spec.validate {
        None => None,
        Some(_) => Some(
            cross_check(&sp, spec.form, &QuadratureGrid::default()).map_err(|e| {
                CliError::Validation(format!("{}: oracle failed: {e}", sp.describe()))
            })?,
        ),
    };
    Ok(Row {
        x,
        npt,
        trace,
        check,
    })
}

/// Thread pool sized by `MIXENT_THREADS` when set.
pub fn pool() -> Result<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("MIXENT_THREADS") {
        let n = v.trim().parse::<usize>().map_err(|_| {
            CliError::usage(format!(
                "MIXENT_THREADS must be a positive integer, got {v:?}"
            ))
        })?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::usage(format!("cannot start worker threads: {e}")))
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutput> {
    let xs = spec.axis.values();
    let rows = pool()?.install(|| {
        xs.par_iter()
            .map(|&x| evaluate_point(spec, x))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(SweepOutput {
        spec: spec.clone(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_endpoints_are_exact() {
        let a = SweepAxis::parse("d:0:0.3:4").unwrap();
        let v = a.values();
        assert_eq!(v.len(), 4);
        assert_eq!(v[0], 0.0);
        assert_eq!(v[3], 0.3);
    }

    #[test]
    fn axis_validation() {
        assert!(SweepAxis::parse("d:1:0:4").is_err());
        assert!(SweepAxis::parse("d:0:1:1").is_err());
        assert!(SweepAxis::parse("d:0:1").is_err());
        assert!(SweepAxis::parse("d:0:x:3").is_err());
    }

    #[test]
    fn separable_endpoints_of_r() {
        let mut p = ParamSet::new(Scheme::KerrMicroThermal);
        p.set("d", 0.0).unwrap();
        let spec = SweepSpec::new(p, SweepAxis::parse("r:0:1:2").unwrap()).unwrap();
        let out = run_sweep(&spec).unwrap();
        assert_eq!(out.rows.len(), 2);
        assert!(out.rows.iter().all(|r| r.npt.abs() <= 1e-12));
    }

    #[test]
    fn sign_and_foreign_names_cannot_be_swept() {
        let p = ParamSet::new(Scheme::TwoThermal);
        assert!(SweepSpec::new(p.clone(), SweepAxis::parse("sign:-1:1:2").unwrap()).is_err());
        assert!(SweepSpec::new(p, SweepAxis::parse("gt:0:1:2").unwrap()).is_err());
    }
}
