//! Figure reproductions: a fixed scheme, a family of curves and one swept
//! parameter.

use mixent_core::states::INFINITE_TEMPERATURE_EPSILON;
use mixent_core::Scheme;

use crate::csv::Table;
use crate::error::{CliError, Result};
use crate::params::ParamSet;
use crate::sweep::{run_sweep, SweepAxis, SweepOutput, SweepSpec};

use std::f64::consts::PI;

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub title: &'static str,
    pub scheme: Scheme,
    pub fixed: Vec<(&'static str, f64)>,
    /// One curve per value.
    pub series: (&'static str, Vec<f64>),
    pub axis: (&'static str, f64, f64, usize),
}

const INFINITE_T: f64 = 1.0 - INFINITE_TEMPERATURE_EPSILON;

fn jc(name: &'static str, title: &'static str, p: f64, lambda: f64) -> Preset {
    Preset {
        name,
        title,
        scheme: Scheme::JaynesCummings,
        fixed: vec![("p", p), ("lambda", lambda)],
        series: ("n", vec![0.0, 10.0, 100.0]),
        axis: ("gt", 0.0, 2.0 * PI, 400),
    }
}

fn displaced(
    name: &'static str,
    title: &'static str,
    scheme: Scheme,
    fixed: Vec<(&'static str, f64)>,
    variances: Vec<f64>,
    d_max: f64,
) -> Preset {
    let mut f = vec![("gamma", 2.0)];
    f.extend(fixed);
    Preset {
        name,
        title,
        scheme,
        fixed: f,
        series: ("v", variances),
        axis: ("d", 0.0, d_max, 401),
    }
}

pub fn all() -> Vec<Preset> {
    use Scheme::*;
    vec![
        jc(
            "fig1a",
            "atom-field NPT vs gt, p=1, infinite temperature",
            1.0,
            INFINITE_T,
        ),
        jc(
            "fig1b",
            "atom-field NPT vs gt, p=0.9, infinite temperature",
            0.9,
            INFINITE_T,
        ),
        jc(
            "fig1c",
            "atom-field NPT vs gt, p=0.8, infinite temperature",
            0.8,
            INFINITE_T,
        ),
        jc(
            "fig1d",
            "atom-field NPT vs gt, mixed atom, lambda=0",
            0.5,
            0.0,
        ),
        jc(
            "fig1e",
            "atom-field NPT vs gt, mixed atom, lambda=0.1",
            0.5,
            0.1,
        ),
        jc(
            "fig1f",
            "atom-field NPT vs gt, mixed atom, lambda=0.2",
            0.5,
            0.2,
        ),
        displaced(
            "fig2a",
            "micro-thermal Kerr NPT vs d, r=1",
            KerrMicroThermal,
            vec![("r", 1.0)],
            vec![2.0, 10.0, 100.0],
            40.0,
        ),
        displaced(
            "fig2b",
            "micro-thermal Kerr NPT vs d, r=0.1",
            KerrMicroThermal,
            vec![("r", 0.1)],
            vec![2.0, 10.0, 100.0],
            40.0,
        ),
        displaced(
            "fig3a",
            "beam-splitter (+) NPT vs d, r=1",
            BeamSplitter,
            vec![("r", 1.0), ("sign", 1.0)],
            vec![10.0, 100.0, 1000.0],
            40.0,
        ),
        displaced(
            "fig3b",
            "beam-splitter (+) NPT vs d, r=0.1",
            BeamSplitter,
            vec![("r", 0.1), ("sign", 1.0)],
            vec![10.0, 100.0, 1000.0],
            40.0,
        ),
        displaced(
            "fig4a",
            "two thermal fields (+) NPT vs d, r=1",
            TwoThermal,
            vec![("r", 1.0), ("sign", 1.0)],
            vec![10.0, 500.0, 1000.0],
            200.0,
        ),
        displaced(
            "fig4b",
            "two thermal fields (+) NPT vs d, r=0.1",
            TwoThermal,
            vec![("r", 0.1), ("sign", 1.0)],
            vec![10.0, 500.0, 1000.0],
            200.0,
        ),
        displaced(
            "fig5",
            "direct Kerr coupling of two thermal fields, NPT vs d",
            DirectKerr,
            vec![],
            vec![10.0, 100.0, 1000.0],
            200.0,
        ),
    ]
}

pub fn find(name: &str) -> Result<Preset> {
    all().into_iter().find(|p| p.name == name).ok_or_else(|| {
        let names: Vec<_> = all().iter().map(|p| p.name).collect();
        CliError::usage(format!(
            "unknown preset {name:?} (expected one of {})",
            names.join(", ")
        ))
    })
}

impl Preset {
    pub fn specs(&self) -> Result<Vec<SweepSpec>> {
        let (axis, start, stop, count) = self.axis;
        let axis = SweepAxis::new(axis, start, stop, count)?;
        self.series
            .1
            .iter()
            .map(|&s| {
                let mut params = ParamSet::new(self.scheme);
                for &(k, v) in &self.fixed {
                    params.set(k, v)?;
                }
                params.set(self.series.0, s)?;
                SweepSpec::new(params, axis.clone())
            })
            .collect()
    }

    pub fn run(&self) -> Result<Vec<SweepOutput>> {
        self.specs()?.iter().map(run_sweep).collect()
    }

    pub fn table(&self, outputs: &[SweepOutput]) -> Table {
        let mut header = vec!["series".to_string()];
        header.extend(outputs[0].header());
        let mut t = Table::new(header);
        let mut desc = format!("preset={} scheme={}", self.name, self.scheme.name());
        for (k, v) in &self.fixed {
            desc.push_str(&format!(" {k}={v}"));
        }
        t.comments.push(desc);
        for (out, s) in outputs.iter().zip(&self.series.1) {
            for row in &out.rows {
                let mut fields = vec![format!("{}={}", self.series.0, s)];
                fields.extend(out.row_fields(row));
                t.rows.push(fields);
            }
        }
        t
    }

    pub fn summary(&self) -> String {
        let (axis, start, stop, count) = self.axis;
        let series: Vec<String> = self.series.1.iter().map(|v| v.to_string()).collect();
        format!(
            "{:<6} {:<19} {}={}  {}:{}:{}:{}  {}",
            self.name,
            self.scheme.name(),
            self.series.0,
            series.join(","),
            axis,
            start,
            stop,
            count,
            self.title
        )
    }
}
