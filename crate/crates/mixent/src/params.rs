//! Named scalar parameters and their mapping onto scheme inputs.

use std::collections::BTreeMap;

use mixent_core::states::INFINITE_TEMPERATURE_EPSILON;
use mixent_core::{
    AtomFieldParams, CatBasis, MicroState, Scheme, SchemeParams, Sign, ThermalParams,
};

use crate::error::{CliError, Result};

pub const ALL_NAMES: [&str; 9] = ["p", "lambda", "gt", "n", "r", "v", "d", "gamma", "sign"];

pub fn names(scheme: Scheme) -> &'static [&'static str] {
    match scheme {
        Scheme::JaynesCummings => &["p", "lambda", "gt", "n"],
        Scheme::KerrMicroThermal => &["r", "v", "d", "gamma"],
        Scheme::BeamSplitter | Scheme::TwoThermal => &["r", "v", "d", "gamma", "sign"],
        Scheme::DirectKerr => &["v", "d", "gamma"],
    }
}

fn default_value(name: &str) -> f64 {
    match name {
        "p" => 1.0,
        "lambda" => 1.0 - INFINITE_TEMPERATURE_EPSILON,
        "gt" => 1.0,
        "n" => 0.0,
        "r" => 1.0,
        "v" => 10.0,
        "d" => 0.0,
        "gamma" => 2.0,
        "sign" => 1.0,
        _ => unreachable!("unknown parameter {name}"),
    }
}

/// Parses a value, accepting `+`, `-`, `plus` and `minus` for `sign`.
pub fn parse_value(name: &str, text: &str) -> Result<f64> {
    let text = text.trim();
    if name == "sign" {
        return match text {
            "+" | "+1" | "1" | "plus" => Ok(1.0),
            "-" | "-1" | "minus" => Ok(-1.0),
            _ => Err(CliError::usage(format!(
                "sign must be + or -, got {text:?}"
            ))),
        };
    }
    text.parse::<f64>()
        .map_err(|_| CliError::usage(format!("{name}: not a number: {text:?}")))
}

/// Parameter values for one scheme, defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct ParamSet {
    scheme: Scheme,
    values: BTreeMap<&'static str, f64>,
}

impl ParamSet {
    pub fn new(scheme: Scheme) -> Self {
        let values = names(scheme)
            .iter()
            .map(|&k| (k, default_value(k)))
            .collect();
        Self { scheme, values }
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    fn key(&self, name: &str) -> Result<&'static str> {
        names(self.scheme)
            .iter()
            .copied()
            .find(|&k| k == name)
            .ok_or_else(|| {
                CliError::usage(format!(
                    "parameter {name:?} is not used by {} (expected one of {})",
                    self.scheme.name(),
                    names(self.scheme).join(", ")
                ))
            })
    }

    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        let key = self.key(name)?;
        self.values.insert(key, value);
        Ok(())
    }

    pub fn set_text(&mut self, name: &str, text: &str) -> Result<()> {
        let value = parse_value(name, text)?;
        self.set(name, value)
    }

    pub fn check_name(&self, name: &str) -> Result<()> {
        self.key(name).map(|_| ())
    }

    pub fn get(&self, name: &str) -> f64 {
        self.values[name]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, f64)> + '_ {
        self.values.iter().map(|(&k, &v)| (k, v))
    }

    pub fn to_scheme_params(&self) -> Result<SchemeParams> {
        let g = |k: &str| self.get(k);
        let sign = || match g("sign") {
            1.0 => Ok(Sign::Plus),
            -1.0 => Ok(Sign::Minus),
            s => Err(CliError::usage(format!("sign must be +1 or -1, got {s}"))),
        };
        Ok(match self.scheme {
            Scheme::JaynesCummings => {
                let n = g("n");
                if !(n >= 0.0 && n.fract() == 0.0 && n < 1e9) {
                    return Err(CliError::usage(format!(
                        "n must be a non-negative integer, got {n}"
                    )));
                }
                SchemeParams::JaynesCummings(AtomFieldParams::new(
                    g("p"),
                    g("lambda"),
                    g("gt"),
                    n as usize,
                )?)
            }
            Scheme::KerrMicroThermal => SchemeParams::KerrMicroThermal {
                micro: MicroState::new(g("r"))?,
                thermal: ThermalParams::new(g("v"), g("d"))?,
                basis: CatBasis::new(g("gamma"))?,
            },
            Scheme::BeamSplitter => SchemeParams::BeamSplitter {
                micro: MicroState::new(g("r"))?,
                thermal: ThermalParams::new(g("v"), g("d"))?,
                basis: CatBasis::new(g("gamma"))?,
                sign: sign()?,
            },
            Scheme::TwoThermal => SchemeParams::TwoThermal {
                micro: MicroState::new(g("r"))?,
                thermal: ThermalParams::new(g("v"), g("d"))?,
                basis: CatBasis::new(g("gamma"))?,
                sign: sign()?,
            },
            Scheme::DirectKerr => SchemeParams::DirectKerr {
                thermal: ThermalParams::new(g("v"), g("d"))?,
                basis: CatBasis::new(g("gamma"))?,
            },
        })
    }
}

pub fn parse_scheme(name: &str) -> Result<Scheme> {
    Scheme::from_name(name).ok_or_else(|| {
        let known: Vec<_> = Scheme::ALL.iter().map(|s| s.name()).collect();
        CliError::usage(format!(
            "unknown scheme {name:?} (expected one of {})",
            known.join(", ")
        ))
    })
}
