//! Parameter sweeps, oracle validation runs and figure presets on top of
//! [`mixent_core`], with CSV output.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod csv;
mod error;
pub mod params;
pub mod presets;
pub mod sweep;
pub mod validate;

pub use error::{CliError, Result};
