//! Entanglement generation between highly mixed states.
//!
//! This crate builds the locally projected two-qubit density matrices of five
//! interaction schemes (Jaynes-Cummings atom/thermal field, cross-Kerr with a
//! microscopic superposition, beam-splitter and two-thermal conditioning
//! schemes, and a direct cross-Kerr coupling of two displaced thermal fields),
//! and quantifies their entanglement through the negativity of the partial
//! transpose (NPT).
//!
//! Every closed form is paired with an independent brute-force route in
//! [`oracle`]: exact blockwise evolution in a truncated Fock space for the
//! Jaynes-Cummings model, and Gauss-Hermite quadrature over the thermal
//! P-function for the cross-Kerr schemes.
//!
//! Without the default `std` feature the crate is `no_std` and only needs
//! `alloc`.
#![cfg_attr(not(feature = "std"), no_std)]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

mod error;
pub mod oracle;
pub mod qlinalg;
pub mod schemes;
pub mod states;
mod sum;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qlinalg::{BipartiteMatrix, Factor};
pub use schemes::{Scheme, SchemeOutput, SchemeParams, Sign, Transcription};
pub use states::{AtomFieldParams, CatBasis, MicroState, ThermalParams};
pub use sum::CompensatedSum;
