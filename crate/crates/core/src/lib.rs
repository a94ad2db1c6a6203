//! Simulation core for superluminal motion in circuit QED.
//!
//! Two scenarios are covered:
//!
//! * a qubit whose coupling to a resonator mode is modulated as if it were
//!   moving through the resonator faster than light in the medium (Ginzburg
//!   radiation in a quantum Rabi model), and
//! * a cavity whose length shrinks at constant, possibly superluminal, speed,
//!   reduced to two coupled bosonic modes with a Dicke-type critical point.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; IO, configuration and the command line live in the
//! `superlumen` crate.
//!
//! Units: `ħ = 1`, the speed of light in the medium is `c = 1`. The qubit
//! model measures frequencies in units of the resonator frequency `ω₀`, the
//! mirror model in units of the fundamental mode `ω₁ = π c / L`.

#![no_std]
#![forbid(unsafe_code)]
// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analytic;
pub mod error;
pub mod evolve;
pub mod hamiltonian;
pub mod linalg;
pub mod models;
pub mod qops;
pub mod trajectory;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use qops::{Operator, QuantumState};
