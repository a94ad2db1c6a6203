//! Closed-form and semi-analytic references for both scenarios.

pub mod bessel;
pub mod dicke;
pub mod gaussian;
pub mod normal_modes;
pub mod perturbative;
pub mod quadrature;

pub use bessel::{bessel_coefficients, bessel_j, BesselExpansion};
pub use dicke::{collective_coupling, qubits_for_velocity};
pub use gaussian::{gaussian_evolve, CovarianceState, GaussianTracks, QuadraticModelSpec};
pub use normal_modes::{critical_coupling, normal_mode_analysis, stability_boundary, NormalModes};
pub use perturbative::{perturbative_probability, resonance_velocity, PerturbativeEstimate};
