//! Collective coupling of `N` qubits to one mode, used to reach the
//! coupling a given mirror velocity requires.

use crate::hamiltonian::velocity_to_coupling;

/// Relative slack when comparing `√N g₁` to a target coupling.
const ROUNDING_SLACK: f64 = 1e-12;

/// `Ω = √N · g₁`.
pub fn collective_coupling(n_qubits: u64, g1: f64) -> f64 {
    libm::sqrt(n_qubits as f64) * g1
}

/// Smallest `N ≥ 1` with `√N g₁ ≥ Ω(v, L)`.
pub fn qubits_for_velocity(v: f64, g1: f64, length: f64) -> u64 {
    assert!(g1 > 0.0, "single-qubit coupling must be positive");
    let target = velocity_to_coupling(v, length).abs();
    let reaches = |n: u64| collective_coupling(n, g1) >= target * (1.0 - ROUNDING_SLACK);
    let ratio = target / g1;
    let mut n = libm::ceil(ratio * ratio).max(1.0) as u64;
    while n > 1 && reaches(n - 1) {
        n -= 1;
    }
    while !reaches(n) {
        n += 1;
    }
    n
}
