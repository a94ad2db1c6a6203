//! Normal modes and stability of the two-mode quadratic models.

use nalgebra::Matrix4;
use num_complex::Complex64;

use super::gaussian::{symplectic_form, QuadraticModelSpec};

/// Dicke critical coupling `Ω_c = √(ω₁ω₂) / 2`.
pub fn critical_coupling(omega1: f64, omega2: f64) -> f64 {
    0.5 * libm::sqrt(omega1 * omega2)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormalModes {
    /// Normal-mode frequencies, ascending by real part. An imaginary part
    /// signals exponential growth.
    pub frequencies: [Complex64; 2],
    /// The quadratic form is positive definite, i.e. the Hamiltonian is
    /// bounded below and every normal mode carries positive energy.
    pub positive_definite: bool,
    /// All frequencies real and positive with positive energy.
    pub stable: bool,
}

impl NormalModes {
    pub fn lowest(&self) -> Complex64 {
        self.frequencies[0]
    }
}

/// Sum of the principal 2×2 minors of a 4×4 matrix.
fn second_invariant(k: &Matrix4<f64>) -> f64 {
    let mut acc = 0.0;
    for i in 0..4 {
        for j in (i + 1)..4 {
            acc += k[(i, i)] * k[(j, j)] - k[(i, j)] * k[(j, i)];
        }
    }
    acc
}

/// Frequencies from the eigenvalues `±iω` of `J M`.
///
/// `J M` is a Hamiltonian matrix, so its characteristic polynomial is even:
/// `λ⁴ + E₂ λ² + det M`, giving `ω² = (E₂ ∓ √(E₂² - 4 det M)) / 2`.
pub fn normal_mode_analysis(spec: &QuadraticModelSpec) -> NormalModes {
    let m = spec.quadratic_form();
    let k = symplectic_form() * m;
    let e2 = second_invariant(&k);
    let det = m.determinant();
    let disc = Complex64::new(e2 * e2 - 4.0 * det, 0.0).sqrt();
    let w2 = [(Complex64::new(e2, 0.0) - disc) * 0.5, (Complex64::new(e2, 0.0) + disc) * 0.5];
    let mut frequencies = [w2[0].sqrt(), w2[1].sqrt()];
    frequencies.sort_by(|a, b| a.re.total_cmp(&b.re));
    let positive_definite = m.cholesky().is_some();
    let real_positive = frequencies.iter().all(|w| w.re > 0.0 && w.im.abs() <= 1e-12 * w.re.max(1.0));
    NormalModes { frequencies, positive_definite, stable: positive_definite && real_positive }
}

/// Coupling at which `stable` flips, found by bisection on `[lo, hi]`.
///
/// `make` builds the model for a given squeezing strength. Returns `None`
/// when the bracket does not straddle a stability change.
pub fn stability_boundary<F>(make: F, mut lo: f64, mut hi: f64, rel_tol: f64) -> Option<f64>
where
    F: Fn(f64) -> QuadraticModelSpec,
{
    let stable_lo = normal_mode_analysis(&make(lo)).stable;
    if stable_lo == normal_mode_analysis(&make(hi)).stable {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if normal_mode_analysis(&make(mid)).stable == stable_lo {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo) <= rel_tol * hi.abs().max(lo.abs()) {
            break;
        }
    }
    Some(0.5 * (lo + hi))
}
