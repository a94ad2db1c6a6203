//! Bessel functions of the first kind by power series, and the
//! Jacobi–Anger expansion of the oscillatory-trajectory coupling.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

/// `J_n(x)` summed until the relative size of a term drops below `1e-15`.
///
/// Intended for moderate arguments (`|x| ≲ 10`), where the alternating
/// series does not lose significant digits to cancellation.
pub fn bessel_j(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // leading term (x/2)^n / n!
    let mut term = 1.0;
    for k in 1..=n {
        term *= half / k as f64;
    }
    let mut sum = term;
    let q = -half * half;
    for m in 1..200u32 {
        term *= q / (m as f64 * (m + n) as f64);
        sum += term;
        if term.abs() < 1e-15 * sum.abs() {
            break;
        }
    }
    sum
}

/// Odd-harmonic expansion `cos(π/2 + (π/2) cos φ) = Σ_k c_k cos((2k+1) φ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BesselExpansion {
    /// `J_{2k+1}(π/2)` for `k = 0..=k_max`.
    pub values: Vec<f64>,
    /// `c_k = -2 (-1)^k J_{2k+1}(π/2)`.
    pub coefficients: Vec<f64>,
    /// Sup-norm error of the truncated series over one period.
    pub sup_error: f64,
}

impl BesselExpansion {
    pub fn evaluate(&self, phi: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| c * libm::cos((2 * k + 1) as f64 * phi))
            .sum()
    }
}

const SUP_SAMPLES: usize = 4096;

pub fn bessel_coefficients(k_max: usize) -> BesselExpansion {
    let values: Vec<f64> = (0..=k_max).map(|k| bessel_j(2 * k as u32 + 1, FRAC_PI_2)).collect();
    let coefficients = values
        .iter()
        .enumerate()
        .map(|(k, j)| if k % 2 == 0 { -2.0 * j } else { 2.0 * j })
        .collect();
    let mut expansion = BesselExpansion { values, coefficients, sup_error: 0.0 };
    let mut worst = 0.0f64;
    for i in 0..SUP_SAMPLES {
        let phi = 2.0 * PI * i as f64 / SUP_SAMPLES as f64;
        let exact = libm::cos(FRAC_PI_2 + FRAC_PI_2 * libm::cos(phi));
        worst = worst.max((expansion.evaluate(phi) - exact).abs());
    }
    expansion.sup_error = worst;
    expansion
}
