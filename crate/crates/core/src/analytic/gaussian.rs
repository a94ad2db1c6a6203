//! Exact Gaussian propagation of the two-mode quadratic models.
//!
//! Quadratures are ordered `r = (x₁, p₁, x₂, p₂)` with `a = (x + i p)/√2`,
//! so the vacuum covariance `V = ½⟨{Δr, Δr}⟩` is `I/2`. A quadratic
//! Hamiltonian `H = ½ rᵀ M r` drives `ṙ = J M r`; zero-temperature decay at
//! rates `κᵢ` adds `-κᵢ/2` damping and `κᵢ/2` diffusion per mode.

use alloc::vec::Vec;

use nalgebra::{DMatrix, Matrix4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::TwoModeVariant;
use crate::linalg;

/// Two bosonic modes with
/// `H = ω₁ a†a + ω₂ b†b + (s a†b† + s* ab) + (m a†b + m* b†a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticModelSpec {
    pub omega1: f64,
    pub omega2: f64,
    pub squeezing: f64,
    pub mixing: f64,
    pub variant: TwoModeVariant,
    pub kappa: [f64; 2],
}

impl QuadraticModelSpec {
    /// Two-mode reduction at `ω₂ = 2ω₁` with squeezing strength `Ω`:
    /// mixing `3Ω` for the literal variant, `Ω` for the Dicke form.
    pub fn two_mode(omega1: f64, omega: f64, variant: TwoModeVariant, kappa: f64) -> Self {
        let mixing = match variant {
            TwoModeVariant::Literal => 3.0 * omega,
            TwoModeVariant::DickeForm => omega,
        };
        Self { omega1, omega2: 2.0 * omega1, squeezing: omega, mixing, variant, kappa: [kappa, kappa] }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega1 > 0.0 && self.omega2 > 0.0) {
            return Err(Error::Domain("mode frequencies must be positive".into()));
        }
        if self.kappa.iter().any(|k| !(*k >= 0.0)) {
            return Err(Error::Domain("decay rates must be non-negative".into()));
        }
        Ok(())
    }

    /// Complex coefficients `(s, m)` of `a†b†` and `a†b`.
    ///
    /// The literal reduction carries `i L̇/L` in front of real brackets, which
    /// puts `s = -iΩ` and `m = 3iΩ`.
    pub fn coefficients(&self) -> (Complex64, Complex64) {
        match self.variant {
            TwoModeVariant::Literal => {
                (Complex64::new(0.0, -self.squeezing), Complex64::new(0.0, self.mixing))
            }
            TwoModeVariant::DickeForm => {
                (Complex64::new(self.squeezing, 0.0), Complex64::new(self.mixing, 0.0))
            }
        }
    }

    /// Symmetric matrix `M` of `H = ½ rᵀ M r` (constant terms dropped).
    pub fn quadratic_form(&self) -> Matrix4<f64> {
        let (s, m) = self.coefficients();
        let mut q = Matrix4::from_diagonal(&Vector4::new(self.omega1, self.omega1, self.omega2, self.omega2));
        let mut set = |i: usize, j: usize, v: f64| {
            q[(i, j)] = v;
            q[(j, i)] = v;
        };
        // s a†b† + h.c. = Re s (x₁x₂ - p₁p₂) + Im s (x₁p₂ + p₁x₂)
        // m a†b + h.c.  = Re m (x₁x₂ + p₁p₂) - Im m (x₁p₂ - p₁x₂)
        set(0, 2, s.re + m.re);
        set(1, 3, -s.re + m.re);
        set(0, 3, s.im - m.im);
        set(1, 2, s.im + m.im);
        q
    }
}

/// Symplectic form `J = ⊕ [[0, 1], [-1, 0]]`.
pub fn symplectic_form() -> Matrix4<f64> {
    let mut j = Matrix4::zeros();
    j[(0, 1)] = 1.0;
    j[(1, 0)] = -1.0;
    j[(2, 3)] = 1.0;
    j[(3, 2)] = -1.0;
    j
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceState {
    pub mean: Vector4<f64>,
    pub covariance: Matrix4<f64>,
}

impl CovarianceState {
    pub fn vacuum() -> Self {
        Self { mean: Vector4::zeros(), covariance: Matrix4::identity() * 0.5 }
    }

    /// Product of thermal states with mean occupations `n₁`, `n₂`.
    pub fn thermal(n1: f64, n2: f64) -> Self {
        Self {
            mean: Vector4::zeros(),
            covariance: Matrix4::from_diagonal(&Vector4::new(n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5)),
        }
    }

    /// Mean photon numbers `(⟨n₁⟩, ⟨n₂⟩)`.
    pub fn photon_numbers(&self) -> (f64, f64) {
        let v = &self.covariance;
        let m = &self.mean;
        let n1 = 0.5 * (v[(0, 0)] + v[(1, 1)] - 1.0) + 0.5 * (m[0] * m[0] + m[1] * m[1]);
        let n2 = 0.5 * (v[(2, 2)] + v[(3, 3)] - 1.0) + 0.5 * (m[2] * m[2] + m[3] * m[3]);
        (n1, n2)
    }

    /// Smallest eigenvalue of `V + iJ/2`; non-negative for a physical state.
    pub fn uncertainty_margin(&self) -> f64 {
        let j = symplectic_form();
        let m = DMatrix::from_fn(4, 4, |r, c| {
            Complex64::new(self.covariance[(r, c)], 0.5 * j[(r, c)])
        });
        linalg::min_hermitian_eigenvalue(&m)
    }

    pub fn satisfies_uncertainty(&self) -> bool {
        self.uncertainty_margin() >= -1e-9
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianTracks {
    pub times: Vec<f64>,
    pub n1: Vec<f64>,
    pub n2: Vec<f64>,
    pub n_total: Vec<f64>,
    pub final_state: CovarianceState,
}

/// One-step propagator `V ↦ Φ V Φᵀ + Q`, `m ↦ Φ m` over a step `h`, from a
/// single exponential of Van Loan's block matrix `[[-A, D], [0, Aᵀ]]`.
struct Propagator {
    phi: Matrix4<f64>,
    noise: Matrix4<f64>,
}

impl Propagator {
    fn new(drift: &Matrix4<f64>, diffusion: &Matrix4<f64>, h: f64) -> Self {
        let mut block = DMatrix::<f64>::zeros(8, 8);
        for r in 0..4 {
            for c in 0..4 {
                block[(r, c)] = -drift[(r, c)] * h;
                block[(r, c + 4)] = diffusion[(r, c)] * h;
                block[(r + 4, c + 4)] = drift[(c, r)] * h;
            }
        }
        let e = linalg::expm(&block);
        let f12 = Matrix4::from_fn(|r, c| e[(r, c + 4)]);
        let f22 = Matrix4::from_fn(|r, c| e[(r + 4, c + 4)]);
        let phi = f22.transpose();
        let noise = phi * f12;
        // symmetrize against rounding
        let noise = (noise + noise.transpose()) * 0.5;
        Self { phi, noise }
    }

    fn apply(&self, state: &CovarianceState) -> CovarianceState {
        let covariance = self.phi * state.covariance * self.phi.transpose() + self.noise;
        CovarianceState { mean: self.phi * state.mean, covariance: (covariance + covariance.transpose()) * 0.5 }
    }
}

/// Photon-number tracks of the quadratic model on `t_grid`, starting from
/// `initial` at `t_grid[0]`.
pub fn gaussian_evolve(spec: &QuadraticModelSpec, initial: &CovarianceState, t_grid: &[f64]) -> Result<GaussianTracks> {
    spec.validate()?;
    if t_grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("time grid must be strictly increasing".into()));
    }
    let j = symplectic_form();
    let damping = Matrix4::from_diagonal(&Vector4::new(spec.kappa[0], spec.kappa[0], spec.kappa[1], spec.kappa[1]));
    let drift = j * spec.quadratic_form() - damping * 0.5;
    let diffusion = damping * 0.5;

    let mut state = *initial;
    let mut tracks = GaussianTracks {
        times: t_grid.to_vec(),
        n1: Vec::with_capacity(t_grid.len()),
        n2: Vec::with_capacity(t_grid.len()),
        n_total: Vec::with_capacity(t_grid.len()),
        final_state: state,
    };
    let mut cached: Option<(f64, Propagator)> = None;
    for (i, _) in t_grid.iter().enumerate() {
        if i > 0 {
            let h = t_grid[i] - t_grid[i - 1];
            let reuse = matches!(&cached, Some((h0, _)) if (h0 - h).abs() <= 1e-12 * h);
            if !reuse {
                cached = Some((h, Propagator::new(&drift, &diffusion, h)));
            }
            if let Some((_, prop)) = &cached {
                state = prop.apply(&state);
            }
        }
        let (n1, n2) = state.photon_numbers();
        tracks.n1.push(n1);
        tracks.n2.push(n2);
        tracks.n_total.push(n1 + n2);
    }
    tracks.final_state = state;
    Ok(tracks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(t_final: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| t_final * i as f64 / (n - 1) as f64).collect()
    }

    #[test]
    fn uncoupled_vacuum_stays_empty() {
        for variant in [TwoModeVariant::Literal, TwoModeVariant::DickeForm] {
            let spec = QuadraticModelSpec::two_mode(1.0, 0.0, variant, 0.01);
            let tracks = gaussian_evolve(&spec, &CovarianceState::vacuum(), &grid(20.0, 101)).unwrap();
            let worst = tracks.n_total.iter().fold(0.0f64, |m, n| m.max(n.abs()));
            assert!(worst < 1e-12, "{variant:?}: {worst:e}");
        }
    }

    #[test]
    fn thermal_photon_decays_exponentially() {
        let kappa = 0.05;
        let spec = QuadraticModelSpec::two_mode(1.0, 0.0, TwoModeVariant::DickeForm, kappa);
        let times = grid(30.0, 61);
        let tracks = gaussian_evolve(&spec, &CovarianceState::thermal(1.0, 0.0), &times).unwrap();
        for (t, n) in times.iter().zip(&tracks.n1) {
            assert!((n - libm::exp(-kappa * t)).abs() < 1e-12, "t={t}: {n}");
        }
    }

    #[test]
    fn coherent_amplitude_rotates_and_decays() {
        let kappa = 0.1;
        let spec = QuadraticModelSpec::two_mode(1.0, 0.0, TwoModeVariant::DickeForm, kappa);
        let mut start = CovarianceState::vacuum();
        start.mean[0] = 2.0; // ⟨n₁⟩ = 2
        let times = grid(10.0, 41);
        let tracks = gaussian_evolve(&spec, &start, &times).unwrap();
        for (t, n) in times.iter().zip(&tracks.n1) {
            assert!((n - 2.0 * libm::exp(-kappa * t)).abs() < 1e-12);
        }
        let x = tracks.final_state.mean[0];
        let expected = 2.0 * libm::exp(-kappa * 10.0 / 2.0) * libm::cos(10.0);
        assert!((x - expected).abs() < 1e-12);
    }

    #[test]
    fn quadratic_form_of_dicke_coupling() {
        let spec = QuadraticModelSpec::two_mode(1.0, 0.3, TwoModeVariant::DickeForm, 0.0);
        let m = spec.quadratic_form();
        // Ω (a+a†)(b+b†) = 2Ω x₁x₂
        assert!((m[(0, 2)] - 0.6).abs() < 1e-15);
        assert_eq!(m[(1, 3)], 0.0);
        assert_eq!(m[(0, 3)], 0.0);
        assert_eq!(m[(1, 2)], 0.0);
    }

    #[test]
    fn stays_physical_and_bounded_when_stable() {
        for variant in [TwoModeVariant::Literal, TwoModeVariant::DickeForm] {
            let spec = QuadraticModelSpec::two_mode(1.0, 0.25, variant, 0.0);
            let tracks = gaussian_evolve(&spec, &CovarianceState::vacuum(), &grid(200.0, 2001)).unwrap();
            assert!(tracks.n1.iter().chain(&tracks.n2).all(|n| *n >= -1e-12));
            let peak = tracks.n_total.iter().copied().fold(0.0, f64::max);
            assert!(peak < 5.0, "{variant:?}: {peak}");
            assert!(tracks.final_state.satisfies_uncertainty());
        }
    }

    #[test]
    fn rejects_non_increasing_grid() {
        let spec = QuadraticModelSpec::two_mode(1.0, 0.1, TwoModeVariant::DickeForm, 0.0);
        assert!(gaussian_evolve(&spec, &CovarianceState::vacuum(), &[0.0, 1.0, 1.0]).is_err());
    }
}
