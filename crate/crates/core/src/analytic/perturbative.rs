//! First-order emission probability of a moving qubit.
//!
//! Starting from `|g, 0⟩`, the amplitude to find `|e, 1⟩` at time `T` is
//! `g ∫₀ᵀ e^{i(ω_q+ω₀)t} cos(k x_q(t)) dt` to first order in `g`.

use core::f64::consts::PI;

use num_complex::Complex64;

use super::quadrature;
use crate::hamiltonian::RabiParams;
use crate::trajectory::{coupling_factor, QubitTrajectory};

/// Above this `|g|/ω₀` the first-order result is flagged as unreliable.
pub const WEAK_COUPLING_LIMIT: f64 = 0.05;

/// Relative tolerance of the adaptive quadrature on the amplitude.
pub const QUADRATURE_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbativeEstimate {
    /// Probability from adaptive quadrature.
    pub probability: f64,
    /// Probability assembled from elementary integrals, when the trajectory
    /// admits one (static and constant-velocity motion).
    pub closed_form: Option<f64>,
    /// `|g|/ω₀` exceeds [`WEAK_COUPLING_LIMIT`].
    pub outside_weak_coupling: bool,
}

/// `∫₀ᵀ e^{iat} dt = T e^{iaT/2} sinc(aT/2)`.
fn phase_integral(a: f64, t_final: f64) -> Complex64 {
    let x = 0.5 * a * t_final;
    let sinc = if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        libm::sin(x) / x
    };
    Complex64::from_polar(t_final * sinc, x)
}

fn closed_form_amplitude(p: &RabiParams, traj: &QubitTrajectory, t_final: f64) -> Option<Complex64> {
    let detuning = p.omega_q + p.omega0;
    match *traj {
        QubitTrajectory::Static { .. } => {
            Some(phase_integral(detuning, t_final) * coupling_factor(traj, 0.0))
        }
        QubitTrajectory::ConstantVelocity { x0, v } => {
            // cos(θ₀ + w t) = (e^{i(θ₀+wt)} + e^{-i(θ₀+wt)}) / 2
            let w = v * p.omega0;
            let theta0 = PI * x0;
            let up = Complex64::from_polar(1.0, theta0) * phase_integral(detuning + w, t_final);
            let down = Complex64::from_polar(1.0, -theta0) * phase_integral(detuning - w, t_final);
            Some((up + down) * 0.5)
        }
        QubitTrajectory::Oscillatory { .. } => None,
    }
}

pub fn perturbative_probability(p: &RabiParams, traj: &QubitTrajectory, t_final: f64) -> PerturbativeEstimate {
    let detuning = p.omega_q + p.omega0;
    let integrand = |t: f64| Complex64::from_polar(coupling_factor(traj, p.omega0 * t), detuning * t);
    // roughly two panels per period of the fastest frequency involved
    let fastest = detuning.abs()
        + match *traj {
            QubitTrajectory::Static { .. } => 0.0,
            QubitTrajectory::ConstantVelocity { v, .. } => (v * p.omega0).abs(),
            QubitTrajectory::Oscillatory { omega } => 4.0 * omega.abs() * p.omega0,
        };
    let pieces = (libm::ceil(fastest * t_final / PI) as usize).clamp(1, 100_000);
    let result = quadrature::integrate(integrand, 0.0, t_final, QUADRATURE_REL_TOL, 1e-300, pieces, 1_000_000);
    let g2 = p.g * p.g;
    PerturbativeEstimate {
        probability: g2 * result.value.norm_sqr(),
        closed_form: closed_form_amplitude(p, traj, t_final).map(|a| g2 * a.norm_sqr()),
        outside_weak_coupling: p.g.abs() / p.omega0 > WEAK_COUPLING_LIMIT,
    }
}

/// Velocity (units of `c`) at which emission is resonantly enhanced.
pub fn resonance_velocity(omega_q: f64, omega0: f64) -> f64 {
    (omega_q + omega0) / omega0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(g: f64) -> RabiParams {
        RabiParams::new(1.0, 1.0, g, 4).unwrap()
    }

    #[test]
    fn static_node_does_not_emit() {
        let est = perturbative_probability(&params(0.002), &QubitTrajectory::Static { x0: 0.5 }, 50.0);
        assert_eq!(est.probability, 0.0);
        assert_eq!(est.closed_form, Some(0.0));
    }

    #[test]
    fn resonant_constant_velocity() {
        let g = 0.002;
        let t = 50.0;
        let traj = QubitTrajectory::ConstantVelocity { x0: 0.0, v: 2.0 };
        let est = perturbative_probability(&params(g), &traj, t);
        // hand-assembled: g² |T/2 + (e^{2iΔT} - 1)/(4iΔ)|², Δ = 2
        let delta = 2.0;
        let hand = Complex64::new(t / 2.0, 0.0)
            + (Complex64::from_polar(1.0, 2.0 * delta * t) - 1.0) / Complex64::new(0.0, 4.0 * delta);
        let hand = g * g * hand.norm_sqr();
        assert!((est.probability - hand).abs() < 1e-9 * hand);
        assert!((est.closed_form.unwrap() - hand).abs() < 1e-12 * hand);
        let leading = g * g * t * t / 4.0;
        assert!((leading - 2.5e-3).abs() < 1e-15);
        assert!((hand - leading).abs() / leading < 0.01);
        assert!(!est.outside_weak_coupling);
    }

    #[test]
    fn strong_coupling_is_flagged() {
        let est = perturbative_probability(&params(0.1), &QubitTrajectory::Static { x0: 0.0 }, 1.0);
        assert!(est.outside_weak_coupling);
    }

    #[test]
    fn resonance_velocities() {
        assert_eq!(resonance_velocity(1.0, 1.0), 2.0);
        assert_eq!(resonance_velocity(0.5, 1.0), 1.5);
        assert!((resonance_velocity(1e-12, 1.0) - 1.0).abs() < 1e-11);
    }

    #[test]
    fn oscillatory_has_no_closed_form() {
        let est = perturbative_probability(&params(0.002), &QubitTrajectory::Oscillatory { omega: 2.0 }, 20.0);
        assert!(est.closed_form.is_none());
        assert!(est.probability > 0.0);
    }

    #[test]
    fn shifting_by_two_lengths_changes_nothing() {
        let p = params(0.002);
        for &(x0, v, t) in &[(0.1, 1.7, 13.0), (0.37, 2.0, 40.0), (0.0, 0.3, 5.0)] {
            let a = perturbative_probability(&p, &QubitTrajectory::ConstantVelocity { x0, v }, t);
            let b = perturbative_probability(&p, &QubitTrajectory::ConstantVelocity { x0: x0 + 2.0, v }, t);
            assert!((a.probability - b.probability).abs() <= 1e-9 * a.probability);
            let c = perturbative_probability(&p, &QubitTrajectory::Static { x0 }, t);
            let d = perturbative_probability(&p, &QubitTrajectory::Static { x0: x0 + 2.0 }, t);
            assert!((c.probability - d.probability).abs() <= 1e-9 * c.probability);
        }
    }
}
