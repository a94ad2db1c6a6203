//! Qubit trajectories, mirror length profiles and the modulation signals
//! they induce.
//!
//! Qubit positions are in units of the resonator length `L` (so `k x = π x`),
//! velocities in units of `c`, times in units of `1/ω₀`. Mirror profiles use
//! `c = 1` with an explicit rest length; with `L = π` the fundamental mode
//! sits at `ω₁ = 1`.

use alloc::string::String;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};

/// Largest relative modulation depth accepted for the sinusoidal profile.
pub const MAX_DCE_DEPTH: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QubitTrajectory {
    Static { x0: f64 },
    /// `x_q(t) = x₀ + v t`.
    ConstantVelocity { x0: f64, v: f64 },
    /// `x_q(t) = L/2 + (L/2) cos(ω t)`, sweeping the full resonator.
    Oscillatory { omega: f64 },
}

impl QubitTrajectory {
    /// Position in units of `L`.
    pub fn position(&self, t: f64) -> f64 {
        match *self {
            QubitTrajectory::Static { x0 } => x0,
            QubitTrajectory::ConstantVelocity { x0, v } => x0 + v * t,
            QubitTrajectory::Oscillatory { omega } => 0.5 + 0.5 * libm::cos(omega * t),
        }
    }

    /// Velocity the trajectory stands for: the literal velocity for constant
    /// motion, and the equivalent constant velocity `(ω/ω₀) c` for the
    /// oscillatory one.
    pub fn effective_velocity(&self) -> f64 {
        match *self {
            QubitTrajectory::Static { .. } => 0.0,
            QubitTrajectory::ConstantVelocity { v, .. } => v,
            QubitTrajectory::Oscillatory { omega } => omega,
        }
    }
}

/// `θ = k x_q(t)` in radians, `t` in units of `1/ω₀`.
pub fn qubit_phase(traj: &QubitTrajectory, t: f64) -> f64 {
    match *traj {
        QubitTrajectory::Static { x0 } => PI * x0,
        QubitTrajectory::ConstantVelocity { x0, v } => PI * x0 + v * t,
        QubitTrajectory::Oscillatory { omega } => FRAC_PI_2 + FRAC_PI_2 * libm::cos(omega * t),
    }
}

/// `cos θ`, exactly zero when `θ / π` is a half-integer in floating point.
pub fn phase_cosine(theta: f64) -> f64 {
    cos_pi(theta / PI)
}

/// `cos(π x)` with exact zeros at half-integers.
fn cos_pi(x: f64) -> f64 {
    let r = x - 2.0 * libm::floor(0.5 * x);
    if r == 0.5 || r == 1.5 {
        0.0
    } else {
        libm::cos(PI * r)
    }
}

/// Coupling modulation `cos(k x_q(t))`.
pub fn coupling_factor(traj: &QubitTrajectory, t: f64) -> f64 {
    match *traj {
        QubitTrajectory::Static { x0 } => cos_pi(x0),
        QubitTrajectory::ConstantVelocity { .. } => libm::cos(qubit_phase(traj, t)),
        // cos(π/2 + u) = -sin(u)
        QubitTrajectory::Oscillatory { omega } => -libm::sin(FRAC_PI_2 * libm::cos(omega * t)),
    }
}

/// Magnetic frustration that reproduces the trajectory in a flux-tunable
/// coupler. It is the qubit phase itself.
pub fn flux_profile(traj: &QubitTrajectory, t: f64) -> f64 {
    qubit_phase(traj, t)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MirrorProfile {
    Static { length: f64 },
    /// `L(t) = L - v t`. With `short_time` set the log-derivative is frozen
    /// at `-v/L`, valid while `v t ≪ L`.
    Linear { length: f64, v: f64, short_time: bool },
    /// `L(t) = L (1 + δ sin ω_d t)`.
    DceSinusoidal { length: f64, delta: f64, omega_d: f64 },
}

impl MirrorProfile {
    pub fn linear(length: f64, v: f64, short_time: bool) -> Result<Self> {
        check_length(length)?;
        Ok(MirrorProfile::Linear { length, v, short_time })
    }

    pub fn dce(length: f64, delta: f64, omega_d: f64) -> Result<Self> {
        check_length(length)?;
        if !(0.0..=MAX_DCE_DEPTH).contains(&delta.abs()) {
            return Err(Error::Domain(alloc::format!(
                "modulation depth {delta} exceeds {MAX_DCE_DEPTH}"
            )));
        }
        Ok(MirrorProfile::DceSinusoidal { length, delta, omega_d })
    }

    pub fn rest_length(&self) -> f64 {
        match *self {
            MirrorProfile::Static { length }
            | MirrorProfile::Linear { length, .. }
            | MirrorProfile::DceSinusoidal { length, .. } => length,
        }
    }

    /// Time at which a linear contraction reaches zero length.
    pub fn collapse_time(&self) -> Option<f64> {
        match *self {
            MirrorProfile::Linear { length, v, short_time: false } if v > 0.0 => Some(length / v),
            _ => None,
        }
    }

    /// Instantaneous length `L(t)`; frozen at `L` under the short-time flag.
    pub fn length_at(&self, t: f64) -> Result<f64> {
        match *self {
            MirrorProfile::Static { length } => Ok(length),
            MirrorProfile::Linear { length, short_time: true, .. } => Ok(length),
            MirrorProfile::Linear { length, v, short_time: false } => {
                let l = length - v * t;
                if l <= 0.0 {
                    return Err(collapse_error(length, v, t));
                }
                Ok(l)
            }
            MirrorProfile::DceSinusoidal { length, delta, omega_d } => {
                Ok(length * (1.0 + delta * libm::sin(omega_d * t)))
            }
        }
    }
}

fn check_length(length: f64) -> Result<()> {
    if length > 0.0 && length.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(alloc::format!("cavity length must be positive, got {length}")))
    }
}

fn collapse_error(length: f64, v: f64, t: f64) -> Error {
    Error::Domain(alloc::format!(
        "linear profile with L = {length}, v = {v} has zero length by t = {}; requested t = {t}",
        length / v
    ))
}

/// `L̇(t) / L(t)`.
pub fn mirror_log_derivative(profile: &MirrorProfile, t: f64) -> Result<f64> {
    match *profile {
        MirrorProfile::Static { .. } => Ok(0.0),
        MirrorProfile::Linear { length, v, short_time: true } => Ok(-v / length),
        MirrorProfile::Linear { length, v, short_time: false } => {
            let l = length - v * t;
            if l <= 0.0 {
                return Err(collapse_error(length, v, t));
            }
            Ok(-v / l)
        }
        MirrorProfile::DceSinusoidal { delta, omega_d, .. } => {
            let phase = omega_d * t;
            Ok(delta * omega_d * libm::cos(phase) / (1.0 + delta * libm::sin(phase)))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Motion<'a> {
    Qubit(&'a QubitTrajectory),
    Mirror(&'a MirrorProfile),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityLimits {
    /// `c / c₀`, the medium's speed of light relative to vacuum.
    pub medium_c_ratio: f64,
    /// Fraction of `2c` below which mirror motion counts as "much less than
    /// `2c`".
    pub margin: f64,
}

impl Default for FeasibilityLimits {
    fn default() -> Self {
        Self { medium_c_ratio: 1.0 / 3.0, margin: 0.2 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub hardware_feasible: bool,
    pub superluminal_in_medium: bool,
    pub superluminal_in_vacuum: bool,
    /// Peak effective velocity in units of `c`.
    pub v_max: f64,
    pub notes: Vec<String>,
}

pub fn feasibility_check(motion: Motion<'_>, limits: &FeasibilityLimits) -> FeasibilityReport {
    let vacuum_c = 1.0 / limits.medium_c_ratio;
    let (v_max, mirror) = match motion {
        Motion::Qubit(traj) => (traj.effective_velocity().abs(), false),
        Motion::Mirror(profile) => {
            let v = match *profile {
                MirrorProfile::Static { .. } => 0.0,
                MirrorProfile::Linear { v, .. } => v.abs(),
                MirrorProfile::DceSinusoidal { length, delta, omega_d } => {
                    (delta * length * omega_d).abs()
                }
            };
            (v, true)
        }
    };
    let superluminal_in_medium = v_max > 1.0;
    let superluminal_in_vacuum = v_max > vacuum_c;
    let mut notes = Vec::new();
    let hardware_feasible = if mirror {
        let bound = limits.margin * 2.0;
        let ok = v_max < bound && !superluminal_in_medium;
        if !ok {
            notes.push(alloc::format!(
                "mirror velocity {v_max:.4}c is not well below 2c (limit {bound:.4}c)"
            ));
        }
        ok
    } else {
        // Flux modulation of the coupling has no velocity limit of its own.
        true
    };
    if superluminal_in_medium {
        notes.push(alloc::format!("{v_max:.4}c exceeds the speed of light in the medium"));
    }
    if superluminal_in_vacuum {
        notes.push(alloc::format!(
            "{v_max:.4}c exceeds the vacuum speed of light ({vacuum_c:.4}c); simulation only"
        ));
    }
    FeasibilityReport {
        hardware_feasible,
        superluminal_in_medium,
        superluminal_in_vacuum,
        v_max,
        notes,
    }
}
