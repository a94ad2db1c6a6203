//! Hamiltonians for the moving-qubit Rabi model and the moving-mirror
//! multimode model, plus the two-mode reductions of the latter.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::analytic::bessel;
use crate::error::{Error, Result};
use crate::trajectory::phase_cosine;
use crate::qops::{self, make_annihilation, make_number, make_pauli, tensor, Operator, PauliAxis};

/// Largest mode count accepted by the literal multimode model.
pub const MAX_MIRROR_MODES: usize = 6;

/// Parameters of the qubit-resonator Rabi model, frequencies in units of
/// `ω₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RabiParams {
    pub omega0: f64,
    pub omega_q: f64,
    pub g: f64,
    /// Fock-space dimension of the resonator mode.
    pub n_max: usize,
}

impl RabiParams {
    pub fn new(omega0: f64, omega_q: f64, g: f64, n_max: usize) -> Result<Self> {
        let p = Self { omega0, omega_q, g, n_max };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0 > 0.0) {
            return Err(Error::Domain(alloc::format!("ω₀ must be positive, got {}", self.omega0)));
        }
        if self.n_max < 2 {
            return Err(Error::InvalidDimension(alloc::format!(
                "Fock truncation must be at least 2, got {}",
                self.n_max
            )));
        }
        if !(self.g.abs() < self.omega0) {
            return Err(Error::Domain(alloc::format!(
                "|g| = {} must stay below ω₀ = {}",
                self.g.abs(),
                self.omega0
            )));
        }
        Ok(())
    }

    /// Subsystem layout: qubit first, resonator second.
    pub fn dims(&self) -> Vec<usize> {
        alloc::vec![2, self.n_max]
    }

    pub fn with_coupling(self, g: f64) -> Self {
        Self { g, ..self }
    }
}

/// `ω₀ a†a + (ω_q/2) σ_z` on qubit ⊗ Fock.
pub fn rabi_free(p: &RabiParams) -> Result<Operator> {
    let field = tensor(&[Operator::identity(&[2]), make_number(p.n_max)?])?.scale(p.omega0);
    let qubit = tensor(&[make_pauli(PauliAxis::Z), Operator::identity(&[p.n_max])])?
        .scale(0.5 * p.omega_q);
    Ok(&field + &qubit)
}

/// `σ_x (a† + a)` on qubit ⊗ Fock.
pub fn rabi_coupling_shape(n_max: usize) -> Result<Operator> {
    let a = make_annihilation(n_max)?;
    let quadrature = &a + &a.adjoint();
    tensor(&[make_pauli(PauliAxis::X), quadrature])
}

/// `H = ω₀ a†a + (ω_q/2) σ_z + g cos(θ) σ_x (a† + a)`.
pub fn rabi_hamiltonian(p: &RabiParams, theta: f64) -> Result<Operator> {
    p.validate()?;
    let free = rabi_free(p)?;
    let coupling = rabi_coupling_shape(p.n_max)?.scale(p.g * phase_cosine(theta));
    Ok(&free + &coupling)
}

/// Same operator as [`rabi_hamiltonian`], parametrized by the magnetic
/// frustration `f` of a flux-tunable coupler.
pub fn flux_rabi_hamiltonian(p: &RabiParams, frustration: f64) -> Result<Operator> {
    rabi_hamiltonian(p, frustration)
}

/// Coupling of the single-harmonic approximation of the oscillatory
/// trajectory, `-2 J₁(π/2) g`.
pub fn oscillatory_effective_coupling(g: f64) -> f64 {
    -2.0 * bessel::bessel_j(1, PI / 2.0) * g
}

/// Free part plus `-2 g J₁(π/2) cos(ω t) σ_x (a† + a)`.
pub fn effective_oscillatory_hamiltonian(p: &RabiParams, omega: f64, t: f64) -> Result<Operator> {
    p.validate()?;
    let free = rabi_free(p)?;
    let coupling = rabi_coupling_shape(p.n_max)?
        .scale(oscillatory_effective_coupling(p.g) * libm::cos(omega * t));
    Ok(&free + &coupling)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoModeVariant {
    /// Two-mode restriction of the moving-boundary Hamiltonian: squeezing
    /// `Ω` and mode mixing `3Ω`.
    Literal,
    /// `ω₁ a†a + 2ω₁ b†b + Ω (a + a†)(b + b†)`.
    DickeForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MirrorModelSpec {
    pub n_modes: usize,
    /// Rest length (`c = 1`); the fundamental frequency is `π / length`.
    pub length: f64,
    pub variant: TwoModeVariant,
    /// Squeezing strength, used by the Dicke-form reduction.
    pub omega: f64,
    /// Per-mode Fock dimension.
    pub n_max: usize,
}

impl MirrorModelSpec {
    pub fn validate(&self) -> Result<()> {
        if !(2..=MAX_MIRROR_MODES).contains(&self.n_modes) {
            return Err(Error::InvalidDimension(alloc::format!(
                "mirror model supports 2..={MAX_MIRROR_MODES} modes, got {}",
                self.n_modes
            )));
        }
        if self.n_max < 2 {
            return Err(Error::InvalidDimension(alloc::format!(
                "Fock truncation must be at least 2, got {}",
                self.n_max
            )));
        }
        if !(self.length > 0.0) {
            return Err(Error::Domain(alloc::format!(
                "cavity length must be positive, got {}",
                self.length
            )));
        }
        Ok(())
    }

    pub fn dims(&self) -> Vec<usize> {
        alloc::vec![self.n_max; self.n_modes]
    }

    /// `ω_n = π n / L` at rest length.
    pub fn mode_frequency(&self, n: usize) -> f64 {
        PI * n as f64 / self.length
    }
}

/// `(-1)^{n+j} · jn/(j² - n²) · √(n/j)`, modes counted from 1.
pub fn mode_coupling(n: usize, j: usize) -> f64 {
    debug_assert!(n != j && n > 0 && j > 0);
    let (nf, jf) = (n as f64, j as f64);
    let sign = if (n + j) % 2 == 0 { 1.0 } else { -1.0 };
    sign * jf * nf / (jf * jf - nf * nf) * libm::sqrt(nf / jf)
}

/// `Σ_n π n (n̂_n + 1/2)`; dividing by `L(t)` gives the free Hamiltonian.
pub fn mirror_free_part(spec: &MirrorModelSpec) -> Result<Operator> {
    spec.validate()?;
    let dims = spec.dims();
    let mut acc = Operator::zeros(&dims);
    let half = Operator::identity(&[spec.n_max]).scale(0.5);
    let number = make_number(spec.n_max)?;
    for mode in 1..=spec.n_modes {
        let shifted = &number + &half;
        let term = shifted.embed(&dims, mode - 1)?.scale(PI * mode as f64);
        acc = &acc + &term;
    }
    Ok(acc)
}

/// `i Σ_n Σ_{j≠n} c_{nj} (a_n†a_j† + a_n†a_j - a_n a_j† - a_n a_j)`.
///
/// Each bracket is anti-Hermitian, so the factor `i` makes the sum Hermitian.
pub fn mirror_interaction_part(spec: &MirrorModelSpec) -> Result<Operator> {
    spec.validate()?;
    let dims = spec.dims();
    let a = make_annihilation(spec.n_max)?;
    let lowering: Vec<Operator> =
        (0..spec.n_modes).map(|m| a.embed(&dims, m)).collect::<Result<_>>()?;
    let raising: Vec<Operator> = lowering.iter().map(Operator::adjoint).collect();
    let mut acc = Operator::zeros(&dims);
    for n in 1..=spec.n_modes {
        for j in (1..=spec.n_modes).filter(|&j| j != n) {
            let (an, aj) = (&lowering[n - 1], &lowering[j - 1]);
            let (an_d, aj_d) = (&raising[n - 1], &raising[j - 1]);
            let bracket = &(&(an_d * aj_d) + &(an_d * aj)) - &(&(an * aj_d) + &(an * aj));
            acc = &acc + &bracket.scale(mode_coupling(n, j));
        }
    }
    Ok(acc.scale_complex(Complex64::new(0.0, 1.0)))
}

/// Multimode moving-mirror Hamiltonian at instantaneous length `length_t`
/// and log-derivative `L̇/L`.
pub fn mirror_hamiltonian(spec: &MirrorModelSpec, length_t: f64, log_derivative: f64) -> Result<Operator> {
    if spec.variant != TwoModeVariant::Literal {
        return Err(Error::Domain(
            "mirror_hamiltonian builds the literal multimode model only".into(),
        ));
    }
    if !(length_t > 0.0) {
        return Err(Error::Domain(alloc::format!("cavity length must be positive, got {length_t}")));
    }
    let free = mirror_free_part(spec)?.scale(1.0 / length_t);
    let interaction = mirror_interaction_part(spec)?.scale(log_derivative);
    let h = &free + &interaction;
    let deviation = h.hermiticity_deviation();
    if deviation > qops::HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    Ok(h)
}

/// Two coupled modes at `ω₁` and `ω₂ = 2ω₁` with squeezing strength `Ω`.
pub fn two_mode_hamiltonian(omega1: f64, omega: f64, variant: TwoModeVariant, n_max: usize) -> Result<Operator> {
    if !(omega1 > 0.0) {
        return Err(Error::Domain(alloc::format!("ω₁ must be positive, got {omega1}")));
    }
    match variant {
        TwoModeVariant::Literal => {
            let length = PI / omega1;
            let spec = MirrorModelSpec { n_modes: 2, length, variant, omega, n_max };
            // Ω = (√2/3) v/L, so L̇/L = -v/L = -3Ω/√2.
            mirror_hamiltonian(&spec, length, -3.0 * omega / SQRT_2)
        }
        TwoModeVariant::DickeForm => {
            let dims = [n_max, n_max];
            let number = make_number(n_max)?;
            let a = make_annihilation(n_max)?;
            let x = &a + &a.adjoint();
            let free = &number.embed(&dims, 0)?.scale(omega1) + &number.embed(&dims, 1)?.scale(2.0 * omega1);
            let coupling = tensor(&[x.clone(), x])?.scale(omega);
            Ok(&free + &coupling)
        }
    }
}

/// `Ω = (√2/3) v / L` with `v` in units of `c` (`c = 1`).
pub fn velocity_to_coupling(v: f64, length: f64) -> f64 {
    SQRT_2 / 3.0 * v / length
}

pub fn coupling_to_velocity(omega: f64, length: f64) -> f64 {
    3.0 * omega * length / SQRT_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::QuantumState;
    use core::f64::consts::FRAC_PI_2;
    use proptest::prelude::*;

    fn params() -> RabiParams {
        RabiParams::new(1.0, 1.0, 0.02, 6).unwrap()
    }

    #[test]
    fn node_removes_interaction() {
        let p = params();
        let h = rabi_hamiltonian(&p, FRAC_PI_2).unwrap();
        assert_eq!(h, rabi_free(&p).unwrap());
    }

    #[test]
    fn hand_assembled_matrix_element() {
        let p = RabiParams::new(1.0, 1.0, 0.02, 2).unwrap();
        let h = rabi_hamiltonian(&p, 0.0).unwrap();
        // basis order |e0⟩, |e1⟩, |g0⟩, |g1⟩
        assert!((h.get(1, 2).re - 0.02).abs() < 1e-15);
        assert_eq!(h.get(1, 2).im, 0.0);
        let expected = [
            [0.5, 0.0, 0.0, 0.02],
            [0.0, 1.5, 0.02, 0.0],
            [0.0, 0.02, -0.5, 0.0],
            [0.02, 0.0, 0.0, 0.5],
        ];
        for (i, row) in expected.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                assert!((h.get(i, j) - Complex64::new(e, 0.0)).norm() < 1e-15, "({i},{j})");
            }
        }
    }

    #[test]
    fn rabi_params_validation() {
        assert!(RabiParams::new(0.0, 1.0, 0.0, 4).is_err());
        assert!(RabiParams::new(1.0, 1.0, 0.0, 1).is_err());
        assert!(RabiParams::new(1.0, 1.0, 1.5, 4).is_err());
    }

    #[test]
    fn flux_hamiltonian_identification() {
        let p = params();
        let zero = flux_rabi_hamiltonian(&p, 0.0).unwrap();
        assert_eq!(zero, rabi_hamiltonian(&p, 0.0).unwrap());
        let free = rabi_free(&p).unwrap();
        let flipped = flux_rabi_hamiltonian(&p, PI).unwrap();
        let up = &zero - &free;
        let down = &flipped - &free;
        assert!((&up + &down).matrix().norm() < 1e-15);
        let traj = crate::trajectory::QubitTrajectory::Oscillatory { omega: 2.0 };
        let f = FRAC_PI_2 + FRAC_PI_2 * libm::cos(0.0);
        let via_traj = rabi_hamiltonian(&p, crate::trajectory::qubit_phase(&traj, 0.0)).unwrap();
        assert_eq!(flux_rabi_hamiltonian(&p, f).unwrap(), via_traj);
    }

    #[test]
    fn effective_oscillatory_matches_constant_velocity() {
        let p = params();
        let omega = 2.0;
        let traj = crate::trajectory::QubitTrajectory::ConstantVelocity { x0: 0.0, v: omega };
        let coupled = p.with_coupling(oscillatory_effective_coupling(p.g));
        for i in 0..40 {
            let t = 0.173 * i as f64;
            let eff = effective_oscillatory_hamiltonian(&p, omega, t).unwrap();
            let cv = rabi_hamiltonian(&coupled, crate::trajectory::qubit_phase(&traj, t)).unwrap();
            assert!(eff.max_abs_diff(&cv) < 1e-15);
        }
        let node = effective_oscillatory_hamiltonian(&p, omega, FRAC_PI_2 / omega).unwrap();
        assert!(node.max_abs_diff(&rabi_free(&p).unwrap()) < 1e-15);
        assert!((oscillatory_effective_coupling(1.0).abs() - 1.13365).abs() < 1e-5);
    }

    #[test]
    fn ordered_pair_coefficients() {
        assert!((mode_coupling(1, 2) + SQRT_2 / 3.0).abs() < 1e-15);
        assert!((mode_coupling(2, 1) - 2.0 * SQRT_2 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn static_mirror_is_free() {
        let spec = MirrorModelSpec { n_modes: 3, length: 2.0, variant: TwoModeVariant::Literal, omega: 0.0, n_max: 3 };
        let h = mirror_hamiltonian(&spec, 2.0, 0.0).unwrap();
        // vacuum energy Σ ω_n / 2
        let expected = (1..=3).map(|n| PI * n as f64 / 2.0 / 2.0).sum::<f64>();
        assert!((h.get(0, 0).re - expected).abs() < 1e-14);
        let off: f64 = (0..h.dim())
            .flat_map(|i| (0..h.dim()).map(move |j| (i, j)))
            .filter(|(i, j)| i != j)
            .map(|(i, j)| h.get(i, j).norm())
            .fold(0.0, f64::max);
        assert_eq!(off, 0.0);
        assert!(mirror_hamiltonian(&spec, 0.0, 0.0).is_err());
        assert!(mirror_hamiltonian(&spec, -1.0, 0.0).is_err());
    }

    #[test]
    fn two_mode_squeezing_and_mixing_strengths() {
        let n_max = 3;
        let v = 1.3;
        let length = PI;
        let spec = MirrorModelSpec { n_modes: 2, length, variant: TwoModeVariant::Literal, omega: 0.0, n_max };
        let h = mirror_hamiltonian(&spec, length, -v / length).unwrap();
        let vac = QuantumState::basis(&[n_max, n_max], &[0, 0]).unwrap();
        let pair = QuantumState::basis(&[n_max, n_max], &[1, 1]).unwrap();
        let one_two = QuantumState::basis(&[n_max, n_max], &[1, 0]).unwrap();
        let two_one = QuantumState::basis(&[n_max, n_max], &[0, 1]).unwrap();
        let elem = |bra: &QuantumState, ket: &QuantumState| {
            bra.as_vector().unwrap().dotc(&(h.matrix() * ket.as_vector().unwrap()))
        };
        // ⟨11|H|00⟩ = i (L̇/L)(c₁₂ + c₂₁)
        let squeeze = elem(&pair, &vac);
        assert!((squeeze.norm() - SQRT_2 / 3.0 * v / length).abs() < 1e-14);
        // ⟨10|H|01⟩ = i (L̇/L)(c₁₂ - c₂₁)
        let mix = elem(&one_two, &two_one);
        assert!((mix.norm() / squeeze.norm() - 3.0).abs() < 1e-13);
    }

    #[test]
    fn two_mode_free_limits() {
        for variant in [TwoModeVariant::Literal, TwoModeVariant::DickeForm] {
            let h = two_mode_hamiltonian(1.0, 0.0, variant, 4).unwrap();
            let shift = h.get(0, 0).re;
            for n1 in 0..4 {
                for n2 in 0..4 {
                    let idx = n1 * 4 + n2;
                    assert!((h.get(idx, idx).re - shift - (n1 as f64 + 2.0 * n2 as f64)).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn dicke_form_has_equal_squeezing_and_mixing() {
        let n = 3;
        let omega = 0.4;
        let h = two_mode_hamiltonian(1.0, omega, TwoModeVariant::DickeForm, n).unwrap();
        // ⟨11|H|00⟩ from a†b†, ⟨10|H|01⟩ from a†b
        assert!((h.get(n + 1, 0).re - omega).abs() < 1e-15);
        assert!((h.get(n, 1).re - omega).abs() < 1e-15);
    }

    #[test]
    fn literal_mixing_ratio_is_three() {
        let n = 3;
        let h = two_mode_hamiltonian(1.0, 0.2, TwoModeVariant::Literal, n).unwrap();
        let squeeze = h.get(n + 1, 0).norm();
        let mix = h.get(n, 1).norm();
        assert!((squeeze - 0.2).abs() < 1e-15);
        assert!((mix / squeeze - 3.0).abs() < 1e-14);
    }

    #[test]
    fn velocity_coupling_examples() {
        let length = PI; // ω₁ = 1
        assert!((velocity_to_coupling(1.0, length) - SQRT_2 / (3.0 * PI)).abs() < 1e-15);
        assert!((velocity_to_coupling(1.0, length) - 0.1501).abs() < 1e-4);
        assert_eq!(velocity_to_coupling(0.0, length), 0.0);
        let critical = velocity_to_coupling(1.5 * PI, length);
        assert!((critical - PI / (SQRT_2 * length)).abs() < 1e-15);
        assert!((critical - libm::sqrt(2.0) / 2.0).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn builders_are_hermitian(omega_q in 0.0f64..3.0, g in -0.9f64..0.9, theta in -10.0f64..10.0,
                                  omega in 0.0f64..2.0, ld in -3.0f64..3.0, len in 0.5f64..5.0) {
            let p = RabiParams::new(1.0, omega_q, g, 5).unwrap();
            prop_assert!(rabi_hamiltonian(&p, theta).unwrap().hermiticity_deviation() <= 1e-12);
            prop_assert!(effective_oscillatory_hamiltonian(&p, 2.0, theta).unwrap().hermiticity_deviation() <= 1e-12);
            for variant in [TwoModeVariant::Literal, TwoModeVariant::DickeForm] {
                prop_assert!(two_mode_hamiltonian(1.0, omega, variant, 4).unwrap().hermiticity_deviation() <= 1e-12);
            }
            let spec = MirrorModelSpec { n_modes: 3, length: len, variant: TwoModeVariant::Literal, omega: 0.0, n_max: 3 };
            prop_assert!(mirror_hamiltonian(&spec, len, ld).unwrap().hermiticity_deviation() <= 1e-12);
        }

        #[test]
        fn rabi_is_periodic_and_even(theta in -10.0f64..10.0) {
            let p = params();
            let h = rabi_hamiltonian(&p, theta).unwrap();
            prop_assert!(h.max_abs_diff(&rabi_hamiltonian(&p, theta + 2.0 * PI).unwrap()) < 1e-14);
            prop_assert!(h.max_abs_diff(&rabi_hamiltonian(&p, -theta).unwrap()) < 1e-15);
        }

        #[test]
        fn truncations_agree_on_overlap(omega in 0.0f64..1.0, n in 2usize..6) {
            let small = two_mode_hamiltonian(1.0, omega, TwoModeVariant::Literal, n).unwrap();
            let big = two_mode_hamiltonian(1.0, omega, TwoModeVariant::Literal, n + 5).unwrap();
            let m = n + 5;
            for i in 0..n * n {
                for j in 0..n * n {
                    let (bi, bj) = ((i / n) * m + i % n, (j / n) * m + j % n);
                    prop_assert_eq!(small.get(i, j), big.get(bi, bj));
                }
            }
        }

        #[test]
        fn velocity_coupling_round_trip(v in -20.0f64..20.0, len in 0.1f64..10.0) {
            let back = coupling_to_velocity(velocity_to_coupling(v, len), len);
            prop_assert!((back - v).abs() <= 1e-14 * v.abs().max(1e-300));
        }
    }
}
