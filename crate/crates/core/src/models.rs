//! Ready-to-integrate setups: Hamiltonian, layout, initial state and
//! standard observables of each model.

use alloc::vec;
use alloc::vec::Vec;

use crate::analytic::gaussian::QuadraticModelSpec;
use crate::error::{Error, Result};
use crate::evolve::{DrivenHamiltonian, Observable, SystemLayout};
use crate::hamiltonian::{
    mirror_free_part, mirror_interaction_part, oscillatory_effective_coupling, rabi_coupling_shape, rabi_free,
    two_mode_hamiltonian, MirrorModelSpec, RabiParams, TwoModeVariant,
};
use crate::qops::{excited_projector, ground_projector, make_number, tensor, Operator, QuantumState};
use crate::trajectory::{coupling_factor, mirror_log_derivative, MirrorProfile, QubitTrajectory};

/// Photon-number tracks are named `n1`, `n2`, ... by mode.
pub fn mode_track_name(mode: usize) -> alloc::string::String {
    alloc::format!("n{}", mode + 1)
}

fn number_observables(dims: &[usize], slots: &[usize]) -> Result<Vec<Observable>> {
    slots
        .iter()
        .enumerate()
        .map(|(i, &slot)| Ok(Observable::new(mode_track_name(i), make_number(dims[slot])?.embed(dims, slot)?)))
        .collect()
}

/// Qubit moving through a single resonator mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitModel {
    pub params: RabiParams,
    pub trajectory: QubitTrajectory,
}

impl QubitModel {
    pub fn new(params: RabiParams, trajectory: QubitTrajectory) -> Result<Self> {
        params.validate()?;
        Ok(Self { params, trajectory })
    }

    /// `ω₀ a†a + (ω_q/2) σ_z + g cos(k x_q(t)) σ_x (a + a†)`.
    pub fn hamiltonian(&self) -> Result<DrivenHamiltonian> {
        let p = self.params;
        let traj = self.trajectory;
        DrivenHamiltonian::new(rabi_free(&p)?)?.with_term(rabi_coupling_shape(p.n_max)?, move |t| {
            p.g * coupling_factor(&traj, p.omega0 * t)
        })
    }

    pub fn layout(&self) -> SystemLayout {
        SystemLayout::qubit_mode(self.params.n_max)
    }

    /// `P_e`, `P_g` and the photon number `n1`.
    pub fn observables(&self) -> Result<Vec<Observable>> {
        let n = self.params.n_max;
        let id = Operator::identity(&[n]);
        let mut obs = vec![
            Observable::new("P_e", tensor(&[excited_projector(), id.clone()])?),
            Observable::new("P_g", tensor(&[ground_projector(), id])?),
        ];
        obs.extend(number_observables(&self.params.dims(), &[1])?);
        Ok(obs)
    }

    /// `|g, 0⟩`.
    pub fn ground_vacuum(&self) -> Result<QuantumState> {
        QuantumState::basis(&self.params.dims(), &[1, 0])
    }

    /// Constant-velocity stand-in for an oscillatory trajectory: velocity
    /// `ω` and coupling `-2 J₁(π/2) g`, keeping only the first harmonic of
    /// the modulation.
    pub fn constant_velocity_equivalent(&self) -> Option<QubitModel> {
        match self.trajectory {
            QubitTrajectory::Oscillatory { omega } => Some(QubitModel {
                params: self.params.with_coupling(oscillatory_effective_coupling(self.params.g)),
                trajectory: QubitTrajectory::ConstantVelocity { x0: 0.0, v: omega },
            }),
            _ => None,
        }
    }
}

/// Two-mode reduction of the contracting cavity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoModeModel {
    pub omega1: f64,
    /// Squeezing strength `Ω`.
    pub omega: f64,
    pub variant: TwoModeVariant,
    /// Fock dimension per mode.
    pub n_max: usize,
}

impl TwoModeModel {
    pub fn hamiltonian(&self) -> Result<DrivenHamiltonian> {
        DrivenHamiltonian::new(two_mode_hamiltonian(self.omega1, self.omega, self.variant, self.n_max)?)
    }

    pub fn layout(&self) -> SystemLayout {
        SystemLayout::modes(2, self.n_max)
    }

    /// `n1` and `n2`.
    pub fn observables(&self) -> Result<Vec<Observable>> {
        let layout = self.layout();
        number_observables(&layout.dims, &layout.modes)
    }

    pub fn vacuum(&self) -> Result<QuantumState> {
        QuantumState::vacuum(&self.layout().dims)
    }

    /// The same model in quadrature form, with decay `kappa` on both modes.
    pub fn quadratic_spec(&self, kappa: f64) -> QuadraticModelSpec {
        QuadraticModelSpec::two_mode(self.omega1, self.omega, self.variant, kappa)
    }
}

/// Truncated multimode cavity with a moving wall.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultimodeModel {
    pub spec: MirrorModelSpec,
    pub profile: MirrorProfile,
}

impl MultimodeModel {
    pub fn new(spec: MirrorModelSpec, profile: MirrorProfile) -> Result<Self> {
        spec.validate()?;
        if spec.variant != TwoModeVariant::Literal {
            return Err(Error::Domain("the multimode model exists in the literal form only".into()));
        }
        if (profile.rest_length() - spec.length).abs() > 1e-12 * spec.length {
            return Err(Error::Domain(alloc::format!(
                "profile rest length {} differs from model length {}",
                profile.rest_length(),
                spec.length
            )));
        }
        Ok(Self { spec, profile })
    }

    /// Checks that the wall stays away from zero length up to `t_final`.
    pub fn check_window(&self, t_final: f64) -> Result<()> {
        self.profile.length_at(t_final)?;
        mirror_log_derivative(&self.profile, t_final)?;
        Ok(())
    }

    /// `Σ πn (n̂_n + ½) / L(t) + (L̇/L) · interaction`, valid on windows
    /// accepted by [`MultimodeModel::check_window`].
    pub fn hamiltonian(&self) -> Result<DrivenHamiltonian> {
        let profile = self.profile;
        let free = mirror_free_part(&self.spec)?;
        let interaction = mirror_interaction_part(&self.spec)?;
        DrivenHamiltonian::new(Operator::zeros(&self.spec.dims()))?
            .with_term(free, move |t| 1.0 / profile.length_at(t).unwrap_or(f64::NAN))?
            .with_term(interaction, move |t| mirror_log_derivative(&profile, t).unwrap_or(f64::NAN))
    }

    pub fn layout(&self) -> SystemLayout {
        SystemLayout::modes(self.spec.n_modes, self.spec.n_max)
    }

    pub fn observables(&self) -> Result<Vec<Observable>> {
        let layout = self.layout();
        number_observables(&layout.dims, &layout.modes)
    }

    pub fn vacuum(&self) -> Result<QuantumState> {
        QuantumState::vacuum(&self.spec.dims())
    }
}
