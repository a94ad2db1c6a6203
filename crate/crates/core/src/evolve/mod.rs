//! Unitary and Lindblad time evolution under driven Hamiltonians.
//!
//! Both integrators use classical fixed-step RK4. The step is the largest
//! value that fits an integer number of times into every grid interval and
//! stays below `1/steps_per_period` of the fastest period, estimated from a
//! row-sum bound on the generator. A fixed step makes every run
//! reproducible bit for bit.

mod series;
mod sparse;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg;
use crate::qops::{self, make_annihilation, make_pauli, sigma_minus, Operator, PauliAxis, QuantumState};
use sparse::{Csr, Family};

pub use series::{observables, TimeSeries};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Unitary runs take steps this many times finer than
/// [`EvolveOptions::steps_per_period`] asks for. RK4 loses norm at a rate
/// proportional to the fifth power of the step, and a state vector is cheap
/// to integrate, so the finer step keeps `‖ψ‖` within `1e-9` over long runs.
pub const UNITARY_REFINEMENT: f64 = 4.0;

/// Real scalar modulation `f(t)` of one Hamiltonian component.
pub type Drive = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// `H(t) = H₀ + Σ_k f_k(t) H_k` with Hermitian `H₀`, `H_k` and real `f_k`,
/// so every sample is Hermitian by construction.
pub struct DrivenHamiltonian {
    static_part: Operator,
    terms: Vec<(Operator, Drive)>,
}

impl fmt::Debug for DrivenHamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DrivenHamiltonian")
            .field("dims", &self.static_part.dims())
            .field("driven_terms", &self.terms.len())
            .finish()
    }
}

fn check_hermitian(op: &Operator) -> Result<()> {
    let deviation = op.hermiticity_deviation();
    if deviation > qops::HERMITIAN_TOL {
        return Err(Error::NonHermitian { deviation });
    }
    Ok(())
}

fn check_dims(expected: &[usize], found: &[usize]) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch {
            expected: expected.iter().product(),
            found: found.iter().product(),
        });
    }
    Ok(())
}

impl DrivenHamiltonian {
    pub fn new(static_part: Operator) -> Result<Self> {
        check_hermitian(&static_part)?;
        Ok(Self { static_part, terms: Vec::new() })
    }

    /// Adds `drive(t) · shape`.
    pub fn with_term<F>(mut self, shape: Operator, drive: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        check_dims(self.static_part.dims(), shape.dims())?;
        check_hermitian(&shape)?;
        self.terms.push((shape, Box::new(drive)));
        Ok(self)
    }

    pub fn dims(&self) -> &[usize] {
        self.static_part.dims()
    }

    pub fn dim(&self) -> usize {
        self.static_part.dim()
    }

    /// Dense sample `H(t)`.
    pub fn at(&self, t: f64) -> Operator {
        self.terms
            .iter()
            .fold(self.static_part.clone(), |acc, (shape, drive)| &acc + &shape.scale(drive(t)))
    }

    fn components(&self) -> Vec<&DMatrix<Complex64>> {
        core::iter::once(self.static_part.matrix()).chain(self.terms.iter().map(|(op, _)| op.matrix())).collect()
    }

    /// `[1, f_1(t), ..., f_n(t)]` into the front of `out`.
    fn coefficients(&self, t: f64, out: &mut [Complex64]) {
        out[0] = ONE;
        for (slot, (_, drive)) in out[1..].iter_mut().zip(&self.terms) {
            *slot = Complex64::new(drive(t), 0.0);
        }
    }

    /// `[1, max_grid |f_1|, ..., max_grid |f_n|]`.
    fn peak_coefficients(&self, t_grid: &[f64]) -> Vec<f64> {
        core::iter::once(1.0)
            .chain(self.terms.iter().map(|(_, drive)| t_grid.iter().map(|&t| drive(t).abs()).fold(0.0, f64::max)))
            .collect()
    }
}

/// Which tensor factor is the qubit and which are bosonic modes.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemLayout {
    pub dims: Vec<usize>,
    pub qubit: Option<usize>,
    pub modes: Vec<usize>,
}

impl SystemLayout {
    /// Qubit in slot 0, one mode of dimension `n_max` in slot 1.
    pub fn qubit_mode(n_max: usize) -> Self {
        Self { dims: vec![2, n_max], qubit: Some(0), modes: vec![1] }
    }

    /// `n_modes` bosonic modes of dimension `n_max` each.
    pub fn modes(n_modes: usize, n_max: usize) -> Self {
        Self { dims: vec![n_max; n_modes], qubit: None, modes: (0..n_modes).collect() }
    }
}

/// Dissipation rates in units of the reference frequency.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct NoiseSpec {
    /// Cavity decay rate, applied to every mode unless `mode_kappas` is set.
    pub kappa: f64,
    /// Qubit relaxation rate, `T₁ = 1/Γ`.
    pub gamma: f64,
    /// Qubit dephasing rate, `T₂ = 1/Γ_φ`.
    pub gamma_phi: f64,
    /// Per-mode decay rates overriding `kappa`, one per mode when present.
    pub mode_kappas: Vec<f64>,
}

impl NoiseSpec {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn validate(&self) -> Result<()> {
        let rates = [self.kappa, self.gamma, self.gamma_phi];
        if rates.iter().chain(&self.mode_kappas).any(|r| !(*r >= 0.0 && r.is_finite())) {
            return Err(Error::Domain("noise rates must be finite and non-negative".into()));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.kappa == 0.0 && self.gamma == 0.0 && self.gamma_phi == 0.0 && self.mode_kappas.iter().all(|k| *k == 0.0)
    }

    pub fn t1(&self) -> Option<f64> {
        (self.gamma > 0.0).then(|| 1.0 / self.gamma)
    }

    pub fn t2(&self) -> Option<f64> {
        (self.gamma_phi > 0.0).then(|| 1.0 / self.gamma_phi)
    }

    /// `√κᵢ aᵢ` per mode, `√Γ σ₋` and `√(Γ_φ/2) σ_z` on the qubit, with
    /// zero-rate channels left out.
    ///
    /// The dephasing normalization makes qubit coherences decay as
    /// `e^{-Γ_φ t}`.
    pub fn collapse_operators(&self, layout: &SystemLayout) -> Result<Vec<Operator>> {
        self.validate()?;
        if !self.mode_kappas.is_empty() && self.mode_kappas.len() != layout.modes.len() {
            return Err(Error::DimensionMismatch { expected: layout.modes.len(), found: self.mode_kappas.len() });
        }
        let mut ops = Vec::new();
        for (i, &slot) in layout.modes.iter().enumerate() {
            let kappa = self.mode_kappas.get(i).copied().unwrap_or(self.kappa);
            if kappa > 0.0 {
                let a = make_annihilation(layout.dims[slot])?.embed(&layout.dims, slot)?;
                ops.push(a.scale(libm::sqrt(kappa)));
            }
        }
        if let Some(slot) = layout.qubit {
            if self.gamma > 0.0 {
                ops.push(sigma_minus().embed(&layout.dims, slot)?.scale(libm::sqrt(self.gamma)));
            }
            if self.gamma_phi > 0.0 {
                let z = make_pauli(PauliAxis::Z).embed(&layout.dims, slot)?;
                ops.push(z.scale(libm::sqrt(0.5 * self.gamma_phi)));
            }
        } else if self.gamma > 0.0 || self.gamma_phi > 0.0 {
            return Err(Error::Domain("qubit noise rates given for a model without a qubit".into()));
        }
        Ok(ops)
    }
}

/// A Hermitian operator recorded as a track named `name`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    pub name: String,
    pub operator: Operator,
}

impl Observable {
    pub fn new(name: impl Into<String>, operator: Operator) -> Self {
        Self { name: name.into(), operator }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    /// Upper bound on the integrator step.
    pub max_step: Option<f64>,
    /// Steps per period of the fastest frequency in the generator.
    pub steps_per_period: f64,
    /// Largest tolerated `|‖ψ‖ - 1|` or `|Tr ρ - 1|` at a sample.
    pub drift_tolerance: f64,
    /// Eigenvalues of `ρ` below `-positivity_floor` are a failure.
    pub positivity_floor: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self { max_step: None, steps_per_period: 50.0, drift_tolerance: 1e-6, positivity_floor: 1e-6 }
    }
}

impl EvolveOptions {
    pub fn with_max_step(self, max_step: f64) -> Self {
        Self { max_step: Some(max_step), ..self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    /// Largest integrator step used.
    pub step: f64,
    /// Total number of RK4 steps.
    pub steps: usize,
    /// Largest `|‖ψ‖ - 1|` (unitary) or `|Tr ρ - 1|` (Lindblad) seen at a
    /// sample. Drift is recorded, never corrected.
    pub max_drift: f64,
    /// Largest anti-Hermitian part removed from `ρ` by symmetrization.
    pub max_symmetrization: f64,
    /// Smallest eigenvalue of the final density matrix.
    pub final_min_eigenvalue: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub series: TimeSeries,
    pub final_state: QuantumState,
    pub diagnostics: Diagnostics,
}

struct Rk4 {
    k1: Vec<Complex64>,
    k2: Vec<Complex64>,
    k3: Vec<Complex64>,
    k4: Vec<Complex64>,
    tmp: Vec<Complex64>,
}

impl Rk4 {
    fn new(len: usize) -> Self {
        let z = vec![ZERO; len];
        Self { k1: z.clone(), k2: z.clone(), k3: z.clone(), k4: z.clone(), tmp: z }
    }

    fn step<F>(&mut self, t: f64, h: f64, y: &mut [Complex64], f: &mut F)
    where
        F: FnMut(f64, &[Complex64], &mut [Complex64]),
    {
        let half = 0.5 * h;
        f(t, y, &mut self.k1);
        axpy_into(&mut self.tmp, y, half, &self.k1);
        f(t + half, &self.tmp, &mut self.k2);
        axpy_into(&mut self.tmp, y, half, &self.k2);
        f(t + half, &self.tmp, &mut self.k3);
        axpy_into(&mut self.tmp, y, h, &self.k3);
        f(t + h, &self.tmp, &mut self.k4);
        let w = h / 6.0;
        for (i, yi) in y.iter_mut().enumerate() {
            *yi += (self.k1[i] + (self.k2[i] + self.k3[i]) * 2.0 + self.k4[i]) * w;
        }
    }
}

/// `out = y + a·k`.
fn axpy_into(out: &mut [Complex64], y: &[Complex64], a: f64, k: &[Complex64]) {
    for ((o, yi), ki) in out.iter_mut().zip(y).zip(k) {
        *o = yi + ki * a;
    }
}

/// Step bound from the spectral-radius estimate `omega_fast`.
fn base_step(omega_fast: f64, opts: &EvolveOptions) -> Result<f64> {
    if !(opts.steps_per_period > 0.0) {
        return Err(Error::Domain("steps_per_period must be positive".into()));
    }
    let mut h = if omega_fast > 0.0 { 2.0 * PI / (opts.steps_per_period * omega_fast) } else { f64::INFINITY };
    if let Some(max) = opts.max_step {
        if !(max > 0.0) {
            return Err(Error::Domain(alloc::format!("max_step must be positive, got {max}")));
        }
        h = h.min(max);
    }
    Ok(h)
}

/// Number of equal substeps covering `dt` with steps no larger than `h`.
fn substeps(dt: f64, h: f64) -> usize {
    if h.is_finite() { libm::ceil(dt / h).max(1.0) as usize } else { 1 }
}

fn check_grid(t_grid: &[f64]) -> Result<()> {
    TimeSeries::new(t_grid.to_vec()).map(|_| ())
}

fn sparse_observables(observables: &[Observable], dims: &[usize]) -> Result<Vec<Csr>> {
    observables
        .iter()
        .map(|o| {
            check_dims(dims, o.operator.dims())?;
            check_hermitian(&o.operator)?;
            Ok(Csr::from_dense(o.operator.matrix()))
        })
        .collect()
}

/// Integrates `i dψ/dt = H(t) ψ` from `psi0` at `t_grid[0]`.
///
/// Records a `norm` track plus one track per observable. The state is never
/// renormalized.
pub fn evolve_unitary(
    h: &DrivenHamiltonian,
    psi0: &QuantumState,
    t_grid: &[f64],
    observables: &[Observable],
    opts: &EvolveOptions,
) -> Result<Evolution> {
    check_grid(t_grid)?;
    check_dims(h.dims(), psi0.dims())?;
    let psi = psi0
        .as_vector()
        .ok_or_else(|| Error::InvalidState("unitary evolution needs a pure state vector".into()))?;
    let obs = sparse_observables(observables, h.dims())?;

    let family = Family::new(&h.components());
    let mut work = family.workspace();
    let mut coeffs = vec![ZERO; family_len(h)];
    let omega_fast = UNITARY_REFINEMENT * family.magnitude_bound(&h.peak_coefficients(t_grid));
    let h_max = base_step(omega_fast, opts)?;

    let mut y: Vec<Complex64> = psi.iter().copied().collect();
    let mut rk = Rk4::new(y.len());
    let mut rhs = |t: f64, x: &[Complex64], out: &mut [Complex64]| {
        h.coefficients(t, &mut coeffs);
        family.assemble(&coeffs, &mut work);
        work.mul_vec(x, out);
        for v in out.iter_mut() {
            *v *= -I;
        }
    };

    let mut norm_track = Vec::with_capacity(t_grid.len());
    let mut tracks: Vec<Vec<f64>> = vec![Vec::with_capacity(t_grid.len()); obs.len()];
    let mut diag = Diagnostics { step: 0.0, steps: 0, max_drift: 0.0, max_symmetrization: 0.0, final_min_eigenvalue: None };
    for (i, &t) in t_grid.iter().enumerate() {
        if i > 0 {
            let t0 = t_grid[i - 1];
            let n = substeps(t - t0, h_max);
            let dt = (t - t0) / n as f64;
            for s in 0..n {
                rk.step(t0 + s as f64 * dt, dt, &mut y, &mut rhs);
            }
            diag.step = diag.step.max(dt);
            diag.steps += n;
        }
        let norm = libm::sqrt(y.iter().map(Complex64::norm_sqr).sum::<f64>());
        let drift = (norm - 1.0).abs();
        diag.max_drift = diag.max_drift.max(drift);
        if !(drift <= opts.drift_tolerance) {
            return Err(Error::IntegrationFailure { time: t, drift });
        }
        norm_track.push(norm);
        for (track, op) in tracks.iter_mut().zip(&obs) {
            track.push(op.quadratic_form(&y).re);
        }
    }

    let mut series = TimeSeries::new(t_grid.to_vec())?;
    series.insert("norm", norm_track)?;
    for (o, track) in observables.iter().zip(tracks) {
        series.insert(&o.name, track)?;
    }
    let final_state = QuantumState::from_vector_unchecked(DVector::from_vec(y), h.dims().to_vec());
    Ok(Evolution { series, final_state, diagnostics: diag })
}

fn family_len(h: &DrivenHamiltonian) -> usize {
    1 + h.terms.len()
}

/// Integrates the Lindblad equation with the collapse set built from
/// `noise` on `layout`.
pub fn evolve_lindblad(
    h: &DrivenHamiltonian,
    rho0: &QuantumState,
    noise: &NoiseSpec,
    layout: &SystemLayout,
    t_grid: &[f64],
    observables: &[Observable],
    opts: &EvolveOptions,
) -> Result<Evolution> {
    check_dims(h.dims(), &layout.dims)?;
    let collapse = noise.collapse_operators(layout)?;
    evolve_lindblad_with(h, rho0, &collapse, t_grid, observables, opts)
}

/// Integrates `dρ/dt = -i[H, ρ] + Σ_k (c_k ρ c_k† - ½{c_k†c_k, ρ})` from
/// `rho0` at `t_grid[0]`.
///
/// Records `trace`, `purity` and one track per observable. `ρ` is made
/// Hermitian after every step and checked for positivity at every sample.
pub fn evolve_lindblad_with(
    h: &DrivenHamiltonian,
    rho0: &QuantumState,
    collapse: &[Operator],
    t_grid: &[f64],
    observables: &[Observable],
    opts: &EvolveOptions,
) -> Result<Evolution> {
    check_grid(t_grid)?;
    check_dims(h.dims(), rho0.dims())?;
    for c in collapse {
        check_dims(h.dims(), c.dims())?;
    }
    let obs = sparse_observables(observables, h.dims())?;
    let d = h.dim();
    let rho = rho0.to_density();
    let rho = rho.as_density().expect("to_density yields a density matrix");

    // H_eff = H(t) - (i/2) Σ c†c shares one pattern with the Hamiltonian
    let mut decay = DMatrix::<Complex64>::zeros(d, d);
    for c in collapse {
        decay += c.matrix().adjoint() * c.matrix();
    }
    decay *= Complex64::new(0.0, -0.5);
    let mut mats = h.components();
    mats.push(&decay);
    let family = Family::new(&mats);
    let mut work = family.workspace();
    let n_terms = family_len(h);
    let mut coeffs = vec![ZERO; n_terms + 1];
    coeffs[n_terms] = ONE;
    let jumps: Vec<Csr> = collapse.iter().map(|c| Csr::from_dense(c.matrix())).collect();

    // Coherent frequencies of the Lindbladian are differences of energies,
    // bounded by the spread of H; decay adds the collapse rates on top.
    let omega_fast = Family::new(&h.components()).spread_bound(&h.peak_coefficients(t_grid))
        + jumps.iter().map(|c| c.row_sum_bound() * c.row_sum_bound()).sum::<f64>();
    let h_max = base_step(omega_fast, opts)?;

    let mut y: Vec<Complex64> = rho.as_slice().to_vec();
    let mut rk = Rk4::new(y.len());
    let mut heff_rho = vec![ZERO; d * d];
    let mut c_rho = vec![ZERO; d * d];
    let mut rhs = |t: f64, x: &[Complex64], out: &mut [Complex64]| {
        h.coefficients(t, &mut coeffs[..n_terms]);
        family.assemble(&coeffs, &mut work);
        work.mul_dense(x, &mut heff_rho);
        // -i H_eff ρ + (-i H_eff ρ)†
        for j in 0..d {
            for r in 0..d {
                out[r + j * d] = -I * heff_rho[r + j * d] + I * heff_rho[j + r * d].conj();
            }
        }
        // c ρ c† = c (c ρ)† for Hermitian ρ
        for c in &jumps {
            c.mul_dense(x, &mut c_rho);
            c.add_mul_adjoint(&c_rho, out);
        }
    };

    let mut trace_track = Vec::with_capacity(t_grid.len());
    let mut purity_track = Vec::with_capacity(t_grid.len());
    let mut tracks: Vec<Vec<f64>> = vec![Vec::with_capacity(t_grid.len()); obs.len()];
    let mut diag = Diagnostics { step: 0.0, steps: 0, max_drift: 0.0, max_symmetrization: 0.0, final_min_eigenvalue: None };
    for (i, &t) in t_grid.iter().enumerate() {
        if i > 0 {
            let t0 = t_grid[i - 1];
            let n = substeps(t - t0, h_max);
            let dt = (t - t0) / n as f64;
            for s in 0..n {
                rk.step(t0 + s as f64 * dt, dt, &mut y, &mut rhs);
                diag.max_symmetrization = diag.max_symmetrization.max(symmetrize(&mut y, d));
            }
            diag.step = diag.step.max(dt);
            diag.steps += n;
        }
        let trace: f64 = (0..d).map(|k| y[k + k * d].re).sum();
        let drift = (trace - 1.0).abs();
        diag.max_drift = diag.max_drift.max(drift);
        if !(drift <= opts.drift_tolerance) {
            return Err(Error::IntegrationFailure { time: t, drift });
        }
        let m = DMatrix::from_column_slice(d, d, &y);
        if !linalg::is_positive_above(&m, -opts.positivity_floor) {
            return Err(Error::PositivityFailure { time: t });
        }
        trace_track.push(trace);
        purity_track.push(y.iter().map(Complex64::norm_sqr).sum());
        for (track, op) in tracks.iter_mut().zip(&obs) {
            track.push(op.trace_product(&y).re);
        }
    }

    let mut series = TimeSeries::new(t_grid.to_vec())?;
    series.insert("trace", trace_track)?;
    series.insert("purity", purity_track)?;
    for (o, track) in observables.iter().zip(tracks) {
        series.insert(&o.name, track)?;
    }
    let m = DMatrix::from_vec(d, d, y);
    diag.final_min_eigenvalue = Some(linalg::min_hermitian_eigenvalue(&m));
    let final_state = QuantumState::from_density_unchecked(m, h.dims().to_vec());
    Ok(Evolution { series, final_state, diagnostics: diag })
}

/// Replaces `ρ` by `(ρ + ρ†)/2`, returning the largest `|ρ - ρ†|` entry.
fn symmetrize(y: &mut [Complex64], d: usize) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..d {
        worst = worst.max(2.0 * y[j + j * d].im.abs());
        y[j + j * d].im = 0.0;
        for r in (j + 1)..d {
            let (a, b) = (y[r + j * d], y[j + r * d]);
            worst = worst.max((a - b.conj()).norm());
            let avg = (a + b.conj()) * 0.5;
            y[r + j * d] = avg;
            y[j + r * d] = avg.conj();
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qops::make_number;

    #[test]
    fn driven_sample_is_sum_of_terms() {
        let n = make_number(3).unwrap();
        let a = make_annihilation(3).unwrap();
        let x = &a + &a.adjoint();
        let h = DrivenHamiltonian::new(n.clone()).unwrap().with_term(x.clone(), |t| 2.0 * t).unwrap();
        let expected = &n + &x.scale(3.0);
        assert!(h.at(1.5).max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn rejects_non_hermitian_components() {
        let a = make_annihilation(3).unwrap();
        assert!(matches!(DrivenHamiltonian::new(a.clone()), Err(Error::NonHermitian { .. })));
        let n = make_number(3).unwrap();
        let h = DrivenHamiltonian::new(n).unwrap();
        assert!(matches!(h.with_term(a, |_| 1.0), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn collapse_set_skips_zero_rates() {
        let layout = SystemLayout::qubit_mode(4);
        let noise = NoiseSpec { kappa: 0.1, gamma: 0.0, gamma_phi: 0.2, mode_kappas: Vec::new() };
        let ops = noise.collapse_operators(&layout).unwrap();
        assert_eq!(ops.len(), 2);
        assert!(NoiseSpec::none().collapse_operators(&layout).unwrap().is_empty());
        let bad = NoiseSpec { gamma: 0.1, ..NoiseSpec::none() };
        assert!(bad.collapse_operators(&SystemLayout::modes(2, 3)).is_err());
        let bad = NoiseSpec { kappa: -1.0, ..NoiseSpec::none() };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn symmetrize_reports_deviation() {
        let mut y = vec![ONE, Complex64::new(0.0, 0.1), Complex64::new(0.0, 0.3), ONE];
        let dev = symmetrize(&mut y, 2);
        assert!((dev - 0.4).abs() < 1e-15);
        assert_eq!(y[2], y[1].conj());
    }

    #[test]
    fn substep_count_covers_interval() {
        assert_eq!(substeps(1.0, 0.3), 4);
        assert_eq!(substeps(1.0, 1.0), 1);
        assert_eq!(substeps(1.0, f64::INFINITY), 1);
    }
}
