//! Scenario files: TOML schema, validation and the normalized dump.
//!
//! Parsing goes through all-optional raw tables so that every missing field
//! can be reported in one error. Validation fills defaults, so dumping a
//! parsed scenario and parsing the dump again gives back the same value.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use superlumen_core::evolve::NoiseSpec;
use superlumen_core::hamiltonian::{velocity_to_coupling, MirrorModelSpec, RabiParams, TwoModeVariant};
use superlumen_core::models::mode_track_name;
use superlumen_core::trajectory::{MirrorProfile, QubitTrajectory};

use crate::error::{Result, RunnerError};

/// Default Fock dimension of the resonator in the qubit model.
pub const DEFAULT_QUBIT_N_MAX: usize = 15;
/// Default Fock dimension per mode in the mirror models.
pub const DEFAULT_MIRROR_N_MAX: usize = 25;
pub const DEFAULT_SAMPLES: usize = 1001;
pub const DEFAULT_STEPS_PER_PERIOD: f64 = 50.0;
/// Largest Hilbert dimension accepted for density-matrix runs.
pub const MAX_LINDBLAD_DIM: usize = 1024;
/// Largest Hilbert dimension accepted for state-vector runs.
pub const MAX_UNITARY_DIM: usize = 1 << 16;
const MAX_SAMPLES: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    QubitRabi,
    MirrorTwoMode,
    MirrorMultimode,
}

impl ModelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ModelKind::QubitRabi => "qubit-rabi",
            ModelKind::MirrorTwoMode => "mirror-two-mode",
            ModelKind::MirrorMultimode => "mirror-multimode",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [ModelKind::QubitRabi, ModelKind::MirrorTwoMode, ModelKind::MirrorMultimode]
            .into_iter()
            .find(|k| k.as_str() == s)
    }
}

/// Integrator requested in the scenario; `Auto` picks one from the model
/// and the noise settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Auto,
    Unitary,
    Lindblad,
    Gaussian,
}

impl SolverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::Auto => "auto",
            SolverKind::Unitary => "unitary",
            SolverKind::Lindblad => "lindblad",
            SolverKind::Gaussian => "gaussian",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        [SolverKind::Auto, SolverKind::Unitary, SolverKind::Lindblad, SolverKind::Gaussian]
            .into_iter()
            .find(|k| k.as_str() == s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverSettings {
    pub kind: SolverKind,
    pub max_step: Option<f64>,
    pub steps_per_period: f64,
    /// Fock truncations for an extra density-matrix check of a Gaussian run.
    pub cross_check_n_max: Vec<usize>,
}

/// How the two-mode squeezing strength is given.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    /// Wall velocity in units of `c`.
    Velocity(f64),
    /// Squeezing strength `Ω` directly.
    Strength(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ModelConfig {
    QubitRabi {
        params: RabiParams,
        trajectory: QubitTrajectory,
        /// Also run the constant-velocity stand-in of an oscillatory trajectory.
        compare_constant_velocity: bool,
    },
    MirrorTwoMode {
        variant: TwoModeVariant,
        length: f64,
        coupling: Coupling,
        n_max: usize,
    },
    MirrorMultimode {
        spec: MirrorModelSpec,
        profile: MirrorProfile,
    },
}

impl ModelConfig {
    pub fn kind(&self) -> ModelKind {
        match self {
            ModelConfig::QubitRabi { .. } => ModelKind::QubitRabi,
            ModelConfig::MirrorTwoMode { .. } => ModelKind::MirrorTwoMode,
            ModelConfig::MirrorMultimode { .. } => ModelKind::MirrorMultimode,
        }
    }

    /// Hilbert dimension of the Fock-space description.
    pub fn dimension(&self) -> usize {
        match self {
            ModelConfig::QubitRabi { params, .. } => 2 * params.n_max,
            ModelConfig::MirrorTwoMode { n_max, .. } => n_max * n_max,
            ModelConfig::MirrorMultimode { spec, .. } => spec.dims().iter().product(),
        }
    }

    fn mode_count(&self) -> usize {
        match self {
            ModelConfig::QubitRabi { .. } => 1,
            ModelConfig::MirrorTwoMode { .. } => 2,
            ModelConfig::MirrorMultimode { spec, .. } => spec.n_modes,
        }
    }
}

/// Squeezing strength and fundamental frequency of a two-mode setup.
pub fn two_mode_parameters(length: f64, coupling: Coupling) -> (f64, f64) {
    let omega1 = PI / length;
    let omega = match coupling {
        Coupling::Velocity(v) => velocity_to_coupling(v, length),
        Coupling::Strength(omega) => omega,
    };
    (omega1, omega)
}

/// A validated scenario with all defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Run identifier, also the stem of the output files.
    pub name: String,
    pub preset: Option<String>,
    pub t_final: f64,
    pub samples: usize,
    pub solver: SolverSettings,
    pub model: ModelConfig,
    pub noise: NoiseSpec,
    /// Tracks written to the output table, in column order.
    pub observables: Vec<String>,
}

impl Scenario {
    /// The integrator actually used: never `Auto`.
    pub fn solver(&self) -> SolverKind {
        resolve_solver(self.solver.kind, self.model.kind(), &self.noise)
    }

    /// Uniform sample times on `[0, t_final]`.
    pub fn time_grid(&self) -> Vec<f64> {
        let last = (self.samples - 1) as f64;
        (0..self.samples).map(|i| self.t_final * i as f64 / last).collect()
    }

    /// Normalized TOML: every field explicit, defaults included.
    pub fn to_toml(&self) -> String {
        toml::to_string(&self.to_raw()).expect("scenario tables always serialize")
    }

    /// Copy of the scenario with the numeric field at dotted path `axis`
    /// (for example `trajectory.omega`) set to `value`.
    pub fn with_axis(&self, axis: &str, value: f64) -> Result<Scenario> {
        let mut doc: toml::Table = toml::from_str(&self.to_toml()).expect("normalized dump parses");
        let mut parts = axis.split('.').peekable();
        let mut table = &mut doc;
        let slot = loop {
            let key = parts.next().filter(|k| !k.is_empty()).ok_or_else(|| unknown_axis(axis))?;
            if parts.peek().is_none() {
                break table.get_mut(key).ok_or_else(|| unknown_axis(axis))?;
            }
            table = table.get_mut(key).and_then(toml::Value::as_table_mut).ok_or_else(|| unknown_axis(axis))?;
        };
        *slot = match slot {
            toml::Value::Float(_) => toml::Value::Float(value),
            toml::Value::Integer(_) if value.fract() == 0.0 && value.abs() < 9.0e15 => {
                toml::Value::Integer(value as i64)
            }
            toml::Value::Integer(_) => {
                return Err(RunnerError::config(format!("axis `{axis}` takes integers, got {value}")))
            }
            _ => return Err(RunnerError::config(format!("axis `{axis}` is not numeric"))),
        };
        parse_scenario(&toml::to_string(&doc).expect("table serializes"))
    }

    fn to_raw(&self) -> RawScenario {
        let mut raw = RawScenario {
            name: Some(self.name.clone()),
            model: Some(self.model.kind().as_str().into()),
            preset: self.preset.clone(),
            time: Some(RawTime { t_final: Some(self.t_final), samples: Some(self.samples) }),
            solver: Some(RawSolver {
                kind: Some(self.solver.kind.as_str().into()),
                max_step: self.solver.max_step,
                steps_per_period: Some(self.solver.steps_per_period),
                cross_check_n_max: (!self.solver.cross_check_n_max.is_empty())
                    .then(|| self.solver.cross_check_n_max.clone()),
            }),
            output: Some(RawOutput { observables: Some(self.observables.clone()) }),
            ..RawScenario::default()
        };
        let mode_kappas = (!self.noise.mode_kappas.is_empty()).then(|| self.noise.mode_kappas.clone());
        match &self.model {
            ModelConfig::QubitRabi { params, trajectory, compare_constant_velocity } => {
                raw.qubit = Some(RawQubit {
                    omega0: Some(params.omega0),
                    omega_q: Some(params.omega_q),
                    g: Some(params.g),
                    n_max: Some(params.n_max),
                });
                let mut t = RawTrajectory::default();
                match *trajectory {
                    QubitTrajectory::Static { x0 } => {
                        t.kind = Some("static".into());
                        t.x0 = Some(x0);
                    }
                    QubitTrajectory::ConstantVelocity { x0, v } => {
                        t.kind = Some("constant-velocity".into());
                        t.x0 = Some(x0);
                        t.v = Some(v);
                    }
                    QubitTrajectory::Oscillatory { omega } => {
                        t.kind = Some("oscillatory".into());
                        t.omega = Some(omega);
                        t.compare_constant_velocity = Some(*compare_constant_velocity);
                    }
                }
                raw.trajectory = Some(t);
                raw.noise = Some(RawNoise {
                    kappa: Some(self.noise.kappa),
                    gamma: Some(self.noise.gamma),
                    gamma_phi: Some(self.noise.gamma_phi),
                    mode_kappas,
                });
            }
            ModelConfig::MirrorTwoMode { variant, length, coupling, n_max } => {
                let (v, omega) = match *coupling {
                    Coupling::Velocity(v) => (Some(v), None),
                    Coupling::Strength(o) => (None, Some(o)),
                };
                raw.mirror = Some(RawMirror {
                    variant: Some(variant_name(*variant).into()),
                    length: Some(*length),
                    v,
                    omega,
                    n_modes: None,
                    n_max: Some(*n_max),
                });
                raw.noise = Some(RawNoise { kappa: Some(self.noise.kappa), mode_kappas, ..RawNoise::default() });
            }
            ModelConfig::MirrorMultimode { spec, profile } => {
                raw.mirror = Some(RawMirror {
                    length: Some(spec.length),
                    n_modes: Some(spec.n_modes),
                    n_max: Some(spec.n_max),
                    ..RawMirror::default()
                });
                let mut p = RawProfile::default();
                match *profile {
                    MirrorProfile::Static { .. } => p.kind = Some("static".into()),
                    MirrorProfile::Linear { v, short_time, .. } => {
                        p.kind = Some("linear".into());
                        p.v = Some(v);
                        p.short_time = Some(short_time);
                    }
                    MirrorProfile::DceSinusoidal { delta, omega_d, .. } => {
                        p.kind = Some("dce".into());
                        p.delta = Some(delta);
                        p.omega_d = Some(omega_d);
                    }
                }
                raw.profile = Some(p);
                raw.noise = Some(RawNoise { kappa: Some(self.noise.kappa), mode_kappas, ..RawNoise::default() });
            }
        }
        raw
    }
}

fn unknown_axis(axis: &str) -> RunnerError {
    RunnerError::config(format!("axis `{axis}` does not name a field of the scenario"))
}

fn variant_name(v: TwoModeVariant) -> &'static str {
    match v {
        TwoModeVariant::Literal => "literal",
        TwoModeVariant::DickeForm => "dicke-form",
    }
}

fn resolve_solver(kind: SolverKind, model: ModelKind, noise: &NoiseSpec) -> SolverKind {
    match (kind, model) {
        (SolverKind::Auto, ModelKind::MirrorTwoMode) => SolverKind::Gaussian,
        (SolverKind::Auto, _) if noise.is_zero() => SolverKind::Unitary,
        (SolverKind::Auto, _) => SolverKind::Lindblad,
        (k, _) => k,
    }
}

/// Tracks a run of this model and solver can produce.
pub fn available_tracks(model: &ModelConfig, solver: SolverKind) -> Vec<String> {
    let mut names: Vec<String> = match model {
        ModelConfig::QubitRabi { .. } => vec!["P_e".into(), "P_g".into()],
        _ => Vec::new(),
    };
    names.extend((0..model.mode_count()).map(mode_track_name));
    names.push("n_total".into());
    match solver {
        SolverKind::Unitary => names.extend(["norm".into(), "trace".into()]),
        SolverKind::Lindblad => names.extend(["trace".into(), "purity".into()]),
        SolverKind::Gaussian | SolverKind::Auto => {}
    }
    names
}

/// Tracks written when the scenario does not list any.
pub fn default_tracks(model: &ModelConfig, solver: SolverKind) -> Vec<String> {
    let mut names: Vec<String> = match model {
        ModelConfig::QubitRabi { .. } => vec!["P_e".into(), "P_g".into(), "n1".into()],
        _ => {
            let mut n: Vec<String> = (0..model.mode_count()).map(mode_track_name).collect();
            n.push("n_total".into());
            n
        }
    };
    match solver {
        SolverKind::Unitary => names.push("norm".into()),
        SolverKind::Lindblad => names.extend(["trace".into(), "purity".into()]),
        SolverKind::Gaussian | SolverKind::Auto => {}
    }
    names
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    model: Option<String>,
    preset: Option<String>,
    time: Option<RawTime>,
    solver: Option<RawSolver>,
    qubit: Option<RawQubit>,
    trajectory: Option<RawTrajectory>,
    mirror: Option<RawMirror>,
    profile: Option<RawProfile>,
    noise: Option<RawNoise>,
    output: Option<RawOutput>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTime {
    t_final: Option<f64>,
    samples: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    kind: Option<String>,
    max_step: Option<f64>,
    steps_per_period: Option<f64>,
    cross_check_n_max: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQubit {
    omega0: Option<f64>,
    omega_q: Option<f64>,
    g: Option<f64>,
    n_max: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTrajectory {
    kind: Option<String>,
    x0: Option<f64>,
    v: Option<f64>,
    omega: Option<f64>,
    compare_constant_velocity: Option<bool>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMirror {
    variant: Option<String>,
    length: Option<f64>,
    v: Option<f64>,
    omega: Option<f64>,
    n_modes: Option<usize>,
    n_max: Option<usize>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProfile {
    kind: Option<String>,
    v: Option<f64>,
    short_time: Option<bool>,
    delta: Option<f64>,
    omega_d: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNoise {
    kappa: Option<f64>,
    gamma: Option<f64>,
    gamma_phi: Option<f64>,
    mode_kappas: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    observables: Option<Vec<String>>,
}

/// Collects missing fields and violated bounds so that one error can list
/// them all.
#[derive(Default)]
struct Checker {
    missing: Vec<String>,
    problems: Vec<String>,
}

impl Checker {
    fn require<T: Clone>(&mut self, value: &Option<T>, path: &str) -> Option<T> {
        if value.is_none() {
            self.missing.push(path.into());
        }
        value.clone()
    }

    fn reject<T>(&mut self, value: &Option<T>, path: &str, context: &str) {
        if value.is_some() {
            self.problems.push(format!("{path} does not apply to {context}"));
        }
    }

    fn bound(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.problems.push(msg());
        }
    }

    fn finite(&mut self, value: Option<f64>, path: &str) {
        if let Some(x) = value {
            self.bound(x.is_finite(), || format!("{path} = {x} must be finite"));
        }
    }

    fn finish(self) -> Result<()> {
        let mut parts = Vec::new();
        match self.missing.len() {
            0 => {}
            1 => parts.push(format!("missing required field {}", self.missing[0])),
            _ => parts.push(format!("missing required fields {}", self.missing.join(", "))),
        }
        parts.extend(self.problems);
        if parts.is_empty() {
            Ok(())
        } else {
            Err(RunnerError::Config(parts.join("; ")))
        }
    }
}

/// Parses and validates a scenario document.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let raw: RawScenario = toml::from_str(text).map_err(|e| RunnerError::config(e.message().to_string()))?;
    let mut ck = Checker::default();

    let name = raw.name.clone().unwrap_or_else(|| "run".into());
    ck.bound(
        !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || "._-".contains(c)),
        || format!("name `{name}` must be non-empty and use only ASCII letters, digits, `.`, `_` or `-`"),
    );

    let model_kind = match ck.require(&raw.model, "model") {
        Some(m) => match ModelKind::parse(&m) {
            Some(k) => Some(k),
            None => {
                ck.problems.push(format!(
                    "model `{m}` is not one of qubit-rabi, mirror-two-mode, mirror-multimode"
                ));
                None
            }
        },
        None => None,
    };

    let time = raw.time.clone().unwrap_or_default();
    let t_final = ck.require(&time.t_final, "time.t_final");
    ck.bound(t_final.map_or(true, |t| t > 0.0 && t.is_finite()), || {
        format!("time.t_final = {} violates t_final > 0", t_final.unwrap_or_default())
    });
    let samples = time.samples.unwrap_or(DEFAULT_SAMPLES);
    ck.bound(samples >= 2, || format!("time.samples = {samples} violates samples >= 2"));
    ck.bound(samples <= MAX_SAMPLES, || format!("time.samples = {samples} violates samples <= {MAX_SAMPLES}"));

    let rs = raw.solver.clone().unwrap_or_default();
    let solver_kind = match rs.kind.as_deref() {
        None => SolverKind::Auto,
        Some(s) => SolverKind::parse(s).unwrap_or_else(|| {
            ck.problems.push(format!("solver.kind `{s}` is not one of auto, unitary, lindblad, gaussian"));
            SolverKind::Auto
        }),
    };
    if let Some(h) = rs.max_step {
        ck.bound(h > 0.0 && h.is_finite(), || format!("solver.max_step = {h} violates max_step > 0"));
    }
    let steps_per_period = rs.steps_per_period.unwrap_or(DEFAULT_STEPS_PER_PERIOD);
    ck.bound(steps_per_period > 0.0 && steps_per_period.is_finite(), || {
        format!("solver.steps_per_period = {steps_per_period} violates steps_per_period > 0")
    });
    let cross_check_n_max = rs.cross_check_n_max.clone().unwrap_or_default();
    for &n in &cross_check_n_max {
        ck.bound(n >= 2, || format!("solver.cross_check_n_max entry {n} violates n_max >= 2"));
    }

    let noise_raw = raw.noise.clone().unwrap_or_default();
    let noise = NoiseSpec {
        kappa: noise_raw.kappa.unwrap_or(0.0),
        gamma: noise_raw.gamma.unwrap_or(0.0),
        gamma_phi: noise_raw.gamma_phi.unwrap_or(0.0),
        mode_kappas: noise_raw.mode_kappas.clone().unwrap_or_default(),
    };
    for (path, x) in [("noise.kappa", noise.kappa), ("noise.gamma", noise.gamma), ("noise.gamma_phi", noise.gamma_phi)]
        .into_iter()
        .chain(noise.mode_kappas.iter().map(|&k| ("noise.mode_kappas", k)))
    {
        ck.bound(x >= 0.0 && x.is_finite(), || format!("{path} = {x} violates rate >= 0"));
    }

    let model = match model_kind {
        Some(ModelKind::QubitRabi) => qubit_model(&raw, &mut ck),
        Some(ModelKind::MirrorTwoMode) => two_mode_model(&raw, &mut ck),
        Some(ModelKind::MirrorMultimode) => multimode_model(&raw, &mut ck),
        None => None,
    };

    if let Some(model) = &model {
        let kind = model.kind();
        if kind != ModelKind::QubitRabi {
            ck.reject(&noise_raw.gamma, "noise.gamma", "a model without a qubit");
            ck.reject(&noise_raw.gamma_phi, "noise.gamma_phi", "a model without a qubit");
        }
        ck.bound(noise.mode_kappas.is_empty() || noise.mode_kappas.len() == model.mode_count(), || {
            format!(
                "noise.mode_kappas has {} entries but the model has {} modes",
                noise.mode_kappas.len(),
                model.mode_count()
            )
        });
        if !cross_check_n_max.is_empty() {
            ck.bound(kind == ModelKind::MirrorTwoMode && resolve_solver(solver_kind, kind, &noise) == SolverKind::Gaussian, || {
                "solver.cross_check_n_max applies to Gaussian mirror-two-mode runs only".into()
            });
        }
    }

    let solver = SolverSettings { kind: solver_kind, max_step: rs.max_step, steps_per_period, cross_check_n_max };
    let observables = match (&model, ck.missing.is_empty() && ck.problems.is_empty()) {
        (Some(model), true) => check_solver_and_tracks(model, &solver, &noise, &raw, &mut ck),
        _ => Vec::new(),
    };

    ck.finish()?;
    Ok(Scenario {
        name,
        preset: raw.preset,
        t_final: t_final.expect("checked"),
        samples,
        solver,
        model: model.expect("checked"),
        noise,
        observables,
    })
}

fn check_solver_and_tracks(
    model: &ModelConfig,
    solver: &SolverSettings,
    noise: &NoiseSpec,
    raw: &RawScenario,
    ck: &mut Checker,
) -> Vec<String> {
    let kind = model.kind();
    let resolved = resolve_solver(solver.kind, kind, noise);
    match resolved {
        SolverKind::Gaussian => ck.bound(kind == ModelKind::MirrorTwoMode, || {
            format!("solver.kind = gaussian applies to mirror-two-mode only, not {}", kind.as_str())
        }),
        SolverKind::Unitary => {
            ck.bound(noise.is_zero(), || {
                "solver.kind = unitary requires all noise rates to be zero; use lindblad".into()
            });
            ck.bound(model.dimension() <= MAX_UNITARY_DIM, || {
                format!("Hilbert dimension {} violates dimension <= {MAX_UNITARY_DIM}", model.dimension())
            });
        }
        SolverKind::Lindblad => ck.bound(model.dimension() <= MAX_LINDBLAD_DIM, || {
            format!(
                "Hilbert dimension {} violates dimension <= {MAX_LINDBLAD_DIM} for lindblad runs",
                model.dimension()
            )
        }),
        SolverKind::Auto => unreachable!("resolved solver is never auto"),
    }
    for &n in &solver.cross_check_n_max {
        ck.bound(n * n <= MAX_LINDBLAD_DIM, || {
            format!("solver.cross_check_n_max entry {n} violates n_max^2 <= {MAX_LINDBLAD_DIM}")
        });
    }
    let available = available_tracks(model, resolved);
    match raw.output.as_ref().and_then(|o| o.observables.clone()) {
        None => default_tracks(model, resolved),
        Some(list) => {
            ck.bound(!list.is_empty(), || "output.observables must name at least one track".into());
            for name in &list {
                ck.bound(available.contains(name), || {
                    format!("output.observables: unknown track `{name}` (available: {})", available.join(", "))
                });
                ck.bound(list.iter().filter(|n| *n == name).count() == 1, || {
                    format!("output.observables lists `{name}` more than once")
                });
            }
            list
        }
    }
}

fn qubit_model(raw: &RawScenario, ck: &mut Checker) -> Option<ModelConfig> {
    let ctx = "model qubit-rabi";
    ck.reject(&raw.mirror, "[mirror]", ctx);
    ck.reject(&raw.profile, "[profile]", ctx);
    let q = raw.qubit.clone().unwrap_or_default();
    if raw.qubit.is_none() {
        ck.missing.push("[qubit]".into());
    }
    let omega0 = q.omega0.unwrap_or(1.0);
    let omega_q = ck.require(&q.omega_q, "qubit.omega_q");
    let g = ck.require(&q.g, "qubit.g");
    let n_max = q.n_max.unwrap_or(DEFAULT_QUBIT_N_MAX);
    ck.bound(omega0 > 0.0 && omega0.is_finite(), || format!("qubit.omega0 = {omega0} violates omega0 > 0"));
    ck.finite(omega_q, "qubit.omega_q");
    if let Some(g) = g {
        ck.bound(g.abs() < omega0, || format!("qubit.g = {g} violates |g| < omega0 = {omega0}"));
    }
    ck.bound(n_max >= 2, || format!("qubit.n_max = {n_max} violates n_max >= 2"));

    let t = raw.trajectory.clone().unwrap_or_default();
    if raw.trajectory.is_none() {
        ck.missing.push("[trajectory]".into());
    }
    let trajectory = match ck.require(&t.kind, "trajectory.kind").as_deref() {
        Some("static") => {
            let ctx = "trajectory kind static";
            ck.reject(&t.v, "trajectory.v", ctx);
            ck.reject(&t.omega, "trajectory.omega", ctx);
            ck.reject(&t.compare_constant_velocity, "trajectory.compare_constant_velocity", ctx);
            ck.finite(t.x0, "trajectory.x0");
            Some(QubitTrajectory::Static { x0: t.x0.unwrap_or(0.0) })
        }
        Some("constant-velocity") => {
            let ctx = "trajectory kind constant-velocity";
            ck.reject(&t.omega, "trajectory.omega", ctx);
            ck.reject(&t.compare_constant_velocity, "trajectory.compare_constant_velocity", ctx);
            let v = ck.require(&t.v, "trajectory.v");
            ck.finite(v, "trajectory.v");
            ck.finite(t.x0, "trajectory.x0");
            v.map(|v| QubitTrajectory::ConstantVelocity { x0: t.x0.unwrap_or(0.0), v })
        }
        Some("oscillatory") => {
            let ctx = "trajectory kind oscillatory";
            ck.reject(&t.v, "trajectory.v", ctx);
            ck.reject(&t.x0, "trajectory.x0", ctx);
            let omega = ck.require(&t.omega, "trajectory.omega");
            if let Some(w) = omega {
                ck.bound(w > 0.0 && w.is_finite(), || format!("trajectory.omega = {w} violates omega > 0"));
            }
            omega.map(|omega| QubitTrajectory::Oscillatory { omega })
        }
        Some(other) => {
            ck.problems.push(format!(
                "trajectory.kind `{other}` is not one of static, constant-velocity, oscillatory"
            ));
            None
        }
        None => None,
    };
    let params = RabiParams { omega0, omega_q: omega_q?, g: g?, n_max };
    Some(ModelConfig::QubitRabi {
        params,
        trajectory: trajectory?,
        compare_constant_velocity: t.compare_constant_velocity.unwrap_or(false),
    })
}

fn check_mirror_common(m: &RawMirror, ck: &mut Checker) -> (f64, usize) {
    let length = m.length.unwrap_or(PI);
    let n_max = m.n_max.unwrap_or(DEFAULT_MIRROR_N_MAX);
    ck.bound(length > 0.0 && length.is_finite(), || format!("mirror.length = {length} violates length > 0"));
    ck.bound(n_max >= 2, || format!("mirror.n_max = {n_max} violates n_max >= 2"));
    (length, n_max)
}

fn two_mode_model(raw: &RawScenario, ck: &mut Checker) -> Option<ModelConfig> {
    let ctx = "model mirror-two-mode";
    ck.reject(&raw.qubit, "[qubit]", ctx);
    ck.reject(&raw.trajectory, "[trajectory]", ctx);
    ck.reject(&raw.profile, "[profile]", ctx);
    let m = raw.mirror.clone().unwrap_or_default();
    if raw.mirror.is_none() {
        ck.missing.push("[mirror]".into());
    }
    ck.reject(&m.n_modes, "mirror.n_modes", ctx);
    let (length, n_max) = check_mirror_common(&m, ck);
    let variant = match m.variant.as_deref().unwrap_or("dicke-form") {
        "dicke-form" => Some(TwoModeVariant::DickeForm),
        "literal" => Some(TwoModeVariant::Literal),
        other => {
            ck.problems.push(format!("mirror.variant `{other}` is not one of dicke-form, literal"));
            None
        }
    };
    let coupling = match (m.v, m.omega) {
        (Some(v), None) => {
            ck.bound(v >= 0.0 && v.is_finite(), || format!("mirror.v = {v} violates v >= 0"));
            Some(Coupling::Velocity(v))
        }
        (None, Some(o)) => {
            ck.bound(o >= 0.0 && o.is_finite(), || format!("mirror.omega = {o} violates omega >= 0"));
            Some(Coupling::Strength(o))
        }
        (Some(_), Some(_)) => {
            ck.problems.push("mirror.v and mirror.omega are alternatives; give only one".into());
            None
        }
        (None, None) => {
            ck.missing.push("mirror.v (or mirror.omega)".into());
            None
        }
    };
    Some(ModelConfig::MirrorTwoMode { variant: variant?, length, coupling: coupling?, n_max })
}

fn multimode_model(raw: &RawScenario, ck: &mut Checker) -> Option<ModelConfig> {
    let ctx = "model mirror-multimode";
    ck.reject(&raw.qubit, "[qubit]", ctx);
    ck.reject(&raw.trajectory, "[trajectory]", ctx);
    let m = raw.mirror.clone().unwrap_or_default();
    if raw.mirror.is_none() {
        ck.missing.push("[mirror]".into());
    }
    ck.reject(&m.v, "mirror.v", ctx);
    ck.reject(&m.omega, "mirror.omega", ctx);
    ck.bound(m.variant.as_deref().map_or(true, |v| v == "literal"), || {
        "mirror.variant must be literal for mirror-multimode".into()
    });
    let (length, n_max) = check_mirror_common(&m, ck);
    let n_modes = m.n_modes.unwrap_or(2);
    let spec = MirrorModelSpec { n_modes, length, variant: TwoModeVariant::Literal, omega: 0.0, n_max };
    if let Err(e) = spec.validate() {
        ck.problems.push(format!("[mirror]: {e}"));
    }

    let p = raw.profile.clone().unwrap_or_default();
    if raw.profile.is_none() {
        ck.missing.push("[profile]".into());
    }
    let profile = match ck.require(&p.kind, "profile.kind").as_deref() {
        Some("static") => {
            let ctx = "profile kind static";
            ck.reject(&p.v, "profile.v", ctx);
            ck.reject(&p.short_time, "profile.short_time", ctx);
            ck.reject(&p.delta, "profile.delta", ctx);
            ck.reject(&p.omega_d, "profile.omega_d", ctx);
            Some(MirrorProfile::Static { length })
        }
        Some("linear") => {
            let ctx = "profile kind linear";
            ck.reject(&p.delta, "profile.delta", ctx);
            ck.reject(&p.omega_d, "profile.omega_d", ctx);
            let v = ck.require(&p.v, "profile.v");
            ck.finite(v, "profile.v");
            v.map(|v| MirrorProfile::Linear { length, v, short_time: p.short_time.unwrap_or(false) })
        }
        Some("dce") => {
            let ctx = "profile kind dce";
            ck.reject(&p.v, "profile.v", ctx);
            ck.reject(&p.short_time, "profile.short_time", ctx);
            let delta = ck.require(&p.delta, "profile.delta");
            let omega_d = ck.require(&p.omega_d, "profile.omega_d");
            ck.finite(omega_d, "profile.omega_d");
            match (delta, omega_d) {
                (Some(d), Some(w)) => match MirrorProfile::dce(length, d, w) {
                    Ok(profile) => Some(profile),
                    Err(e) => {
                        ck.problems.push(format!("profile.delta = {d}: {e}"));
                        None
                    }
                },
                _ => None,
            }
        }
        Some(other) => {
            ck.problems.push(format!("profile.kind `{other}` is not one of static, linear, dce"));
            None
        }
        None => None,
    };
    if let Some(profile) = profile {
        if let Some(t_final) = raw.time.as_ref().and_then(|t| t.t_final) {
            if let Some(tc) = profile.collapse_time() {
                ck.bound(t_final < tc, || {
                    format!("time.t_final = {t_final} violates t_final < {tc}, the time the wall reaches zero length")
                });
            }
        }
    }
    Some(ModelConfig::MirrorMultimode { spec, profile: profile? })
}
