//! Executing scenarios: integration, summary metrics and output files.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use superlumen_core::analytic::{
    gaussian_evolve, normal_mode_analysis, perturbative_probability, resonance_velocity, stability_boundary,
    CovarianceState, QuadraticModelSpec,
};
use superlumen_core::evolve::{
    evolve_lindblad, evolve_unitary, observables, DrivenHamiltonian, EvolveOptions, Evolution, NoiseSpec, Observable,
    SystemLayout, TimeSeries,
};
use superlumen_core::hamiltonian::coupling_to_velocity;
use superlumen_core::models::{MultimodeModel, QubitModel, TwoModeModel};
use superlumen_core::trajectory::{feasibility_check, FeasibilityLimits, MirrorProfile, Motion, QubitTrajectory};
use superlumen_core::QuantumState;

use crate::error::{Result, RunnerError};
use crate::scenario::{two_mode_parameters, ModelConfig, ModelKind, Scenario, SolverKind};

/// Name of the machine-readable summary written next to the track files.
pub const SUMMARY_FILE: &str = "summary.json";
/// Relative change between Fock truncations below which a run counts as
/// converged.
pub const CONVERGENCE_TOLERANCE: f64 = 0.005;
/// Relative deviation from the Gaussian solution accepted by a cross-check.
pub const CROSS_CHECK_TOLERANCE: f64 = 0.02;
/// Relative distance from the resonance velocity still reported as resonant.
pub const RESONANCE_WINDOW: f64 = 0.05;

/// One output table: a time column followed by named tracks.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File stem, the run name plus a suffix for companion runs.
    pub stem: String,
    pub units: &'static str,
    pub times: Vec<f64>,
    pub columns: Vec<(String, Vec<f64>)>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    /// CSV text: a units comment, the header row, then one row per sample.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let header: Vec<&str> = std::iter::once("t").chain(self.columns.iter().map(|(n, _)| n.as_str())).collect();
        w.write_record(&header).expect("in-memory write");
        for (i, t) in self.times.iter().enumerate() {
            let row = std::iter::once(*t).chain(self.columns.iter().map(|(_, v)| v[i])).map(format_value);
            w.write_record(row).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output");
        format!("# units: {}\n{body}", self.units)
    }
}

/// Shortest round-trip decimal, switching to exponent form for very small
/// or very large magnitudes.
pub fn format_value(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || (1e-4..1e15).contains(&a) || !x.is_finite() {
        x.to_string()
    } else {
        format!("{x:e}")
    }
}

const QUBIT_UNITS: &str = "t in 1/omega0; frequencies and rates in omega0; velocities in c; hbar = c = 1";
const MIRROR_UNITS: &str = "t in L/c with L the rest length; frequencies and rates in c/L; velocities in c; hbar = c = 1";

/// Units comment for output tables of a model.
pub fn units_for(kind: ModelKind) -> &'static str {
    match kind {
        ModelKind::QubitRabi => QUBIT_UNITS,
        ModelKind::MirrorTwoMode | ModelKind::MirrorMultimode => MIRROR_UNITS,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metrics {
    pub peak_p_e: Option<f64>,
    pub t_peak_p_e: Option<f64>,
    pub final_p_e: Option<f64>,
    pub peak_n_total: f64,
    pub final_n_total: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiagnosticsSummary {
    pub step: f64,
    pub steps: usize,
    /// Largest norm or trace drift seen at a sample.
    pub max_drift: f64,
    pub final_min_eigenvalue: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrackSummary {
    pub file: String,
    pub metrics: Metrics,
    pub diagnostics: Option<DiagnosticsSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResonanceCheck {
    pub effective_velocity: f64,
    pub resonance_velocity: f64,
    pub relative_detuning: f64,
    pub resonant: bool,
    /// Weak-coupling prediction of `P_e(t_final)`.
    pub perturbative_p_e: f64,
    pub outside_weak_coupling: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StabilityCheck {
    pub omega1: f64,
    pub omega: f64,
    /// Squeezing strength where the quadratic form stops being positive.
    pub omega_critical: Option<f64>,
    pub stable: bool,
    pub lowest_frequency_re: f64,
    pub lowest_frequency_im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossCheck {
    pub n_max: Vec<usize>,
    /// Relative sup-norm change of `n_total` between the last two truncations.
    pub truncation_change: Option<f64>,
    pub converged: bool,
    /// Relative sup-norm deviation of the finest truncation from the Gaussian run.
    pub gaussian_deviation: f64,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Feasibility {
    pub hardware_feasible: bool,
    pub superluminal_in_medium: bool,
    pub superluminal_in_vacuum: bool,
    pub v_max: f64,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub name: String,
    pub model: &'static str,
    pub solver: &'static str,
    pub preset: Option<String>,
    pub tracks: Vec<TrackSummary>,
    /// Largest `|ΔP_e|` between an oscillatory run and its constant-velocity stand-in.
    pub trajectory_max_delta_p_e: Option<f64>,
    pub resonance: Option<ResonanceCheck>,
    pub stability: Option<StabilityCheck>,
    pub cross_check: Option<CrossCheck>,
    pub feasibility: Feasibility,
}

impl RunSummary {
    /// Metrics of the primary track file.
    pub fn metrics(&self) -> &Metrics {
        &self.tracks[0].metrics
    }
}

/// Result of one scenario, held in memory until written.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub tables: Vec<Table>,
    pub summary: RunSummary,
}

/// Summary of a batch of runs, in input order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchSummary {
    pub runs: Vec<RunSummary>,
    pub files: Vec<String>,
}

/// Worker count used when none is given.
pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Runs `f` on a pool of `workers` threads.
pub fn with_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Err(RunnerError::config("--workers must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| RunnerError::config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(f))
}

/// Runs one scenario and writes its tracks and summary into `out_dir`.
pub fn run_scenario(scenario: &Scenario, out_dir: &Path, workers: usize) -> Result<BatchSummary> {
    run_batch(std::slice::from_ref(scenario), out_dir, workers)
}

/// Runs scenarios in parallel and writes every table plus one summary.
///
/// Nothing is written unless every run succeeds; a failed write removes the
/// files already written by this call.
pub fn run_batch(scenarios: &[Scenario], out_dir: &Path, workers: usize) -> Result<BatchSummary> {
    check_unique_stems(scenarios)?;
    let outputs = compute_batch(scenarios, workers)?;
    write_outputs(&outputs, out_dir)
}

/// Integrates every scenario without touching the filesystem.
pub fn compute_batch(scenarios: &[Scenario], workers: usize) -> Result<Vec<RunOutput>> {
    let results: Vec<Result<RunOutput>> = with_pool(workers, || scenarios.par_iter().map(compute_run).collect())?;
    results.into_iter().collect()
}

fn check_unique_stems(scenarios: &[Scenario]) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for s in scenarios {
        if !seen.insert(s.name.as_str()) {
            return Err(RunnerError::config(format!("run name `{}` appears more than once", s.name)));
        }
    }
    Ok(())
}

fn write_outputs(outputs: &[RunOutput], out_dir: &Path) -> Result<BatchSummary> {
    fs::create_dir_all(out_dir).map_err(|e| RunnerError::io(out_dir, e))?;
    let mut written: Vec<PathBuf> = Vec::new();
    let mut files = Vec::new();
    let result = (|| {
        for table in outputs.iter().flat_map(|o| &o.tables) {
            let file = format!("{}.csv", table.stem);
            let path = out_dir.join(&file);
            fs::write(&path, table.to_csv()).map_err(|e| RunnerError::io(&path, e))?;
            written.push(path);
            files.push(file);
        }
        let summary = BatchSummary { runs: outputs.iter().map(|o| o.summary.clone()).collect(), files: files.clone() };
        let path = out_dir.join(SUMMARY_FILE);
        let json = serde_json::to_string_pretty(&summary).expect("summary serializes") + "\n";
        fs::write(&path, json).map_err(|e| RunnerError::io(&path, e))?;
        Ok(summary)
    })();
    if result.is_err() {
        for path in &written {
            let _ = fs::remove_file(path);
        }
    }
    result
}

/// Integrates one scenario. Numerical errors carry the run name.
pub fn compute_run(scenario: &Scenario) -> Result<RunOutput> {
    let numerical = |source| RunnerError::Numerical { run: scenario.name.clone(), source };
    match &scenario.model {
        ModelConfig::QubitRabi { params, trajectory, compare_constant_velocity } => {
            let model = QubitModel::new(*params, *trajectory).map_err(numerical)?;
            run_qubit(scenario, &model, *compare_constant_velocity).map_err(numerical)
        }
        ModelConfig::MirrorTwoMode { variant, length, coupling, n_max } => {
            let (omega1, omega) = two_mode_parameters(*length, *coupling);
            let model = TwoModeModel { omega1, omega, variant: *variant, n_max: *n_max };
            run_two_mode(scenario, &model, *length).map_err(numerical)
        }
        ModelConfig::MirrorMultimode { spec, profile } => {
            let model = MultimodeModel::new(*spec, *profile).map_err(numerical)?;
            model.check_window(scenario.t_final).map_err(numerical)?;
            run_multimode(scenario, &model).map_err(numerical)
        }
    }
}

type CoreResult<T> = superlumen_core::Result<T>;

fn options(scenario: &Scenario) -> EvolveOptions {
    EvolveOptions {
        max_step: scenario.solver.max_step,
        steps_per_period: scenario.solver.steps_per_period,
        ..EvolveOptions::default()
    }
}

/// Fock-space integration with the solver chosen by the scenario.
struct FockSetup<'a> {
    hamiltonian: DrivenHamiltonian,
    initial: QuantumState,
    layout: SystemLayout,
    observables: Vec<Observable>,
    noise: &'a NoiseSpec,
}

fn integrate(setup: &FockSetup<'_>, solver: SolverKind, times: &[f64], opts: &EvolveOptions) -> CoreResult<Evolution> {
    match solver {
        SolverKind::Unitary => evolve_unitary(&setup.hamiltonian, &setup.initial, times, &setup.observables, opts),
        _ => evolve_lindblad(
            &setup.hamiltonian,
            &setup.initial,
            setup.noise,
            &setup.layout,
            times,
            &setup.observables,
            opts,
        ),
    }
}

fn diagnostics(ev: &Evolution) -> DiagnosticsSummary {
    DiagnosticsSummary {
        step: ev.diagnostics.step,
        steps: ev.diagnostics.steps,
        max_drift: ev.diagnostics.max_drift,
        final_min_eigenvalue: ev.diagnostics.final_min_eigenvalue,
    }
}

fn table(scenario: &Scenario, stem: String, units: &'static str, series: &TimeSeries) -> CoreResult<Table> {
    let names: Vec<&str> = scenario.observables.iter().map(String::as_str).collect();
    Ok(Table { stem, units, times: series.times().to_vec(), columns: observables(series, &names)? })
}

fn metrics(series: &TimeSeries) -> CoreResult<Metrics> {
    let n_total = observables(series, &["n_total"])?.remove(0).1;
    let (peak_p_e, t_peak_p_e, final_p_e) = match series.track("P_e") {
        Some(p) => {
            let (i, peak) = p.iter().copied().enumerate().fold((0, f64::NEG_INFINITY), |acc, (i, x)| {
                if x > acc.1 { (i, x) } else { acc }
            });
            (Some(peak), Some(series.times()[i]), p.last().copied())
        }
        None => (None, None, None),
    };
    Ok(Metrics {
        peak_p_e,
        t_peak_p_e,
        final_p_e,
        peak_n_total: n_total.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        final_n_total: *n_total.last().expect("grids have at least two points"),
    })
}

fn feasibility(motion: Motion<'_>) -> Feasibility {
    let r = feasibility_check(motion, &FeasibilityLimits::default());
    Feasibility {
        hardware_feasible: r.hardware_feasible,
        superluminal_in_medium: r.superluminal_in_medium,
        superluminal_in_vacuum: r.superluminal_in_vacuum,
        v_max: r.v_max,
        notes: r.notes,
    }
}

fn summary(scenario: &Scenario, tracks: Vec<TrackSummary>, feasibility: Feasibility) -> RunSummary {
    RunSummary {
        name: scenario.name.clone(),
        model: scenario.model.kind().as_str(),
        solver: scenario.solver().as_str(),
        preset: scenario.preset.clone(),
        tracks,
        trajectory_max_delta_p_e: None,
        resonance: None,
        stability: None,
        cross_check: None,
        feasibility,
    }
}

fn run_qubit(scenario: &Scenario, model: &QubitModel, compare: bool) -> CoreResult<RunOutput> {
    let times = scenario.time_grid();
    let opts = options(scenario);
    let mut models = vec![(String::new(), *model)];
    if let (true, Some(cv)) = (compare, model.constant_velocity_equivalent()) {
        models = vec![("-oscillatory".into(), *model), ("-constant-velocity".into(), cv)];
    }
    let mut tables = Vec::new();
    let mut tracks = Vec::new();
    let mut p_e = Vec::new();
    for (suffix, m) in &models {
        let setup = FockSetup {
            hamiltonian: m.hamiltonian()?,
            initial: m.ground_vacuum()?,
            layout: m.layout(),
            observables: m.observables()?,
            noise: &scenario.noise,
        };
        let ev = integrate(&setup, scenario.solver(), &times, &opts)?;
        let stem = format!("{}{suffix}", scenario.name);
        tracks.push(TrackSummary {
            file: format!("{stem}.csv"),
            metrics: metrics(&ev.series)?,
            diagnostics: Some(diagnostics(&ev)),
        });
        tables.push(table(scenario, stem, QUBIT_UNITS, &ev.series)?);
        p_e.push(ev.series);
    }
    let p = model.params;
    let trajectory = model.trajectory;
    let mut out = summary(scenario, tracks, feasibility(Motion::Qubit(&trajectory)));
    if p_e.len() == 2 {
        out.trajectory_max_delta_p_e = p_e[0].max_abs_difference(&p_e[1], "P_e");
    }
    let v_eff = trajectory.effective_velocity();
    let v_res = resonance_velocity(p.omega_q, p.omega0);
    let relative_detuning = ((v_eff.abs() - v_res) / v_res).abs();
    // The weak-coupling estimate of the oscillatory case uses its stand-in.
    let (pp, pt) = match (trajectory, model.constant_velocity_equivalent()) {
        (QubitTrajectory::Oscillatory { .. }, Some(cv)) => (cv.params, cv.trajectory),
        _ => (p, trajectory),
    };
    let estimate = perturbative_probability(&pp, &pt, scenario.t_final);
    out.resonance = Some(ResonanceCheck {
        effective_velocity: v_eff,
        resonance_velocity: v_res,
        relative_detuning,
        resonant: relative_detuning <= RESONANCE_WINDOW,
        perturbative_p_e: estimate.probability,
        outside_weak_coupling: estimate.outside_weak_coupling,
    });
    Ok(RunOutput { tables, summary: out })
}

/// `max|a - reference| / max|reference|`, the deviation relative to the
/// track's own scale. Pointwise ratios are avoided because oscillating
/// photon numbers pass close to zero.
pub fn relative_sup_deviation(a: &[f64], reference: &[f64]) -> f64 {
    let scale = reference.iter().fold(0.0, |m: f64, r| m.max(r.abs()));
    let diff = a.iter().zip(reference).fold(0.0, |m: f64, (x, r)| m.max((x - r).abs()));
    if scale == 0.0 { diff } else { diff / scale }
}

fn quadratic_spec(model: &TwoModeModel, noise: &NoiseSpec) -> QuadraticModelSpec {
    let mut spec = model.quadratic_spec(noise.kappa);
    if let [k1, k2] = noise.mode_kappas[..] {
        spec.kappa = [k1, k2];
    }
    spec
}

fn stability(model: &TwoModeModel) -> StabilityCheck {
    let make = |omega| QuadraticModelSpec::two_mode(model.omega1, omega, model.variant, 0.0);
    let modes = normal_mode_analysis(&make(model.omega));
    let lowest = modes.lowest();
    StabilityCheck {
        omega1: model.omega1,
        omega: model.omega,
        omega_critical: stability_boundary(make, 0.0, 10.0 * model.omega1, 1e-12),
        stable: modes.stable,
        lowest_frequency_re: lowest.re,
        lowest_frequency_im: lowest.im,
    }
}

fn fock_two_mode(scenario: &Scenario, model: &TwoModeModel, solver: SolverKind) -> CoreResult<Evolution> {
    let setup = FockSetup {
        hamiltonian: model.hamiltonian()?,
        initial: model.vacuum()?,
        layout: model.layout(),
        observables: model.observables()?,
        noise: &scenario.noise,
    };
    integrate(&setup, solver, &scenario.time_grid(), &options(scenario))
}

fn run_two_mode(scenario: &Scenario, model: &TwoModeModel, length: f64) -> CoreResult<RunOutput> {
    let times = scenario.time_grid();
    let solver = scenario.solver();
    let (series, diag) = if solver == SolverKind::Gaussian {
        let g = gaussian_evolve(&quadratic_spec(model, &scenario.noise), &CovarianceState::vacuum(), &times)?;
        let mut series = TimeSeries::new(times.clone())?;
        series.insert("n1", g.n1)?;
        series.insert("n2", g.n2)?;
        (series, None)
    } else {
        let ev = fock_two_mode(scenario, model, solver)?;
        let d = diagnostics(&ev);
        (ev.series, Some(d))
    };
    let track = TrackSummary { file: format!("{}.csv", scenario.name), metrics: metrics(&series)?, diagnostics: diag };
    let velocity = coupling_to_velocity(model.omega, length);
    let profile = MirrorProfile::Linear { length, v: velocity, short_time: true };
    let mut out = summary(scenario, vec![track], feasibility(Motion::Mirror(&profile)));
    out.stability = Some(stability(model));
    if !scenario.solver.cross_check_n_max.is_empty() {
        out.cross_check = Some(cross_check(scenario, model, &series)?);
    }
    let tables = vec![table(scenario, scenario.name.clone(), MIRROR_UNITS, &series)?];
    Ok(RunOutput { tables, summary: out })
}

fn cross_check(scenario: &Scenario, model: &TwoModeModel, gaussian: &TimeSeries) -> CoreResult<CrossCheck> {
    let solver = if scenario.noise.is_zero() { SolverKind::Unitary } else { SolverKind::Lindblad };
    let mut runs = Vec::new();
    for &n_max in &scenario.solver.cross_check_n_max {
        let ev = fock_two_mode(scenario, &TwoModeModel { n_max, ..*model }, solver)?;
        runs.push(observables(&ev.series, &["n_total"])?.remove(0).1);
    }
    let reference = observables(gaussian, &["n_total"])?.remove(0).1;
    let truncation_change = match runs.as_slice() {
        [.., coarse, fine] => Some(relative_sup_deviation(coarse, fine)),
        _ => None,
    };
    let finest = runs.last().expect("cross-check lists at least one truncation");
    let gaussian_deviation = relative_sup_deviation(finest, &reference);
    Ok(CrossCheck {
        n_max: scenario.solver.cross_check_n_max.clone(),
        truncation_change,
        converged: truncation_change.is_some_and(|c| c < CONVERGENCE_TOLERANCE),
        gaussian_deviation,
        agrees: gaussian_deviation < CROSS_CHECK_TOLERANCE,
    })
}

fn run_multimode(scenario: &Scenario, model: &MultimodeModel) -> CoreResult<RunOutput> {
    let setup = FockSetup {
        hamiltonian: model.hamiltonian()?,
        initial: model.vacuum()?,
        layout: model.layout(),
        observables: model.observables()?,
        noise: &scenario.noise,
    };
    let ev = integrate(&setup, scenario.solver(), &scenario.time_grid(), &options(scenario))?;
    let track = TrackSummary {
        file: format!("{}.csv", scenario.name),
        metrics: metrics(&ev.series)?,
        diagnostics: Some(diagnostics(&ev)),
    };
    let out = summary(scenario, vec![track], feasibility(Motion::Mirror(&model.profile)));
    let tables = vec![table(scenario, scenario.name.clone(), MIRROR_UNITS, &ev.series)?];
    Ok(RunOutput { tables, summary: out })
}
