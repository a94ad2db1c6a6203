//! Acceptance checks: one PASS/FAIL line per criterion, then a single
//! assertion that every criterion passed.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use superlumen::presets::{fig1, fig2, NoisePreset};
use superlumen::run::{compute_run, run_batch, RunOutput, Table, SUMMARY_FILE};
use superlumen::scenario::Scenario;
use superlumen::{parse_scenario, sweep};
use superlumen_core::analytic::{
    bessel_coefficients, bessel_j, critical_coupling, perturbative_probability, stability_boundary, QuadraticModelSpec,
};
use superlumen_core::evolve::{evolve_lindblad, evolve_unitary, EvolveOptions, NoiseSpec};
use superlumen_core::hamiltonian::{
    coupling_to_velocity, mode_coupling, two_mode_hamiltonian, velocity_to_coupling, RabiParams, TwoModeVariant,
};
use superlumen_core::models::{QubitModel, TwoModeModel};
use superlumen_core::trajectory::{coupling_factor, QubitTrajectory};

/// Thresholds for every criterion, in one place.
mod tolerances {
    use std::time::Duration;

    /// Largest `|ΔP_e|` between an oscillatory run and its constant-velocity stand-in.
    pub const TRAJECTORY_DELTA_P_E: f64 = 0.02;
    /// Wall-clock budget for one preset configuration.
    pub const RUNTIME_LIMIT: Duration = Duration::from_secs(60);
    /// Minimum ratio of resonant to off-resonant peak `P_e`.
    pub const RESONANCE_RATIO_MIN: f64 = 10.0;
    /// Spacing of the trajectory-frequency sweep; the peak must land within one step.
    pub const SWEEP_GRID_STEP: f64 = 0.1;
    /// Relative agreement of unitary evolution with the weak-coupling estimate.
    pub const PERTURBATIVE_REL: f64 = 0.05;
    /// Relative agreement of adaptive quadrature with the closed form.
    pub const QUADRATURE_REL: f64 = 1e-8;
    /// Number of random parameter draws for the quadrature check.
    pub const QUADRATURE_DRAWS: usize = 100;
    /// Upper bound on `J₃(π/2) / J₁(π/2)`.
    pub const BESSEL_RATIO_MAX: f64 = 0.13;
    /// Sup-norm error of the ten-term Jacobi-Anger series.
    pub const BESSEL_SUP: f64 = 1e-12;
    /// Largest late-time `P_e` oscillation amplitude (half peak-to-peak) in the bad cavity.
    pub const BAD_CAVITY_AMPLITUDE_MAX: f64 = 0.1;
    /// Smallest late-time mean `P_e` in the bad cavity.
    pub const BAD_CAVITY_MEAN_MIN: f64 = 0.5;
    /// Fraction of the window, counted from the end, treated as post-saturation.
    pub const LATE_FRACTION: f64 = 1.0 / 3.0;
    /// Allowed distance of `Tr ρ` from 1.
    pub const TRACE_TOL: f64 = 1e-6;
    /// Most negative eigenvalue of `ρ` accepted.
    pub const MIN_EIGENVALUE: f64 = -1e-6;
    /// Largest difference between zero-noise Lindblad and unitary tracks.
    pub const LINDBLAD_UNITARY_TOL: f64 = 1e-6;
    /// Rounding slack for exact coefficient identities.
    pub const ALGEBRA_TOL: f64 = 1e-14;
    /// Expected `velocity_to_coupling(c) / ω₁` and its tolerance.
    pub const COUPLING_PER_C: f64 = 0.1501;
    pub const COUPLING_PER_C_TOL: f64 = 1e-4;
    /// Relative accuracy of the bisected critical coupling.
    pub const CRITICAL_REL: f64 = 1e-10;
    /// Accuracy of the critical velocity `3π/2`.
    pub const CRITICAL_VELOCITY_TOL: f64 = 1e-12;
    /// Photon ceiling for the slowest wall.
    pub const SLOW_WALL_MAX_PHOTONS: f64 = 0.01;
    /// Photon floor for the wall at the critical velocity.
    pub const FAST_WALL_MIN_PHOTONS: f64 = 1.0;
    /// Relative sup-norm agreement of converged Fock runs with the Gaussian solution.
    pub const FOCK_GAUSSIAN_REL: f64 = 0.02;
}

use tolerances::*;

struct Report {
    results: Vec<(u32, bool)>,
}

impl Report {
    fn check(&mut self, id: u32, name: &str, pass: bool, detail: String) {
        println!("[{}] {id:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
        self.results.push((id, pass));
    }
}

/// Runs each scenario alone and times it.
fn timed_runs(scenarios: &[Scenario]) -> Vec<(RunOutput, Duration)> {
    scenarios
        .iter()
        .map(|s| {
            let start = Instant::now();
            let out = compute_run(s).unwrap_or_else(|e| panic!("{e}"));
            (out, start.elapsed())
        })
        .collect()
}

fn late_window(table: &Table, name: &str) -> Vec<f64> {
    let t_end = *table.times.last().unwrap();
    let start = t_end * (1.0 - LATE_FRACTION);
    let col = table.column(name).unwrap();
    table.times.iter().zip(col).filter(|(t, _)| **t >= start).map(|(_, v)| *v).collect()
}

/// Writes the preset again through the batch runner and compares every
/// data file with the bytes of the earlier in-memory run.
fn identical_on_rerun(scenarios: &[Scenario], first: &[(RunOutput, Duration)]) -> (bool, usize) {
    let dir = tempfile::tempdir().unwrap();
    let summary = run_batch(scenarios, dir.path(), 1).unwrap();
    let tables: Vec<&Table> = first.iter().flat_map(|(o, _)| &o.tables).collect();
    let same = tables.len() == summary.files.len()
        && tables.iter().zip(&summary.files).all(|(t, file)| {
            fs::read_to_string(dir.path().join(file)).unwrap() == t.to_csv()
        })
        && dir.path().join(SUMMARY_FILE).exists();
    (same, tables.len())
}

fn trajectory_equivalence(report: &mut Report, runs: &[(RunOutput, Duration)]) {
    let worst = runs.iter().map(|(o, _)| o.summary.trajectory_max_delta_p_e.unwrap()).fold(0.0, f64::max);
    let slowest = runs.iter().map(|(_, d)| *d).max().unwrap();
    report.check(
        1,
        "trajectory equivalence",
        runs.len() == 6 && worst < TRAJECTORY_DELTA_P_E && slowest < RUNTIME_LIMIT,
        format!(
            "{} configurations, max|dP_e| = {worst:.2e} < {TRAJECTORY_DELTA_P_E}, slowest {:.1}s < {}s",
            runs.len(),
            slowest.as_secs_f64(),
            RUNTIME_LIMIT.as_secs()
        ),
    );
}

fn resonance(report: &mut Report, runs: &[(RunOutput, Duration)]) {
    let peak = |name: &str| {
        runs.iter().find(|(o, _)| o.summary.name == name).unwrap().0.summary.metrics().peak_p_e.unwrap()
    };
    let ratio = peak("fig1-wq1-kappa0.001") / peak("fig1-wq0.5-kappa0.001");
    let base = parse_scenario(
        r#"
name = "omega-sweep"
model = "qubit-rabi"
[time]
t_final = 300.0
samples = 601
[qubit]
omega_q = 1.0
g = 0.02
n_max = 6
[trajectory]
kind = "oscillatory"
omega = 2.0
"#,
    )
    .unwrap();
    let values: Vec<f64> = (0..15).map(|i| 1.3 + SWEEP_GRID_STEP * i as f64).collect();
    let result = sweep(&base, "trajectory.omega", &values, 1).unwrap();
    let peak_omega = values[result.peak_p_e_row().unwrap()];
    let target = 1.0 + 1.0;
    report.check(
        2,
        "resonance selectivity",
        ratio >= RESONANCE_RATIO_MIN && (peak_omega - target).abs() <= SWEEP_GRID_STEP + 1e-12,
        format!(
            "peak ratio {ratio:.1} >= {RESONANCE_RATIO_MIN}, sweep peak at omega = {peak_omega:.2} (expected {target} +/- {SWEEP_GRID_STEP})"
        ),
    );
}

fn perturbative(report: &mut Report) {
    let (g, t_final) = (0.002, 50.0);
    let p = RabiParams::new(1.0, 1.0, g, 4).unwrap();
    let traj = QubitTrajectory::ConstantVelocity { x0: 0.0, v: 2.0 };
    let model = QubitModel::new(p, traj).unwrap();
    let times: Vec<f64> = (0..=100).map(|i| t_final * i as f64 / 100.0).collect();
    let ev = evolve_unitary(
        &model.hamiltonian().unwrap(),
        &model.ground_vacuum().unwrap(),
        &times,
        &model.observables().unwrap(),
        &EvolveOptions::default(),
    )
    .unwrap();
    let numeric = *ev.series.track("P_e").unwrap().last().unwrap();
    let estimate = perturbative_probability(&p, &traj, t_final).probability;
    let rel = (numeric - estimate).abs() / estimate;

    let mut rng = rand::rngs::StdRng::seed_from_u64(20_260_101);
    let mut worst = 0.0f64;
    for _ in 0..QUADRATURE_DRAWS {
        let p = RabiParams::new(1.0, rng.gen_range(0.3..1.5), rng.gen_range(1e-4..0.002), 4).unwrap();
        let traj = QubitTrajectory::ConstantVelocity { x0: rng.gen_range(-1.0..1.0), v: rng.gen_range(0.1..4.0) };
        let est = perturbative_probability(&p, &traj, rng.gen_range(1.0..50.0));
        let closed = est.closed_form.unwrap();
        worst = worst.max((est.probability - closed).abs() / closed.abs().max(f64::MIN_POSITIVE));
    }
    report.check(
        3,
        "perturbative oracle",
        rel < PERTURBATIVE_REL && worst < QUADRATURE_REL,
        format!(
            "unitary vs estimate {rel:.2e} < {PERTURBATIVE_REL}, quadrature vs closed form {worst:.2e} < {QUADRATURE_REL:e} over {QUADRATURE_DRAWS} draws"
        ),
    );
}

fn bessel(report: &mut Report) {
    let ratio = bessel_j(3, FRAC_PI_2) / bessel_j(1, FRAC_PI_2);
    let expansion = bessel_coefficients(10);
    let omega = 2.0;
    let traj = QubitTrajectory::Oscillatory { omega };
    let sampled = (0..4000)
        .map(|i| {
            let t = 7.0 * i as f64 / 4000.0;
            (expansion.evaluate(omega * t) - coupling_factor(&traj, t)).abs()
        })
        .fold(0.0, f64::max);
    let sup = expansion.sup_error.max(sampled);
    report.check(
        4,
        "Bessel approximation",
        ratio < BESSEL_RATIO_MAX && sup < BESSEL_SUP,
        format!("J3/J1 = {ratio:.4} < {BESSEL_RATIO_MAX}, k_max = 10 sup error {sup:.2e} < {BESSEL_SUP:e}"),
    );
}

fn bad_cavity(report: &mut Report, runs: &[(RunOutput, Duration)]) {
    let out = &runs.iter().find(|(o, _)| o.summary.name == "fig1-wq1-kappa0.1").unwrap().0;
    let mut worst_amp = 0.0f64;
    let mut lowest_mean = f64::INFINITY;
    for table in &out.tables {
        let late = late_window(table, "P_e");
        let (lo, hi) = late.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), x| (l.min(*x), h.max(*x)));
        worst_amp = worst_amp.max(0.5 * (hi - lo));
        lowest_mean = lowest_mean.min(late.iter().sum::<f64>() / late.len() as f64);
    }
    report.check(
        5,
        "bad cavity",
        worst_amp < BAD_CAVITY_AMPLITUDE_MAX && lowest_mean > BAD_CAVITY_MEAN_MIN,
        format!(
            "late amplitude {worst_amp:.4} < {BAD_CAVITY_AMPLITUDE_MAX}, late mean {lowest_mean:.4} > {BAD_CAVITY_MEAN_MIN}"
        ),
    );
}

fn lindblad_validity(report: &mut Report, fig1_runs: &[(RunOutput, Duration)], fig2_runs: &[(RunOutput, Duration)]) {
    let mut trace_dev = 0.0f64;
    let mut min_eig = f64::INFINITY;
    for (out, _) in fig1_runs {
        for table in &out.tables {
            trace_dev = table.column("trace").unwrap().iter().map(|t| (t - 1.0).abs()).fold(trace_dev, f64::max);
        }
        for track in &out.summary.tracks {
            min_eig = min_eig.min(track.diagnostics.as_ref().unwrap().final_min_eigenvalue.unwrap());
        }
    }
    // The fig2 Fock cross-checks are density-matrix runs that abort on any
    // trace or positivity violation, so completing them is the check.
    let cross_checked = fig2_runs.iter().filter(|(o, _)| o.summary.cross_check.is_some()).count();

    let opts = EvolveOptions::default();
    let qubit = QubitModel::new(RabiParams::new(1.0, 1.0, 0.02, 15).unwrap(), QubitTrajectory::Oscillatory { omega: 2.0 })
        .unwrap();
    let times: Vec<f64> = (0..=300).map(|i| i as f64).collect();
    let (h, psi, obs) = (qubit.hamiltonian().unwrap(), qubit.ground_vacuum().unwrap(), qubit.observables().unwrap());
    let unitary = evolve_unitary(&h, &psi, &times, &obs, &opts).unwrap();
    let lindblad = evolve_lindblad(&h, &psi, &NoiseSpec::none(), &qubit.layout(), &times, &obs, &opts).unwrap();
    let mut gap = ["P_e", "P_g", "n1"]
        .iter()
        .map(|n| unitary.series.max_abs_difference(&lindblad.series, n).unwrap())
        .fold(0.0, f64::max);
    let pair = TwoModeModel { omega1: 1.0, omega: velocity_to_coupling(1.0, PI), variant: TwoModeVariant::DickeForm, n_max: 6 };
    let times: Vec<f64> = (0..=60).map(|i| 0.5 * i as f64).collect();
    let (h, psi, obs) = (pair.hamiltonian().unwrap(), pair.vacuum().unwrap(), pair.observables().unwrap());
    let unitary = evolve_unitary(&h, &psi, &times, &obs, &opts).unwrap();
    let lindblad = evolve_lindblad(&h, &psi, &NoiseSpec::none(), &pair.layout(), &times, &obs, &opts).unwrap();
    gap = ["n1", "n2"].iter().map(|n| unitary.series.max_abs_difference(&lindblad.series, n).unwrap()).fold(gap, f64::max);

    report.check(
        6,
        "Lindblad validity",
        trace_dev < TRACE_TOL && min_eig >= MIN_EIGENVALUE && gap < LINDBLAD_UNITARY_TOL && cross_checked == 3,
        format!(
            "fig1 |Tr rho - 1| <= {trace_dev:.1e}, min eig {min_eig:.1e} >= {MIN_EIGENVALUE:e}, {cross_checked} fig2 Fock runs passed, zero-noise gap {gap:.1e} < {LINDBLAD_UNITARY_TOL:e}"
        ),
    );
}

fn two_mode_algebra(report: &mut Report) {
    let (c12, c21) = (mode_coupling(1, 2), mode_coupling(2, 1));
    let pair_sum = c12 + c21;
    let ratio = (c12 - c21) / pair_sum;
    let (v, length) = (0.7, PI);
    let omega = velocity_to_coupling(v, length);
    let n = 3;
    let h = two_mode_hamiltonian(PI / length, omega, TwoModeVariant::Literal, n).unwrap();
    let idx = |a: usize, b: usize| a * n + b;
    let squeezing = h.get(idx(1, 1), idx(0, 0)).norm();
    let mixing = h.get(idx(1, 0), idx(0, 1)).norm();
    let spec = QuadraticModelSpec::two_mode(1.0, omega, TwoModeVariant::Literal, 0.0);
    let (s, m) = spec.coefficients();
    let omega1 = PI / length;
    let per_c = velocity_to_coupling(1.0, PI) / omega1;
    let expected = 2f64.sqrt() / 3.0 * v / length;
    let pass = (c12 + 2f64.sqrt() / 3.0).abs() < ALGEBRA_TOL
        && (c21 - 2.0 * 2f64.sqrt() / 3.0).abs() < ALGEBRA_TOL
        && (squeezing - expected).abs() < ALGEBRA_TOL
        && (mixing / squeezing - 3.0).abs() < ALGEBRA_TOL
        && (ratio.abs() - 3.0).abs() < ALGEBRA_TOL
        && (m.norm() / s.norm() - 3.0).abs() < ALGEBRA_TOL
        && (per_c - COUPLING_PER_C).abs() <= COUPLING_PER_C_TOL;
    report.check(
        7,
        "two-mode algebra",
        pass,
        format!(
            "pair sum {c12:.6} + {c21:.6} = {pair_sum:.6}, squeezing {squeezing:.6} = (sqrt2/3)(v/L), mixing/squeezing {:.12}, coupling per c {per_c:.5}",
            mixing / squeezing
        ),
    );
}

fn critical_point(report: &mut Report) {
    let exact = critical_coupling(1.0, 2.0);
    let found = stability_boundary(|o| QuadraticModelSpec::two_mode(1.0, o, TwoModeVariant::DickeForm, 0.0), 0.0, 2.0, 1e-13)
        .unwrap();
    let rel = (found - exact).abs() / exact;
    let v_c = coupling_to_velocity(exact, PI);
    let dv = (v_c - 1.5 * PI).abs();
    report.check(
        8,
        "critical point",
        rel < CRITICAL_REL && dv < CRITICAL_VELOCITY_TOL,
        format!("bisection {found:.12} vs {exact:.12} (rel {rel:.1e} < {CRITICAL_REL:e}), v_c - 3pi/2 = {dv:.1e}"),
    );
}

fn photon_figure(report: &mut Report, runs: &[(RunOutput, Duration)]) {
    let finals: Vec<f64> = runs.iter().map(|(o, _)| o.summary.metrics().final_n_total).collect();
    let peaks: Vec<f64> = runs.iter().map(|(o, _)| o.summary.metrics().peak_n_total).collect();
    let monotone = |xs: &[f64]| xs.windows(2).all(|w| w[0] < w[1]);
    let slow = peaks[0];
    let fast = peaks[3];
    let mut fock_ok = true;
    let mut worst = 0.0f64;
    for (out, _) in runs {
        if let Some(c) = &out.summary.cross_check {
            if c.converged {
                worst = worst.max(c.gaussian_deviation);
                fock_ok &= c.gaussian_deviation < FOCK_GAUSSIAN_REL;
            }
        }
    }
    let converged = runs.iter().filter(|(o, _)| o.summary.cross_check.as_ref().is_some_and(|c| c.converged)).count();
    let slowest = runs.iter().map(|(_, d)| *d).max().unwrap();
    report.check(
        9,
        "photon-number figure",
        runs.len() == 4
            && monotone(&finals)
            && monotone(&peaks)
            && slow < SLOW_WALL_MAX_PHOTONS
            && fast > FAST_WALL_MIN_PHOTONS
            && fock_ok
            && converged >= 3
            && slowest < RUNTIME_LIMIT,
        format!(
            "n_total(t_end) = [{}] increasing, v=0.1 peak {slow:.2e} < {SLOW_WALL_MAX_PHOTONS}, v=3pi/2 peak {fast:.1} > {FAST_WALL_MIN_PHOTONS}, {converged} converged Fock checks within {worst:.1e} < {FOCK_GAUSSIAN_REL}, slowest {:.1}s",
            finals.iter().map(|x| format!("{x:.3e}")).collect::<Vec<_>>().join(", "),
            slowest.as_secs_f64()
        ),
    );
}

fn main() {
    println!("== acceptance ==");
    let mut report = Report { results: Vec::new() };

    let fig1_scenarios = fig1(NoisePreset::Caption).unwrap();
    let fig1_runs = timed_runs(&fig1_scenarios);
    let fig2_scenarios = fig2("dicke-form").unwrap();
    let fig2_runs = timed_runs(&fig2_scenarios);

    trajectory_equivalence(&mut report, &fig1_runs);
    resonance(&mut report, &fig1_runs);
    perturbative(&mut report);
    bessel(&mut report);
    bad_cavity(&mut report, &fig1_runs);
    lindblad_validity(&mut report, &fig1_runs, &fig2_runs);
    two_mode_algebra(&mut report);
    critical_point(&mut report);
    photon_figure(&mut report, &fig2_runs);

    let (same1, n1) = identical_on_rerun(&fig1_scenarios, &fig1_runs);
    let (same2, n2) = identical_on_rerun(&fig2_scenarios, &fig2_runs);
    report.check(
        10,
        "determinism",
        same1 && same2 && n1 == 12 && n2 == 4,
        format!("fig1 {n1} files identical: {same1}, fig2 {n2} files identical: {same2}"),
    );

    let failed: Vec<u32> = report.results.iter().filter(|(_, ok)| !ok).map(|(id, _)| *id).collect();
    println!("== {} of {} criteria passed ==", report.results.len() - failed.len(), report.results.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
