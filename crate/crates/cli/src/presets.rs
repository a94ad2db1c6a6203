//! Built-in scenario sets for the two reference figures.

use std::f64::consts::PI;

use crate::error::{Result, RunnerError};
use crate::scenario::{parse_scenario, Scenario};

/// Qubit frequencies of the excitation-probability figure, in units of `ω₀`.
pub const FIG1_QUBIT_FREQUENCIES: [f64; 3] = [0.5, 0.9, 1.0];
/// Cavity decay rates of the excitation-probability figure.
pub const FIG1_KAPPAS: [f64; 2] = [0.001, 0.1];
/// Wall velocities of the photon-number figure, in units of `c`.
pub const FIG2_VELOCITIES: [f64; 4] = [0.1, 1.0, 2.0, 1.5 * PI];
/// Velocities at or above this value sit at the instability threshold,
/// where no Fock truncation converges, so they get no cross-check.
const FIG2_CROSS_CHECK_LIMIT: f64 = 2.0;

/// Qubit decoherence rates for the excitation-probability figure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoisePreset {
    /// `Γ = 0.002`, `Γ_φ = Γ / 0.67`.
    Caption,
    /// `Γ = 0.001`, `Γ_φ = 0.0005`.
    Text,
}

impl NoisePreset {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "caption" => Ok(NoisePreset::Caption),
            "text" => Ok(NoisePreset::Text),
            _ => Err(RunnerError::config(format!("noise preset `{s}` is not one of caption, text"))),
        }
    }

    /// `(Γ, Γ_φ)`.
    pub fn rates(self) -> (f64, f64) {
        match self {
            NoisePreset::Caption => (0.002, 0.002 / 0.67),
            NoisePreset::Text => (0.001, 0.0005),
        }
    }
}

/// Options shared by the presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PresetOptions {
    pub noise: NoisePreset,
    /// `dicke-form` or `literal` for the photon-number figure.
    pub variant: &'static str,
}

impl Default for PresetOptions {
    fn default() -> Self {
        Self { noise: NoisePreset::Caption, variant: "dicke-form" }
    }
}

/// Expands a preset name into its scenarios.
pub fn preset(name: &str, opts: PresetOptions) -> Result<Vec<Scenario>> {
    match name {
        "fig1" => fig1(opts.noise),
        "fig2" => fig2(opts.variant),
        _ => Err(RunnerError::config(format!("preset `{name}` is not one of fig1, fig2"))),
    }
}

/// Six qubit runs, each paired with its constant-velocity stand-in.
pub fn fig1(noise: NoisePreset) -> Result<Vec<Scenario>> {
    let (gamma, gamma_phi) = noise.rates();
    let mut out = Vec::new();
    for kappa in FIG1_KAPPAS {
        for omega_q in FIG1_QUBIT_FREQUENCIES {
            out.push(parse_scenario(&format!(
                r#"
name = "fig1-wq{omega_q}-kappa{kappa}"
model = "qubit-rabi"
preset = "fig1"

[time]
t_final = 300.0
samples = 1501

[qubit]
omega0 = 1.0
omega_q = {omega_q:?}
g = 0.02
n_max = 15

[trajectory]
kind = "oscillatory"
omega = 2.0
compare_constant_velocity = true

[noise]
kappa = {kappa:?}
gamma = {gamma:?}
gamma_phi = {gamma_phi:?}
"#
            ))?);
        }
    }
    Ok(out)
}

fn velocity_label(v: f64) -> String {
    if v == 1.5 * PI { "3pi_2".into() } else { format!("{v}") }
}

/// Four Gaussian two-mode runs with Fock cross-checks where truncation
/// converges.
pub fn fig2(variant: &str) -> Result<Vec<Scenario>> {
    FIG2_VELOCITIES
        .iter()
        .map(|&v| {
            let cross_check = if v <= FIG2_CROSS_CHECK_LIMIT { "cross_check_n_max = [6, 12]\n" } else { "" };
            parse_scenario(&format!(
                r#"
name = "fig2-v{label}"
model = "mirror-two-mode"
preset = "fig2"

[time]
t_final = 30.0
samples = 601

[solver]
kind = "gaussian"
{cross_check}
[mirror]
variant = "{variant}"
length = {length:?}
v = {v:?}

[noise]
kappa = 0.001
"#,
                label = velocity_label(v),
                length = PI,
            ))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fig1_has_six_runs() {
        let runs = fig1(NoisePreset::Caption).unwrap();
        assert_eq!(runs.len(), 6);
        assert!(runs.iter().all(|s| s.preset.as_deref() == Some("fig1")));
        assert_eq!(runs[0].name, "fig1-wq0.5-kappa0.001");
    }

    #[test]
    fn fig2_has_four_runs() {
        let runs = fig2("dicke-form").unwrap();
        let names: Vec<_> = runs.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, ["fig2-v0.1", "fig2-v1", "fig2-v2", "fig2-v3pi_2"]);
        assert!(runs[3].solver.cross_check_n_max.is_empty());
        assert_eq!(runs[0].solver.cross_check_n_max, [6, 12]);
        assert!(fig2("sideways").is_err());
    }

    #[test]
    fn presets_round_trip() {
        for s in fig1(NoisePreset::Text).unwrap().into_iter().chain(fig2("literal").unwrap()) {
            assert_eq!(parse_scenario(&s.to_toml()).unwrap(), s);
        }
    }
}
