//! Scenario runner for the moving-qubit and moving-mirror simulations.
//!
//! Scenarios are TOML files describing one model, its motion, noise and
//! outputs. Runs produce one CSV per track set plus a JSON summary.

pub mod error;
pub mod presets;
pub mod run;
pub mod scenario;
pub mod sweep;

pub use error::{Result, RunnerError};
pub use presets::{preset, NoisePreset, PresetOptions};
pub use run::{run_batch, run_scenario, BatchSummary, RunSummary};
pub use scenario::{parse_scenario, Scenario};
pub use sweep::{parse_values, sweep, SweepResult};

/// Reads and validates a scenario file.
pub fn load_scenario(path: &std::path::Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| RunnerError::config(format!("cannot read scenario file {}: {e}", path.display())))?;
    parse_scenario(&text)
}
