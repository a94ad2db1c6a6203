//! Sampled observable tracks.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Named real sequences sampled on a common, increasing time grid.
///
/// Tracks keep their insertion order, which fixes the column order of any
/// table written from them.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TimeSeries {
    times: Vec<f64>,
    tracks: Vec<(String, Vec<f64>)>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        check_grid(&times)?;
        Ok(Self { times, tracks: Vec::new() })
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Adds or replaces a track. Its length must match the grid.
    pub fn insert(&mut self, name: &str, values: Vec<f64>) -> Result<()> {
        if values.len() != self.times.len() {
            return Err(Error::DimensionMismatch { expected: self.times.len(), found: values.len() });
        }
        match self.tracks.iter_mut().find(|(n, _)| n == name) {
            Some((_, slot)) => *slot = values,
            None => self.tracks.push((name.to_string(), values)),
        }
        Ok(())
    }

    pub fn track(&self, name: &str) -> Option<&[f64]> {
        self.tracks.iter().find(|(n, _)| n == name).map(|(_, v)| v.as_slice())
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.tracks.iter().map(|(n, _)| n.as_str())
    }

    pub fn tracks(&self) -> impl Iterator<Item = (&str, &[f64])> {
        self.tracks.iter().map(|(n, v)| (n.as_str(), v.as_slice()))
    }

    /// Largest absolute difference of a track between two series on the
    /// same grid.
    pub fn max_abs_difference(&self, other: &TimeSeries, name: &str) -> Option<f64> {
        let (a, b) = (self.track(name)?, other.track(name)?);
        if a.len() != b.len() {
            return None;
        }
        Some(a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
    }

    fn mode_tracks(&self) -> Vec<&[f64]> {
        self.tracks
            .iter()
            .filter(|(n, _)| is_mode_number(n))
            .map(|(_, v)| v.as_slice())
            .collect()
    }

    fn available(&self) -> String {
        let mut names: Vec<String> = self.names().map(ToString::to_string).collect();
        if !self.mode_tracks().is_empty() && self.track("n_total").is_none() {
            names.push("n_total".into());
        }
        if self.track("norm").is_some() && self.track("trace").is_none() {
            names.push("trace".into());
        }
        names.join(", ")
    }
}

/// `n1`, `n2`, ... name the mean photon number of a mode.
fn is_mode_number(name: &str) -> bool {
    name.strip_prefix('n').is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
}

fn check_grid(times: &[f64]) -> Result<()> {
    if times.len() < 2 {
        return Err(Error::Domain(alloc::format!("time grid needs at least 2 points, got {}", times.len())));
    }
    if times.iter().any(|t| !t.is_finite()) || times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Domain("time grid must be finite and strictly increasing".into()));
    }
    Ok(())
}

/// Requested tracks, in request order.
///
/// Besides stored tracks, `n_total` is the sum of the per-mode tracks
/// `n1, n2, ...` and `trace` on a unitary run is the squared norm.
pub fn observables(series: &TimeSeries, names: &[&str]) -> Result<Vec<(String, Vec<f64>)>> {
    names
        .iter()
        .map(|&name| {
            if let Some(values) = series.track(name) {
                return Ok((name.to_string(), values.to_vec()));
            }
            let derived = match name {
                "n_total" => {
                    let modes = series.mode_tracks();
                    (!modes.is_empty()).then(|| {
                        (0..series.len()).map(|i| modes.iter().map(|m| m[i]).sum()).collect()
                    })
                }
                "trace" => series.track("norm").map(|norm| norm.iter().map(|n| n * n).collect()),
                _ => None,
            };
            derived
                .map(|values| (name.to_string(), values))
                .ok_or_else(|| Error::UnknownTrack { name: name.to_string(), available: series.available() })
        })
        .collect()
}
