//! Parameter sweeps: one scenario, one numeric field varied, one table.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::error::{Result, RunnerError};
use crate::run::{compute_run, format_value, units_for, with_pool, RunOutput, RunSummary};
use crate::scenario::{ModelKind, Scenario};

/// Parses `a,b,c` or `start:stop:count` (inclusive, evenly spaced).
pub fn parse_values(list: &str) -> Result<Vec<f64>> {
    let bad = |item: &str| RunnerError::config(format!("sweep value `{item}` is not a number"));
    let values: Vec<f64> = if let [start, stop, count] = list.split(':').collect::<Vec<_>>()[..] {
        let start: f64 = start.trim().parse().map_err(|_| bad(start))?;
        let stop: f64 = stop.trim().parse().map_err(|_| bad(stop))?;
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| RunnerError::config(format!("sweep count `{count}` is not a positive integer")))?;
        match count {
            0 => Vec::new(),
            1 => vec![start],
            _ => (0..count).map(|i| start + (stop - start) * i as f64 / (count - 1) as f64).collect(),
        }
    } else {
        list.split(',').map(|item| item.trim().parse().map_err(|_| bad(item))).collect::<Result<_>>()?
    };
    if values.is_empty() {
        return Err(RunnerError::config("sweep needs at least one value"));
    }
    if let Some(v) = values.iter().find(|v| !v.is_finite()) {
        return Err(RunnerError::config(format!("sweep value {v} is not finite")));
    }
    Ok(values)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub value: f64,
    pub summary: RunSummary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis: String,
    pub model: ModelKind,
    /// One row per value, in input order.
    pub rows: Vec<SweepRow>,
}

/// Runs `base` once per value of `axis`, in parallel.
pub fn sweep(base: &Scenario, axis: &str, values: &[f64], workers: usize) -> Result<SweepResult> {
    let scenarios = values.iter().map(|&v| base.with_axis(axis, v)).collect::<Result<Vec<_>>>()?;
    let outputs: Vec<Result<RunOutput>> =
        with_pool(workers, || scenarios.par_iter().map(compute_run).collect())?;
    let rows = values
        .iter()
        .zip(outputs)
        .map(|(&value, out)| match out {
            Ok(out) => Ok(SweepRow { value, summary: out.summary }),
            Err(RunnerError::Numerical { run, source }) => {
                Err(RunnerError::Numerical { run: format!("{run}[{axis}={value}]"), source })
            }
            Err(e) => Err(e),
        })
        .collect::<Result<_>>()?;
    Ok(SweepResult { axis: axis.into(), model: base.model.kind(), rows })
}

fn cell(x: Option<f64>) -> String {
    x.map(format_value).unwrap_or_default()
}

impl SweepResult {
    /// Index of the row with the largest peak `P_e`.
    pub fn peak_p_e_row(&self) -> Option<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.summary.metrics().peak_p_e.map(|p| (i, p)))
            .fold(None, |best: Option<(usize, f64)>, (i, p)| match best {
                Some((_, bp)) if bp >= p => best,
                _ => Some((i, p)),
            })
            .map(|(i, _)| i)
    }

    /// CSV text: a units comment, then the swept value and model-specific metrics.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![self.axis.clone()];
        let extra: &[&str] = match self.model {
            ModelKind::QubitRabi => &["peak_P_e", "t_peak_P_e", "final_P_e", "final_n_total", "max_delta_P_e"],
            ModelKind::MirrorTwoMode => &["peak_n_total", "final_n_total", "omega", "omega_critical", "stable"],
            ModelKind::MirrorMultimode => &["peak_n_total", "final_n_total"],
        };
        header.extend(extra.iter().map(|s| s.to_string()));
        w.write_record(&header).expect("in-memory write");
        for row in &self.rows {
            let s = &row.summary;
            let m = s.metrics();
            let mut record = vec![format_value(row.value)];
            match self.model {
                ModelKind::QubitRabi => record.extend([
                    cell(m.peak_p_e),
                    cell(m.t_peak_p_e),
                    cell(m.final_p_e),
                    format_value(m.final_n_total),
                    cell(s.trajectory_max_delta_p_e),
                ]),
                ModelKind::MirrorTwoMode => {
                    let st = s.stability.as_ref();
                    record.extend([
                        format_value(m.peak_n_total),
                        format_value(m.final_n_total),
                        cell(st.map(|x| x.omega)),
                        cell(st.and_then(|x| x.omega_critical)),
                        st.map(|x| x.stable.to_string()).unwrap_or_default(),
                    ]);
                }
                ModelKind::MirrorMultimode => {
                    record.extend([format_value(m.peak_n_total), format_value(m.final_n_total)])
                }
            }
            w.write_record(&record).expect("in-memory write");
        }
        let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output");
        format!("# units: {}\n{body}", units_for(self.model))
    }

    /// Writes `sweep-<axis>.csv` into `out_dir` and returns its path.
    pub fn write(&self, out_dir: &Path) -> Result<PathBuf> {
        fs::create_dir_all(out_dir).map_err(|e| RunnerError::io(out_dir, e))?;
        let path = out_dir.join(format!("sweep-{}.csv", self.axis));
        fs::write(&path, self.to_csv()).map_err(|e| RunnerError::io(&path, e))?;
        Ok(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_lists() {
        assert_eq!(parse_values("1, 2.5,3").unwrap(), [1.0, 2.5, 3.0]);
        assert_eq!(parse_values("0:1:5").unwrap(), [0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(parse_values("2:3:1").unwrap(), [2.0]);
        assert!(parse_values("1,x").is_err());
        assert!(parse_values("0:1:0").is_err());
        assert!(parse_values("0:1:x").is_err());
        assert!(parse_values("inf").is_err());
    }
}
