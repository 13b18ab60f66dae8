//! CSV and gnuplot emitters. Output is a pure function of the results.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::experiment::ExperimentResult;
use super::pairs::PairError;
use crate::error::Result;
use crate::oracles::ReferenceSeries;

pub const CSV_HEADER: &str = "t,method,potential,flux,flag";
pub const SUMMARY_HEADER: &str =
    "experiment,method,evaluations,requested,planned,max_rel_error,last_cycle_max_rel_error,failures";

fn push_reference(out: &mut String, name: &str, r: &ReferenceSeries) {
    for ((t, p), f) in r.times.iter().zip(&r.potential).zip(&r.flux) {
        let _ = writeln!(out, "{t:e},{name},{p:e},{f:e},reference");
    }
}

pub fn experiment_csv(result: &ExperimentResult) -> String {
    let [x, y] = result.config.observation;
    let mut out = format!(
        "# experiment {}: flux is the x-component of -grad(phi) at ({x}, {y})\n{CSV_HEADER}\n",
        result.config.experiment
    );
    for m in &result.methods {
        for i in 0..m.times.len() {
            let _ = writeln!(
                out,
                "{:e},{},{:e},{:e},{}",
                m.times[i],
                m.method,
                m.potential[i],
                m.flux[i],
                m.flags[i].label()
            );
        }
    }
    if let Some(s) = &result.series {
        push_reference(&mut out, "series", s);
    }
    push_reference(&mut out, "fd", &result.fd);
    out
}

/// Indices of the times in the last decade of the grid.
pub fn last_cycle(times: &[f64]) -> Vec<usize> {
    let Some(&t_max) = times.last() else { return Vec::new() };
    times.iter().enumerate().filter(|(_, &t)| t > t_max / 10.0 * (1.0 + 1e-12)).map(|(i, _)| i).collect()
}

pub fn summary_rows(result: &ExperimentResult) -> Vec<String> {
    let last = last_cycle(result.grid.times());
    result
        .methods
        .iter()
        .map(|m| {
            let last_max = last.iter().map(|&i| m.potential_error[i]).fold(0.0, f64::max);
            format!(
                "{},{},{},{},{},{:e},{:e},{}",
                result.config.experiment,
                m.method,
                m.evaluations,
                m.requested,
                m.planned,
                m.max_potential_error(),
                last_max,
                m.failures()
            )
        })
        .collect()
}

pub fn summary_csv(results: &[ExperimentResult]) -> String {
    let mut out = format!("{SUMMARY_HEADER}\n");
    for r in results {
        for row in summary_rows(r) {
            out.push_str(&row);
            out.push('\n');
        }
    }
    out
}

/// Whitespace columns `t potential flux`, one indexed block per series.
pub fn gnuplot_data(result: &ExperimentResult) -> String {
    let mut out = String::new();
    let mut block = |name: &str, t: &[f64], p: &[f64], f: &[f64]| {
        let _ = writeln!(out, "# {name}");
        for i in 0..t.len() {
            let _ = writeln!(out, "{:e} {:e} {:e}", t[i], p[i], f[i]);
        }
        out.push_str("\n\n");
    };
    for m in &result.methods {
        block(m.method.name(), &m.times, &m.potential, &m.flux);
    }
    if let Some(s) = &result.series {
        block("series", &s.times, &s.potential, &s.flux);
    }
    block("fd", &result.fd.times, &result.fd.potential, &result.fd.flux);
    out
}

pub fn pairs_csv(rows: &[PairError]) -> String {
    let mut out = String::from("method,pair,max_rel_error,mean_rel_error,max_abs_error,evaluations,failures\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{:e},{:e},{:e},{},{}",
            r.method, r.pair, r.max_relative, r.mean_relative, r.max_absolute, r.evaluations, r.failures
        );
    }
    out
}

/// Writes `experiment_<id>.csv` (and `.dat` with `gnuplot`) plus
/// `summary.csv` into `dir`; returns the paths written.
pub fn write_outputs(dir: &Path, results: &[ExperimentResult], gnuplot: bool) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for r in results {
        let path = dir.join(format!("experiment_{}.csv", r.config.experiment));
        fs::write(&path, experiment_csv(r))?;
        written.push(path);
        if gnuplot {
            let path = dir.join(format!("experiment_{}.dat", r.config.experiment));
            fs::write(&path, gnuplot_data(r))?;
            written.push(path);
        }
    }
    let path = dir.join("summary.csv");
    fs::write(&path, summary_csv(results))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn last_decade() {
        let times = [0.01, 0.1, 0.5, 1.0, 2.0, 10.0];
        assert_eq!(last_cycle(&times), vec![4, 5]);
        assert!(last_cycle(&[]).is_empty());
    }
}
