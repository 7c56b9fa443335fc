//! CSV and JSON artifact emission, plus parse-back for `bench summarize`.
//!
//! Files written to the output directory:
//! - `history_<problem>_<dims>d_<method>_rep<k>.csv`, one row per
//!   evaluation: `eval_index,value,running_best,restart_flag`
//! - `bands_<problem>_<dims>d_<method>.csv`: `eval_index,p25,p50,p75`
//! - `summary.csv` and `summary.json`: one row per (problem, method)
//! - `runs.json`: per-run metadata (seed, wall time, restarts)
//!
//! All floats are serialized with 17 significant digits, so re-running a
//! suite with the same config reproduces byte-identical files.

use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use crate::suite::{percentile_bands, summarize, Method, RunArtifact, SummaryRow};

/// 17 significant digits, round-trip exact for f64.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunMeta {
    pub problem: String,
    pub n_dims: usize,
    pub method: Method,
    pub repeat: usize,
    pub seed: u64,
    pub n_evals: usize,
    pub wall_time_secs: f64,
    pub restarts: Vec<usize>,
}

fn group_tag(problem: &str, n_dims: usize, method: Method) -> String {
    format!("{problem}_{n_dims}d_{}", method.as_str())
}

/// Writes every artifact for the given runs into `out_dir`.
pub fn emit(runs: &[RunArtifact], out_dir: &Path) -> Result<()> {
    fs::create_dir_all(out_dir)
        .with_context(|| format!("creating output directory {}", out_dir.display()))?;

    for run in runs {
        let name = format!(
            "history_{}_rep{}.csv",
            group_tag(&run.problem, run.n_dims, run.method),
            run.repeat
        );
        let path = out_dir.join(name);
        let mut text = String::from("eval_index,value,running_best,restart_flag\n");
        for entry in &run.result.record.history {
            // restarts holds the evaluation count at which each restart
            // began, so the restart's first evaluation is count + 1.
            let flag = run
                .result
                .record
                .restarts
                .iter()
                .any(|&c| c + 1 == entry.eval_index);
            text.push_str(&format!(
                "{},{},{},{}\n",
                entry.eval_index,
                fmt(entry.value),
                fmt(entry.running_best),
                u8::from(flag)
            ));
        }
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }

    let mut groups: Vec<(String, usize, Method)> = Vec::new();
    for r in runs {
        let key = (r.problem.clone(), r.n_dims, r.method);
        if !groups.contains(&key) {
            groups.push(key);
        }
    }
    for (problem, n_dims, method) in &groups {
        let curves: Vec<Vec<f64>> = runs
            .iter()
            .filter(|r| r.problem == *problem && r.n_dims == *n_dims && r.method == *method)
            .map(|r| r.running_best_curve())
            .collect();
        let bands = percentile_bands(&curves)?;
        let path = out_dir.join(format!("bands_{}.csv", group_tag(problem, *n_dims, *method)));
        let mut text = String::from("eval_index,p25,p50,p75\n");
        for i in 0..bands.p50.len() {
            text.push_str(&format!(
                "{},{},{},{}\n",
                i + 1,
                fmt(bands.p25[i]),
                fmt(bands.p50[i]),
                fmt(bands.p75[i])
            ));
        }
        fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?;
    }

    let summary = summarize(runs);
    write_summary_csv(&summary, &out_dir.join("summary.csv"))?;
    let json = serde_json::to_string_pretty(&summary)?;
    fs::write(out_dir.join("summary.json"), json + "\n")?;

    let metas: Vec<RunMeta> = runs
        .iter()
        .map(|r| RunMeta {
            problem: r.problem.clone(),
            n_dims: r.n_dims,
            method: r.method,
            repeat: r.repeat,
            seed: r.seed,
            n_evals: r.result.n_evals_used,
            wall_time_secs: r.result.record.wall_time_secs,
            restarts: r.result.record.restarts.clone(),
        })
        .collect();
    let json = serde_json::to_string_pretty(&metas)?;
    fs::write(out_dir.join("runs.json"), json + "\n")?;
    Ok(())
}

pub fn write_summary_csv(rows: &[SummaryRow], path: &Path) -> Result<()> {
    let mut text = String::from("problem,n_dims,method,best,median,worst,median_time_min\n");
    for r in rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            r.problem,
            r.n_dims,
            r.method.as_str(),
            fmt(r.best),
            fmt(r.median),
            fmt(r.worst),
            fmt(r.median_time_min)
        ));
    }
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

/// A history parsed back from disk, sufficient to recompute bands and
/// summary rows.
#[derive(Debug, Clone)]
pub struct ParsedHistory {
    pub problem: String,
    pub n_dims: usize,
    pub method: Method,
    pub repeat: usize,
    pub running_best: Vec<f64>,
}

fn parse_history_name(name: &str) -> Option<(String, usize, Method, usize)> {
    let stem = name.strip_prefix("history_")?.strip_suffix(".csv")?;
    let (rest, rep) = stem.rsplit_once("_rep")?;
    let repeat: usize = rep.parse().ok()?;
    let mut parts = rest.rsplitn(3, '_');
    let method = Method::parse(parts.next()?).ok()?;
    let dims_part = parts.next()?;
    let n_dims: usize = dims_part.strip_suffix('d')?.parse().ok()?;
    let problem = parts.next()?.to_string();
    Some((problem, n_dims, method, repeat))
}

/// Reads all history CSVs (and run metadata, if present) from a suite
/// output directory.
pub fn load_dir(dir: &Path) -> Result<(Vec<ParsedHistory>, Vec<RunMeta>)> {
    let mut histories = Vec::new();
    let entries =
        fs::read_dir(dir).with_context(|| format!("reading directory {}", dir.display()))?;
    for entry in entries {
        let entry = entry?;
        let file_name = entry.file_name();
        let name = file_name.to_string_lossy();
        let Some((problem, n_dims, method, repeat)) = parse_history_name(&name) else {
            continue;
        };
        let text = fs::read_to_string(entry.path())
            .with_context(|| format!("reading {}", entry.path().display()))?;
        let mut running_best = Vec::new();
        for (lineno, line) in text.lines().enumerate().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 4 {
                bail!("{name}:{}: expected 4 fields", lineno + 1);
            }
            let value: f64 = fields[2]
                .parse()
                .with_context(|| format!("{name}:{}: bad running_best", lineno + 1))?;
            running_best.push(value);
        }
        histories.push(ParsedHistory {
            problem,
            n_dims,
            method,
            repeat,
            running_best,
        });
    }
    if histories.is_empty() {
        bail!("no history CSVs found in {}", dir.display());
    }
    histories.sort_by(|a, b| {
        (&a.problem, a.n_dims, a.method.as_str(), a.repeat)
            .cmp(&(&b.problem, b.n_dims, b.method.as_str(), b.repeat))
    });

    let metas_path = dir.join("runs.json");
    let metas = if metas_path.exists() {
        serde_json::from_str(&fs::read_to_string(&metas_path)?)
            .with_context(|| format!("parsing {}", metas_path.display()))?
    } else {
        Vec::new()
    };
    Ok((histories, metas))
}

/// Recomputes summary rows from parsed histories; wall times come from the
/// run metadata when available.
pub fn summarize_parsed(histories: &[ParsedHistory], metas: &[RunMeta]) -> Vec<SummaryRow> {
    let mut keys: Vec<(String, usize, Method)> = Vec::new();
    for h in histories {
        let key = (h.problem.clone(), h.n_dims, h.method);
        if !keys.contains(&key) {
            keys.push(key);
        }
    }
    keys.into_iter()
        .map(|(problem, n_dims, method)| {
            let finals: Vec<f64> = histories
                .iter()
                .filter(|h| h.problem == problem && h.n_dims == n_dims && h.method == method)
                .map(|h| *h.running_best.last().expect("non-empty history"))
                .collect();
            let times: Vec<f64> = metas
                .iter()
                .filter(|m| m.problem == problem && m.n_dims == n_dims && m.method == method)
                .map(|m| m.wall_time_secs / 60.0)
                .collect();
            let median_time_min = if times.is_empty() {
                f64::NAN
            } else {
                crate::suite::percentile(&times, 50.0)
            };
            SummaryRow {
                problem,
                n_dims,
                method,
                best: finals.iter().copied().fold(f64::INFINITY, f64::min),
                median: crate::suite::percentile(&finals, 50.0),
                worst: finals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                median_time_min,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_round_trips_f64() {
        for v in [0.1, 1.0 / 3.0, 1e-300, 123456.789, f64::MIN_POSITIVE] {
            let s = fmt(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
    }

    #[test]
    fn history_names_parse() {
        let (p, d, m, r) = parse_history_name("history_ackley_10d_snbo_rep3.csv").unwrap();
        assert_eq!(p, "ackley");
        assert_eq!(d, 10);
        assert_eq!(m, Method::Snbo);
        assert_eq!(r, 3);
        assert!(parse_history_name("bands_ackley_10d_snbo.csv").is_none());
        assert!(parse_history_name("summary.csv").is_none());
    }
}
