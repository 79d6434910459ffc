//! CSV and JSON writers for experiment results.
//!
//! Pair CSVs have one row per pair and batch for a single PID kind, with columns
//! `batch, i, j, is_interaction, pid_kind, R, U_X, U_Y, S, MI, rank_R, rank_U_X,
//! rank_U_Y, rank_S, rank_MI`. For interaction pairs `i` is the switch node. Values are
//! nats; infinities print as `inf` / `-inf`. Leading `#` lines echo the configuration.

use crate::experiments::{BatchScan, Experiment1, Experiment2, Experiment3, ExperimentConfig};
use crate::HarnessError;
use pidnet_core::{Ext, PidKind};
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

pub const PAIR_COLUMNS: [&str; 15] = [
    "batch",
    "i",
    "j",
    "is_interaction",
    "pid_kind",
    "R",
    "U_X",
    "U_Y",
    "S",
    "MI",
    "rank_R",
    "rank_U_X",
    "rank_U_Y",
    "rank_S",
    "rank_MI",
];

/// Shortest round-trip form, switching to exponent notation outside `[1e-4, 1e16)`.
pub fn format_f64(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || !v.is_finite() || (1e-4..1e16).contains(&a) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn format_ext(v: Ext) -> String {
    v.value().map_or_else(|| v.to_string(), format_f64)
}

fn config_header(config: &ExperimentConfig) -> Result<String, HarnessError> {
    let value = serde_json::to_value(config)?;
    let mut out = String::new();
    if let serde_json::Value::Object(map) = value {
        for (k, v) in map {
            out.push_str(&format!("# {k} = {v}\n"));
        }
    }
    Ok(out)
}

pub fn write_pairs_csv(
    path: &Path,
    config: &ExperimentConfig,
    scans: &[BatchScan],
    kind: PidKind,
) -> Result<(), HarnessError> {
    let mut file = BufWriter::new(File::create(path)?);
    file.write_all(config_header(config)?.as_bytes())?;
    let mut w = csv::Writer::from_writer(file);
    w.write_record(PAIR_COLUMNS)?;
    for scan in scans {
        let ranks = scan.ranks_for(kind);
        for (idx, pair) in scan.pairs.iter().enumerate() {
            let d = pair.pid(kind).expect("kind was scanned");
            let mut row = vec![
                pair.batch.to_string(),
                pair.x.to_string(),
                pair.y.to_string(),
                pair.is_interaction.to_string(),
                kind.label().to_string(),
                format_ext(d.r),
                format_ext(d.u_x),
                format_ext(d.u_y),
                format_ext(d.s),
                format_f64(pair.mi_xy),
            ];
            row.extend(ranks.ranks[idx].iter().map(|&r| format_f64(r)));
            w.write_record(&row)?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), HarnessError> {
    let mut file = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut file, value)?;
    file.write_all(b"\n")?;
    file.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Summary<'a, T: Serialize> {
    experiment: u8,
    config: &'a ExperimentConfig,
    #[serde(flatten)]
    body: T,
}

fn pair_csvs(dir: &Path, stem: &str, config: &ExperimentConfig, scans: &[BatchScan]) -> Result<Vec<PathBuf>, HarnessError> {
    PidKind::ALL
        .iter()
        .map(|&kind| {
            let path = dir.join(format!("{stem}_{}.csv", kind.label()));
            write_pairs_csv(&path, config, scans, kind)?;
            Ok(path)
        })
        .collect()
}

/// Float formatted for file names: `0.25` → `0.25`, `-4` → `-4`.
fn grid_label(v: f64) -> String {
    format!("{v}")
}

impl Experiment1 {
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
        let mut files = pair_csvs(dir, "exp1_pairs", &self.config, &self.scans)?;
        let path = dir.join("exp1_summary.json");
        write_json(&path, &Summary { experiment: 1, config: &self.config, body: &self.summary })?;
        files.push(path);
        Ok(files)
    }
}

impl Experiment2 {
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
        let mut files = Vec::new();
        for p in &self.points {
            files.extend(pair_csvs(dir, &format!("exp2_beta_{}_pairs", grid_label(p.beta)), &self.config, &p.scans)?);
        }
        #[derive(Serialize)]
        struct Body<'a> {
            points: Vec<&'a crate::experiments::BetaSummary>,
        }
        let path = dir.join("exp2_summary.json");
        let body = Body {
            points: self.points.iter().map(|p| &p.summary).collect(),
        };
        write_json(&path, &Summary { experiment: 2, config: &self.config, body })?;
        files.push(path);
        Ok(files)
    }
}

impl Experiment3 {
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>, HarnessError> {
        let mut files = Vec::new();
        for (p, scans) in self.points.iter().zip(&self.scans) {
            files.extend(pair_csvs(dir, &format!("exp3_alpha_{}_pairs", grid_label(p.alpha)), &self.config, scans)?);
        }
        #[derive(Serialize)]
        struct Body<'a> {
            points: &'a [crate::experiments::AlphaPoint],
            summary: &'a crate::experiments::Experiment3Summary,
        }
        let path = dir.join("exp3_summary.json");
        let body = Body {
            points: &self.points,
            summary: &self.summary,
        };
        write_json(&path, &Summary { experiment: 3, config: &self.config, body })?;
        files.push(path);
        Ok(files)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for v in [0.0, 1.0, 0.25, 4.163336342344337e-17, -1.2e-9, 3.5e20, 0.5326] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(format_f64(4.163336342344337e-17), "4.163336342344337e-17");
        assert_eq!(format_ext(Ext::PosInf), "inf");
        assert_eq!(format_ext(Ext::NegInf), "-inf");
    }
}
