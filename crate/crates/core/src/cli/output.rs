//! Result files: JSON records, CSV tables and atomic writes.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::input::{encode_matrix, RawMatrix};
use super::CliError;
use crate::optim::{OptConfig, OptReport};
use crate::orbit::RangeEstimate;
use crate::region::SupportRegion;
use crate::verify::VerificationReport;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: ConfigEcho,
    pub instances: Vec<InstanceResult>,
}

/// Everything that influenced the numbers in the file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub directions: usize,
    pub haar_samples: usize,
    pub smax_factor: f64,
    pub tolerance: Option<f64>,
    pub threads: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub side: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<[f64; 2]>,
    pub optimizer: OptConfig,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceResult {
    pub label: String,
    pub seed: u64,
    pub regions: Vec<RegionRecord>,
    pub witnesses: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<VerificationReport>,
}

impl InstanceResult {
    pub fn new(label: String, seed: u64) -> Self {
        Self { label, seed, regions: Vec::new(), witnesses: Vec::new(), norm: None, report: None }
    }

    pub fn region(&self, name: &str) -> Option<&RegionRecord> {
        self.regions.iter().find(|r| r.name == name)
    }
}

/// A region as `[theta, h]` samples and polygon vertices, with per-direction
/// optimizer data when it was computed by optimization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    pub name: String,
    pub support: Vec<[f64; 2]>,
    pub vertices: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residuals: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restart_spread: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<SideDiagnostics>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideDiagnostics {
    pub total_iterations: usize,
    pub unconverged_directions: usize,
    pub max_restart_spread: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_ray_residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormRecord {
    pub z: [f64; 2],
    pub value: f64,
    pub maximizer: RawMatrix,
    pub restarts_used: usize,
    pub iterations: usize,
    pub converged: bool,
    pub best_per_restart: Vec<f64>,
    /// `[s / sqrt(n), sqrt(n) s]` with `s` the spectral norm of the matricized shifted operator.
    pub matricized_bounds: [f64; 2],
}

impl NormRecord {
    pub fn new(z: Complex64, report: &OptReport, bounds: [f64; 2]) -> Self {
        Self {
            z: [z.re, z.im],
            value: report.value,
            maximizer: encode_matrix(report.maximizer.as_matrix()),
            restarts_used: report.restarts_used,
            iterations: report.iterations,
            converged: report.converged,
            best_per_restart: report.best_per_restart.clone(),
            matricized_bounds: bounds,
        }
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

impl RegionRecord {
    pub fn from_region(name: &str, region: &SupportRegion) -> Self {
        Self {
            name: name.into(),
            support: region.directions().into_iter().zip(region.support()).map(|(t, h)| [t, *h]).collect(),
            vertices: region.vertices().iter().map(|z| pair(*z)).collect(),
            residuals: None,
            restart_spread: None,
            diagnostics: None,
        }
    }

    pub fn from_estimate(name: &str, est: &RangeEstimate) -> Self {
        let banach = !est.residuals.is_empty();
        Self {
            residuals: banach.then(|| est.residuals.clone()),
            restart_spread: Some(est.reports.iter().map(|r| r.restart_spread()).collect()),
            diagnostics: Some(SideDiagnostics {
                total_iterations: est.total_iterations(),
                unconverged_directions: est.unconverged(),
                max_restart_spread: est.max_restart_spread(),
                max_ray_residual: banach.then(|| est.max_residual()),
            }),
            ..Self::from_region(name, &est.region)
        }
    }
}

pub fn witnesses(est: &RangeEstimate) -> Vec<[f64; 2]> {
    est.samples.points().iter().map(|z| pair(*z)).collect()
}

pub fn to_json(result: &ResultFile) -> String {
    let mut s = serde_json::to_string_pretty(result).expect("result serializes");
    s.push('\n');
    s
}

/// `instance,theta,h_<region>...,residual,restart_spread`, one row per
/// direction and instance. Missing values are empty fields.
pub fn to_csv(result: &ResultFile) -> Result<String, CliError> {
    let Some(first) = result.instances.first() else {
        return Err(CliError::Usage("csv output needs at least one instance".into()));
    };
    let names: Vec<&str> = first.regions.iter().map(|r| r.name.as_str()).collect();
    if names.is_empty() {
        return Err(CliError::Usage(format!("the {} command produces no regions; csv needs one", result.command)));
    }
    let mut out = String::from("instance,theta");
    for n in &names {
        out.push_str(&format!(",h_{n}"));
    }
    out.push_str(",residual,restart_spread\n");
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for inst in &result.instances {
        let regions: Vec<&RegionRecord> =
            names.iter().map(|n| inst.region(n).expect("every instance has the same regions")).collect();
        let m = regions[0].support.len();
        for j in 0..m {
            out.push_str(&format!("{},{}", csv_field(&inst.label), regions[0].support[j][0]));
            for r in &regions {
                out.push_str(&format!(",{}", r.support[j][1]));
            }
            let residual = regions.iter().find_map(|r| r.residuals.as_ref().map(|v| v[j]));
            let spread = regions
                .iter()
                .filter_map(|r| r.restart_spread.as_ref().map(|v| v[j]))
                .fold(None, |acc: Option<f64>, x| Some(acc.map_or(x, |a| a.max(x))));
            out.push_str(&format!(",{},{}\n", opt(residual), opt(spread)));
        }
    }
    Ok(out)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(contents.as_bytes()).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
