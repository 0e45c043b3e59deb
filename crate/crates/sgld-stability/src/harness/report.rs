//! Experiment reports: JSON payloads plus per-curve CSV emission.
//!
//! Reports are byte-identical across runs with the same config and seed;
//! the wall-time field is the only run-dependent entry and is zeroed by
//! [`ExperimentReport::canonical_json`] for comparisons.

use super::config::ExperimentConfig;
use crate::Result;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

/// One named curve on a shared abscissa. `t` is physical time for
/// trajectory curves, the learning rate for scaling studies, and the
/// sweep variable for sweeps; `analytic_bound` is empty when no bound
/// applies to the curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Curve {
    pub name: String,
    pub t: Vec<f64>,
    pub empirical_mean: Vec<f64>,
    pub empirical_sem: Vec<f64>,
    pub analytic_bound: Vec<f64>,
}

impl Curve {
    pub fn new(name: impl Into<String>, t: Vec<f64>) -> Self {
        Curve {
            name: name.into(),
            t,
            empirical_mean: Vec::new(),
            empirical_sem: Vec::new(),
            analytic_bound: Vec::new(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::from("t,empirical_mean,empirical_sem,analytic_bound\n");
        let field = |v: Option<&f64>| match v {
            Some(x) => format!("{x:.16e}"),
            None => String::new(),
        };
        for (i, t) in self.t.iter().enumerate() {
            out.push_str(&format!(
                "{t:.16e},{},{},{}\n",
                field(self.empirical_mean.get(i)),
                field(self.empirical_sem.get(i)),
                field(self.analytic_bound.get(i)),
            ));
        }
        out
    }
}

/// A fitted slope with its 95% confidence interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub name: String,
    pub slope: f64,
    pub intercept: f64,
    pub slope_ci_low: f64,
    pub slope_ci_high: f64,
}

/// A named pass/fail outcome.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: ExperimentConfig,
    /// The exact bound-module constants the verdicts were computed from.
    pub constants: BTreeMap<String, f64>,
    pub curves: Vec<Curve>,
    pub fits: Vec<FitReport>,
    pub verdicts: Vec<Verdict>,
    pub wall_time_ms: u64,
}

impl ExperimentReport {
    pub fn new(experiment: impl Into<String>, config: &ExperimentConfig) -> Self {
        ExperimentReport {
            experiment: experiment.into(),
            config: config.clone(),
            constants: BTreeMap::new(),
            curves: Vec::new(),
            fits: Vec::new(),
            verdicts: Vec::new(),
            wall_time_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn curve(&self, name: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.name == name)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn fit(&self, name: &str) -> Option<&FitReport> {
        self.fits.iter().find(|f| f.name == name)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// JSON with the wall-time zeroed: the reproducibility comparison form.
    pub fn canonical_json(&self) -> Result<String> {
        let mut clone = self.clone();
        clone.wall_time_ms = 0;
        clone.to_json()
    }

    /// All curves as CSV blocks, each preceded by a `# curve: <name>` line.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for c in &self.curves {
            out.push_str(&format!("# curve: {}\n", c.name));
            out.push_str(&c.csv());
        }
        out
    }

    /// Write `report.json` and one CSV file per curve into `dir`.
    pub fn write_to_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let mut f = std::fs::File::create(dir.join("report.json"))?;
        f.write_all(self.to_json()?.as_bytes())?;
        for c in &self.curves {
            let safe: String = c
                .name
                .chars()
                .map(|ch| if ch.is_alphanumeric() || ch == '_' || ch == '-' { ch } else { '_' })
                .collect();
            let mut f = std::fs::File::create(dir.join(format!("{safe}.csv")))?;
            f.write_all(c.csv().as_bytes())?;
        }
        Ok(())
    }

    /// One line per verdict, `PASS`/`FAIL` first.
    pub fn verdict_lines(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&format!(
                "[{}] {}: {}\n",
                if v.passed { "PASS" } else { "FAIL" },
                v.name,
                v.detail
            ));
        }
        out
    }
}
