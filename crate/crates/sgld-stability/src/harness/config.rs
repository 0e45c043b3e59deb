//! Experiment configuration: a single strict JSON document. Unknown keys
//! are rejected so that a typo cannot silently change an experiment.

use crate::dynamics::{InitialDist, KernelKind, SgldConfig, Variant};
use crate::loss::LossModel;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    Stability,
    Generalization,
    Contraction,
    Discretization,
    Verify,
}

impl ExperimentKind {
    pub fn name(&self) -> &'static str {
        match self {
            ExperimentKind::Stability => "stability",
            ExperimentKind::Generalization => "generalization",
            ExperimentKind::Contraction => "contraction",
            ExperimentKind::Discretization => "discretization",
            ExperimentKind::Verify => "verify",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    Quadratic,
    PseudoHuber,
    CosineDissipative,
}

fn default_z_max() -> f64 {
    1.0
}

/// Loss family selection.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LossSpec {
    pub family: FamilyKind,
    #[serde(default = "default_z_max")]
    pub z_max: f64,
    /// Cosine family: oscillation amplitude `a`.
    #[serde(default)]
    pub amplitude: Option<f64>,
    /// Cosine family: oscillation direction `w` (defaults to `1.5 e_1`-style
    /// unit direction).
    #[serde(default)]
    pub direction: Option<Vec<f64>>,
    /// Nominal Lipschitz scale for bound evaluation when the family has no
    /// global Lipschitz constant (the quadratic contraction study pins its
    /// reference constants this way).
    #[serde(default)]
    pub nominal_lipschitz: Option<f64>,
}

impl LossSpec {
    pub fn quadratic() -> Self {
        LossSpec {
            family: FamilyKind::Quadratic,
            z_max: 1.0,
            amplitude: None,
            direction: None,
            nominal_lipschitz: None,
        }
    }

    pub fn pseudo_huber() -> Self {
        LossSpec {
            family: FamilyKind::PseudoHuber,
            ..LossSpec::quadratic()
        }
    }

    pub fn cosine() -> Self {
        LossSpec {
            family: FamilyKind::CosineDissipative,
            ..LossSpec::quadratic()
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum VariantSpec {
    #[default]
    Plain,
    Projected { radius: f64 },
    Anisotropic { sigma: Vec<Vec<f64>> },
    Multistep { t_sub: usize },
}

impl VariantSpec {
    pub fn to_variant(&self) -> Variant {
        match self {
            VariantSpec::Plain => Variant::Plain,
            VariantSpec::Projected { radius } => Variant::Projected { radius: *radius },
            VariantSpec::Anisotropic { sigma } => Variant::Anisotropic {
                sigma: sigma.clone(),
            },
            VariantSpec::Multistep { t_sub } => Variant::Multistep { t_sub: *t_sub },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitSpec {
    #[default]
    Origin,
    Point { x0: Vec<f64> },
    Gaussian { sigma: f64 },
}

impl InitSpec {
    pub fn to_dist(&self, d: usize) -> Result<InitialDist> {
        match self {
            InitSpec::Origin => Ok(InitialDist::origin(d)),
            InitSpec::Point { x0 } => {
                crate::vecmath::check_dims(x0, d)?;
                crate::vecmath::check_finite(x0, "initial point")?;
                Ok(InitialDist::PointMass(x0.clone()))
            }
            InitSpec::Gaussian { sigma } => {
                if !(*sigma >= 0.0) || !sigma.is_finite() {
                    return Err(Error::invalid("init sigma must be finite and >= 0"));
                }
                Ok(InitialDist::Gaussian { dim: d, sigma: *sigma })
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KernelSpec {
    #[default]
    Discrete,
    ContinuousWindow,
    MultistepFloor,
}

impl KernelSpec {
    pub fn to_kernel(self) -> KernelKind {
        match self {
            KernelSpec::Discrete => KernelKind::Discrete,
            KernelSpec::ContinuousWindow => KernelKind::ContinuousWindow,
            KernelSpec::MultistepFloor => KernelKind::MultistepFloor,
        }
    }

    pub fn is_continuous(self) -> bool {
        self == KernelSpec::ContinuousWindow
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingModeSpec {
    Synchronous,
    Reflection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CouplingSpec {
    pub mode: CouplingModeSpec,
    #[serde(default)]
    pub meet_threshold: Option<f64>,
    #[serde(default = "default_true")]
    pub share_batches: bool,
    /// Keep the perturbed element (the last index) in every batch.
    #[serde(default)]
    pub pin_perturbed: bool,
}

fn default_true() -> bool {
    true
}

impl Default for CouplingSpec {
    fn default() -> Self {
        CouplingSpec {
            mode: CouplingModeSpec::Synchronous,
            meet_threshold: None,
            share_batches: true,
            pin_perturbed: false,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

fn default_substeps() -> usize {
    64
}

fn default_record_every() -> usize {
    1
}

fn default_population_samples() -> usize {
    10_000
}

fn default_probes() -> usize {
    20_000
}

/// Full experiment configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub experiment: ExperimentKind,
    pub loss: LossSpec,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub eta: f64,
    pub beta: f64,
    pub lambda: f64,
    pub horizon: usize,
    pub replicas: usize,
    pub seed: u64,
    #[serde(default)]
    pub variant: VariantSpec,
    #[serde(default = "default_substeps")]
    pub substeps_cts: usize,
    #[serde(default)]
    pub n_list: Vec<usize>,
    #[serde(default)]
    pub eta_list: Vec<f64>,
    #[serde(default)]
    pub init: InitSpec,
    /// Second initial distribution for coupled experiments (defaults to a
    /// point mass at `4 e_1`).
    #[serde(default)]
    pub init_b: Option<InitSpec>,
    #[serde(default)]
    pub coupling: CouplingSpec,
    #[serde(default)]
    pub kernel: KernelSpec,
    #[serde(default = "default_record_every")]
    pub record_every: usize,
    #[serde(default = "default_population_samples")]
    pub population_samples: usize,
    /// Probe count for the random-probe checks in the verify suite.
    #[serde(default = "default_probes")]
    pub probes: usize,
    #[serde(default)]
    pub format: OutputFormat,
}

impl ExperimentConfig {
    /// A small baseline configuration; experiments override what they need.
    pub fn baseline(experiment: ExperimentKind) -> Self {
        ExperimentConfig {
            experiment,
            loss: LossSpec::pseudo_huber(),
            n: 64,
            k: 8,
            d: 2,
            eta: 0.05,
            beta: 2.0,
            lambda: 1.0,
            horizon: 500,
            replicas: 100,
            seed: 7,
            variant: VariantSpec::Plain,
            substeps_cts: 64,
            n_list: Vec::new(),
            eta_list: Vec::new(),
            init: InitSpec::Origin,
            init_b: None,
            coupling: CouplingSpec::default(),
            kernel: KernelSpec::Discrete,
            record_every: 1,
            population_samples: 10_000,
            probes: 20_000,
            format: OutputFormat::Json,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.replicas == 0 {
            return Err(Error::Config("replicas must be >= 1".into()));
        }
        if self.n == 0 || self.d == 0 {
            return Err(Error::Config("n and d must be >= 1".into()));
        }
        if self.k == 0 || self.k > self.n {
            return Err(Error::Config(format!(
                "k must lie in 1..={}, got {}",
                self.n, self.k
            )));
        }
        if !(self.eta > 0.0) || !(self.beta > 0.0) || !(self.lambda >= 0.0) {
            return Err(Error::Config(
                "eta and beta must be positive, lambda non-negative".into(),
            ));
        }
        if self.substeps_cts == 0 || self.record_every == 0 {
            return Err(Error::Config(
                "substeps_cts and record_every must be >= 1".into(),
            ));
        }
        if self.experiment == ExperimentKind::Discretization && self.eta_list.len() < 3 {
            return Err(Error::Config(
                "discretization experiment needs eta_list with at least 3 values".into(),
            ));
        }
        for &nn in &self.n_list {
            if self.k >= nn && self.experiment == ExperimentKind::Stability {
                return Err(Error::Config(format!(
                    "n-sweep entry {nn} must exceed the batch size {}",
                    self.k
                )));
            }
        }
        Ok(())
    }

    pub fn build_model(&self) -> Result<LossModel> {
        let model = match self.loss.family {
            FamilyKind::Quadratic => LossModel::quadratic(self.d, self.loss.z_max)?,
            FamilyKind::PseudoHuber => LossModel::pseudo_huber(self.d, self.loss.z_max)?,
            FamilyKind::CosineDissipative => {
                let amplitude = self.loss.amplitude.unwrap_or(1.5);
                let direction = match &self.loss.direction {
                    Some(w) => w.clone(),
                    None => {
                        let mut w = vec![0.0; self.d];
                        w[0] = 1.0;
                        w
                    }
                };
                LossModel::cosine_dissipative(self.d, self.loss.z_max, amplitude, direction)?
            }
        };
        model.with_weight_decay(self.lambda)
    }

    pub fn build_sgld(&self) -> Result<SgldConfig> {
        SgldConfig::new(self.eta, self.beta, self.k, self.lambda)?
            .with_substeps(self.substeps_cts)?
            .with_variant(self.variant.to_variant())
    }

    pub fn init_dist(&self) -> Result<InitialDist> {
        self.init.to_dist(self.d)
    }

    pub fn init_dist_b(&self) -> Result<InitialDist> {
        match &self.init_b {
            Some(spec) => spec.to_dist(self.d),
            None => {
                let mut x = vec![0.0; self.d];
                x[0] = 4.0;
                Ok(InitialDist::PointMass(x))
            }
        }
    }

    /// Lipschitz scale for bound evaluation: the family constant when the
    /// loss is globally Lipschitz, else the declared nominal scale.
    pub fn lipschitz_scale(&self, model: &LossModel) -> Option<f64> {
        model
            .constants()
            .lipschitz
            .or(self.loss.nominal_lipschitz)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strict_mode_rejects_unknown_keys() {
        let cfg = ExperimentConfig::baseline(ExperimentKind::Verify);
        let mut json: serde_json::Value = serde_json::from_str(
            &serde_json::to_string(&cfg).unwrap(),
        )
        .unwrap();
        json.as_object_mut()
            .unwrap()
            .insert("not_a_field".into(), serde_json::json!(1));
        let err = ExperimentConfig::from_json(&json.to_string());
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn round_trips_through_json() {
        let cfg = ExperimentConfig::baseline(ExperimentKind::Stability);
        let text = serde_json::to_string_pretty(&cfg).unwrap();
        let back = ExperimentConfig::from_json(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn zero_replicas_is_a_config_error() {
        let mut cfg = ExperimentConfig::baseline(ExperimentKind::Verify);
        cfg.replicas = 0;
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }

    #[test]
    fn discretization_requires_a_sweep() {
        let mut cfg = ExperimentConfig::baseline(ExperimentKind::Discretization);
        cfg.eta_list = vec![0.2, 0.1];
        assert!(cfg.validate().is_err());
        cfg.eta_list = vec![0.2, 0.1, 0.05];
        assert!(cfg.validate().is_ok());
    }
}
