//! Paired-chain simulators.
//!
//! Two coupling constructions drive all distance experiments:
//!
//! * **Synchronous**: both chains consume the same Gaussian draws and the
//!   same batch index positions. Used for neighbor-dataset divergence
//!   studies, where the drift difference is the only separating force.
//! * **Reflection**: both chains share the dataset; the second chain's
//!   noise is mirrored across the inter-chain direction,
//!   `(I - 2 e e^T) xi` with `e = (x - y)/||x - y||`, until the chains
//!   meet, after which they are glued and evolve synchronously.
//!
//! Continuous time declares the meeting time as the first hit of zero; a
//! discrete scheme never lands there exactly, so gluing happens when the
//! distance falls below a threshold. The default threshold is 1% of the
//! per-window noise scale `sqrt(2 eta / beta)`, far below typical
//! inter-chain distances. Both couplings act at the substep scale: the
//! reflection direction is recomputed every Euler substep.

use crate::dynamics::{sample_minibatch, NoiseDraw, SgldConfig, Variant};
use crate::loss::{minibatch_grad, DataSet, LossModel};
use crate::transport::{GFunction, SemimetricParams};
use crate::vecmath::{self, all_finite, axpy, dist, norm, reflect};
use crate::{Error, Result};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Distance below which the reflection direction is numerically undefined
/// and the pair is declared met outright.
const DEGENERATE_DISTANCE: f64 = 1e-14;

/// A paired iterate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoupledState {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub met: bool,
    pub meet_step: Option<usize>,
    pub step_index: usize,
}

impl CoupledState {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::DimensionMismatch {
                expected: x.len(),
                got: y.len(),
            });
        }
        vecmath::check_finite(&x, "coupled state x")?;
        vecmath::check_finite(&y, "coupled state y")?;
        Ok(CoupledState {
            x,
            y,
            met: false,
            meet_step: None,
            step_index: 0,
        })
    }

    pub fn distance(&self) -> f64 {
        dist(&self.x, &self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CouplingMode {
    Synchronous,
    Reflection,
}

/// Coupling controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingConfig {
    pub mode: CouplingMode,
    /// Gluing threshold for reflection mode; `None` selects
    /// `0.01 sqrt(2 eta / beta)`.
    pub meet_threshold: Option<f64>,
    /// Synchronous mode: whether both chains see the same batch indices.
    pub share_batches: bool,
    /// Force this dataset index into every batch (the perturbed-element
    /// convention for divergence studies).
    pub pin_index_in_batch: Option<usize>,
    /// Start both chains from one shared draw of the first initial
    /// distribution (divergence studies need `W1(mu0, mu0) = 0` realized
    /// pathwise).
    pub shared_initial: bool,
}

impl CouplingConfig {
    pub fn synchronous() -> Self {
        CouplingConfig {
            mode: CouplingMode::Synchronous,
            meet_threshold: None,
            share_batches: true,
            pin_index_in_batch: None,
            shared_initial: false,
        }
    }

    pub fn reflection() -> Self {
        CouplingConfig {
            mode: CouplingMode::Reflection,
            meet_threshold: None,
            share_batches: true,
            pin_index_in_batch: None,
            shared_initial: false,
        }
    }

    pub fn threshold(&self, scfg: &SgldConfig) -> f64 {
        self.meet_threshold
            .unwrap_or(0.01 * (2.0 * scfg.eta / scfg.beta).sqrt())
    }
}

fn sample_batch_maybe_pinned<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    pin: Option<usize>,
    rng: &mut R,
) -> Result<Vec<usize>> {
    match pin {
        None => sample_minibatch(n, k, rng),
        Some(idx) => {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, len: n });
            }
            if k == 1 {
                return Ok(vec![idx]);
            }
            // Uniform (k-1)-subset of the remaining indices, then insert.
            let mut rest = sample_minibatch(n - 1, k - 1, rng)?;
            for v in rest.iter_mut() {
                if *v >= idx {
                    *v += 1;
                }
            }
            rest.push(idx);
            rest.sort_unstable();
            Ok(rest)
        }
    }
}

fn reject_noise_variants(cfg: &SgldConfig, context: &str) -> Result<()> {
    match cfg.variant {
        Variant::Plain | Variant::Projected { .. } => Ok(()),
        _ => Err(Error::invalid(format!(
            "{context} supports only the plain and projected variants"
        ))),
    }
}

/// One discrete synchronous step: both chains consume the same draw, each
/// against its own dataset. With equal datasets and equal states the chains
/// stay glued exactly.
pub fn synchronous_pair_step(
    cs: &CoupledState,
    model: &LossModel,
    dataset_a: &DataSet,
    dataset_b: &DataSet,
    cfg: &SgldConfig,
    noise: &NoiseDraw,
) -> Result<CoupledState> {
    reject_noise_variants(cfg, "synchronous coupling")?;
    let xi = std::slice::from_ref(&noise.xi);
    let x = advance_euler(&cs.x, model, dataset_a, cfg, &noise.batch, xi)?;
    let y = advance_euler(&cs.y, model, dataset_b, cfg, &noise.batch, xi)?;
    Ok(CoupledState {
        x,
        y,
        met: cs.met,
        meet_step: cs.meet_step,
        step_index: cs.step_index + 1,
    })
}

fn advance_euler(
    x0: &[f64],
    model: &LossModel,
    dataset: &DataSet,
    cfg: &SgldConfig,
    batch: &[usize],
    increments: &[Vec<f64>],
) -> Result<Vec<f64>> {
    let t_sub = increments.len();
    let gamma = cfg.eta / t_sub as f64;
    let sub_scale = (2.0 * gamma / cfg.beta).sqrt();
    let mut x = x0.to_vec();
    for xi in increments {
        let grad = minibatch_grad(model, dataset, &x, batch, cfg.lambda)?;
        if !all_finite(&grad) {
            return Err(Error::NonFinite("coupled drift"));
        }
        axpy(&mut x, -gamma, &grad);
        axpy(&mut x, sub_scale, xi);
        if let Variant::Projected { radius } = cfg.variant {
            x = vecmath::project_ball(&x, radius);
        }
    }
    Ok(x)
}

/// One synchronous window of `increments.len()` substeps; batches may
/// differ per side when `share_batches` is off.
#[allow(clippy::too_many_arguments)]
pub fn synchronous_pair_window(
    cs: &CoupledState,
    model: &LossModel,
    dataset_a: &DataSet,
    dataset_b: &DataSet,
    cfg: &SgldConfig,
    batch_a: &[usize],
    batch_b: &[usize],
    increments: &[Vec<f64>],
) -> Result<CoupledState> {
    reject_noise_variants(cfg, "synchronous coupling")?;
    let x = advance_euler(&cs.x, model, dataset_a, cfg, batch_a, increments)?;
    let y = advance_euler(&cs.y, model, dataset_b, cfg, batch_b, increments)?;
    Ok(CoupledState {
        x,
        y,
        met: cs.met,
        meet_step: cs.meet_step,
        step_index: cs.step_index + 1,
    })
}

/// One reflection window over a single dataset: `cfg.substeps_cts` Euler
/// substeps, the mirror direction recomputed at each one. When the distance
/// falls below the threshold the chains glue and evolve synchronously from
/// then on; met pairs pass through unchanged apart from the shared move.
pub fn reflection_pair_step<R: Rng + ?Sized>(
    cs: &CoupledState,
    model: &LossModel,
    dataset: &DataSet,
    cfg: &SgldConfig,
    coupling: &CouplingConfig,
    rng: &mut R,
) -> Result<CoupledState> {
    reject_noise_variants(cfg, "reflection coupling")?;
    let batch = sample_batch_maybe_pinned(dataset.len(), cfg.k, coupling.pin_index_in_batch, rng)?;
    let t_sub = cfg.substeps_cts;
    let gamma = cfg.eta / t_sub as f64;
    let sub_scale = (2.0 * gamma / cfg.beta).sqrt();
    let threshold = coupling.threshold(cfg);

    let mut x = cs.x.clone();
    let mut y = cs.y.clone();
    let mut met = cs.met;
    let mut meet_step = cs.meet_step;
    let step_index = cs.step_index + 1;

    for _ in 0..t_sub {
        let xi = crate::rng::normal_vector(rng, model.dim());

        // Mirror direction from the pre-move states.
        let diff = vecmath::sub(&x, &y);
        let r = norm(&diff);
        let degenerate = !met && r < DEGENERATE_DISTANCE;

        let grad_x = minibatch_grad(model, dataset, &x, &batch, cfg.lambda)?;
        if !all_finite(&grad_x) {
            return Err(Error::NonFinite("reflection drift"));
        }
        axpy(&mut x, -gamma, &grad_x);
        axpy(&mut x, sub_scale, &xi);
        if let Variant::Projected { radius } = cfg.variant {
            x = vecmath::project_ball(&x, radius);
        }

        if met || degenerate {
            if degenerate {
                met = true;
                meet_step = meet_step.or(Some(step_index));
            }
            y = x.clone();
            continue;
        }

        let e = vecmath::scale(&diff, 1.0 / r);
        let grad_y = minibatch_grad(model, dataset, &y, &batch, cfg.lambda)?;
        if !all_finite(&grad_y) {
            return Err(Error::NonFinite("reflection drift"));
        }
        axpy(&mut y, -gamma, &grad_y);
        let mirrored = reflect(&xi, &e);
        axpy(&mut y, sub_scale, &mirrored);
        if let Variant::Projected { radius } = cfg.variant {
            y = vecmath::project_ball(&y, radius);
        }
        if dist(&x, &y) <= threshold {
            met = true;
            meet_step = meet_step.or(Some(step_index));
            y = x.clone();
        }
    }

    Ok(CoupledState {
        x,
        y,
        met,
        meet_step,
        step_index,
    })
}

/// Per-step Monte-Carlo summaries of a coupled run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoupledTrajectory {
    /// Physical time at each recorded step (`eta * step`).
    pub time: Vec<f64>,
    pub dist_mean: Vec<f64>,
    pub dist_sem: Vec<f64>,
    pub dist_sq_mean: Vec<f64>,
    pub dist_sq_sem: Vec<f64>,
    pub rho_mean: Vec<f64>,
    pub rho_sem: Vec<f64>,
    pub rho_g_mean: Vec<f64>,
    pub rho_g_sem: Vec<f64>,
    pub met_fraction: Vec<f64>,
    pub replicas: usize,
}

/// Run `replicas` coupled pairs and aggregate per-step statistics in
/// replica-index order. Each pair advances one window per step; coupled
/// sides share the replica's stream.
#[allow(clippy::too_many_arguments)]
pub fn run_coupled(
    init_a: &crate::dynamics::InitialDist,
    init_b: &crate::dynamics::InitialDist,
    model: &LossModel,
    dataset_a: &DataSet,
    dataset_b: &DataSet,
    cfg: &SgldConfig,
    coupling: &CouplingConfig,
    metric: &SemimetricParams,
    g_metric: &GFunction,
    horizon: usize,
    replicas: usize,
    seed: u64,
    experiment_id: &str,
) -> Result<CoupledTrajectory> {
    if replicas == 0 {
        return Err(Error::invalid("replicas must be >= 1"));
    }
    if coupling.mode == CouplingMode::Reflection && dataset_a != dataset_b {
        return Err(Error::invalid(
            "reflection coupling requires a single shared dataset",
        ));
    }

    let per_replica: Vec<Result<Vec<[f64; 5]>>> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = crate::rng::stream(seed, experiment_id, r as u64);
            let x0 = init_a.sample(&mut rng);
            let y0 = if coupling.shared_initial {
                x0.clone()
            } else {
                init_b.sample(&mut rng)
            };
            let mut cs = CoupledState::new(x0, y0)?;
            let mut rows = Vec::with_capacity(horizon + 1);
            let record = |cs: &CoupledState| -> Result<[f64; 5]> {
                let d = cs.distance();
                Ok([
                    d,
                    d * d,
                    crate::transport::rho(&cs.x, &cs.y, metric)?,
                    crate::transport::rho_g(&cs.x, &cs.y, g_metric)?,
                    if cs.met { 1.0 } else { 0.0 },
                ])
            };
            rows.push(record(&cs)?);
            for _ in 0..horizon {
                cs = match coupling.mode {
                    CouplingMode::Synchronous => {
                        let batch_a = sample_batch_maybe_pinned(
                            dataset_a.len(),
                            cfg.k,
                            coupling.pin_index_in_batch,
                            &mut rng,
                        )?;
                        let batch_b = if coupling.share_batches {
                            batch_a.clone()
                        } else {
                            sample_batch_maybe_pinned(
                                dataset_b.len(),
                                cfg.k,
                                coupling.pin_index_in_batch,
                                &mut rng,
                            )?
                        };
                        let increments: Vec<Vec<f64>> = (0..cfg.substeps_cts)
                            .map(|_| crate::rng::normal_vector(&mut rng, model.dim()))
                            .collect();
                        synchronous_pair_window(
                            &cs, model, dataset_a, dataset_b, cfg, &batch_a, &batch_b,
                            &increments,
                        )?
                    }
                    CouplingMode::Reflection => {
                        reflection_pair_step(&cs, model, dataset_a, cfg, coupling, &mut rng)?
                    }
                };
                rows.push(record(&cs)?);
            }
            Ok(rows)
        })
        .collect();

    let mut curves = vec![Vec::with_capacity(replicas); 5 * (horizon + 1)];
    for rows in per_replica {
        let rows = rows?;
        for (t, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                curves[5 * t + j].push(*v);
            }
        }
    }

    let mut out = CoupledTrajectory {
        time: (0..=horizon).map(|t| cfg.eta * t as f64).collect(),
        dist_mean: Vec::new(),
        dist_sem: Vec::new(),
        dist_sq_mean: Vec::new(),
        dist_sq_sem: Vec::new(),
        rho_mean: Vec::new(),
        rho_sem: Vec::new(),
        rho_g_mean: Vec::new(),
        rho_g_sem: Vec::new(),
        met_fraction: Vec::new(),
        replicas,
    };
    for t in 0..=horizon {
        let d = crate::stats::mean_sem(&curves[5 * t]);
        let d2 = crate::stats::mean_sem(&curves[5 * t + 1]);
        let rr = crate::stats::mean_sem(&curves[5 * t + 2]);
        let rg = crate::stats::mean_sem(&curves[5 * t + 3]);
        let met = crate::stats::mean_sem(&curves[5 * t + 4]);
        out.dist_mean.push(d.mean);
        out.dist_sem.push(d.sem);
        out.dist_sq_mean.push(d2.mean);
        out.dist_sq_sem.push(d2.sem);
        out.rho_mean.push(rr.mean);
        out.rho_sem.push(rr.sem);
        out.rho_g_mean.push(rg.mean);
        out.rho_g_sem.push(rg.sem);
        out.met_fraction.push(met.mean);
    }
    Ok(out)
}
