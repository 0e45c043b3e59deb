//! Coupled-pair runs driven directly by the config's coupling mode.
//!
//! Synchronous mode runs the neighbor-dataset divergence study: both chains
//! start from one shared draw, consume identical noise and batch positions,
//! and differ only through the perturbed element, optionally pinned into
//! every batch. The expected distance is checked against the linear
//! divergence bound `W1(mu, nu) + 2 L t` when a Lipschitz constant exists.
//! Reflection mode runs mirrored-noise pairs on a single dataset and
//! reports distance and meeting-fraction curves.

use super::config::{CouplingModeSpec, ExperimentConfig};
use super::report::{Curve, ExperimentReport};
use crate::couplings::{run_coupled, CouplingConfig, CouplingMode};
use crate::transport::{GFunction, SemimetricParams};
use crate::Result;

pub fn run_couple(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = std::time::Instant::now();
    config.validate()?;
    let model = config.build_model()?;
    let scfg = config.build_sgld()?;
    let mut report = ExperimentReport::new("couple", config);

    let g = GFunction::cap(2.0f64.max(config.loss.z_max))?;
    let params = SemimetricParams::new(g, 0.5)?;

    match config.coupling.mode {
        CouplingModeSpec::Synchronous => {
            let (s, s_hat) = super::neighbor_datasets(config, &model, "couple")?;
            let coupling = CouplingConfig {
                mode: CouplingMode::Synchronous,
                meet_threshold: config.coupling.meet_threshold,
                share_batches: config.coupling.share_batches,
                pin_index_in_batch: config
                    .coupling
                    .pin_perturbed
                    .then_some(config.n - 1),
                shared_initial: true,
            };
            let init = config.init_dist()?;
            let traj = run_coupled(
                &init,
                &init,
                &model,
                &s,
                &s_hat,
                &scfg,
                &coupling,
                &params,
                &g,
                config.horizon,
                config.replicas,
                config.seed,
                "couple",
            )?;

            let mut c = Curve::new("divergence", traj.time.clone());
            c.empirical_mean = traj.dist_mean.clone();
            c.empirical_sem = traj.dist_sem.clone();
            if let Some(l) = config.lipschitz_scale(&model) {
                let bound: Vec<f64> = traj
                    .time
                    .iter()
                    .map(|&t| crate::bounds::synchronous_divergence_lip(0.0, l, t))
                    .collect();
                c.analytic_bound = bound.clone();
                report.verdicts.push(super::domination_verdict(
                    "divergence_below_linear_bound",
                    &traj.dist_mean,
                    &traj.dist_sem,
                    &bound,
                ));
                report.constants.insert("lipschitz.L".into(), l);
            }
            report.curves.push(c);

            let mut c = Curve::new("divergence_sq", traj.time.clone());
            c.empirical_mean = traj.dist_sq_mean;
            c.empirical_sem = traj.dist_sq_sem;
            report.curves.push(c);
        }
        CouplingModeSpec::Reflection => {
            let dataset = {
                let mut rng = crate::rng::stream(config.seed, "couple/data", 0);
                model
                    .data_distribution()
                    .sample_dataset(config.n, &mut rng)?
            };
            let coupling = CouplingConfig {
                mode: CouplingMode::Reflection,
                meet_threshold: config.coupling.meet_threshold,
                share_batches: true,
                pin_index_in_batch: None,
                shared_initial: false,
            };
            let traj = run_coupled(
                &config.init_dist()?,
                &config.init_dist_b()?,
                &model,
                &dataset,
                &dataset,
                &scfg,
                &coupling,
                &params,
                &g,
                config.horizon,
                config.replicas,
                config.seed,
                "couple",
            )?;
            for (name, mean, sem) in [
                ("distance", &traj.dist_mean, Some(&traj.dist_sem)),
                ("rho_g", &traj.rho_g_mean, Some(&traj.rho_g_sem)),
                ("rho", &traj.rho_mean, Some(&traj.rho_sem)),
                ("met_fraction", &traj.met_fraction, None),
            ] {
                let mut c = Curve::new(name, traj.time.clone());
                c.empirical_mean = mean.clone();
                c.empirical_sem = sem
                    .cloned()
                    .unwrap_or_else(|| vec![0.0; traj.time.len()]);
                report.curves.push(c);
            }
        }
    }

    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
