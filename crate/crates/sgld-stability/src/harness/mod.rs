//! Experiment orchestration: configuration, reproducible seeding, the five
//! experiments, the lemma verification suite and report emission.
//!
//! Seed contract: replica `r` of an experiment consumes draws from the
//! stream `(seed, experiment_id, r)`; coupled chains share their replica's
//! stream, which realizes the synchronous and reflection structures by
//! construction. Aggregation folds replicas in index order, so a report is
//! a pure function of `(config, seed)` apart from its wall-time field.

pub mod config;
pub mod report;

mod contraction;
mod couple;
mod discretization;
mod generalization;
mod simulate;
mod stability;
mod verify;

pub use config::{
    CouplingModeSpec, CouplingSpec, ExperimentConfig, ExperimentKind, FamilyKind, InitSpec,
    KernelSpec, LossSpec, OutputFormat, VariantSpec,
};
pub use contraction::run_contraction;
pub use couple::run_couple;
pub use discretization::run_discretization;
pub use generalization::run_generalization;
pub use report::{Curve, ExperimentReport, FitReport, Verdict};
pub use simulate::run_simulate;
pub use stability::run_stability;
pub use verify::run_verify;

use crate::dynamics::{InitialDist, KernelKind, SgldConfig};
use crate::loss::{DataSet, LossModel};
use crate::stats::{self, MeanSem};
use crate::Result;
use rayon::prelude::*;

/// Run the experiment named in the config.
pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentReport> {
    match config.experiment {
        ExperimentKind::Stability => run_stability(config),
        ExperimentKind::Generalization => run_generalization(config),
        ExperimentKind::Contraction => run_contraction(config),
        ExperimentKind::Discretization => run_discretization(config),
        ExperimentKind::Verify => run_verify(config),
    }
}

/// Evaluate every derived constant and the theorem bound curves for the
/// configured scenario.
pub fn run_bounds(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = std::time::Instant::now();
    config.validate()?;
    let model = config.build_model()?;
    let init = config.init_dist()?;
    let mut report = ExperimentReport::new("bounds", config);
    let grid: Vec<usize> = record_grid(config.horizon, config.record_every.max(1));

    if let Some(l) = config.lipschitz_scale(&model) {
        if config.lambda > 0.0 {
            let consts = crate::bounds::lipschitz_constants(
                l,
                model.constants().smoothness,
                config.lambda,
                config.beta,
                init.norm_moment(1),
            )?;
            for (k, v) in crate::bounds::lipschitz_constants_map(&consts) {
                report.constants.insert(format!("lipschitz.{k}"), v);
            }
            for continuous in [true, false] {
                if !continuous && config.eta >= 1.0 / config.lambda {
                    continue;
                }
                let curve_name = if continuous {
                    "gen_bound_lipschitz_continuous"
                } else {
                    "gen_bound_lipschitz_discrete"
                };
                let bc = crate::bounds::BoundCurve::gen_lipschitz(
                    &consts, config.n, config.k, config.eta, config.d, &grid, continuous,
                )?;
                let mut c = Curve::new(curve_name, bc.t_values);
                c.analytic_bound = bc.bound_values;
                report.curves.push(c);
            }
        }
    }
    if let Some((m, b)) = model.constants().dissipativity {
        let consts = crate::bounds::dissipative_constants(
            model.constants().smoothness,
            m,
            b,
            config.d,
            config.beta,
            init.norm_moment(2),
            init.norm_moment(4),
        )?;
        for (k, v) in crate::bounds::dissipative_constants_map(&consts) {
            report.constants.insert(format!("dissipative.{k}"), v);
        }
        report.constants.insert(
            "dissipative.c_tilde3".into(),
            consts.c_tilde3(config.eta, config.n, config.k),
        );
        for continuous in [true, false] {
            if !continuous && config.eta > 1.0 / (2.0 * m) {
                continue;
            }
            let curve_name = if continuous {
                "gen_bound_dissipative_continuous"
            } else {
                "gen_bound_dissipative_discrete"
            };
            let bc = crate::bounds::BoundCurve::gen_dissipative(
                &consts, config.n, config.k, config.eta, &grid, continuous,
            )?;
            let mut c = Curve::new(curve_name, bc.t_values);
            c.analytic_bound = bc.bound_values;
            report.curves.push(c);
        }
    }
    if report.constants.is_empty() {
        return Err(crate::Error::Config(
            "no bound regime applies: the loss declares neither a Lipschitz constant \
             (with weight decay) nor dissipativity constants"
                .into(),
        ));
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// Step indices at which curves are recorded.
pub(crate) fn record_grid(horizon: usize, every: usize) -> Vec<usize> {
    let mut grid: Vec<usize> = (0..=horizon).step_by(every.max(1)).collect();
    if *grid.last().unwrap() != horizon {
        grid.push(horizon);
    }
    grid
}

/// The dataset and its worst-case neighbor: the last element replaced by
/// the farthest support point.
pub(crate) fn neighbor_datasets(
    config: &ExperimentConfig,
    model: &LossModel,
    experiment_id: &str,
) -> Result<(DataSet, DataSet)> {
    let mut rng = crate::rng::stream(config.seed, &format!("{experiment_id}/data"), 0);
    let data = model.data_distribution();
    let s = data.sample_dataset(config.n, &mut rng)?;
    let last = s.point(config.n - 1)?.clone();
    let s_hat = s.make_neighbor(config.n - 1, data.farthest_boundary_point(&last))?;
    Ok((s, s_hat))
}

/// Norm-moment curves (`p` in {1, 2, 4}) of a chain over the record grid,
/// aggregated over replicas in index order.
pub(crate) struct MomentCurves {
    pub time: Vec<f64>,
    pub p1: Vec<MeanSem>,
    pub p2: Vec<MeanSem>,
    pub p4: Vec<MeanSem>,
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn chain_moment_curves(
    model: &LossModel,
    dataset: &DataSet,
    scfg: &SgldConfig,
    kernel: KernelKind,
    init: &InitialDist,
    horizon: usize,
    record_every: usize,
    replicas: usize,
    seed: u64,
    experiment_id: &str,
) -> Result<MomentCurves> {
    let grid = record_grid(horizon, record_every);
    let per_replica: Vec<Result<Vec<[f64; 3]>>> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = crate::rng::stream(seed, experiment_id, r as u64);
            let states =
                crate::dynamics::run_chain(init, model, dataset, scfg, kernel, horizon, &mut rng)?;
            Ok(grid
                .iter()
                .map(|&t| {
                    let n2 = crate::vecmath::norm_sq(&states[t].x);
                    [n2.sqrt(), n2, n2 * n2]
                })
                .collect())
        })
        .collect();

    let mut cols = vec![Vec::with_capacity(replicas); 3 * grid.len()];
    for rows in per_replica {
        let rows = rows?;
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                cols[3 * i + j].push(*v);
            }
        }
    }
    let mut out = MomentCurves {
        time: grid.iter().map(|&t| scfg.eta * t as f64).collect(),
        p1: Vec::new(),
        p2: Vec::new(),
        p4: Vec::new(),
    };
    for i in 0..grid.len() {
        out.p1.push(stats::mean_sem(&cols[3 * i]));
        out.p2.push(stats::mean_sem(&cols[3 * i + 1]));
        out.p4.push(stats::mean_sem(&cols[3 * i + 2]));
    }
    Ok(out)
}

/// Domination verdict: `mean(t) <= bound(t) + 3 sem(t)` at every point.
pub(crate) fn domination_verdict(
    name: &str,
    mean: &[f64],
    sem: &[f64],
    bound: &[f64],
) -> Verdict {
    let mut worst_margin = f64::NEG_INFINITY;
    let mut worst_t = 0usize;
    for i in 0..mean.len() {
        let margin = mean[i] - bound[i] - 3.0 * sem[i];
        if margin > worst_margin {
            worst_margin = margin;
            worst_t = i;
        }
    }
    Verdict::new(
        name,
        worst_margin <= 0.0,
        format!("worst margin {worst_margin:.3e} at grid index {worst_t} (<= 0 passes)"),
    )
}

/// Plateau detection over the final quarter of a curve: the replica-level
/// slope confidence interval must contain zero and the level drift across
/// the window must stay inside twice the noise band.
pub(crate) struct PlateauOutcome {
    pub level: f64,
    pub slope_mean: f64,
    pub slope_ci: (f64, f64),
    pub band: f64,
    pub drift: f64,
    pub is_plateau: bool,
}

pub(crate) fn detect_plateau(
    time: &[f64],
    mean: &[f64],
    sem: &[f64],
    per_replica_slopes: &[f64],
) -> PlateauOutcome {
    let n = time.len();
    let window_start = n - (n / 4).max(2);
    let wt = &time[window_start..];
    let wm = &mean[window_start..];
    let ws = &sem[window_start..];
    let level = wm.iter().sum::<f64>() / wm.len() as f64;
    let band = ws.iter().sum::<f64>() / ws.len() as f64;
    let slope_stats = stats::mean_sem(per_replica_slopes);
    let ci = (
        slope_stats.mean - 1.96 * slope_stats.sem,
        slope_stats.mean + 1.96 * slope_stats.sem,
    );
    let mean_fit = stats::linear_fit(wt, wm);
    let drift = mean_fit
        .map(|f| (f.slope * (wt[wt.len() - 1] - wt[0])).abs())
        .unwrap_or(0.0);
    PlateauOutcome {
        level,
        slope_mean: slope_stats.mean,
        slope_ci: ci,
        band,
        drift,
        is_plateau: ci.0 <= 0.0 && ci.1 >= 0.0 && drift <= 2.0 * band,
    }
}

/// Slope of each replica's curve over the final-quarter window.
pub(crate) fn final_quarter_slopes(time: &[f64], per_replica: &[Vec<f64>]) -> Vec<f64> {
    let n = time.len();
    let window_start = n - (n / 4).max(2);
    let wt = &time[window_start..];
    per_replica
        .iter()
        .map(|curve| {
            stats::linear_fit(wt, &curve[window_start..])
                .map(|f| f.slope)
                .unwrap_or(0.0)
        })
        .collect()
}
