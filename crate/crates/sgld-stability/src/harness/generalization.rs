//! Generalization-gap estimation: `E[F_P(x_t) - F_S(x_t)]` over replicas
//! with fresh dataset draws, against the applicable theorem bound.
//!
//! The population risk is estimated once with a shared pool of draws
//! (common random numbers across every t and replica); its Monte-Carlo
//! error does not average out over replicas, so it is folded into the
//! reported uncertainty via the spread of `f(x_bar_t, .)` over the pool.

use super::config::{ExperimentConfig, KernelSpec};
use super::report::{Curve, ExperimentReport};
use super::{domination_verdict, record_grid};
use crate::loss::DataPoint;
use crate::{Error, Result};
use rayon::prelude::*;

pub fn run_generalization(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = std::time::Instant::now();
    config.validate()?;
    let model = config.build_model()?;
    let scfg = config.build_sgld()?;
    let init = config.init_dist()?;
    let grid = record_grid(config.horizon, config.record_every);
    let mut report = ExperimentReport::new("generalization", config);

    // Shared population pool.
    let population: Vec<DataPoint> = {
        let mut rng = crate::rng::stream(config.seed, "generalization/population", 0);
        (0..config.population_samples)
            .map(|_| model.data_distribution().sample(&mut rng))
            .collect()
    };

    // Per replica: the gap estimates on the grid and the recorded iterates.
    type ReplicaRow = (Vec<f64>, Vec<Vec<f64>>);
    let kernel = config.kernel.to_kernel();
    let per_replica: Vec<Result<ReplicaRow>> = (0..config.replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = crate::rng::stream(config.seed, "generalization", r as u64);
            let dataset = model
                .data_distribution()
                .sample_dataset(config.n, &mut rng)?;
            let states = crate::dynamics::run_chain(
                &init,
                &model,
                &dataset,
                &scfg,
                kernel,
                config.horizon,
                &mut rng,
            )?;
            let mut gens = Vec::with_capacity(grid.len());
            let mut xs = Vec::with_capacity(grid.len());
            for &t in &grid {
                let x = &states[t].x;
                let mut pop = 0.0;
                for z in &population {
                    pop += model.eval_loss(x, z)?;
                }
                pop /= population.len() as f64;
                let mut emp = 0.0;
                for z in dataset.points() {
                    emp += model.eval_loss(x, z)?;
                }
                emp /= dataset.len() as f64;
                gens.push(pop - emp);
                xs.push(x.clone());
            }
            Ok((gens, xs))
        })
        .collect();

    let mut gen_cols = vec![Vec::with_capacity(config.replicas); grid.len()];
    let mut x_bar = vec![vec![0.0; config.d]; grid.len()];
    for row in per_replica {
        let (gens, xs) = row?;
        for (i, g) in gens.iter().enumerate() {
            gen_cols[i].push(*g);
        }
        for (i, x) in xs.iter().enumerate() {
            crate::vecmath::axpy(&mut x_bar[i], 1.0, x);
        }
    }
    for x in &mut x_bar {
        for v in x.iter_mut() {
            *v /= config.replicas as f64;
        }
    }

    let time: Vec<f64> = grid.iter().map(|&t| config.eta * t as f64).collect();
    let mut mean = Vec::with_capacity(grid.len());
    let mut sem_total = Vec::with_capacity(grid.len());
    for (i, col) in gen_cols.iter().enumerate() {
        let s = crate::stats::mean_sem(col);
        // Common-pool uncertainty at the replica-mean point.
        let vals: Vec<f64> = population
            .iter()
            .map(|z| model.eval_loss(&x_bar[i], z))
            .collect::<Result<_>>()?;
        let pop_sem = crate::stats::mean_sem(&vals).sem;
        mean.push(s.mean);
        sem_total.push((s.sem * s.sem + pop_sem * pop_sem).sqrt());
    }

    // Theorem bound from the declared constants.
    let continuous = config.kernel == KernelSpec::ContinuousWindow;
    let bound: Vec<f64> = if let (Some(l), true) =
        (model.constants().lipschitz, config.lambda > 0.0)
    {
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
        grid.iter()
            .map(|&t| {
                crate::bounds::lipschitz_gen_bound(
                    &consts, config.n, config.k, config.eta, t, config.d, continuous,
                )
            })
            .collect::<Result<_>>()?
    } else if let Some((m, b)) = model.constants().dissipativity {
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
        grid.iter()
            .map(|&t| {
                crate::bounds::dissipative_gen_bound(
                    &consts, config.n, config.k, config.eta, t, continuous,
                )
            })
            .collect::<Result<_>>()?
    } else {
        return Err(Error::Config(
            "no generalization theorem applies to this loss/decay combination".into(),
        ));
    };

    let abs_mean: Vec<f64> = mean.iter().map(|v| v.abs()).collect();
    report.verdicts.push(domination_verdict(
        "gen_gap_below_theorem_bound",
        &abs_mean,
        &sem_total,
        &bound,
    ));

    let mut c = Curve::new("gen_gap", time);
    c.empirical_mean = mean;
    c.empirical_sem = sem_total;
    c.analytic_bound = bound;
    report.curves.push(c);

    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
