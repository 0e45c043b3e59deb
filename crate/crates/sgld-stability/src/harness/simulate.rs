//! Single-chain moment curves against their analytic envelopes.
//!
//! Dissipative families get two runs: the fixed-batch diffusion (windowed
//! Euler with a frozen batch) checked against the continuous-time moment
//! bound for `p = 1, 2`, and the discrete kernel checked against the flat
//! `sigma_4 + ctilde(2)` fourth-moment envelope. Lipschitz families with
//! weight decay get the discrete first-moment envelope
//! `sigma_1 + (L + sqrt(2 d / (beta eta))) / lambda`.

use super::config::ExperimentConfig;
use super::report::{Curve, ExperimentReport};
use super::{chain_moment_curves, domination_verdict};
use crate::dynamics::KernelKind;
use crate::{Error, Result};

pub fn run_simulate(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = std::time::Instant::now();
    config.validate()?;
    let model = config.build_model()?;
    let scfg = config.build_sgld()?;
    let init = config.init_dist()?;
    let dataset = {
        let mut rng = crate::rng::stream(config.seed, "simulate/data", 0);
        model
            .data_distribution()
            .sample_dataset(config.n, &mut rng)?
    };
    let mut report = ExperimentReport::new("simulate", config);
    let mut any_regime = false;

    if let Some((m, b)) = model.constants().dissipativity {
        any_regime = true;
        let beta = config.beta;
        let d = config.d;

        // Fixed-batch diffusion second moment against the continuous-time
        // envelope. The envelope's derivation needs p >= 2, so the first
        // moment is reported without a bound column.
        let cts = chain_moment_curves(
            &model,
            &dataset,
            &scfg,
            KernelKind::FrozenBatchWindow,
            &init,
            config.horizon,
            config.record_every,
            config.replicas,
            config.seed,
            "simulate/cts",
        )?;
        {
            let mean: Vec<f64> = cts.p2.iter().map(|s| s.mean).collect();
            let sem: Vec<f64> = cts.p2.iter().map(|s| s.sem).collect();
            let bound: Vec<f64> = cts
                .time
                .iter()
                .map(|&t| crate::bounds::moment_bound_cts(2, m, b, beta, d, init.norm_moment(2), t))
                .collect();
            let mut c = Curve::new("moment_p2_cts", cts.time.clone());
            c.empirical_mean = mean.clone();
            c.empirical_sem = sem.clone();
            c.analytic_bound = bound.clone();
            report.curves.push(c);
            report.verdicts.push(domination_verdict(
                "moment_p2_cts_domination",
                &mean,
                &sem,
                &bound,
            ));
        }
        {
            let mut c = Curve::new("moment_p1_cts", cts.time.clone());
            c.empirical_mean = cts.p1.iter().map(|s| s.mean).collect();
            c.empirical_sem = cts.p1.iter().map(|s| s.sem).collect();
            report.curves.push(c);
        }
        report.constants.insert("dissipative.m".into(), m);
        report.constants.insert("dissipative.b".into(), b);

        // Discrete kernel: fourth moment against sigma_4 + ctilde(2).
        if config.eta <= 1.0 / (2.0 * m) {
            let disc = chain_moment_curves(
                &model,
                &dataset,
                &scfg,
                KernelKind::Discrete,
                &init,
                config.horizon,
                config.record_every,
                config.replicas,
                config.seed,
                "simulate/disc",
            )?;
            let ct2 = crate::bounds::ctilde(2, model.constants().smoothness, m, b, d, beta)?;
            let flat = init.norm_moment(4) + ct2;
            let mean: Vec<f64> = disc.p4.iter().map(|s| s.mean).collect();
            let sem: Vec<f64> = disc.p4.iter().map(|s| s.sem).collect();
            let bound = vec![flat; disc.time.len()];
            let mut c = Curve::new("moment_p4_disc", disc.time.clone());
            c.empirical_mean = mean.clone();
            c.empirical_sem = sem.clone();
            c.analytic_bound = bound.clone();
            report.curves.push(c);
            report.verdicts.push(domination_verdict(
                "moment_p4_disc_domination",
                &mean,
                &sem,
                &bound,
            ));
            report.constants.insert("dissipative.ctilde_p2".into(), ct2);
        } else {
            return Err(Error::Config(format!(
                "fourth-moment envelope requires eta <= 1/(2m) = {}",
                1.0 / (2.0 * m)
            )));
        }
    }

    if let (Some(l), true) = (model.constants().lipschitz, config.lambda > 0.0) {
        any_regime = true;
        let flat = crate::bounds::first_moment_bound_disc(
            init.norm_moment(1),
            l,
            config.lambda,
            config.beta,
            config.d,
            config.eta,
        )?;
        let disc = chain_moment_curves(
            &model,
            &dataset,
            &scfg,
            KernelKind::Discrete,
            &init,
            config.horizon,
            config.record_every,
            config.replicas,
            config.seed,
            "simulate/disc",
        )?;
        let mean: Vec<f64> = disc.p1.iter().map(|s| s.mean).collect();
        let sem: Vec<f64> = disc.p1.iter().map(|s| s.sem).collect();
        let bound = vec![flat; disc.time.len()];
        let mut c = Curve::new("moment_p1_disc", disc.time.clone());
        c.empirical_mean = mean.clone();
        c.empirical_sem = sem.clone();
        c.analytic_bound = bound.clone();
        report.curves.push(c);
        report.verdicts.push(domination_verdict(
            "moment_p1_disc_domination",
            &mean,
            &sem,
            &bound,
        ));
        report
            .constants
            .insert("lipschitz.first_moment_envelope".into(), flat);
    }

    if !any_regime {
        return Err(Error::Config(
            "simulate needs a dissipative family or a Lipschitz family with weight decay".into(),
        ));
    }
    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
