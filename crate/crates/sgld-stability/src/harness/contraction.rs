//! Reflection-coupling contraction: two initial distributions, one dataset,
//! mirrored noise until meeting. The fitted exponential decay rate of the
//! distorted distance must dominate the analytic rate `1/C1` (Lipschitz
//! regime, capped metric) or `1/C4` (dissipative regime, weighted
//! semimetric); the analytic rate is a conservative lower bound, with the
//! metric-equivalence prefactor absorbed into the intercept.

use super::config::ExperimentConfig;
use super::report::{Curve, ExperimentReport, FitReport, Verdict};
use crate::couplings::{run_coupled, CouplingConfig, CouplingMode};
use crate::transport::{GFunction, SemimetricParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Regime {
    Lipschitz,
    Dissipative,
}

pub fn run_contraction(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = std::time::Instant::now();
    config.validate()?;
    let model = config.build_model()?;
    let scfg = config.build_sgld()?;
    let init_a = config.init_dist()?;
    let init_b = config.init_dist_b()?;
    let mut report = ExperimentReport::new("contraction", config);

    let dataset = {
        let mut rng = crate::rng::stream(config.seed, "contraction/data", 0);
        model
            .data_distribution()
            .sample_dataset(config.n, &mut rng)?
    };

    // Reference constants; the regime with a Lipschitz scale and weight
    // decay takes precedence.
    let lip = match (config.lipschitz_scale(&model), config.lambda > 0.0) {
        (Some(l), true) => Some(crate::bounds::lipschitz_constants(
            l,
            model.constants().smoothness,
            config.lambda,
            config.beta,
            init_a.norm_moment(1),
        )?),
        _ => None,
    };
    let diss = match model.constants().dissipativity {
        Some((m, b)) => Some(crate::bounds::dissipative_constants(
            model.constants().smoothness,
            m,
            b,
            config.d,
            config.beta,
            init_a.norm_moment(2),
            init_a.norm_moment(4),
        )?),
        None => None,
    };
    let regime = if lip.is_some() {
        Regime::Lipschitz
    } else if diss.is_some() {
        Regime::Dissipative
    } else {
        return Err(Error::Config(
            "contraction needs either a Lipschitz scale with weight decay or dissipativity"
                .into(),
        ));
    };

    if let Some(c) = &lip {
        for (k, v) in crate::bounds::lipschitz_constants_map(c) {
            report.constants.insert(format!("lipschitz.{k}"), v);
        }
    }
    if let Some(c) = &diss {
        for (k, v) in crate::bounds::dissipative_constants_map(c) {
            report.constants.insert(format!("dissipative.{k}"), v);
        }
    }

    // Metrics: the capped metric radius comes from the contraction scale of
    // the active regime; the weighted semimetric takes its (R, eps) from the
    // dissipative constants when available.
    let g = match (&lip, &diss) {
        (Some(c), _) => GFunction::cap(c.r_kappa)?,
        (None, Some(c)) => GFunction::cap(c.r)?,
        (None, None) => unreachable!(),
    };
    let params = match &diss {
        Some(c) => c.semimetric_params()?,
        None => SemimetricParams::new(g, 0.5)?,
    };

    let coupling = CouplingConfig {
        mode: CouplingMode::Reflection,
        meet_threshold: config.coupling.meet_threshold,
        share_batches: true,
        pin_index_in_batch: None,
        shared_initial: false,
    };
    let traj = run_coupled(
        &init_a,
        &init_b,
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
        "contraction",
    )?;

    let (rate_bar, bar_name, fit_curve_mean, fit_curve_sem, prefactor) = match regime {
        Regime::Lipschitz => {
            let c = lip.as_ref().unwrap();
            (
                1.0 / c.big_c1,
                "one_over_C1",
                &traj.rho_g_mean,
                &traj.rho_g_sem,
                c.w1_equivalence_factor(),
            )
        }
        Regime::Dissipative => {
            let c = diss.as_ref().unwrap();
            (
                1.0 / c.big_c4,
                "one_over_C4",
                &traj.rho_mean,
                &traj.rho_sem,
                1.0 / c.phi,
            )
        }
    };
    report.constants.insert(format!("rate_bar.{bar_name}"), rate_bar);

    // Fit window: after burn-in, before the noise floor.
    let burn_in = traj.time.len() / 10;
    let mut window_t = Vec::new();
    let mut window_log = Vec::new();
    for i in burn_in..traj.time.len() {
        let m = fit_curve_mean[i];
        if m <= (3.0 * fit_curve_sem[i]).max(1e-12) {
            break;
        }
        window_t.push(traj.time[i]);
        window_log.push(m.ln());
    }

    let all_zero = fit_curve_mean.iter().all(|&v| v == 0.0);
    if all_zero {
        report.verdicts.push(Verdict::new(
            "contraction_rate_dominates_theory",
            true,
            "distance identically zero (already contracted)",
        ));
    } else if window_log.len() < 5 {
        report.verdicts.push(Verdict::new(
            "contraction_rate_dominates_theory",
            false,
            format!(
                "fit window too short ({} points above the noise floor)",
                window_log.len()
            ),
        ));
    } else {
        let fit = crate::stats::linear_fit(&window_t, &window_log)
            .ok_or_else(|| Error::invalid("degenerate contraction fit"))?;
        let rate = -fit.slope;
        report.fits.push(FitReport {
            name: "contraction_rate".into(),
            slope: fit.slope,
            intercept: fit.intercept,
            slope_ci_low: fit.slope_ci().0,
            slope_ci_high: fit.slope_ci().1,
        });
        report.verdicts.push(Verdict::new(
            "contraction_rate_dominates_theory",
            rate >= rate_bar,
            format!(
                "fitted rate {rate:.4} vs conservative bar {rate_bar:.4e} \
                 ({} window points)",
                window_log.len()
            ),
        ));
        report.verdicts.push(Verdict::new(
            "contraction_rate_positive",
            rate > 0.0,
            format!("fitted rate {rate:.4}"),
        ));
    }

    // Curves with the theory reference decay from the starting level.
    let mut push_curve = |name: &str, mean: &[f64], sem: &[f64], reference: Option<Vec<f64>>| {
        let mut c = Curve::new(name, traj.time.clone());
        c.empirical_mean = mean.to_vec();
        c.empirical_sem = sem.to_vec();
        if let Some(r) = reference {
            c.analytic_bound = r;
        }
        report.curves.push(c);
    };
    let reference: Vec<f64> = traj
        .time
        .iter()
        .map(|&t| prefactor * fit_curve_mean[0] * (-rate_bar * t).exp())
        .collect();
    match regime {
        Regime::Lipschitz => {
            push_curve("rho_g", &traj.rho_g_mean, &traj.rho_g_sem, Some(reference));
            push_curve("rho", &traj.rho_mean, &traj.rho_sem, None);
        }
        Regime::Dissipative => {
            push_curve("rho", &traj.rho_mean, &traj.rho_sem, Some(reference));
            push_curve("rho_g", &traj.rho_g_mean, &traj.rho_g_sem, None);
        }
    }
    push_curve("distance", &traj.dist_mean, &traj.dist_sem, None);
    push_curve("met_fraction", &traj.met_fraction, &vec![0.0; traj.time.len()], None);

    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
