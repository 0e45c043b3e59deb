//! The lemma verification suite: one pass/fail line per named check.
//!
//! Probe-based checks (certificates, metric properties, transport oracles)
//! run directly; Monte-Carlo dominations reuse the simulate and couple
//! experiments on small built-in scenarios and merge their verdicts. A
//! negative control confirms that certification actually rejects wrong
//! constants.

use super::config::{CouplingModeSpec, CouplingSpec, ExperimentConfig, ExperimentKind, LossSpec};
use super::report::{ExperimentReport, Verdict};
use super::{run_couple, run_simulate};
use crate::dynamics::{sample_minibatch, ChainState, SgldConfig};
use crate::loss::{certify, certify_all, AssumptionConstants, AssumptionId, LossModel};
use crate::transport::{
    brute_force_assignment, check_semimetric_lemmas, estimate_w_upper, exact_w1_sorted_1d,
    exact_wp_assignment, rho, rho_g, CostKind, GFunction, SemimetricParams,
};
use crate::vecmath;
use crate::{Error, Result};
use rand::Rng;
use rayon::prelude::*;

fn builtin_models(d: usize) -> Result<Vec<(&'static str, LossModel)>> {
    let mut w = vec![0.0; d];
    w[0] = 1.0;
    Ok(vec![
        ("quadratic", LossModel::quadratic(d, 1.0)?),
        ("pseudo_huber", LossModel::pseudo_huber(d, 1.0)?),
        (
            "cosine_dissipative",
            LossModel::cosine_dissipative(d, 0.5, 1.5, w)?,
        ),
    ])
}

fn certificate_checks(config: &ExperimentConfig, verdicts: &mut Vec<Verdict>) -> Result<()> {
    let mut rng = crate::rng::stream(config.seed, "verify/certificates", 0);
    for (name, model) in builtin_models(config.d)? {
        for report in certify_all(&model, 1500, &mut rng)? {
            verdicts.push(Verdict::new(
                format!("certify/{name}/{}", report.assumption.name()),
                report.passed,
                format!(
                    "{} probes, worst violation {:.3e}",
                    report.probes, report.worst_violation
                ),
            ));
        }
        // Gradient oracle: central finite differences.
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let x = vecmath::scale(&crate::rng::normal_vector(&mut rng, config.d), 2.0);
            let z = model.data_distribution().sample(&mut rng);
            let g = model.eval_grad(&x, &z)?;
            let fd = crate::loss::finite_difference_grad(&model, &x, &z, 1e-5)?;
            worst = worst.max(vecmath::dist(&g, &fd) / (1.0 + vecmath::norm(&g)));
        }
        verdicts.push(Verdict::new(
            format!("gradient_fd/{name}"),
            worst < 1e-6,
            format!("worst relative deviation {worst:.3e}"),
        ));
    }

    // Negative control: certification must reject a corrupted slope.
    let mut rng = crate::rng::stream(config.seed, "verify/negative-control", 0);
    let corrupted = LossModel::quadratic(config.d, 1.0)?.with_constants(AssumptionConstants {
        lipschitz: None,
        smoothness: 1.0,
        dissipativity: Some((1.0, 0.5)), // m doubled from 1/2 to 1
        weight_decay: 0.0,
    });
    let report = certify(&corrupted, AssumptionId::Dissipativity, 800, &mut rng)?;
    verdicts.push(Verdict::new(
        "certify/negative_control_rejects_wrong_m",
        !report.passed && report.worst_violation > 0.0,
        format!("corrupted certificate violation {:.3e}", report.worst_violation),
    ));
    Ok(())
}

fn semimetric_checks(config: &ExperimentConfig, verdicts: &mut Vec<Verdict>) -> Result<()> {
    let params = SemimetricParams::new(GFunction::cap(2.0)?, 0.3)?;
    for d in [1usize, 4, 8] {
        let mut rng = crate::rng::stream(config.seed, &format!("verify/semimetric/d{d}"), 0);
        for r in check_semimetric_lemmas(&params, d, config.probes, &mut rng)? {
            verdicts.push(Verdict::new(
                format!("semimetric/{}/d{d}", r.check.name()),
                r.passed,
                format!("{} probes, worst violation {:.3e}", r.probes, r.worst_violation),
            ));
        }
    }

    // Symmetry of rho and subadditivity of the capped metric.
    let mut rng = crate::rng::stream(config.seed, "verify/metric-properties", 0);
    let g = GFunction::cap(1.5)?;
    let mut worst_sym = 0.0f64;
    let mut worst_tri = f64::NEG_INFINITY;
    for _ in 0..10_000 {
        let x = vecmath::scale(&crate::rng::normal_vector(&mut rng, 4), 2.0);
        let y = vecmath::scale(&crate::rng::normal_vector(&mut rng, 4), 2.0);
        let z = vecmath::scale(&crate::rng::normal_vector(&mut rng, 4), 2.0);
        worst_sym = worst_sym.max((rho(&x, &y, &params)? - rho(&y, &x, &params)?).abs());
        worst_tri =
            worst_tri.max(rho_g(&x, &y, &g)? - rho_g(&x, &z, &g)? - rho_g(&z, &y, &g)?);
    }
    verdicts.push(Verdict::new(
        "semimetric/rho_symmetry",
        worst_sym <= 1e-12,
        format!("worst asymmetry {worst_sym:.3e}"),
    ));
    verdicts.push(Verdict::new(
        "metric/rho_g_subadditive",
        worst_tri <= 1e-12,
        format!("worst triangle violation {worst_tri:.3e}"),
    ));
    Ok(())
}

fn transport_oracle_checks(config: &ExperimentConfig, verdicts: &mut Vec<Verdict>) -> Result<()> {
    let mut rng = crate::rng::stream(config.seed, "verify/transport", 0);

    let mut worst_bf = 0.0f64;
    for trial in 0..30 {
        let n = 2 + trial % 6;
        let d = 1 + trial % 3;
        let a: Vec<Vec<f64>> = (0..n).map(|_| crate::rng::normal_vector(&mut rng, d)).collect();
        let b: Vec<Vec<f64>> = (0..n).map(|_| crate::rng::normal_vector(&mut rng, d)).collect();
        for p in [1u32, 2] {
            let mut cost = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    let dd = vecmath::dist(&a[i], &b[j]);
                    cost[i * n + j] = if p == 1 { dd } else { dd * dd };
                }
            }
            let (_, total) = crate::transport::solve_assignment(&cost, n);
            worst_bf = worst_bf.max((total - brute_force_assignment(&cost, n)?).abs());
        }
    }
    verdicts.push(Verdict::new(
        "transport/assignment_matches_brute_force",
        worst_bf <= 1e-10,
        format!("worst deviation {worst_bf:.3e}"),
    ));

    let mut worst_sorted = 0.0f64;
    for _ in 0..20 {
        let a: Vec<f64> = (0..16).map(|_| crate::rng::standard_normal(&mut rng)).collect();
        let b: Vec<f64> = (0..16).map(|_| crate::rng::standard_normal(&mut rng)).collect();
        let av: Vec<Vec<f64>> = a.iter().map(|&v| vec![v]).collect();
        let bv: Vec<Vec<f64>> = b.iter().map(|&v| vec![v]).collect();
        let sorted = exact_w1_sorted_1d(&a, &b)?.value;
        let assigned = exact_wp_assignment(&av, &bv, 1)?.value;
        worst_sorted = worst_sorted.max((sorted - assigned).abs());
    }
    verdicts.push(Verdict::new(
        "transport/sorted_1d_matches_assignment",
        worst_sorted <= 1e-10,
        format!("worst deviation {worst_sorted:.3e}"),
    ));

    let mut dominated = true;
    for _ in 0..10 {
        let pairs: Vec<(Vec<f64>, Vec<f64>)> = (0..64)
            .map(|_| {
                let x = crate::rng::normal_vector(&mut rng, 2);
                let mut y = crate::rng::normal_vector(&mut rng, 2);
                vecmath::axpy(&mut y, 0.7, &x);
                (x, y)
            })
            .collect();
        let a: Vec<Vec<f64>> = pairs.iter().map(|p| p.0.clone()).collect();
        let b: Vec<Vec<f64>> = pairs.iter().map(|p| p.1.clone()).collect();
        let coupled = estimate_w_upper(&pairs, CostKind::W1, None)?.value;
        let exact = exact_wp_assignment(&a, &b, 1)?.value;
        dominated &= coupled >= exact - 1e-12;
    }
    verdicts.push(Verdict::new(
        "transport/coupling_estimate_dominates_assignment",
        dominated,
        "mean pairwise cost must bound the optimal matching",
    ));

    let mut convex_ok = true;
    for _ in 0..10 {
        let cloud = |rng: &mut crate::rng::Stream, shift: f64| -> Vec<Vec<f64>> {
            (0..32)
                .map(|_| {
                    let mut v = crate::rng::normal_vector(rng, 2);
                    v[0] += shift;
                    v
                })
                .collect()
        };
        let (mu1, nu1) = (cloud(&mut rng, 0.0), cloud(&mut rng, 1.0));
        let (mu2, nu2) = (cloud(&mut rng, -1.5), cloud(&mut rng, 0.5));
        let r = 0.5;
        for p in [1u32, 2] {
            let cost = |a: &[Vec<f64>], b: &[Vec<f64>]| -> Result<f64> {
                let e = exact_wp_assignment(a, b, p)?.value;
                Ok(if p == 1 { e } else { e * e })
            };
            let mix_a: Vec<Vec<f64>> = mu1.iter().chain(&mu2).cloned().collect();
            let mix_b: Vec<Vec<f64>> = nu1.iter().chain(&nu2).cloned().collect();
            let mixed = cost(&mix_a, &mix_b)?;
            let separate = r * cost(&mu1, &nu1)? + (1.0 - r) * cost(&mu2, &nu2)?;
            convex_ok &= mixed <= separate + 1e-9;
        }
    }
    verdicts.push(Verdict::new(
        "transport/wasserstein_convexity",
        convex_ok,
        "mixture transport cost below the convex combination",
    ));
    let _ = config;
    Ok(())
}

fn geometry_checks(config: &ExperimentConfig, verdicts: &mut Vec<Verdict>) -> Result<()> {
    let mut rng = crate::rng::stream(config.seed, "verify/geometry", 0);
    let mut worst_inv = 0.0f64;
    for _ in 0..500 {
        let e = crate::rng::unit_vector(&mut rng, 3);
        let v = crate::rng::normal_vector(&mut rng, 3);
        let twice = vecmath::reflect(&vecmath::reflect(&v, &e), &e);
        worst_inv = worst_inv.max(vecmath::dist(&twice, &v));
    }
    verdicts.push(Verdict::new(
        "geometry/reflection_involution",
        worst_inv <= 1e-12,
        format!("worst deviation {worst_inv:.3e}"),
    ));

    let mut worst_proj = f64::NEG_INFINITY;
    for _ in 0..1000 {
        let x = vecmath::scale(&crate::rng::normal_vector(&mut rng, 3), 2.0);
        let y = vecmath::scale(&crate::rng::normal_vector(&mut rng, 3), 2.0);
        let radius = 0.5 + rng.random::<f64>();
        let px = vecmath::project_ball(&x, radius);
        let py = vecmath::project_ball(&y, radius);
        worst_proj = worst_proj.max(vecmath::dist(&px, &py) - vecmath::dist(&x, &y));
    }
    verdicts.push(Verdict::new(
        "geometry/projection_non_expansive",
        worst_proj <= 1e-12,
        format!("worst expansion {worst_proj:.3e}"),
    ));
    Ok(())
}

/// Two-sample mean and variance agreement at the 1% level, per coordinate.
fn two_sample_agreement(a: &[f64], b: &[f64]) -> (f64, f64) {
    let sa = crate::stats::mean_sem(a);
    let sb = crate::stats::mean_sem(b);
    let z_mean = (sa.mean - sb.mean).abs() / (sa.sem * sa.sem + sb.sem * sb.sem).sqrt();
    let var = |xs: &[f64], mean: f64| {
        xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (xs.len() as f64 - 1.0)
    };
    let va = var(a, sa.mean);
    let vb = var(b, sb.mean);
    let se = (2.0 / (a.len() as f64 - 1.0) + 2.0 / (b.len() as f64 - 1.0)).sqrt();
    let z_var = (va / vb).ln().abs() / se;
    (z_mean, z_var)
}

fn marginal_correctness_check(
    config: &ExperimentConfig,
    verdicts: &mut Vec<Verdict>,
) -> Result<()> {
    let model = LossModel::quadratic(1, 1.0)?;
    let dataset = {
        let mut rng = crate::rng::stream(config.seed, "verify/marginal/data", 0);
        model.data_distribution().sample_dataset(4, &mut rng)?
    };
    let scfg = SgldConfig::new(0.05, 2.0, 2, 0.0)?.with_substeps(4)?;
    let coupling = crate::couplings::CouplingConfig::reflection();
    let replicas = 1000;
    let horizon = 100;

    let coupled: Vec<(f64, f64)> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = crate::rng::stream(config.seed, "verify/marginal/coupled", r as u64);
            let mut cs =
                crate::couplings::CoupledState::new(vec![1.0], vec![-1.0]).unwrap();
            for _ in 0..horizon {
                cs = crate::couplings::reflection_pair_step(
                    &cs, &model, &dataset, &scfg, &coupling, &mut rng,
                )
                .unwrap();
            }
            (cs.x[0], cs.y[0])
        })
        .collect();
    let plain = |id: &str, x0: f64| -> Vec<f64> {
        (0..replicas)
            .into_par_iter()
            .map(|r| {
                let mut rng = crate::rng::stream(config.seed, id, r as u64);
                let mut state = ChainState::new(vec![x0]).unwrap();
                for _ in 0..horizon {
                    let batch = sample_minibatch(4, 2, &mut rng).unwrap();
                    state = crate::dynamics::continuous_window(
                        &state, &model, &dataset, &scfg, &batch, &mut rng,
                    )
                    .unwrap();
                }
                state.x[0]
            })
            .collect()
    };
    let plain_x = plain("verify/marginal/plain-x", 1.0);
    let plain_y = plain("verify/marginal/plain-y", -1.0);

    let xs: Vec<f64> = coupled.iter().map(|c| c.0).collect();
    let ys: Vec<f64> = coupled.iter().map(|c| c.1).collect();
    for (name, marginal, reference) in
        [("x", &xs, &plain_x), ("y", &ys, &plain_y)]
    {
        let (z_mean, z_var) = two_sample_agreement(marginal, reference);
        verdicts.push(Verdict::new(
            format!("couplings/{name}_marginal_matches_plain_chain"),
            z_mean <= 2.576 && z_var <= 2.576,
            format!("two-sample z: mean {z_mean:.2}, variance {z_var:.2} (1% level is 2.576)"),
        ));
    }
    Ok(())
}

fn drift_from_start_check(config: &ExperimentConfig, verdicts: &mut Vec<Verdict>) -> Result<()> {
    let model = LossModel::quadratic(2, 1.0)?;
    let (m, b) = model.constants().dissipativity.unwrap();
    let beta = 1.0;
    let d = 2;
    let eta = 0.05;
    let windows = 20; // covers t in (0, 1]
    let scfg = SgldConfig::new(eta, beta, 4, 0.0)?.with_substeps(16)?;
    let dataset = {
        let mut rng = crate::rng::stream(config.seed, "verify/drift/data", 0);
        model.data_distribution().sample_dataset(4, &mut rng)?
    };
    let replicas = config.replicas.clamp(200, 1000);
    let mu2 = d as f64; // Gaussian init, sigma = 1

    let rows: Vec<Vec<f64>> = (0..replicas)
        .into_par_iter()
        .map(|r| {
            let mut rng = crate::rng::stream(config.seed, "verify/drift", r as u64);
            let x0 = crate::rng::normal_vector(&mut rng, d);
            let batch = sample_minibatch(4, 4, &mut rng).unwrap();
            let mut state = ChainState::new(x0.clone()).unwrap();
            let mut out = Vec::with_capacity(windows);
            for _ in 0..windows {
                state = crate::dynamics::continuous_window(
                    &state, &model, &dataset, &scfg, &batch, &mut rng,
                )
                .unwrap();
                out.push(vecmath::dist_sq(&state.x, &x0));
            }
            out
        })
        .collect();

    let mut worst = f64::NEG_INFINITY;
    for w in 0..windows {
        let col: Vec<f64> = rows.iter().map(|r| r[w]).collect();
        let s = crate::stats::mean_sem(&col);
        let t = eta * (w + 1) as f64;
        let bound = crate::bounds::drift_from_start_diss(
            model.constants().smoothness,
            m,
            b,
            d,
            beta,
            mu2,
            t,
        );
        worst = worst.max(s.mean - bound - 3.0 * s.sem);
    }
    verdicts.push(Verdict::new(
        "couplings/drift_from_start_bound",
        worst <= 0.0,
        format!("worst margin {worst:.3e} over t in (0, 1]"),
    ));
    Ok(())
}

fn merge(report: &mut ExperimentReport, prefix: &str, sub: ExperimentReport) {
    for v in sub.verdicts {
        report
            .verdicts
            .push(Verdict::new(format!("{prefix}/{}", v.name), v.passed, v.detail));
    }
    for (k, v) in sub.constants {
        report.constants.insert(format!("{prefix}.{k}"), v);
    }
}

pub fn run_verify(config: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = std::time::Instant::now();
    config.validate()?;
    if config.replicas == 0 {
        return Err(Error::Config("replicas must be >= 1".into()));
    }
    let mut report = ExperimentReport::new("verify", config);
    let mut verdicts = Vec::new();

    certificate_checks(config, &mut verdicts)?;
    semimetric_checks(config, &mut verdicts)?;
    transport_oracle_checks(config, &mut verdicts)?;
    geometry_checks(config, &mut verdicts)?;
    marginal_correctness_check(config, &mut verdicts)?;
    drift_from_start_check(config, &mut verdicts)?;
    report.verdicts.append(&mut verdicts);

    // Monte-Carlo dominations on small built-in scenarios.
    let mc_replicas = config.replicas.clamp(200, 500);
    let mut quad = ExperimentConfig::baseline(ExperimentKind::Verify);
    quad.loss = LossSpec::quadratic();
    quad.n = 16;
    quad.k = 4;
    quad.d = 2;
    quad.eta = 0.05;
    quad.beta = 2.0;
    quad.lambda = 0.0;
    quad.horizon = 100;
    quad.replicas = mc_replicas;
    quad.seed = config.seed;
    quad.substeps_cts = 16;
    quad.record_every = 2;
    merge(&mut report, "simulate_quadratic", run_simulate(&quad)?);

    let mut ph = quad.clone();
    ph.loss = LossSpec::pseudo_huber();
    ph.lambda = 1.0;
    ph.horizon = 300;
    ph.record_every = 5;
    merge(&mut report, "simulate_pseudo_huber", run_simulate(&ph)?);

    let mut div = quad.clone();
    div.loss = LossSpec::pseudo_huber();
    div.lambda = 0.5;
    div.horizon = 50;
    div.substeps_cts = 8;
    div.coupling = CouplingSpec {
        mode: CouplingModeSpec::Synchronous,
        meet_threshold: None,
        share_batches: true,
        pin_perturbed: true,
    };
    merge(&mut report, "couple_divergence", run_couple(&div)?);

    report.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}
