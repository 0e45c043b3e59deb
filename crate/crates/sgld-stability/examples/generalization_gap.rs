//! Estimate the expected generalization gap `E[F_P(x_t) - F_S(x_t)]` over
//! replicas with fresh datasets and compare it against the theorem bound.
//!
//! ```bash
//! cargo run --example generalization_gap
//! ```

use sgld_stability::harness::{
    run_generalization, ExperimentConfig, ExperimentKind, LossSpec,
};

fn main() -> sgld_stability::Result<()> {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Generalization);
    cfg.loss = LossSpec::pseudo_huber();
    cfg.n = 64;
    cfg.k = 8;
    cfg.d = 2;
    cfg.eta = 0.05;
    cfg.beta = 2.0;
    cfg.lambda = 1.0;
    cfg.horizon = 400;
    cfg.replicas = 200;
    cfg.seed = 37;
    cfg.record_every = 20;
    cfg.population_samples = 10_000;

    let report = run_generalization(&cfg)?;
    let curve = report.curve("gen_gap").unwrap();
    println!("{:>8} {:>14} {:>10} {:>12}", "time", "E gen", "sem", "bound");
    for i in 0..curve.t.len() {
        println!(
            "{:>8.2} {:>14.5e} {:>10.2e} {:>12.4e}",
            curve.t[i], curve.empirical_mean[i], curve.empirical_sem[i], curve.analytic_bound[i]
        );
    }
    print!("{}", report.verdict_lines());
    assert!(report.passed());
    Ok(())
}
