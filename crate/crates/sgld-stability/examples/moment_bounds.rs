//! Monte-Carlo moment curves of the fixed-batch diffusion and the discrete
//! kernel against their analytic envelopes.
//!
//! ```bash
//! cargo run --example moment_bounds
//! ```

use sgld_stability::harness::{run_simulate, ExperimentConfig, ExperimentKind, LossSpec};

fn main() -> sgld_stability::Result<()> {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Verify);
    cfg.loss = LossSpec::quadratic();
    cfg.n = 16;
    cfg.k = 4;
    cfg.d = 2;
    cfg.eta = 0.05;
    cfg.beta = 2.0;
    cfg.lambda = 0.0;
    cfg.horizon = 120;
    cfg.replicas = 800;
    cfg.seed = 3;
    cfg.substeps_cts = 32;
    cfg.record_every = 10;

    let report = run_simulate(&cfg)?;
    let curve = report.curve("moment_p2_cts").unwrap();
    println!("fixed-batch diffusion second moment (quadratic family):");
    println!("{:>8} {:>12} {:>10} {:>12}", "time", "E||x||^2", "sem", "bound");
    for i in 0..curve.t.len() {
        println!(
            "{:>8.2} {:>12.4} {:>10.4} {:>12.4}",
            curve.t[i], curve.empirical_mean[i], curve.empirical_sem[i], curve.analytic_bound[i]
        );
    }
    print!("{}", report.verdict_lines());
    assert!(report.passed());
    Ok(())
}
