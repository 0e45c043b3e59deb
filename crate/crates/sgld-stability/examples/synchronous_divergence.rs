//! Neighbor-dataset divergence under the synchronous coupling: two chains
//! share every draw and differ only through one perturbed data point kept
//! in every batch; their expected distance must stay below the linear
//! bound `2 L t`.
//!
//! ```bash
//! cargo run --example synchronous_divergence
//! ```

use sgld_stability::harness::{
    run_couple, CouplingModeSpec, CouplingSpec, ExperimentConfig, ExperimentKind, LossSpec,
};

fn main() -> sgld_stability::Result<()> {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Verify);
    cfg.loss = LossSpec::pseudo_huber();
    cfg.n = 64;
    cfg.k = 8;
    cfg.d = 2;
    cfg.eta = 0.05;
    cfg.beta = 2.0;
    cfg.lambda = 1.0;
    cfg.horizon = 80;
    cfg.replicas = 400;
    cfg.seed = 23;
    cfg.substeps_cts = 16;
    cfg.coupling = CouplingSpec {
        mode: CouplingModeSpec::Synchronous,
        meet_threshold: None,
        share_batches: true,
        pin_perturbed: true,
    };

    let report = run_couple(&cfg)?;
    let curve = report.curve("divergence").unwrap();
    println!("{:>8} {:>12} {:>10} {:>10}", "time", "E||x-y||", "sem", "2Lt");
    for i in (0..curve.t.len()).step_by(10) {
        println!(
            "{:>8.2} {:>12.5} {:>10.5} {:>10.4}",
            curve.t[i], curve.empirical_mean[i], curve.empirical_sem[i], curve.analytic_bound[i]
        );
    }
    print!("{}", report.verdict_lines());
    assert!(report.passed());
    Ok(())
}
