//! One-window discretization error of the plain and refined SGLD kernels
//! against a 1024-substep reference driven by the same Brownian path. The
//! gap scales like `eta^1.5` for the plain kernel and better than `eta^2`
//! for the refined kernel.
//!
//! ```bash
//! cargo run --example discretization_scaling
//! ```

use sgld_stability::harness::{
    run_discretization, ExperimentConfig, ExperimentKind, LossSpec,
};

fn main() -> sgld_stability::Result<()> {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Discretization);
    cfg.loss = LossSpec::quadratic();
    cfg.n = 16;
    cfg.k = 4;
    cfg.d = 2;
    cfg.eta = 0.1;
    cfg.beta = 2.0;
    cfg.lambda = 0.0;
    cfg.replicas = 256;
    cfg.seed = 29;
    cfg.eta_list = vec![0.2, 0.1, 0.05, 0.025];

    let report = run_discretization(&cfg)?;
    let plain = report.curve("gap_plain_vs_eta").unwrap();
    let multi = report.curve("gap_multistep_vs_eta").unwrap();
    println!("{:>8} {:>14} {:>14} {:>14}", "eta", "plain gap", "refined gap", "bound");
    for i in 0..plain.t.len() {
        println!(
            "{:>8.3} {:>14.5e} {:>14.5e} {:>14.5e}",
            plain.t[i], plain.empirical_mean[i], multi.empirical_mean[i], plain.analytic_bound[i]
        );
    }
    for fit in &report.fits {
        println!("{}: log-log slope {:.3}", fit.name, fit.slope);
    }
    print!("{}", report.verdict_lines());
    assert!(report.passed());
    Ok(())
}
