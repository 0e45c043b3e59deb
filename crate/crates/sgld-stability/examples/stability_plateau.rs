//! The headline stability experiment: the neighbor-dataset divergence
//! plateaus when batches are strictly smaller than the dataset, the
//! plateau level scales like `1/n`, and the analytic envelope at full
//! batch keeps growing with time.
//!
//! ```bash
//! cargo run --example stability_plateau
//! ```

use sgld_stability::harness::{run_stability, ExperimentConfig, ExperimentKind, LossSpec};

fn main() -> sgld_stability::Result<()> {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Stability);
    cfg.loss = LossSpec::pseudo_huber();
    cfg.n = 64;
    cfg.k = 8;
    cfg.d = 2;
    cfg.eta = 0.05;
    cfg.beta = 2.0;
    cfg.lambda = 1.0;
    cfg.horizon = 1500;
    cfg.replicas = 150;
    cfg.seed = 19;
    cfg.n_list = vec![32, 64, 128];

    let sweep = run_stability(&cfg)?;
    println!("mini-batch runs (k = {}):", cfg.k);
    for n in [32usize, 64, 128] {
        let v = sweep.verdict(&format!("plateau_n{n}")).unwrap();
        println!("  n={n:<4} {}", v.detail);
    }
    if let Some(fit) = sweep.fit("plateau_level_vs_n") {
        println!("plateau level vs n: log-log slope {:.3}", fit.slope);
    }

    // Full batch: the bound envelope grows linearly forever.
    let mut full = cfg.clone();
    full.n_list = Vec::new();
    full.k = full.n;
    let fb = run_stability(&full)?;
    let v = fb.verdict("full_batch_envelope_grows").unwrap();
    println!("full batch: {}", v.detail);

    print!("{}", sweep.verdict_lines());
    print!("{}", fb.verdict_lines());
    assert!(sweep.passed() && fb.passed());
    Ok(())
}
