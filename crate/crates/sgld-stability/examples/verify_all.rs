//! Run the full verification suite: every certificate, metric property,
//! transport oracle and Monte-Carlo domination check, one line each.
//!
//! ```bash
//! cargo run --example verify_all
//! ```

use sgld_stability::harness::{run_verify, ExperimentConfig, ExperimentKind};

fn main() -> sgld_stability::Result<()> {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Verify);
    cfg.replicas = 300;
    cfg.probes = 20_000;
    cfg.seed = 7;

    let report = run_verify(&cfg)?;
    print!("{}", report.verdict_lines());
    println!(
        "\n{} checks, wall time {} ms",
        report.verdicts.len(),
        report.wall_time_ms
    );
    assert!(report.passed());
    Ok(())
}
