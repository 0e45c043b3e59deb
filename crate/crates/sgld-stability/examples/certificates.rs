//! Certify that each built-in loss family satisfies its declared
//! assumption constants by random probing, and show a negative control
//! failing with wrong constants.
//!
//! ```bash
//! cargo run --example certificates
//! ```

use sgld_stability::loss::{
    certify, certify_all, AssumptionConstants, AssumptionId, LossModel,
};
use sgld_stability::rng;

fn main() -> sgld_stability::Result<()> {
    let d = 3;
    let models = [
        ("quadratic", LossModel::quadratic(d, 1.0)?),
        ("pseudo_huber", LossModel::pseudo_huber(d, 1.0)?),
        (
            "cosine_dissipative",
            LossModel::cosine_dissipative(d, 0.5, 1.5, vec![1.0, 0.0, 0.0])?,
        ),
    ];

    let mut stream = rng::stream(7, "examples/certificates", 0);
    println!("{:<20} {:<16} {:>8} {:>16}  result", "family", "assumption", "probes", "worst violation");
    for (name, model) in &models {
        for report in certify_all(model, 2000, &mut stream)? {
            println!(
                "{:<20} {:<16} {:>8} {:>16.3e}  {}",
                name,
                report.assumption.name(),
                report.probes,
                report.worst_violation,
                if report.passed { "pass" } else { "FAIL" }
            );
        }
    }

    // Negative control: double the dissipativity slope and watch the
    // certificate reject it.
    let corrupted = LossModel::quadratic(d, 1.0)?.with_constants(AssumptionConstants {
        lipschitz: None,
        smoothness: 1.0,
        dissipativity: Some((1.0, 0.5)),
        weight_decay: 0.0,
    });
    let report = certify(&corrupted, AssumptionId::Dissipativity, 2000, &mut stream)?;
    println!(
        "\nnegative control (quadratic with m doubled): passed={} worst violation {:.3e}",
        report.passed, report.worst_violation
    );
    assert!(!report.passed);
    Ok(())
}
