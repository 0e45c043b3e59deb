//! Harness-level integration checks: the verification suite passes on its
//! default configuration, experiment edge cases behave, and the bound
//! report carries every derived constant.

use sgld_stability::harness::{
    run_bounds, run_contraction, run_verify, ExperimentConfig, ExperimentKind, InitSpec,
    LossSpec,
};

#[test]
fn verify_suite_passes_on_defaults() {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Verify);
    cfg.replicas = 200;
    cfg.probes = 10_000;
    let report = run_verify(&cfg).unwrap();
    print!("{}", report.verdict_lines());
    assert!(report.passed(), "verify suite failed:\n{}", report.verdict_lines());
    assert!(report.verdicts.len() >= 30);
}

#[test]
fn verify_rejects_zero_replicas() {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Verify);
    cfg.replicas = 0;
    assert!(run_verify(&cfg).is_err());
}

#[test]
fn contraction_with_identical_initials_is_trivially_contracted() {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Contraction);
    cfg.loss = LossSpec::quadratic();
    cfg.loss.nominal_lipschitz = Some(1.0);
    cfg.n = 4;
    cfg.k = 4;
    cfg.d = 1;
    cfg.eta = 0.02;
    cfg.beta = 2.0;
    cfg.lambda = 2.0;
    cfg.horizon = 50;
    cfg.replicas = 20;
    cfg.substeps_cts = 4;
    cfg.init = InitSpec::Point { x0: vec![1.0] };
    cfg.init_b = Some(InitSpec::Point { x0: vec![1.0] });
    let report = run_contraction(&cfg).unwrap();
    let curve = report.curve("rho_g").unwrap();
    assert!(curve.empirical_mean.iter().all(|&v| v == 0.0));
    let v = report.verdict("contraction_rate_dominates_theory").unwrap();
    assert!(v.passed);
    assert!(v.detail.contains("identically zero"));
}

#[test]
fn bound_report_carries_every_derived_constant() {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Verify);
    cfg.loss = LossSpec::quadratic();
    cfg.loss.nominal_lipschitz = Some(1.0);
    cfg.lambda = 1.0;
    cfg.horizon = 100;
    cfg.record_every = 10;
    let report = run_bounds(&cfg).unwrap();
    for key in [
        "lipschitz.c1",
        "lipschitz.c2",
        "lipschitz.c3",
        "lipschitz.C1",
        "lipschitz.C2",
        "lipschitz.C3",
        "lipschitz.phi_min",
        "lipschitz.r1_tilde",
        "dissipative.R",
        "dissipative.phi",
        "dissipative.eps",
        "dissipative.C4",
        "dissipative.C5",
        "dissipative.C6",
        "dissipative.ctilde_p1",
        "dissipative.ctilde_p2",
        "dissipative.c_tilde2",
        "dissipative.c_tilde3",
        "dissipative.c_tilde4",
        "dissipative.c_tilde5",
    ] {
        assert!(
            report.constants.contains_key(key),
            "missing constant {key}"
        );
    }
    assert!(report
        .curves
        .iter()
        .any(|c| c.name == "gen_bound_dissipative_continuous"));
}
