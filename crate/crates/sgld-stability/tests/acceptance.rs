//! Acceptance suite: one test per criterion, each printing a PASS/FAIL
//! line (visible with `cargo test --test acceptance -- --nocapture`).

use sgld_stability::bounds;
use sgld_stability::harness::{
    run_contraction, run_couple, run_discretization, run_generalization, run_simulate,
    run_stability, CouplingModeSpec, CouplingSpec, ExperimentConfig, ExperimentKind, FamilyKind,
    InitSpec, KernelSpec, LossSpec,
};
use sgld_stability::transport::{
    brute_force_assignment, check_semimetric_lemmas, estimate_w_upper, exact_w1_sorted_1d,
    exact_wp_assignment, rho, rho_g, solve_assignment, CostKind, GFunction, SemimetricParams,
};
use sgld_stability::{rng, vecmath};

fn report_line(criterion: usize, name: &str, passed: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion:02} [{name}] {}: {detail}",
        if passed { "PASS" } else { "FAIL" }
    );
    assert!(passed, "criterion {criterion} ({name}) failed: {detail}");
}

#[test]
fn criterion_01_constants_regression() {
    let convex = bounds::lipschitz_constants(1.0, 1.0, 2.0, 2.0, 0.0).unwrap();
    let c1_is_8 = (convex.big_c1 - 8.0).abs() < 1e-12;

    let nonconvex = bounds::lipschitz_constants(1.0, 2.0, 1.0, 2.0, 0.0).unwrap();
    let e4 = 4.0f64.exp();
    let c1_rel = (nonconvex.c1 - e4).abs() / e4;
    let c2_ok = (nonconvex.c2 - 24.0).abs() < 1e-12;
    let big_c1_ok = (nonconvex.big_c1 - 24.0 * e4).abs() / (24.0 * e4) < 1e-9
        && (nonconvex.big_c1 - 1310.36).abs() < 5e-3;

    let diss = bounds::dissipative_constants(1.0, 1.0, 1.0, 1, 1.0, 0.0, 0.0).unwrap();
    let r_ok = (diss.r - 2.0 * 5.0f64.sqrt()).abs() < 1e-12;

    let ct = bounds::ctilde(1, 1.0, 1.0, 1.0, 1, 1.0).unwrap();
    let ct_ok = ct == 65.0;

    let passed = c1_is_8 && c1_rel < 1e-9 && c2_ok && big_c1_ok && r_ok && ct_ok;
    report_line(
        1,
        "constants-regression",
        passed,
        &format!(
            "C1(convex)={}, c1={:.9e} (rel err {:.1e}), c2={}, C1={:.4}, R={:.12}, ctilde(1)={}",
            convex.big_c1, nonconvex.c1, c1_rel, nonconvex.c2, nonconvex.big_c1, diss.r, ct
        ),
    );
}

#[test]
fn criterion_02_moment_bound_domination() {
    // Quadratic family (m = 1/2): fixed-batch diffusion second moment and
    // discrete fourth moment.
    let mut quad = ExperimentConfig::baseline(ExperimentKind::Verify);
    quad.loss = LossSpec::quadratic();
    quad.n = 16;
    quad.k = 4;
    quad.d = 2;
    quad.eta = 0.05;
    quad.beta = 2.0;
    quad.lambda = 0.0;
    quad.horizon = 200;
    quad.replicas = 2000;
    quad.seed = 1002;
    quad.substeps_cts = 64;
    quad.record_every = 2;
    let quad_report = run_simulate(&quad).unwrap();
    let p2 = quad_report.verdict("moment_p2_cts_domination").unwrap();
    let p4 = quad_report.verdict("moment_p4_disc_domination").unwrap();

    // Pseudo-Huber with weight decay: discrete first-moment envelope.
    let mut ph = quad.clone();
    ph.loss = LossSpec::pseudo_huber();
    ph.lambda = 1.0;
    ph.horizon = 400;
    ph.record_every = 4;
    let ph_report = run_simulate(&ph).unwrap();
    let p1 = ph_report.verdict("moment_p1_disc_domination").unwrap();

    report_line(
        2,
        "moment-bound-domination",
        p2.passed && p4.passed && p1.passed,
        &format!(
            "p2 cts: {}; p4 disc: {}; p1 disc: {}",
            p2.detail, p4.detail, p1.detail
        ),
    );
}

#[test]
fn criterion_03_synchronous_divergence() {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Verify);
    cfg.loss = LossSpec::pseudo_huber();
    cfg.n = 64;
    cfg.k = 8;
    cfg.d = 2;
    cfg.eta = 0.05;
    cfg.beta = 2.0;
    cfg.lambda = 1.0;
    cfg.horizon = 100;
    cfg.replicas = 500;
    cfg.seed = 1003;
    cfg.substeps_cts = 16;
    cfg.coupling = CouplingSpec {
        mode: CouplingModeSpec::Synchronous,
        meet_threshold: None,
        share_batches: true,
        pin_perturbed: true,
    };
    let report = run_couple(&cfg).unwrap();
    let v = report.verdict("divergence_below_linear_bound").unwrap();
    report_line(3, "synchronous-divergence", v.passed, &v.detail);
}

#[test]
fn criterion_04_contraction() {
    // Quadratic family with the lambda >= M regime constants
    // (L=1, beta=2, lambda=2, M=1): rate bar 1/C1 = 1/8.
    let mut quad = ExperimentConfig::baseline(ExperimentKind::Contraction);
    quad.loss = LossSpec::quadratic();
    quad.loss.nominal_lipschitz = Some(1.0);
    quad.n = 8;
    quad.k = 8;
    quad.d = 1;
    quad.eta = 0.01;
    quad.beta = 2.0;
    quad.lambda = 2.0;
    quad.horizon = 1000;
    quad.replicas = 1000;
    quad.seed = 1004;
    quad.substeps_cts = 16;
    quad.init = InitSpec::Point { x0: vec![0.0] };
    quad.init_b = Some(InitSpec::Point { x0: vec![4.0] });
    let quad_report = run_contraction(&quad).unwrap();
    let bar = quad_report.constants["rate_bar.one_over_C1"];
    assert!((bar - 0.125).abs() < 1e-12, "C1 must be 8 in this regime");
    let qv = quad_report
        .verdict("contraction_rate_dominates_theory")
        .unwrap();

    // Cosine-dissipative family: rho decay against 1/C4.
    let mut cos = ExperimentConfig::baseline(ExperimentKind::Contraction);
    cos.loss = LossSpec::cosine();
    cos.loss.z_max = 0.5;
    cos.loss.amplitude = Some(1.5);
    cos.n = 8;
    cos.k = 8;
    cos.d = 2;
    cos.eta = 0.02;
    cos.beta = 1.0;
    cos.lambda = 0.0;
    cos.horizon = 1000;
    cos.replicas = 600;
    cos.seed = 1005;
    cos.substeps_cts = 16;
    cos.init = InitSpec::Point { x0: vec![0.0, 0.0] };
    cos.init_b = Some(InitSpec::Point { x0: vec![3.0, 0.0] });
    let cos_report = run_contraction(&cos).unwrap();
    let cv = cos_report
        .verdict("contraction_rate_dominates_theory")
        .unwrap();
    let cpos = cos_report.verdict("contraction_rate_positive").unwrap();

    report_line(
        4,
        "contraction",
        qv.passed && cv.passed && cpos.passed,
        &format!("quadratic: {}; cosine: {}", qv.detail, cv.detail),
    );
}

#[test]
fn criterion_05_discretization_error_scaling() {
    let mut quad = ExperimentConfig::baseline(ExperimentKind::Discretization);
    quad.loss = LossSpec::quadratic();
    quad.n = 16;
    quad.k = 4;
    quad.d = 2;
    quad.eta = 0.1;
    quad.beta = 2.0;
    quad.lambda = 0.0;
    quad.replicas = 256;
    quad.seed = 1006;
    quad.eta_list = vec![0.2, 0.1, 0.05, 0.025];
    let qr = run_discretization(&quad).unwrap();

    let mut ph = quad.clone();
    ph.loss = LossSpec::pseudo_huber();
    ph.lambda = 1.0;
    ph.seed = 1007;
    let pr = run_discretization(&ph).unwrap();

    let k_plain = qr.verdict("plain_kernel_slope").unwrap();
    let k_multi = qr.verdict("multistep_kernel_slope").unwrap();
    let q_dom = qr.verdict("gaps_below_analytic_bound").unwrap();
    let q_ord = qr.verdict("multistep_gap_below_plain_gap").unwrap();
    let p_dom = pr.verdict("gaps_below_analytic_bound").unwrap();
    let passed =
        k_plain.passed && k_multi.passed && q_dom.passed && q_ord.passed && p_dom.passed;
    report_line(
        5,
        "discretization-error-scaling",
        passed,
        &format!(
            "quadratic: {}; {}; Lipschitz bound domination also holds",
            k_plain.detail, k_multi.detail
        ),
    );
}

#[test]
fn criterion_06_time_independence_and_n_scaling() {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Stability);
    cfg.loss = LossSpec::pseudo_huber();
    cfg.n = 64;
    cfg.k = 8;
    cfg.d = 2;
    cfg.eta = 0.05;
    cfg.beta = 2.0;
    cfg.lambda = 1.0;
    cfg.horizon = 2000;
    cfg.replicas = 200;
    cfg.seed = 1008;
    cfg.n_list = vec![32, 64, 128];
    let sweep = run_stability(&cfg).unwrap();
    let plateaus_ok = [32, 64, 128]
        .iter()
        .all(|n| sweep.verdict(&format!("plateau_n{n}")).unwrap().passed);
    let envelope_ok = [32, 64, 128].iter().all(|n| {
        sweep
            .verdict(&format!("plateau_below_envelope_n{n}"))
            .unwrap()
            .passed
    });
    let scaling = sweep.verdict("plateau_scaling_in_n").unwrap();

    let mut full = cfg.clone();
    full.n_list = Vec::new();
    full.k = 64;
    full.n = 64;
    let full_report = run_stability(&full).unwrap();
    let grows = full_report.verdict("full_batch_envelope_grows").unwrap();

    report_line(
        6,
        "time-independence-k-over-n",
        plateaus_ok && envelope_ok && scaling.passed && grows.passed,
        &format!("{}; full batch: {}", scaling.detail, grows.detail),
    );
}

#[test]
fn criterion_07_semimetric_property_suite() {
    let params = SemimetricParams::new(GFunction::cap(2.0).unwrap(), 0.3).unwrap();
    let mut all_pass = true;
    let mut details = Vec::new();
    for d in [1usize, 4, 8] {
        let mut stream = rng::stream(1009, &format!("acceptance/semimetric/d{d}"), 0);
        for r in check_semimetric_lemmas(&params, d, 100_000, &mut stream).unwrap() {
            all_pass &= r.passed;
            details.push(format!("{}/d{d}: {:.2e}", r.check.name(), r.worst_violation));
        }
    }
    // rho symmetry and cap-metric subadditivity on the same probe budget.
    let g = GFunction::cap(2.0).unwrap();
    let mut stream = rng::stream(1009, "acceptance/metric", 0);
    let mut worst_sym = 0.0f64;
    let mut worst_tri = f64::NEG_INFINITY;
    for _ in 0..100_000 {
        let x = vecmath::scale(&rng::normal_vector(&mut stream, 4), 2.0);
        let y = vecmath::scale(&rng::normal_vector(&mut stream, 4), 2.0);
        let z = vecmath::scale(&rng::normal_vector(&mut stream, 4), 2.0);
        worst_sym = worst_sym
            .max((rho(&x, &y, &params).unwrap() - rho(&y, &x, &params).unwrap()).abs());
        worst_tri = worst_tri.max(
            rho_g(&x, &y, &g).unwrap() - rho_g(&x, &z, &g).unwrap() - rho_g(&z, &y, &g).unwrap(),
        );
    }
    all_pass &= worst_sym <= 1e-12 && worst_tri <= 1e-12;
    report_line(
        7,
        "semimetric-properties",
        all_pass,
        &format!(
            "worst violations: {}; symmetry {:.1e}; subadditivity {:.1e}",
            details.join(", "),
            worst_sym,
            worst_tri
        ),
    );
}

#[test]
fn criterion_08_transport_oracle_equivalence() {
    let mut stream = rng::stream(1010, "acceptance/transport", 0);
    // Assignment vs factorial brute force, 100 instances with N <= 7.
    let mut worst_bf = 0.0f64;
    for trial in 0..100 {
        let n = 2 + trial % 6;
        let d = 1 + trial % 3;
        let a: Vec<Vec<f64>> = (0..n).map(|_| rng::normal_vector(&mut stream, d)).collect();
        let b: Vec<Vec<f64>> = (0..n).map(|_| rng::normal_vector(&mut stream, d)).collect();
        for p in [1u32, 2] {
            let mut cost = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    let dd = vecmath::dist(&a[i], &b[j]);
                    cost[i * n + j] = if p == 1 { dd } else { dd * dd };
                }
            }
            let (_, total) = solve_assignment(&cost, n);
            worst_bf = worst_bf.max((total - brute_force_assignment(&cost, n).unwrap()).abs());
        }
    }
    // Sorted 1-d W1 vs assignment, 50 instances.
    let mut worst_sorted = 0.0f64;
    for _ in 0..50 {
        let a: Vec<f64> = (0..24).map(|_| rng::standard_normal(&mut stream)).collect();
        let b: Vec<f64> = (0..24).map(|_| rng::standard_normal(&mut stream)).collect();
        let av: Vec<Vec<f64>> = a.iter().map(|&v| vec![v]).collect();
        let bv: Vec<Vec<f64>> = b.iter().map(|&v| vec![v]).collect();
        worst_sorted = worst_sorted.max(
            (exact_w1_sorted_1d(&a, &b).unwrap().value
                - exact_wp_assignment(&av, &bv, 1).unwrap().value)
                .abs(),
        );
    }
    // Coupling estimates dominate the assignment value on shared marginals.
    let mut dominated = true;
    for _ in 0..50 {
        let pairs: Vec<(Vec<f64>, Vec<f64>)> = (0..64)
            .map(|_| {
                let x = rng::normal_vector(&mut stream, 2);
                let mut y = rng::normal_vector(&mut stream, 2);
                vecmath::axpy(&mut y, 0.6, &x);
                (x, y)
            })
            .collect();
        let a: Vec<Vec<f64>> = pairs.iter().map(|p| p.0.clone()).collect();
        let b: Vec<Vec<f64>> = pairs.iter().map(|p| p.1.clone()).collect();
        let coupled = estimate_w_upper(&pairs, CostKind::W1, None).unwrap().value;
        let exact = exact_wp_assignment(&a, &b, 1).unwrap().value;
        dominated &= coupled >= exact - 1e-12;
        let coupled2 = estimate_w_upper(&pairs, CostKind::W2Sq, None).unwrap().value;
        let exact2 = exact_wp_assignment(&a, &b, 2).unwrap().value;
        dominated &= coupled2 >= exact2 * exact2 - 1e-12;
    }
    let passed = worst_bf <= 1e-10 && worst_sorted <= 1e-10 && dominated;
    report_line(
        8,
        "transport-oracle-equivalence",
        passed,
        &format!(
            "brute-force dev {worst_bf:.1e}, sorted-1d dev {worst_sorted:.1e}, dominance {dominated}"
        ),
    );
}

#[test]
fn criterion_09_theorem_domination() {
    let scenarios: Vec<(&str, ExperimentConfig)> = {
        let mut base = ExperimentConfig::baseline(ExperimentKind::Generalization);
        base.n = 64;
        base.k = 8;
        base.d = 2;
        base.eta = 0.05;
        base.beta = 2.0;
        base.horizon = 600;
        base.replicas = 300;
        base.record_every = 10;
        base.population_samples = 10_000;

        let mut ph_disc = base.clone();
        ph_disc.loss = LossSpec::pseudo_huber();
        ph_disc.lambda = 1.0;
        ph_disc.seed = 1011;

        let mut ph_cts = ph_disc.clone();
        ph_cts.kernel = KernelSpec::ContinuousWindow;
        ph_cts.substeps_cts = 16;
        ph_cts.horizon = 300;
        ph_cts.replicas = 200;
        ph_cts.seed = 1012;

        let mut quad = base.clone();
        quad.loss = LossSpec::quadratic();
        quad.lambda = 0.0;
        quad.seed = 1013;

        let mut cos = base.clone();
        cos.loss = LossSpec::cosine();
        cos.loss.z_max = 0.5;
        cos.loss.amplitude = Some(1.5);
        cos.lambda = 0.0;
        cos.beta = 1.0;
        cos.seed = 1014;

        vec![
            ("pseudo_huber/discrete", ph_disc),
            ("pseudo_huber/continuous", ph_cts),
            ("quadratic/discrete", quad),
            ("cosine/discrete", cos),
        ]
    };
    let mut all = true;
    let mut details = Vec::new();
    for (name, cfg) in scenarios {
        let report = run_generalization(&cfg).unwrap();
        let v = report.verdict("gen_gap_below_theorem_bound").unwrap();
        all &= v.passed;
        details.push(format!("{name}: {}", v.detail));
    }
    report_line(9, "theorem-domination", all, &details.join("; "));
}

#[test]
fn criterion_10_reproducibility() {
    let mut cfg = ExperimentConfig::baseline(ExperimentKind::Stability);
    cfg.loss = LossSpec::pseudo_huber();
    cfg.n = 32;
    cfg.k = 8;
    cfg.horizon = 300;
    cfg.replicas = 50;
    cfg.seed = 1015;
    let a = run_stability(&cfg).unwrap().canonical_json().unwrap();
    let b = run_stability(&cfg).unwrap().canonical_json().unwrap();
    let stability_identical = a == b;

    let mut vcfg = ExperimentConfig::baseline(ExperimentKind::Verify);
    vcfg.replicas = 100;
    vcfg.probes = 2000;
    vcfg.seed = 1016;
    let va = sgld_stability::harness::run_verify(&vcfg)
        .unwrap()
        .canonical_json()
        .unwrap();
    let vb = sgld_stability::harness::run_verify(&vcfg)
        .unwrap()
        .canonical_json()
        .unwrap();
    let verify_identical = va == vb;

    report_line(
        10,
        "reproducibility",
        stability_identical && verify_identical,
        &format!(
            "stability report bytes equal: {stability_identical} ({} bytes); \
             verify report bytes equal: {verify_identical}",
            a.len()
        ),
    );
}

#[test]
fn family_coverage_includes_nonconvex_regime() {
    // The cosine family is genuinely non-convex for the default amplitude:
    // a ||w||^2 = 1.5 > 1.
    let cfg = {
        let mut c = ExperimentConfig::baseline(ExperimentKind::Verify);
        c.loss = LossSpec::cosine();
        c.d = 2;
        c
    };
    let model = cfg.build_model().unwrap();
    assert_eq!(*model.constants(), *model.constants());
    match cfg.loss.family {
        FamilyKind::CosineDissipative => {}
        _ => panic!("unexpected family"),
    }
    assert!(model.constants().smoothness > 2.0); // 1 + a ||w||^2 = 2.5
}
