//! The transport toolbox: exact assignment distances validated against
//! factorial brute force and the sorted one-dimensional oracle, plus the
//! coupling upper-bound estimator and the weighted semimetric checks.
//!
//! ```bash
//! cargo run --example transport_oracles
//! ```

use sgld_stability::transport::{
    brute_force_assignment, check_semimetric_lemmas, estimate_w_upper, exact_w1_sorted_1d,
    exact_wp_assignment, solve_assignment, CostKind, GFunction, SemimetricParams,
};
use sgld_stability::{rng, vecmath};

fn main() -> sgld_stability::Result<()> {
    let mut stream = rng::stream(41, "examples/transport", 0);

    // Assignment vs factorial enumeration on small instances.
    let n = 6;
    let a: Vec<Vec<f64>> = (0..n).map(|_| rng::normal_vector(&mut stream, 2)).collect();
    let b: Vec<Vec<f64>> = (0..n).map(|_| rng::normal_vector(&mut stream, 2)).collect();
    let mut cost = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            cost[i * n + j] = vecmath::dist(&a[i], &b[j]);
        }
    }
    let (_, total) = solve_assignment(&cost, n);
    let brute = brute_force_assignment(&cost, n)?;
    println!("assignment total {total:.6} vs brute force {brute:.6}");

    // 1-d sorted oracle agrees with the assignment solver.
    let xs: Vec<f64> = (0..32).map(|_| rng::standard_normal(&mut stream)).collect();
    let ys: Vec<f64> = (0..32).map(|_| rng::standard_normal(&mut stream)).collect();
    let sorted = exact_w1_sorted_1d(&xs, &ys)?.value;
    let assigned = exact_wp_assignment(
        &xs.iter().map(|&v| vec![v]).collect::<Vec<_>>(),
        &ys.iter().map(|&v| vec![v]).collect::<Vec<_>>(),
        1,
    )?
    .value;
    println!("1-d W1: sorted {sorted:.6} vs assignment {assigned:.6}");

    // Coupling estimates never undercut the optimal matching.
    let pairs: Vec<(Vec<f64>, Vec<f64>)> = (0..128)
        .map(|_| {
            let x = rng::normal_vector(&mut stream, 2);
            let mut y = rng::normal_vector(&mut stream, 2);
            vecmath::axpy(&mut y, 0.5, &x);
            (x, y)
        })
        .collect();
    let coupled = estimate_w_upper(&pairs, CostKind::W1, None)?;
    let marg_a: Vec<Vec<f64>> = pairs.iter().map(|p| p.0.clone()).collect();
    let marg_b: Vec<Vec<f64>> = pairs.iter().map(|p| p.1.clone()).collect();
    let exact = exact_wp_assignment(&marg_a, &marg_b, 1)?;
    println!(
        "coupling mean {:.6} +- {:.6} >= exact assignment {:.6}",
        coupled.value, coupled.sem, exact.value
    );
    assert!(coupled.value >= exact.value);

    // Weighted-semimetric inequalities over random probes.
    let params = SemimetricParams::new(GFunction::cap(2.0)?, 0.3)?;
    for report in check_semimetric_lemmas(&params, 4, 50_000, &mut stream)? {
        println!(
            "semimetric {:<14} worst violation {:>10.3e}  {}",
            report.check.name(),
            report.worst_violation,
            if report.passed { "pass" } else { "FAIL" }
        );
        assert!(report.passed);
    }
    Ok(())
}
