//! Run a single SGLD chain on the quadratic family and compare its
//! long-run mean against the dataset mean (the stationary mean of the
//! linear dynamics), then demonstrate the projected variant.
//!
//! ```bash
//! cargo run --example single_chain
//! ```

use sgld_stability::dynamics::{run_chain, InitialDist, KernelKind, SgldConfig, Variant};
use sgld_stability::loss::LossModel;
use sgld_stability::{rng, stats, vecmath};

fn main() -> sgld_stability::Result<()> {
    let model = LossModel::quadratic(2, 1.0)?;
    let mut data_rng = rng::stream(5, "examples/single-chain/data", 0);
    let dataset = model.data_distribution().sample_dataset(32, &mut data_rng)?;
    let mut z_bar = vec![0.0; 2];
    for p in dataset.points() {
        vecmath::axpy(&mut z_bar, 1.0 / 32.0, &p.z);
    }

    let cfg = SgldConfig::new(0.1, 2.0, 8, 0.0)?;
    let init = InitialDist::origin(2);
    let replicas = 500;
    let horizon = 300;

    let mut finals = Vec::with_capacity(replicas);
    for r in 0..replicas {
        let mut stream = rng::stream(5, "examples/single-chain", r as u64);
        let states = run_chain(&init, &model, &dataset, &cfg, KernelKind::Discrete, horizon, &mut stream)?;
        finals.push(states.last().unwrap().x.clone());
    }
    for coord in 0..2 {
        let col: Vec<f64> = finals.iter().map(|x| x[coord]).collect();
        let s = stats::mean_sem(&col);
        println!(
            "coordinate {coord}: chain mean {:.4} +- {:.4}, data mean {:.4}",
            s.mean, s.sem, z_bar[coord]
        );
        assert!((s.mean - z_bar[coord]).abs() <= 4.0 * s.sem);
    }

    // Projected variant: iterates never leave the ball.
    let projected = SgldConfig::new(0.1, 2.0, 8, 0.0)?
        .with_variant(Variant::Projected { radius: 0.5 })?;
    let mut stream = rng::stream(5, "examples/single-chain/projected", 0);
    let states = run_chain(&init, &model, &dataset, &projected, KernelKind::Discrete, 500, &mut stream)?;
    let max_norm = states
        .iter()
        .map(|s| vecmath::norm(&s.x))
        .fold(0.0f64, f64::max);
    println!("projected chain: max ||x|| over 500 steps = {max_norm:.4} (radius 0.5)");
    assert!(max_norm <= 0.5 + 1e-12);
    Ok(())
}
