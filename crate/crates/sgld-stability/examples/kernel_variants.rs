//! The kernel variants side by side: plain, projected, anisotropic noise
//! and the refined multistep discretization.
//!
//! ```bash
//! cargo run --example kernel_variants
//! ```

use sgld_stability::dynamics::{
    multistep_substeps, run_chain, InitialDist, KernelKind, SgldConfig, Variant,
};
use sgld_stability::loss::LossModel;
use sgld_stability::{rng, stats, vecmath};

fn main() -> sgld_stability::Result<()> {
    let model = LossModel::quadratic(2, 1.0)?;
    let mut data_rng = rng::stream(3, "examples/variants/data", 0);
    let dataset = model.data_distribution().sample_dataset(16, &mut data_rng)?;
    let init = InitialDist::origin(2);
    let horizon = 200;
    let replicas = 300;

    let variants: Vec<(&str, SgldConfig)> = vec![
        ("plain", SgldConfig::new(0.05, 2.0, 4, 0.0)?),
        (
            "projected(r=0.75)",
            SgldConfig::new(0.05, 2.0, 4, 0.0)?
                .with_variant(Variant::Projected { radius: 0.75 })?,
        ),
        (
            "anisotropic",
            SgldConfig::new(0.05, 2.0, 4, 0.0)?.with_variant(Variant::Anisotropic {
                sigma: vec![vec![1.0, 0.0], vec![0.0, 0.25]],
            })?,
        ),
        (
            "multistep(T=8)",
            SgldConfig::new(0.05, 2.0, 4, 0.0)?
                .with_variant(Variant::Multistep { t_sub: 8 })?,
        ),
    ];

    println!("{:<18} {:>12} {:>12}", "variant", "E||x||", "max ||x||");
    for (name, cfg) in &variants {
        let mut norms = Vec::with_capacity(replicas);
        let mut max_norm = 0.0f64;
        for r in 0..replicas {
            let mut stream = rng::stream(3, &format!("examples/variants/{name}"), r as u64);
            let states = run_chain(
                &init,
                &model,
                &dataset,
                cfg,
                KernelKind::Discrete,
                horizon,
                &mut stream,
            )?;
            let x = &states.last().unwrap().x;
            norms.push(vecmath::norm(x));
            max_norm = max_norm.max(states.iter().map(|s| vecmath::norm(&s.x)).fold(0.0, f64::max));
        }
        let s = stats::mean_sem(&norms);
        println!("{name:<18} {:>12.4} {:>12.4}", s.mean, max_norm);
    }

    let (t, gamma) = multistep_substeps(0.05)?;
    println!("\nrefined one-window kernel at eta=0.05: T = {t}, gamma = {gamma:.6}");
    Ok(())
}
