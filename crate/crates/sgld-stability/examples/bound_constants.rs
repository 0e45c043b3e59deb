//! Evaluate every closed-form constant in both regimes and print the
//! generalization bound as a function of the iteration count.
//!
//! ```bash
//! cargo run --example bound_constants
//! ```

use sgld_stability::bounds;

fn main() -> sgld_stability::Result<()> {
    // Lipschitz regime, convex branch: L=1, M=1, lambda=2, beta=2.
    let convex = bounds::lipschitz_constants(1.0, 1.0, 2.0, 2.0, 0.0)?;
    println!("Lipschitz constants, convex branch (lambda >= M):");
    for (k, v) in bounds::lipschitz_constants_map(&convex) {
        println!("  {k:<12} = {v:.6e}");
    }

    // Non-convex branch: L=1, M=2, lambda=1, beta=2.
    let nonconvex = bounds::lipschitz_constants(1.0, 2.0, 1.0, 2.0, 0.0)?;
    println!("\nLipschitz constants, non-convex branch (lambda < M):");
    for (k, v) in bounds::lipschitz_constants_map(&nonconvex) {
        println!("  {k:<12} = {v:.6e}");
    }

    // Dissipative regime at unit parameters.
    let diss = bounds::dissipative_constants(1.0, 1.0, 1.0, 1, 1.0, 0.0, 0.0)?;
    println!("\nDissipative constants (M=m=b=d=beta=1):");
    for (k, v) in bounds::dissipative_constants_map(&diss) {
        println!("  {k:<12} = {v:.6e}");
    }
    println!("  ctilde(1)    = {}", bounds::ctilde(1, 1.0, 1.0, 1.0, 1, 1.0)?);

    // Bound curves: the time branch and the time-independent plateau.
    let (n, k, eta, d) = (64, 8, 0.05, 2);
    println!("\nLipschitz continuous-time bound, n={n}, k={k}, eta={eta}:");
    println!("{:>8} {:>14}", "t", "bound");
    for t in [0usize, 10, 100, 1000, 10_000, 100_000] {
        let b = bounds::lipschitz_gen_bound(&convex, n, k, eta, t, d, true)?;
        println!("{t:>8} {b:>14.6e}");
    }
    println!("(the plateau value is exactly C2 (C1+1) n/(n-k) k/n)");
    Ok(())
}
