//! Closed-form guarantee bundles across parameter settings.
//!
//! ```text
//! cargo run --example bounds
//! ```

use fairpart::guarantees::{
    chernoff_tail, global_balance_tail, guarantee_bundle, min_eps, Regime,
};

fn main() -> fairpart::Result<()> {
    println!("balanced regime (EF radius 18 max{{sqrt(D), k^2}} ln n):");
    for (delta, k, n) in [(16usize, 2usize, 100usize), (64, 2, 1000), (8, 4, 2000)] {
        let b = guarantee_bundle(Regime::Balanced, delta, k, n, 0.0)?;
        println!(
            "  D={delta:3} k={k} n={n:5}: ef={:9.2}  core=({:.3}, {:8.2})  threshold={:7.2}",
            b.ef_radius, b.core_alpha, b.core_beta, b.degree_threshold
        );
    }

    println!("\neps regime (EF radius 12 max{{sqrt(D/k), k}} ln(Dk/eps)):");
    for (delta, k, n, eps) in [(8usize, 4usize, 2000usize, 0.35f64), (64, 2, 1000, 0.5)] {
        let b = guarantee_bundle(Regime::Eps, delta, k, n, eps)?;
        println!(
            "  D={delta:3} k={k} n={n:5} eps={eps}: ef={:8.2}  core=({:.3}, {:7.2})  min_eps={:.4}",
            b.ef_radius, b.core_alpha, b.core_beta, b.min_eps
        );
        println!(
            "    imbalance tail bound 2k exp(-eps^2 n / 3k) = {:.3e}",
            global_balance_tail(n, k, eps)
        );
    }

    println!("\nfeasibility floors 6 sqrt(k ln k / n):");
    for (n, k) in [(2000usize, 4usize), (1000, 2), (400, 2), (100, 4)] {
        println!("  n={n:5} k={k}: min_eps = {:.4}", min_eps(n, k));
    }

    println!("\ntwo-sided Chernoff tail 2 exp(-d^2 mu / 3):");
    for (mu, d) in [(100.0f64, 0.5f64), (125.0, 0.3)] {
        println!("  mu={mu:5} delta={d}: {:.5e}", chernoff_tail(mu, d)?);
    }
    Ok(())
}
