//! k = 2 machinery: swap-local search, exact minimum balanced cut, the
//! (2+ε)-core dispatcher, and the one-swap inequality.
//!
//! ```text
//! cargo run --example min_cut_core
//! ```

use fairpart::audit::CoreQuery;
use fairpart::graph::{generate, GraphModel, NodeSet};
use fairpart::mincut2::{
    check_one_swap_lemma, exact_min_balanced_cut, local_min_cut, two_core_partition, CoreFactors,
};

fn main() -> fairpart::Result<()> {
    let g = generate(&GraphModel::Gnp { n: 12, p: 0.5 }, 11)?;
    println!("instance: G(12, 0.5), {} edges", g.edge_count());

    let (exact, exact_report) = exact_min_balanced_cut(&g)?;
    println!("exact min balanced cut: {}", exact_report.cut_value);
    for seed in 0..3u64 {
        let (_, report) = local_min_cut(&g, seed, None)?;
        println!(
            "local search (seed {seed}): cut {} after {} swaps",
            report.cut_value, report.swaps_performed
        );
    }

    println!(
        "core factors at n=12: exact {:.4} (phi {:.4}), local {:.4}",
        CoreFactors::exact_factor(12),
        CoreFactors::phi(),
        CoreFactors::local_factor(12)
    );
    let q = CoreQuery::balanced(12, 2, CoreFactors::exact_factor(12), 0.0)?;
    let blocked = fairpart::audit::find_blocking_exact(&g, &exact, &q)?;
    println!("exact min cut blocked under its factor: {}", blocked.is_some());

    // One-swap inequality for a few coalitions on the exact min cut.
    let side = exact.part_set(0);
    println!("one-swap inequality, S = X1: {}", check_one_swap_lemma(&g, &exact, &side)?);
    let everyone = NodeSet::full(12);
    println!("one-swap inequality, S = V:  {}", check_one_swap_lemma(&g, &exact, &everyone)?);

    // Dispatcher: brute force below 8/eps + 6, local search above it.
    for (n, eps) in [(12usize, 1.0f64), (100, 0.1)] {
        let g = generate(&GraphModel::Gnp { n, p: 0.3 }, 5)?;
        let result = two_core_partition(&g, eps, 3)?;
        println!(
            "two_core(n={n}, eps={eps}): path {:?}, alpha {:.4}, cut {}",
            result.path, result.alpha, result.cut.cut_value
        );
    }
    Ok(())
}
