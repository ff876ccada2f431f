//! Fairness audits: envy reports, blocking-coalition search, and
//! certificate verification on the two-clique instance.
//!
//! ```text
//! cargo run --example audit_partition
//! ```

use fairpart::audit::{
    envy_audit, find_blocking_exact, find_blocking_greedy, verify_certificate, CoreQuery,
};
use fairpart::graph::{generate, GraphModel, NodeSet};
use fairpart::partition::Partition;

fn main() -> fairpart::Result<()> {
    // Two disjoint K4s. The mixed partition strands every node with a single
    // clique-mate; each clique would rather regroup.
    let g = generate(&GraphModel::Cliques { count: 2, size: 4 }, 0)?;
    let mixed = Partition::new(2, vec![0, 0, 1, 1, 0, 0, 1, 1])?;
    let aligned = Partition::new(2, vec![0, 0, 0, 0, 1, 1, 1, 1])?;

    let envy = envy_audit(&g, &mixed);
    println!("mixed partition:   max envy {} (node {:?})", envy.max_envy, envy.argmax);
    let envy = envy_audit(&g, &aligned);
    println!("aligned partition: max envy {} (node {:?})", envy.max_envy, envy.argmax);

    let q = CoreQuery::balanced(8, 2, 2.0, 0.0)?;
    match find_blocking_exact(&g, &mixed, &q)? {
        Some(cert) => println!(
            "mixed is (2,0)-blocked by {:?} with slacks {:?}",
            cert.coalition, cert.slacks
        ),
        None => println!("mixed has no (2,0)-blocking set"),
    }

    let q = CoreQuery::balanced(8, 2, 1.0, 0.0)?;
    match find_blocking_exact(&g, &aligned, &q)? {
        Some(cert) => println!("aligned is (1,0)-blocked by {:?}", cert.coalition),
        None => println!("aligned has no (1,0)-blocking set: it sits in the exact core"),
    }

    // The greedy attacker is sound but incomplete; its hits always verify.
    let q = CoreQuery::balanced(8, 2, 2.0, 0.0)?;
    if let Some(cert) = find_blocking_greedy(&g, &mixed, &q, 8, 7) {
        let set = NodeSet::from_ids(8, cert.coalition.iter().copied())?;
        let check = verify_certificate(&g, &mixed, &q, &set);
        println!(
            "greedy attacker found {:?}; verification: {}",
            cert.coalition,
            if check.valid { "valid" } else { "INVALID" }
        );
    }
    Ok(())
}
