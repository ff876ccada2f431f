//! Fair balanced graph partitioning.
//!
//! Nodes of an undirected friendship graph are split into k parts of (near-)
//! equal size; each node values a part by the number of its neighbors inside
//! it. This crate constructs such partitions and audits them against two
//! fairness notions:
//!
//! - **Envy-freeness**: no node would gain more than a bounded amount by
//!   being evaluated in another part.
//! - **Core membership**: no allowed-size coalition exists in which every
//!   member strictly beats `α·u_i(X) + β`.
//!
//! Construction engines: uniform and rejection sampling ([`sample`]), a
//! resampling engine for ε-balanced partitions driven by bad events
//! ([`lll`]), and k = 2 cut machinery with exact and swap-local search
//! ([`mincut2`]). The [`guarantees`] module evaluates every closed-form
//! bound, and [`audit`] delivers exact or heuristic blocking-coalition
//! verdicts with verifiable certificates.
//!
//! The `examples/` directory demonstrates one capability per file; the
//! `fairpart` binary exposes the same functionality as subcommands
//! (`gen`, `run`, `audit`, `experiment`, `bounds`).
//!
//! ```
//! use fairpart::graph::{generate, GraphModel};
//! use fairpart::sample::rejection_sample_desirable;
//! use fairpart::audit::envy_audit;
//!
//! let g = generate(&GraphModel::Gnp { n: 12, p: 0.5 }, 7).unwrap();
//! let (x, stats) = rejection_sample_desirable(&g, 2, 100_000, 1).unwrap();
//! let x = x.expect("small instances accept quickly");
//! assert!(stats.accepted);
//! let report = envy_audit(&g, &x);
//! assert!(report.max_envy <= g.max_degree() as u64);
//! ```

pub mod audit;
pub mod cli;
pub mod error;
pub mod graph;
pub mod guarantees;
pub mod lll;
pub mod mincut2;
pub mod partition;
pub mod sample;

pub use audit::{envy_audit, find_blocking_exact, find_blocking_greedy, CoreQuery, EnvyReport};
pub use error::{Error, Result};
pub use graph::{generate, load_edge_list, Graph, GraphModel, NodeSet};
pub use guarantees::{check_desirability, guarantee_bundle, GuaranteeBundle, Regime};
pub use lll::{evaluate_events, moser_tardos, LllRun};
pub use mincut2::{exact_min_balanced_cut, local_min_cut, two_core_partition, CutReport};
pub use partition::{BalanceSpec, Partition};
pub use sample::{rejection_sample_desirable, sample_uniform};
