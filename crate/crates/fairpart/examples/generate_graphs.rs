//! Instance generation: every built-in family plus edge-list round-trips.
//!
//! ```text
//! cargo run --example generate_graphs
//! ```

use fairpart::graph::{generate, load_edge_list, write_edge_list, GraphModel};

fn main() -> fairpart::Result<()> {
    let families = [
        ("complete", GraphModel::Complete { n: 8 }),
        ("cycle", GraphModel::Cycle { n: 12 }),
        ("path", GraphModel::Path { n: 10 }),
        ("grid", GraphModel::Grid { rows: 4, cols: 5 }),
        ("regular", GraphModel::Regular { n: 60, d: 6 }),
        ("gnp", GraphModel::Gnp { n: 50, p: 0.15 }),
        ("cliques", GraphModel::Cliques { count: 3, size: 5 }),
    ];

    for (name, model) in families {
        let g = generate(&model, 42)?;
        println!(
            "{name:9} n={:4}  edges={:5}  max_degree={}",
            g.n(),
            g.edge_count(),
            g.max_degree()
        );
    }

    // Write one instance out and load it back; loading remaps ids to
    // first-appearance order and reports collapsed duplicates.
    let g = generate(&GraphModel::Regular { n: 60, d: 6 }, 42)?;
    let mut buf = Vec::new();
    write_edge_list(&g, &mut buf)?;
    let loaded = load_edge_list(&buf[..])?;
    println!(
        "\nround-trip: {} lines -> n={}, edges={}, duplicates collapsed={}",
        buf.iter().filter(|&&b| b == b'\n').count(),
        loaded.graph.n(),
        loaded.graph.edge_count(),
        loaded.duplicate_edges
    );
    Ok(())
}
