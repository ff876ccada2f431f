//! Immutable simple graphs, deterministic instance generators, and the
//! `E(S, T)` edge-counting primitive the rest of the crate builds on.
//!
//! `E(S, T)` sums, over every node of `S`, the number of its neighbors inside
//! `T`. An edge with both endpoints in `S ∩ T` is therefore counted twice;
//! the k = 2 cut algebra relies on this convention, so it is preserved
//! exactly rather than normalized to an "internal edge count".

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::io::{BufRead, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// An undirected simple graph over nodes `0..n`.
///
/// Immutable after construction; adjacency lists are sorted and symmetric,
/// with no self-loops or duplicate entries.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
    max_degree: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph {{ n: {}, edges: {}, max_degree: {} }}",
            self.n(),
            self.edge_count,
            self.max_degree
        )
    }
}

impl Graph {
    /// Builds a graph from undirected edges. Duplicate edges are collapsed;
    /// self-loops are rejected; endpoints must be `< n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop on node {u}")));
            }
            for w in [u, v] {
                if w >= n {
                    return Err(Error::NodeOutOfRange { node: w, n });
                }
            }
            if seen.insert((u.min(v), u.max(v))) {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let edge_count = seen.len();
        let max_degree = adjacency.iter().map(Vec::len).max().unwrap_or(0);
        Ok(Graph { adjacency, edge_count, max_degree })
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Maximum degree Δ.
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Degree of node `i`. Panics if `i >= n`.
    pub fn degree(&self, i: usize) -> usize {
        assert!(i < self.n(), "node {i} out of range for graph with {} nodes", self.n());
        self.adjacency[i].len()
    }

    /// Sorted neighbor list of node `i`. Panics if `i >= n`.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        assert!(i < self.n(), "node {i} out of range for graph with {} nodes", self.n());
        &self.adjacency[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    /// `E(S, T) = Σ_{i∈S} |N(i) ∩ T|`. Edges inside `S ∩ T` count twice.
    pub fn edges_between(&self, s: &NodeSet, t: &NodeSet) -> usize {
        debug_assert_eq!(s.universe(), self.n());
        debug_assert_eq!(t.universe(), self.n());
        s.iter()
            .map(|i| self.adjacency[i].iter().filter(|&&j| t.contains(j)).count())
            .sum()
    }

    /// All nodes at graph distance in `[1, d]` from `i`, excluding `i`.
    /// Only `d` of 1 or 2 is supported; these define the local-lemma
    /// dependency neighborhoods.
    pub fn neighbors_within_distance(&self, i: usize, d: usize) -> NodeSet {
        assert!(i < self.n(), "node {i} out of range for graph with {} nodes", self.n());
        assert!(d == 1 || d == 2, "distance must be 1 or 2, got {d}");
        let mut set = NodeSet::empty(self.n());
        for &j in &self.adjacency[i] {
            set.insert(j);
        }
        if d == 2 {
            for &j in &self.adjacency[i] {
                for &l in &self.adjacency[j] {
                    if l != i {
                        set.insert(l);
                    }
                }
            }
        }
        set
    }
}

/// A set of node ids over a fixed universe `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct NodeSet {
    mask: Vec<bool>,
    len: usize,
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl NodeSet {
    pub fn empty(universe: usize) -> Self {
        NodeSet { mask: vec![false; universe], len: 0 }
    }

    pub fn full(universe: usize) -> Self {
        NodeSet { mask: vec![true; universe], len: universe }
    }

    /// Builds a set from ids, validating them against the universe.
    /// Duplicates collapse.
    pub fn from_ids<I>(universe: usize, ids: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut set = NodeSet::empty(universe);
        for i in ids {
            if i >= universe {
                return Err(Error::NodeOutOfRange { node: i, n: universe });
            }
            set.insert(i);
        }
        Ok(set)
    }

    pub fn universe(&self) -> usize {
        self.mask.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask.get(i).copied().unwrap_or(false)
    }

    pub fn insert(&mut self, i: usize) -> bool {
        assert!(i < self.mask.len(), "node {i} outside universe {}", self.mask.len());
        if self.mask[i] {
            false
        } else {
            self.mask[i] = true;
            self.len += 1;
            true
        }
    }

    pub fn remove(&mut self, i: usize) -> bool {
        if self.contains(i) {
            self.mask[i] = false;
            self.len -= 1;
            true
        } else {
            false
        }
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn intersection(&self, other: &NodeSet) -> NodeSet {
        assert_eq!(self.universe(), other.universe(), "universe mismatch");
        let mut out = NodeSet::empty(self.universe());
        for i in self.iter() {
            if other.contains(i) {
                out.insert(i);
            }
        }
        out
    }

    pub fn complement(&self) -> NodeSet {
        let mut out = NodeSet::empty(self.universe());
        for (i, &m) in self.mask.iter().enumerate() {
            if !m {
                out.insert(i);
            }
        }
        out
    }
}

/// Deterministic test-instance families.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphModel {
    Complete { n: usize },
    Cycle { n: usize },
    Path { n: usize },
    Grid { rows: usize, cols: usize },
    Regular { n: usize, d: usize },
    Gnp { n: usize, p: f64 },
    /// `count` disjoint cliques of `size` nodes each.
    Cliques { count: usize, size: usize },
}

/// Generates a graph for the given model. Identical `(model, seed)` pairs
/// produce identical adjacency; deterministic models ignore the seed.
pub fn generate(model: &GraphModel, seed: u64) -> Result<Graph> {
    match *model {
        GraphModel::Complete { n } => {
            let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            Graph::from_edges(n, edges)
        }
        GraphModel::Cycle { n } => {
            if n < 3 {
                return Err(Error::InvalidParams(format!("cycle requires n >= 3, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        GraphModel::Path { n } => {
            if n == 0 {
                return Err(Error::InvalidParams("path requires n >= 1".into()));
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        GraphModel::Grid { rows, cols } => {
            if rows == 0 || cols == 0 {
                return Err(Error::InvalidParams("grid requires rows, cols >= 1".into()));
            }
            let n = rows * cols;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
        GraphModel::Regular { n, d } => generate_regular(n, d, seed),
        GraphModel::Gnp { n, p } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::InvalidParams(format!("gnp requires p in [0,1], got {p}")));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    if rng.random_bool(p) {
                        edges.push((i, j));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
        GraphModel::Cliques { count, size } => {
            if count == 0 || size == 0 {
                return Err(Error::InvalidParams("cliques requires count, size >= 1".into()));
            }
            let n = count * size;
            let mut edges = Vec::new();
            for c in 0..count {
                let base = c * size;
                for i in 0..size {
                    for j in i + 1..size {
                        edges.push((base + i, base + j));
                    }
                }
            }
            Graph::from_edges(n, edges)
        }
    }
}

/// Random d-regular graph via seeded stub pairing, retried until simple.
///
/// Each attempt shuffles the remaining stubs and greedily pairs them,
/// keeping only non-conflicting pairs. If the leftover stubs cannot form any
/// new edge the attempt restarts from scratch.
fn generate_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    if d >= n && !(n == 0 && d == 0) {
        return Err(Error::InvalidParams(format!("regular requires d < n, got d={d}, n={n}")));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "regular requires n*d even, got n={n}, d={d}"
        )));
    }
    if d == 0 {
        return Graph::from_edges(n, std::iter::empty());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const MAX_ATTEMPTS: usize = 1000;
    for _ in 0..MAX_ATTEMPTS {
        if let Some(edges) = try_pairing(n, d, &mut rng) {
            return Graph::from_edges(n, edges);
        }
    }
    Err(Error::InvalidParams(format!(
        "could not realize a simple {d}-regular graph on {n} nodes after {MAX_ATTEMPTS} pairing attempts"
    )))
}

fn try_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut edges: HashSet<(usize, usize)> = HashSet::new();
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        stubs.shuffle(rng);
        let mut leftover = Vec::new();
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            let key = (u.min(v), u.max(v));
            if u != v && !edges.contains(&key) {
                edges.insert(key);
            } else {
                leftover.push(u);
                leftover.push(v);
            }
        }
        if leftover.len() == stubs.len() {
            // No pair was placed; check whether any placement is still possible.
            let possible = leftover.iter().enumerate().any(|(a, &u)| {
                leftover[a + 1..]
                    .iter()
                    .any(|&v| u != v && !edges.contains(&(u.min(v), u.max(v))))
            });
            if !possible {
                return None;
            }
        }
        stubs = leftover;
    }
    Some(edges.into_iter().collect())
}

/// A graph loaded from an edge-list stream, together with load metadata.
#[derive(Debug)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// Original file ids in first-appearance order; `original_ids[i]` is the
    /// external id of internal node `i`.
    pub original_ids: Vec<u64>,
    /// Number of duplicate edge lines collapsed during the load.
    pub duplicate_edges: usize,
}

/// Parses a UTF-8 edge list: one `u v` pair per line, `#` comments and blank
/// lines ignored. Node ids are remapped to `0..n` in first-appearance order.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut ids: HashMap<u64, usize> = HashMap::new();
    let mut original_ids = Vec::new();
    let mut edges = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut duplicate_edges = 0;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected two node ids, found {} tokens", tokens.len()),
            });
        }
        let mut pair = [0u64; 2];
        for (slot, tok) in pair.iter_mut().zip(&tokens) {
            *slot = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("invalid node id {tok:?}"),
            })?;
        }
        if pair[0] == pair[1] {
            return Err(Error::SelfLoop { line: line_no, node: pair[0] });
        }
        let internal: Vec<usize> = pair
            .iter()
            .map(|&raw| {
                *ids.entry(raw).or_insert_with(|| {
                    original_ids.push(raw);
                    original_ids.len() - 1
                })
            })
            .collect();
        let (u, v) = (internal[0], internal[1]);
        if seen.insert((u.min(v), u.max(v))) {
            edges.push((u, v));
        } else {
            duplicate_edges += 1;
        }
    }

    let graph = Graph::from_edges(original_ids.len(), edges)?;
    Ok(LoadedGraph { graph, original_ids, duplicate_edges })
}

/// Writes the graph as an edge list, one `u v` pair per line, ascending.
pub fn write_edge_list<W: Write>(graph: &Graph, mut writer: W) -> std::io::Result<()> {
    for i in 0..graph.n() {
        for &j in graph.neighbors(i) {
            if i < j {
                writeln!(writer, "{i} {j}")?;
            }
        }
    }
    Ok(())
}
