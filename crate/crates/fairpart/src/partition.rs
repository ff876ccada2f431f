//! Partitions, balance predicates, and per-node utilities.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};

/// Comparison slack for boundary checks throughout the crate. Threshold
/// inequalities are closed intervals; float noise must not flip audits.
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Floor with snapping: values within [`BOUNDARY_TOL`] of an integer are
/// treated as that integer before rounding.
pub(crate) fn floor_snapped(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= BOUNDARY_TOL {
        r
    } else {
        x.floor()
    }
}

pub(crate) fn ceil_snapped(x: f64) -> f64 {
    let r = x.round();
    if (x - r).abs() <= BOUNDARY_TOL {
        r
    } else {
        x.ceil()
    }
}

/// An assignment of every node to one of `k` parts. Immutable snapshot;
/// engines produce new partitions rather than mutating shared ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    k: usize,
    assignment: Vec<usize>,
    part_sizes: Vec<usize>,
}

impl Partition {
    /// Builds a partition from a dense assignment. Requires `k >= 1`, every
    /// entry `< k`, and `n >= k` (the degenerate empty assignment is allowed
    /// so that serialized empty partitions round-trip).
    pub fn new(k: usize, assignment: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("partition requires k >= 1".into()));
        }
        let n = assignment.len();
        if n != 0 && n < k {
            return Err(Error::InvalidParams(format!(
                "partition requires n >= k, got n={n}, k={k}"
            )));
        }
        let mut part_sizes = vec![0usize; k];
        for (node, &p) in assignment.iter().enumerate() {
            if p >= k {
                return Err(Error::InvalidParams(format!(
                    "node {node} assigned to part {p}, but k={k}"
                )));
            }
            part_sizes[p] += 1;
        }
        Ok(Partition { k, assignment, part_sizes })
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Part id of node `i`.
    pub fn part(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn part_sizes(&self) -> &[usize] {
        &self.part_sizes
    }

    /// Members of part `j` as a node set.
    pub fn part_set(&self, j: usize) -> NodeSet {
        assert!(j < self.k, "part {j} out of range for k={}", self.k);
        let mut set = NodeSet::empty(self.n());
        for (i, &p) in self.assignment.iter().enumerate() {
            if p == j {
                set.insert(i);
            }
        }
        set
    }
}

/// The admissible part-size interval for an ε-balanced partition:
/// `[⌊(1−ε)n/k⌋, ⌈(1+ε)n/k⌉]`. With ε = 0 this reduces to `{⌊n/k⌋, ⌈n/k⌉}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BalanceSpec {
    n: usize,
    k: usize,
    eps: f64,
    lower: usize,
    upper: usize,
}

impl BalanceSpec {
    pub fn new(n: usize, k: usize, eps: f64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("balance spec requires k >= 1".into()));
        }
        if !(0.0..=1.0).contains(&eps) {
            return Err(Error::Domain(format!("eps must lie in [0,1], got {eps}")));
        }
        let ideal = n as f64 / k as f64;
        let lower = floor_snapped((1.0 - eps) * ideal) as usize;
        let upper = ceil_snapped((1.0 + eps) * ideal) as usize;
        Ok(BalanceSpec { n, k, eps, lower, upper })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn lower(&self) -> usize {
        self.lower
    }

    pub fn upper(&self) -> usize {
        self.upper
    }

    pub fn contains(&self, size: usize) -> bool {
        (self.lower..=self.upper).contains(&size)
    }
}

/// True iff every part size lies in the balance interval. The interval must
/// have been built for this partition's `n` and `k`.
pub fn is_eps_balanced(x: &Partition, spec: &BalanceSpec) -> bool {
    assert_eq!(spec.n(), x.n(), "balance spec built for a different n");
    assert_eq!(spec.k(), x.k(), "balance spec built for a different k");
    x.part_sizes().iter().all(|&s| spec.contains(s))
}

/// `u_i(X)`: the number of `i`'s neighbors sharing `i`'s part.
pub fn utility(g: &Graph, x: &Partition, i: usize) -> usize {
    debug_assert_eq!(g.n(), x.n());
    let own = x.part(i);
    g.neighbors(i).iter().filter(|&&j| x.part(j) == own).count()
}

/// `u_i(S)`: the number of `i`'s neighbors inside `S`. With no self-loops,
/// `i`'s own membership in `S` is irrelevant.
pub fn utility_for_set(g: &Graph, i: usize, s: &NodeSet) -> usize {
    g.neighbors(i).iter().filter(|&&j| s.contains(j)).count()
}

/// `u_i(X_j)` for every part `j`; the entry for `i`'s own part equals
/// `utility(g, x, i)`, and the sum over parts equals `deg(i)`.
pub fn part_utilities(g: &Graph, x: &Partition, i: usize) -> Vec<usize> {
    debug_assert_eq!(g.n(), x.n());
    let mut out = vec![0usize; x.k()];
    for &j in g.neighbors(i) {
        out[x.part(j)] += 1;
    }
    out
}

/// A partition together with the ε it was built against, as stored on disk.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionDoc {
    pub partition: Partition,
    pub eps: f64,
}

/// Serializes a partition to the stable `key=value` text format:
///
/// ```text
/// # fairpart partition v1
/// n=8
/// k=2
/// eps=0
/// assignment=0 0 0 0 1 1 1 1
/// ```
pub fn serialize_partition(doc: &PartitionDoc) -> String {
    let assignment: Vec<String> =
        doc.partition.assignment().iter().map(|p| p.to_string()).collect();
    format!(
        "# fairpart partition v1\nn={}\nk={}\neps={}\nassignment={}\n",
        doc.partition.n(),
        doc.partition.k(),
        doc.eps,
        assignment.join(" ")
    )
}

/// Parses the partition text format. Rejects length mismatches with the
/// declared `n` and part ids outside `[0, k)`.
pub fn parse_partition(text: &str) -> Result<PartitionDoc> {
    let mut n: Option<usize> = None;
    let mut k: Option<usize> = None;
    let mut eps: Option<f64> = None;
    let mut assignment: Option<Vec<usize>> = None;

    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            msg: "expected key=value".into(),
        })?;
        let parse_err = |msg: String| Error::Parse { line: line_no, msg };
        match key.trim() {
            "n" => {
                n = Some(value.trim().parse().map_err(|_| parse_err(format!("bad n {value:?}")))?)
            }
            "k" => {
                k = Some(value.trim().parse().map_err(|_| parse_err(format!("bad k {value:?}")))?)
            }
            "eps" => {
                eps = Some(
                    value.trim().parse().map_err(|_| parse_err(format!("bad eps {value:?}")))?,
                )
            }
            "assignment" => {
                let parts: Result<Vec<usize>> = value
                    .split_whitespace()
                    .map(|tok| {
                        tok.parse().map_err(|_| Error::Parse {
                            line: line_no,
                            msg: format!("bad part id {tok:?}"),
                        })
                    })
                    .collect();
                assignment = Some(parts?);
            }
            other => {
                return Err(parse_err(format!("unknown key {other:?}")));
            }
        }
    }

    let missing = |what: &str| Error::Parse { line: 0, msg: format!("missing field {what}") };
    let n = n.ok_or_else(|| missing("n"))?;
    let k = k.ok_or_else(|| missing("k"))?;
    let eps = eps.ok_or_else(|| missing("eps"))?;
    let assignment = assignment.unwrap_or_default();
    if assignment.len() != n {
        return Err(Error::Parse {
            line: 0,
            msg: format!("assignment length {} does not match n={n}", assignment.len()),
        });
    }
    if !(0.0..=1.0).contains(&eps) {
        return Err(Error::Parse { line: 0, msg: format!("eps {eps} outside [0,1]") });
    }
    let partition = Partition::new(k, assignment)?;
    Ok(PartitionDoc { partition, eps })
}
