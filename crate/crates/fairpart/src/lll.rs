//! Constructive search for ε-desirable partitions by resampling bad events.
//!
//! Two kinds of bad event drive the loop: a global event that holds while
//! the partition is not ε-balanced, and a node event `A_i` for each node
//! with `deg(i) >= 12 k ln(Δk/ε)` that holds while some per-part utility of
//! `i` leaves its concentration window. While any event holds, the engine
//! resamples the event's variables: the full partition for the global event,
//! or node `i` together with all of its neighbors for a node event. Event
//! selection is fixed (global first, then the lowest-indexed bad node) so
//! that runs are reproducible; any selection rule preserves the guarantee.
//!
//! `A_i` depends only on the assignments of `i`'s neighbors, so after a node
//! resample only nodes within distance two of `i` can change status. The
//! engine re-evaluates exactly that set; a full re-scan per round is
//! available behind [`LllOptions::full_rescan`] for verification.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Graph;
use crate::guarantees::{eps_desirable_interval, min_eps};
use crate::partition::{BalanceSpec, Partition, BOUNDARY_TOL};
use crate::sample::draw_assignment;

/// Snapshot of which bad events currently hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventStatus {
    /// The partition is not ε-balanced.
    pub global_bad: bool,
    /// Ascending ids of nodes whose node event holds. Only nodes above the
    /// degree threshold ever appear.
    pub bad_nodes: Vec<usize>,
}

impl EventStatus {
    pub fn any(&self) -> bool {
        self.global_bad || !self.bad_nodes.is_empty()
    }
}

/// The local-lemma weight assignment: `x_i = 1/(kΔ²/ε² + 1)` for every node
/// event and `x_G = 1/2` for the global event.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LllWeights {
    pub x_node: f64,
    pub x_global: f64,
}

impl LllWeights {
    /// Δ is clamped to 1: an edgeless graph has no node events, so the node
    /// weight is unused there.
    pub fn new(k: usize, delta: usize, eps: f64) -> Self {
        let d = delta.max(1) as f64;
        LllWeights {
            x_node: 1.0 / ((k as f64) * d * d / (eps * eps) + 1.0),
            x_global: 0.5,
        }
    }

    /// Expected resampling rounds, `n·x/(1−x) + x_G/(1−x_G)`, which
    /// simplifies to `n·ε²/(kΔ²) + 1`.
    pub fn expected_rounds(&self, n: usize) -> f64 {
        (n as f64) * self.x_node / (1.0 - self.x_node) + self.x_global / (1.0 - self.x_global)
    }
}

/// Which event a round addressed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResampleEvent {
    Global,
    Node(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResampleRound {
    pub event: ResampleEvent,
    /// Ascending ids of the nodes that were reassigned this round.
    pub resampled: Vec<usize>,
}

/// Per-round record of the whole run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ResampleTrace {
    pub rounds: Vec<ResampleRound>,
}

impl ResampleTrace {
    pub fn total_rounds(&self) -> usize {
        self.rounds.len()
    }

    /// Stable text export: one line per round with index, event kind, and
    /// the resampled ids.
    pub fn to_text(&self) -> String {
        let mut out = String::from("# fairpart resample trace v1\n");
        out.push_str(&format!("total_rounds={}\n", self.rounds.len()));
        for (idx, round) in self.rounds.iter().enumerate() {
            let kind = match round.event {
                ResampleEvent::Global => "global".to_string(),
                ResampleEvent::Node(i) => format!("node:{i}"),
            };
            let ids: Vec<String> = round.resampled.iter().map(|i| i.to_string()).collect();
            out.push_str(&format!("{idx} {kind} {}\n", ids.join(" ")));
        }
        out
    }
}

/// A successful run: the constructed partition plus its trace.
#[derive(Clone, Debug)]
pub struct LllRun {
    pub partition: Partition,
    pub trace: ResampleTrace,
}

#[derive(Debug, Error)]
pub enum LllError {
    #[error("epsilon {eps} outside the feasible range [{min_eps}, 1]")]
    EpsInfeasible { eps: f64, min_eps: f64 },

    #[error("epsilon {eps} outside (0, 1]")]
    EpsOutOfDomain { eps: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("round budget {budget} exhausted after {} rounds", trace.total_rounds())]
    BudgetExhausted { budget: u64, trace: ResampleTrace },

    #[error("internal invariant violation: {0}")]
    Internal(String),
}

/// Tuning knobs for [`moser_tardos_with`].
#[derive(Clone, Debug, Default)]
pub struct LllOptions {
    /// Resampling rounds before giving up; `None` uses
    /// [`default_round_budget`].
    pub round_budget: Option<u64>,
    /// Re-evaluate every event from scratch each round instead of only the
    /// distance-2 neighborhood of the resampled node. Verification aid.
    pub full_rescan: bool,
    /// Start from this partition instead of a fresh uniform sample.
    pub init: Option<Partition>,
    /// Skip the `eps >= 6 sqrt(k ln k / n)` feasibility floor and run
    /// best-effort. Below the floor the expected-round guarantee no longer
    /// applies, but small or sparse instances still terminate.
    pub skip_feasibility_check: bool,
}

/// Default budget: three orders of magnitude over the expected rounds.
/// Exhausting it indicates a bug or violated precondition, not bad luck.
pub fn default_round_budget(g: &Graph, k: usize, eps: f64) -> u64 {
    let expected = LllWeights::new(k, g.max_degree(), eps).expected_rounds(g.n());
    (1000.0 * expected + 1000.0).ceil() as u64
}

/// Evaluates both event families for a partition.
pub fn evaluate_events(
    g: &Graph,
    x: &Partition,
    k: usize,
    eps: f64,
) -> crate::error::Result<EventStatus> {
    if x.k() != k || x.n() != g.n() {
        return Err(crate::error::Error::InvalidParams(format!(
            "partition with n={}, k={} does not match graph n={} and k={k}",
            x.n(),
            x.k(),
            g.n()
        )));
    }
    let spec = BalanceSpec::new(g.n(), k, eps)?;
    let global_bad = !crate::partition::is_eps_balanced(x, &spec);
    let mut bad_nodes = Vec::new();
    for i in 0..g.n() {
        if let Some((lo, hi)) = eps_desirable_interval(g.degree(i), k, g.max_degree(), eps)? {
            let bad = crate::partition::part_utilities(g, x, i)
                .iter()
                .any(|&u| (u as f64) < lo - BOUNDARY_TOL || (u as f64) > hi + BOUNDARY_TOL);
            if bad {
                bad_nodes.push(i);
            }
        }
    }
    Ok(EventStatus { global_bad, bad_nodes })
}

/// Runs the resampling algorithm with default options.
pub fn moser_tardos(
    g: &Graph,
    k: usize,
    eps: f64,
    seed: u64,
    round_budget: Option<u64>,
) -> Result<LllRun, LllError> {
    moser_tardos_with(g, k, eps, seed, LllOptions { round_budget, ..Default::default() })
}

pub fn moser_tardos_with(
    g: &Graph,
    k: usize,
    eps: f64,
    seed: u64,
    opts: LllOptions,
) -> Result<LllRun, LllError> {
    let n = g.n();
    if k == 0 || n < k {
        return Err(LllError::InvalidParams(format!("requires n >= k >= 1, got n={n}, k={k}")));
    }
    if eps <= 0.0 || eps > 1.0 {
        return Err(LllError::EpsOutOfDomain { eps });
    }
    let floor = min_eps(n, k);
    if !opts.skip_feasibility_check && eps < floor - BOUNDARY_TOL {
        return Err(LllError::EpsInfeasible { eps, min_eps: floor });
    }
    let budget = opts.round_budget.unwrap_or_else(|| default_round_budget(g, k, eps));
    if budget == 0 {
        return Err(LllError::InvalidParams("round budget must be >= 1".into()));
    }

    Engine::new(g, k, eps, opts.full_rescan)
        .map_err(|e| LllError::InvalidParams(e.to_string()))?
        .run(seed, budget, opts.init)
}

struct Engine<'g> {
    g: &'g Graph,
    k: usize,
    spec: BalanceSpec,
    /// Concentration window per node; `None` marks exempt nodes.
    windows: Vec<Option<(f64, f64)>>,
    full_rescan: bool,
    assignment: Vec<usize>,
    part_sizes: Vec<usize>,
    /// `counts[i][j]` = number of `i`'s neighbors currently in part `j`.
    counts: Vec<Vec<usize>>,
    bad: BTreeSet<usize>,
}

impl<'g> Engine<'g> {
    fn new(g: &'g Graph, k: usize, eps: f64, full_rescan: bool) -> crate::error::Result<Self> {
        let spec = BalanceSpec::new(g.n(), k, eps)?;
        let windows = (0..g.n())
            .map(|i| eps_desirable_interval(g.degree(i), k, g.max_degree(), eps))
            .collect::<crate::error::Result<Vec<_>>>()?;
        Ok(Engine {
            g,
            k,
            spec,
            windows,
            full_rescan,
            assignment: Vec::new(),
            part_sizes: Vec::new(),
            counts: Vec::new(),
            bad: BTreeSet::new(),
        })
    }

    fn rebuild_state(&mut self) {
        let n = self.g.n();
        self.part_sizes = vec![0; self.k];
        for &p in &self.assignment {
            self.part_sizes[p] += 1;
        }
        self.counts = vec![vec![0; self.k]; n];
        for i in 0..n {
            for &j in self.g.neighbors(i) {
                self.counts[i][self.assignment[j]] += 1;
            }
        }
        self.bad.clear();
        for i in 0..n {
            if self.node_bad(i) {
                self.bad.insert(i);
            }
        }
    }

    fn node_bad(&self, i: usize) -> bool {
        let Some((lo, hi)) = self.windows[i] else { return false };
        self.counts[i]
            .iter()
            .any(|&u| (u as f64) < lo - BOUNDARY_TOL || (u as f64) > hi + BOUNDARY_TOL)
    }

    fn balanced(&self) -> bool {
        self.part_sizes.iter().all(|&s| self.spec.contains(s))
    }

    fn reassign<R: Rng>(&mut self, v: usize, rng: &mut R) {
        let new = rng.random_range(0..self.k);
        let old = self.assignment[v];
        if new == old {
            return;
        }
        self.assignment[v] = new;
        self.part_sizes[old] -= 1;
        self.part_sizes[new] += 1;
        for &nb in self.g.neighbors(v) {
            self.counts[nb][old] -= 1;
            self.counts[nb][new] += 1;
        }
    }

    fn recheck(&mut self, i: usize) {
        if self.node_bad(i) {
            self.bad.insert(i);
        } else {
            self.bad.remove(&i);
        }
    }

    fn run(
        mut self,
        seed: u64,
        budget: u64,
        init: Option<Partition>,
    ) -> Result<LllRun, LllError> {
        let n = self.g.n();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.assignment = match init {
            Some(x) => {
                if x.n() != n || x.k() != self.k {
                    return Err(LllError::InvalidParams(format!(
                        "initial partition has n={}, k={}, expected n={n}, k={}",
                        x.n(),
                        x.k(),
                        self.k
                    )));
                }
                x.assignment().to_vec()
            }
            None => draw_assignment(&mut rng, n, self.k),
        };
        self.rebuild_state();

        let mut trace = ResampleTrace::default();
        loop {
            if self.balanced() && self.bad.is_empty() {
                break;
            }
            if trace.total_rounds() as u64 >= budget {
                return Err(LllError::BudgetExhausted { budget, trace });
            }
            if !self.balanced() {
                for v in 0..n {
                    self.reassign(v, &mut rng);
                }
                self.rebuild_state();
                trace.rounds.push(ResampleRound {
                    event: ResampleEvent::Global,
                    resampled: (0..n).collect(),
                });
            } else {
                let i = *self.bad.iter().next().expect("bad set nonempty");
                let mut resampled: Vec<usize> = self.g.neighbors(i).to_vec();
                resampled.push(i);
                resampled.sort_unstable();
                for &v in &resampled {
                    self.reassign(v, &mut rng);
                }
                if self.full_rescan {
                    let assignment = std::mem::take(&mut self.assignment);
                    self.assignment = assignment;
                    self.rebuild_state();
                } else {
                    self.recheck(i);
                    for v in self.g.neighbors_within_distance(i, 2).iter() {
                        self.recheck(v);
                    }
                }
                trace.rounds.push(ResampleRound { event: ResampleEvent::Node(i), resampled });
            }
        }

        let partition = Partition::new(self.k, self.assignment.clone())
            .map_err(|e| LllError::Internal(e.to_string()))?;
        // Exit-condition audit via the independent evaluation path.
        let status = evaluate_events(self.g, &partition, self.k, self.spec.eps())
            .map_err(|e| LllError::Internal(e.to_string()))?;
        if status.any() {
            return Err(LllError::Internal(
                "engine stopped while a bad event still holds".into(),
            ));
        }
        Ok(LllRun { partition, trace })
    }
}
