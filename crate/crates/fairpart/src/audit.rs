//! Fairness verdicts: exact envy measurement, blocking-coalition search,
//! and certificate verification.
//!
//! A coalition `S` of an allowed size blocks a partition under an `(α, β)`
//! query when every member strictly prefers it: `u_i(S) > α·u_i(X) + β`.
//! The exact attacker enumerates every subset of each allowed size and is a
//! decision procedure within its guard rails. The greedy attacker is sound
//! but incomplete: every certificate it returns verifies, but a miss proves
//! nothing.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeSet};
use crate::partition::{part_utilities, utility, BalanceSpec, Partition, BOUNDARY_TOL};

/// Exact per-node envy: `max_j u_i(X_j) − u_i(X)`. The maximum ranges over
/// every part including the node's own, so envy is never negative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvyReport {
    pub per_node_envy: Vec<u64>,
    pub max_envy: u64,
    /// Lowest node id attaining `max_envy`; `None` for the empty graph.
    pub argmax: Option<usize>,
}

pub fn envy_audit(g: &Graph, x: &Partition) -> EnvyReport {
    let mut per_node_envy = Vec::with_capacity(g.n());
    for i in 0..g.n() {
        let parts = part_utilities(g, x, i);
        let own = parts[x.part(i)];
        let best = parts.iter().copied().max().unwrap_or(0);
        per_node_envy.push((best - own) as u64);
    }
    let (argmax, max_envy) = per_node_envy
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, &v)| (Some(i), v))
        .unwrap_or((None, 0));
    EnvyReport { per_node_envy, max_envy, argmax }
}

/// An `(α, β)` core query together with the allowed coalition sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoreQuery {
    pub alpha: f64,
    pub beta: f64,
    pub size_set: BTreeSet<usize>,
}

impl CoreQuery {
    pub fn with_sizes(alpha: f64, beta: f64, sizes: impl IntoIterator<Item = usize>) -> Self {
        CoreQuery { alpha, beta, size_set: sizes.into_iter().collect() }
    }

    fn check_factors(alpha: f64, beta: f64) -> Result<()> {
        if alpha < 0.0 || beta < 0.0 || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::InvalidParams(format!(
                "core query requires finite alpha, beta >= 0, got ({alpha}, {beta})"
            )));
        }
        Ok(())
    }

    /// Balanced-regime sizes: `{⌊n/k⌋, ⌈n/k⌉}`.
    pub fn balanced(n: usize, k: usize, alpha: f64, beta: f64) -> Result<Self> {
        Self::check_factors(alpha, beta)?;
        if k == 0 || n < k {
            return Err(Error::InvalidParams(format!("core query requires n >= k >= 1, got n={n}, k={k}")));
        }
        Ok(Self::with_sizes(alpha, beta, [n / k, n.div_ceil(k)]))
    }

    /// ε-regime sizes: every integer in `[⌊(1−ε)n/k⌋, ⌈(1+ε)n/k⌉]`, since
    /// blocking coalitions may themselves be ε-balanced.
    pub fn eps_balanced(n: usize, k: usize, eps: f64, alpha: f64, beta: f64) -> Result<Self> {
        Self::check_factors(alpha, beta)?;
        let spec = BalanceSpec::new(n, k, eps)?;
        let lo = spec.lower().max(1);
        Ok(Self::with_sizes(alpha, beta, lo..=spec.upper().min(n)))
    }
}

/// Strict blocking comparison `lhs > α·u + β`. When α and β are integers the
/// comparison is exact; otherwise a `1e-9` margin keeps irrational factors
/// (such as φ-scaled queries) from flipping on float noise.
fn beats(lhs: usize, alpha: f64, beta: f64, u_own: usize) -> bool {
    if alpha.fract() == 0.0 && beta.fract() == 0.0 {
        let rhs = (alpha as i128) * (u_own as i128) + beta as i128;
        (lhs as i128) > rhs
    } else {
        (lhs as f64) > alpha * (u_own as f64) + beta + BOUNDARY_TOL
    }
}

fn slack(lhs: usize, alpha: f64, beta: f64, u_own: usize) -> f64 {
    lhs as f64 - (alpha * u_own as f64 + beta)
}

/// Outcome of checking one coalition against a query.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateCheck {
    pub valid: bool,
    /// `u_i(S) − (α·u_i(X) + β)` per member, ascending by node id.
    pub slacks: Vec<f64>,
}

/// Verifies whether `s` is an `(α, β)`-blocking set of an allowed size.
pub fn verify_certificate(
    g: &Graph,
    x: &Partition,
    q: &CoreQuery,
    s: &NodeSet,
) -> CertificateCheck {
    let members = s.to_vec();
    let slacks: Vec<f64> = members
        .iter()
        .map(|&i| slack(crate::partition::utility_for_set(g, i, s), q.alpha, q.beta, utility(g, x, i)))
        .collect();
    let valid = q.size_set.contains(&members.len())
        && members.iter().all(|&i| {
            beats(crate::partition::utility_for_set(g, i, s), q.alpha, q.beta, utility(g, x, i))
        });
    CertificateCheck { valid, slacks }
}

/// A concrete blocking coalition with per-member slack.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockingCertificate {
    /// Ascending member ids.
    pub coalition: Vec<usize>,
    /// `u_i(S) − (α·u_i(X) + β)` per member, all strictly positive.
    pub slacks: Vec<f64>,
    pub size: usize,
}

impl BlockingCertificate {
    fn from_members(g: &Graph, x: &Partition, q: &CoreQuery, members: Vec<usize>) -> Self {
        let set = NodeSet::from_ids(g.n(), members.iter().copied()).expect("members in range");
        let slacks = members
            .iter()
            .map(|&i| {
                slack(crate::partition::utility_for_set(g, i, &set), q.alpha, q.beta, utility(g, x, i))
            })
            .collect();
        let size = members.len();
        BlockingCertificate { coalition: members, slacks, size }
    }
}

/// Enumeration ceiling for the exact attacker.
pub const EXACT_SEARCH_LIMIT: f64 = 1e8;

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc *= (n - i) as f64 / (i + 1) as f64;
        if !acc.is_finite() {
            return f64::INFINITY;
        }
    }
    acc
}

/// Whether [`find_blocking_exact`] would accept this query on an n-node
/// instance rather than refuse it.
pub fn exact_search_feasible(n: usize, q: &CoreQuery) -> bool {
    q.size_set.iter().map(|&s| binomial(n, s)).sum::<f64>() <= EXACT_SEARCH_LIMIT
}

/// Exhaustive blocking-set search over every allowed size, smallest size
/// first, candidates in ascending id order; returns the first (and hence
/// lexicographically smallest) certificate.
///
/// Nodes with `deg(i)` unable to beat `α·u_i(X) + β` can never join a
/// blocking set (utility within any coalition is at most the degree), so
/// they are pruned before enumeration. Partial coalitions are abandoned as
/// soon as some member can no longer reach its requirement even if every
/// remaining slot contributed an edge.
pub fn find_blocking_exact(
    g: &Graph,
    x: &Partition,
    q: &CoreQuery,
) -> Result<Option<BlockingCertificate>> {
    let n = g.n();
    let total: f64 = q.size_set.iter().map(|&s| binomial(n, s)).sum();
    if total > EXACT_SEARCH_LIMIT {
        return Err(Error::Refused {
            what: "exhaustive blocking-set search",
            why: format!("{total:.3e} subsets exceed the {EXACT_SEARCH_LIMIT:.0e} limit; use the greedy attacker"),
        });
    }

    let u_own: Vec<usize> = (0..n).map(|i| utility(g, x, i)).collect();
    let candidates: Vec<usize> =
        (0..n).filter(|&i| beats(g.degree(i), q.alpha, q.beta, u_own[i])).collect();

    for &size in &q.size_set {
        if size == 0 || candidates.len() < size {
            continue;
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(size);
        let mut in_set = vec![0usize; n]; // u_i(partial coalition) for all i
        if let Some(members) = dfs(g, q, &u_own, &candidates, 0, size, &mut chosen, &mut in_set) {
            return Ok(Some(BlockingCertificate::from_members(g, x, q, members)));
        }
    }
    Ok(None)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    g: &Graph,
    q: &CoreQuery,
    u_own: &[usize],
    candidates: &[usize],
    start: usize,
    size: usize,
    chosen: &mut Vec<usize>,
    in_set: &mut [usize],
) -> Option<Vec<usize>> {
    if chosen.len() == size {
        let ok = chosen.iter().all(|&i| beats(in_set[i], q.alpha, q.beta, u_own[i]));
        return ok.then(|| chosen.clone());
    }
    let slots_left = size - chosen.len();
    if candidates.len() - start < slots_left {
        return None;
    }
    for idx in start..candidates.len() {
        let v = candidates[idx];
        chosen.push(v);
        for &nb in g.neighbors(v) {
            in_set[nb] += 1;
        }
        // Even with every remaining slot adding one edge, each current
        // member must still be able to beat its requirement.
        let remaining = size - chosen.len();
        let feasible = chosen
            .iter()
            .all(|&i| beats(in_set[i] + remaining, q.alpha, q.beta, u_own[i]));
        if feasible {
            if let Some(found) =
                dfs(g, q, u_own, candidates, idx + 1, size, chosen, in_set)
            {
                return Some(found);
            }
        }
        chosen.pop();
        for &nb in g.neighbors(v) {
            in_set[nb] -= 1;
        }
    }
    None
}

/// Randomized hill-climbing attacker for instances beyond exhaustive reach.
///
/// Each restart seeds a coalition from a degree-biased random node's
/// neighborhood (truncated or padded to the target size) and then applies
/// single-swap moves that increase the minimum member slack, ties broken by
/// the lowest (outgoing, incoming) id pair. Sound but incomplete: `None` is
/// not a core proof.
pub fn find_blocking_greedy(
    g: &Graph,
    x: &Partition,
    q: &CoreQuery,
    restarts: usize,
    seed: u64,
) -> Option<BlockingCertificate> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u_own: Vec<usize> = (0..n).map(|i| utility(g, x, i)).collect();
    let eligible: Vec<usize> =
        (0..n).filter(|&i| beats(g.degree(i), q.alpha, q.beta, u_own[i])).collect();

    for &size in &q.size_set {
        if size == 0 || eligible.len() < size {
            continue;
        }
        for _ in 0..restarts {
            let members = climb(g, q, &u_own, &eligible, size, &mut rng);
            let set = NodeSet::from_ids(n, members.iter().copied()).expect("members in range");
            if verify_certificate(g, x, q, &set).valid {
                return Some(BlockingCertificate::from_members(g, x, q, members));
            }
        }
    }
    None
}

fn climb(
    g: &Graph,
    q: &CoreQuery,
    u_own: &[usize],
    eligible: &[usize],
    size: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<usize> {
    // Degree-biased seed node.
    let total_weight: u64 = eligible.iter().map(|&i| g.degree(i) as u64 + 1).sum();
    let mut pick = rng.random_range(0..total_weight);
    let mut seed_node = eligible[0];
    for &i in eligible {
        let w = g.degree(i) as u64 + 1;
        if pick < w {
            seed_node = i;
            break;
        }
        pick -= w;
    }

    // Neighborhood first, highest degree first, then pad from the rest.
    let mut coalition: Vec<usize> = vec![seed_node];
    let mut by_degree: Vec<usize> = g
        .neighbors(seed_node)
        .iter()
        .copied()
        .filter(|v| eligible.binary_search(v).is_ok())
        .collect();
    by_degree.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    coalition.extend(by_degree.into_iter().take(size - 1));
    if coalition.len() < size {
        let mut pad: Vec<usize> =
            eligible.iter().copied().filter(|v| !coalition.contains(v)).collect();
        pad.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        coalition.extend(pad.into_iter().take(size - coalition.len()));
    }
    coalition.sort_unstable();
    debug_assert_eq!(coalition.len(), size);

    let mut in_coalition = vec![false; g.n()];
    for &v in &coalition {
        in_coalition[v] = true;
    }
    let mut us: Vec<usize> = (0..g.n())
        .map(|i| g.neighbors(i).iter().filter(|&&j| in_coalition[j]).count())
        .collect();
    let min_slack = |coalition: &[usize], us: &[usize]| -> f64 {
        coalition
            .iter()
            .map(|&i| slack(us[i], q.alpha, q.beta, u_own[i]))
            .fold(f64::INFINITY, f64::min)
    };

    let mut current = min_slack(&coalition, &us);
    let max_steps = 10 * size + 100;
    for _ in 0..max_steps {
        let mut best: Option<(f64, usize, usize)> = None;
        for &out in &coalition {
            for &inn in eligible {
                if in_coalition[inn] {
                    continue;
                }
                // Objective after swapping `out` for `inn`.
                let mut obj = f64::INFINITY;
                for &t in &coalition {
                    if t == out {
                        continue;
                    }
                    let u = us[t] - g.has_edge(t, out) as usize + g.has_edge(t, inn) as usize;
                    obj = obj.min(slack(u, q.alpha, q.beta, u_own[t]));
                }
                let u_in = us[inn] - g.has_edge(inn, out) as usize;
                obj = obj.min(slack(u_in, q.alpha, q.beta, u_own[inn]));
                if obj > current + 1e-12
                    && best.is_none_or(|(b, bo, bi)| {
                        obj > b + 1e-12 || ((obj - b).abs() <= 1e-12 && (out, inn) < (bo, bi))
                    })
                {
                    best = Some((obj, out, inn));
                }
            }
        }
        let Some((obj, out, inn)) = best else { break };
        in_coalition[out] = false;
        in_coalition[inn] = true;
        for &nb in g.neighbors(out) {
            us[nb] -= 1;
        }
        for &nb in g.neighbors(inn) {
            us[nb] += 1;
        }
        let pos = coalition.binary_search(&out).expect("member present");
        coalition.remove(pos);
        let pos = coalition.binary_search(&inn).unwrap_err();
        coalition.insert(pos, inn);
        current = obj;
    }
    coalition
}

/// Attacker used by an audit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AttackerMode {
    Exact,
    Greedy,
}

/// Core verdict of an audit run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreVerdict {
    /// A blocking coalition was found (certificate attached).
    Blocked,
    /// Exhaustive search proved no blocking set of the allowed sizes exists.
    NoBlockingSet,
    /// The incomplete attacker found nothing; not a core proof.
    NoBlockingFound,
}

/// The audit artifact persisted by the CLI.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub ef: EnvyReport,
    pub core: CoreQuery,
    pub attacker: AttackerMode,
    pub verdict: CoreVerdict,
    pub certificate: Option<BlockingCertificate>,
}

/// Runs the envy audit plus the requested blocking-set attacker.
pub fn run_audit(
    g: &Graph,
    x: &Partition,
    q: &CoreQuery,
    attacker: AttackerMode,
    restarts: usize,
    seed: u64,
) -> Result<AuditReport> {
    let ef = envy_audit(g, x);
    let (verdict, certificate) = match attacker {
        AttackerMode::Exact => match find_blocking_exact(g, x, q)? {
            Some(cert) => (CoreVerdict::Blocked, Some(cert)),
            None => (CoreVerdict::NoBlockingSet, None),
        },
        AttackerMode::Greedy => match find_blocking_greedy(g, x, q, restarts, seed) {
            Some(cert) => (CoreVerdict::Blocked, Some(cert)),
            None => (CoreVerdict::NoBlockingFound, None),
        },
    };
    Ok(AuditReport { ef, core: q.clone(), attacker, verdict, certificate })
}
