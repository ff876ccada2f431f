//! Closed-form thresholds, concentration intervals, tail bounds, and the
//! desirability predicates, as pure evaluable formulas.
//!
//! Two regimes exist throughout. In the balanced regime a partition is
//! desirable when it is balanced and every node with
//! `deg(i) >= 18 k^2 ln n` has all its per-part utilities inside
//! `deg(i)/k ± 5 sqrt(deg(i) ln n)`. In the ε regime the threshold is
//! `12 k ln(Δk/ε)` and the half-width `4 sqrt((deg(i)/k) ln(Δk/ε))`.
//! Boundary comparisons are inclusive with a `1e-9` slack; `ln` is natural.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::partition::{is_eps_balanced, part_utilities, BalanceSpec, Partition, BOUNDARY_TOL};

/// Which balance/desirability regime a computation targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Balanced,
    Eps,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Balanced => write!(f, "balanced"),
            Regime::Eps => write!(f, "eps"),
        }
    }
}

/// Smallest ε for which the resampling construction is guaranteed to apply:
/// `6 sqrt(k ln k / n)`. Zero when `k = 1` (continuous extension).
pub fn min_eps(n: usize, k: usize) -> f64 {
    if k <= 1 || n == 0 {
        return 0.0;
    }
    6.0 * ((k as f64) * (k as f64).ln() / n as f64).sqrt()
}

/// Concentration window for the balanced regime. `None` means the node is
/// exempt: its degree sits below `18 k^2 ln n`.
pub fn desirable_interval(deg: usize, k: usize, n: usize) -> Option<(f64, f64)> {
    let ln_n = if n <= 1 { 0.0 } else { (n as f64).ln() };
    let threshold = 18.0 * (k as f64).powi(2) * ln_n;
    if (deg as f64) < threshold - BOUNDARY_TOL {
        return None;
    }
    let mid = deg as f64 / k as f64;
    let half = 5.0 * ((deg as f64) * ln_n).sqrt();
    Some((mid - half, mid + half))
}

/// Concentration window for the ε regime, with threshold `12 k ln(Δk/ε)` and
/// half-width `4 sqrt((deg/k) ln(Δk/ε))`. `None` means exempt.
pub fn eps_desirable_interval(
    deg: usize,
    k: usize,
    delta: usize,
    eps: f64,
) -> Result<Option<(f64, f64)>> {
    if eps <= 0.0 || eps > 1.0 {
        return Err(Error::Domain(format!("eps must lie in (0,1], got {eps}")));
    }
    if delta == 0 {
        // Edgeless graph: every node has degree 0 and is exempt.
        return Ok(None);
    }
    let log_term = ((delta as f64) * (k as f64) / eps).ln();
    let threshold = 12.0 * (k as f64) * log_term;
    if (deg as f64) < threshold - BOUNDARY_TOL {
        return Ok(None);
    }
    let mid = deg as f64 / k as f64;
    let half = 4.0 * ((deg as f64 / k as f64) * log_term).sqrt();
    Ok(Some((mid - half, mid + half)))
}

/// One out-of-window utility observation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntervalViolation {
    pub node: usize,
    pub part: usize,
    pub observed: usize,
    pub lo: f64,
    pub hi: f64,
}

/// Outcome of a desirability audit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DesirabilityReport {
    pub regime: Regime,
    pub satisfied: bool,
    pub balance_ok: bool,
    pub violations: Vec<IntervalViolation>,
    /// Degree threshold below which nodes are exempt from condition (ii).
    pub threshold_used: f64,
}

/// Audits a partition against the regime's two desirability conditions.
/// In the balanced regime `eps` is ignored; in the ε regime it must lie in
/// `(0, 1]`.
pub fn check_desirability(
    g: &Graph,
    x: &Partition,
    regime: Regime,
    eps: f64,
) -> Result<DesirabilityReport> {
    let n = g.n();
    let k = x.k();
    if x.n() != n {
        return Err(Error::InvalidParams(format!(
            "partition over {} nodes does not match graph with {n} nodes",
            x.n()
        )));
    }
    let (balance_eps, threshold_used) = match regime {
        Regime::Balanced => {
            let ln_n = if n <= 1 { 0.0 } else { (n as f64).ln() };
            (0.0, 18.0 * (k as f64).powi(2) * ln_n)
        }
        Regime::Eps => {
            if eps <= 0.0 || eps > 1.0 {
                return Err(Error::Domain(format!("eps must lie in (0,1], got {eps}")));
            }
            let threshold = if g.max_degree() == 0 {
                f64::INFINITY
            } else {
                12.0 * (k as f64) * ((g.max_degree() as f64) * (k as f64) / eps).ln()
            };
            (eps, threshold)
        }
    };

    let spec = BalanceSpec::new(n, k, balance_eps)?;
    let balance_ok = is_eps_balanced(x, &spec);

    let mut violations = Vec::new();
    for i in 0..n {
        let interval = match regime {
            Regime::Balanced => desirable_interval(g.degree(i), k, n),
            Regime::Eps => eps_desirable_interval(g.degree(i), k, g.max_degree(), eps)?,
        };
        let Some((lo, hi)) = interval else { continue };
        for (part, &observed) in part_utilities(g, x, i).iter().enumerate() {
            let u = observed as f64;
            if u < lo - BOUNDARY_TOL || u > hi + BOUNDARY_TOL {
                violations.push(IntervalViolation { node: i, part, observed, lo, hi });
            }
        }
    }

    Ok(DesirabilityReport {
        regime,
        satisfied: balance_ok && violations.is_empty(),
        balance_ok,
        violations,
        threshold_used,
    })
}

/// Evaluated closed-form guarantees for one `(regime, Δ, k, n, ε)` tuple.
///
/// Desirable partitions of the matching regime are `ef_radius`-envy-free and
/// admit no `(core_alpha, core_beta)`-blocking coalition of the allowed
/// sizes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GuaranteeBundle {
    pub regime: Regime,
    pub ef_radius: f64,
    pub core_alpha: f64,
    pub core_beta: f64,
    pub degree_threshold: f64,
    pub min_eps: f64,
    k: usize,
    n: usize,
    delta: usize,
    eps: f64,
}

impl GuaranteeBundle {
    /// Concentration half-width `t(i)` for a node of degree `deg`.
    pub fn half_width(&self, deg: usize) -> f64 {
        match self.regime {
            Regime::Balanced => {
                let ln_n = if self.n <= 1 { 0.0 } else { (self.n as f64).ln() };
                5.0 * ((deg as f64) * ln_n).sqrt()
            }
            Regime::Eps => {
                let log_term = ((self.delta as f64) * (self.k as f64) / self.eps).ln();
                4.0 * ((deg as f64 / self.k as f64) * log_term).sqrt()
            }
        }
    }
}

/// Evaluates the fairness guarantees for the given parameters.
///
/// Balanced: EF radius `18 max{sqrt(Δ), k^2} ln n`, core
/// `(k + sqrt(k), 25 k^{5/2} ln n)`. ε regime: EF radius
/// `12 max{sqrt(Δ/k), k} ln(Δk/ε)`, core `(k + sqrt(k), 16 k^{3/2} ln(Δk/ε))`.
pub fn guarantee_bundle(
    regime: Regime,
    delta: usize,
    k: usize,
    n: usize,
    eps: f64,
) -> Result<GuaranteeBundle> {
    if k == 0 {
        return Err(Error::InvalidParams("guarantee bundle requires k >= 1".into()));
    }
    let kf = k as f64;
    let core_alpha = kf + kf.sqrt();
    let bundle = match regime {
        Regime::Balanced => {
            let ln_n = if n <= 1 { 0.0 } else { (n as f64).ln() };
            GuaranteeBundle {
                regime,
                ef_radius: 18.0 * (delta as f64).sqrt().max(kf * kf) * ln_n,
                core_alpha,
                core_beta: 25.0 * kf.powf(2.5) * ln_n,
                degree_threshold: 18.0 * kf * kf * ln_n,
                min_eps: min_eps(n, k),
                k,
                n,
                delta,
                eps: 0.0,
            }
        }
        Regime::Eps => {
            if eps <= 0.0 || eps > 1.0 {
                return Err(Error::Domain(format!("eps must lie in (0,1], got {eps}")));
            }
            let log_term = if delta == 0 {
                0.0
            } else {
                ((delta as f64) * kf / eps).ln()
            };
            GuaranteeBundle {
                regime,
                ef_radius: 12.0 * (delta as f64 / kf).sqrt().max(kf) * log_term,
                core_alpha,
                core_beta: 16.0 * kf.powf(1.5) * log_term,
                degree_threshold: 12.0 * kf * log_term,
                min_eps: min_eps(n, k),
                k,
                n,
                delta,
                eps,
            }
        }
    };
    Ok(bundle)
}

/// Two-sided Chernoff tail `2 exp(-δ²μ/3)` for a Bernoulli sum with mean μ.
pub fn chernoff_tail(mu: f64, delta: f64) -> Result<f64> {
    if mu <= 0.0 {
        return Err(Error::Domain(format!("mu must be positive, got {mu}")));
    }
    if delta <= 0.0 || delta >= 1.0 {
        return Err(Error::Domain(format!("delta must lie in (0,1), got {delta}")));
    }
    Ok(2.0 * (-delta * delta * mu / 3.0).exp())
}

/// Probability bound that a uniform random k-partition is not ε-balanced:
/// `2k exp(-ε²n/(3k))`.
pub fn global_balance_tail(n: usize, k: usize, eps: f64) -> f64 {
    2.0 * (k as f64) * (-eps * eps * (n as f64) / (3.0 * k as f64)).exp()
}

/// Lower bound on the probability that one uniform sample is desirable:
/// `(1/2) (2ne/k)^{-2k}`.
pub fn rejection_success_lower_bound(n: usize, k: usize) -> f64 {
    let base = 2.0 * (n as f64) * std::f64::consts::E / k as f64;
    0.5 * base.powi(-2 * (k as i32))
}
