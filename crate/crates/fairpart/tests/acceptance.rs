//! Acceptance suite: one test per release criterion, each printing a single
//! PASS/FAIL line (run with `--nocapture` to see them on success).
//!
//! Expected values are frozen from independent oracles: exact binomial
//! counts, brute-force enumerations coded separately from the library path
//! they check, and direct evaluation of the closed-form bounds.

use std::sync::LazyLock;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fairpart::audit::{
    envy_audit, find_blocking_exact, find_blocking_greedy, verify_certificate, CoreQuery,
};
use fairpart::graph::{generate, Graph, GraphModel, NodeSet};
use fairpart::guarantees::{
    chernoff_tail, check_desirability, guarantee_bundle, rejection_success_lower_bound, Regime,
};
use fairpart::lll::moser_tardos;
use fairpart::mincut2::{
    check_one_swap_lemma, cut_value, exact_min_balanced_cut, local_min_cut, CoreFactors,
};
use fairpart::partition::{is_eps_balanced, BalanceSpec, Partition};
use fairpart::sample::sample_uniform;

fn report(idx: usize, name: &str, pass: bool, detail: &str) {
    println!("criterion {idx} ({name}): {} - {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {idx} ({name}) failed: {detail}");
}

fn pick<T: Copy>(rng: &mut ChaCha8Rng, items: &[T]) -> T {
    items[rng.random_range(0..items.len())]
}

/// Instance family shared by criteria 1 and 2: 200 random graphs with
/// n <= 12, k in {2,3,4}, and uniform random partitions.
fn small_instances() -> Vec<(Graph, Partition)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE5501);
    (0..200)
        .map(|t| {
            let n = rng.random_range(4..=12usize);
            let ks: Vec<usize> = [2usize, 3, 4].into_iter().filter(|&k| k <= n).collect();
            let k = pick(&mut rng, &ks);
            let g = generate(&GraphModel::Gnp { n, p: 0.5 }, 0x5EED + t).unwrap();
            let x = sample_uniform(n, k, 0xF00D + t).unwrap();
            (g, x)
        })
        .collect()
}

#[test]
fn criterion_01_envy_oracle_equivalence() {
    let start = std::time::Instant::now();
    let mut mismatches = 0usize;
    for (g, x) in small_instances() {
        // Independent recomputation: direct double loop over nodes, using
        // nothing from the audit path.
        let n = g.n();
        let mut brute = Vec::with_capacity(n);
        for i in 0..n {
            let mut per_part = vec![0i64; x.k()];
            for t in 0..n {
                if t != i && g.neighbors(i).contains(&t) {
                    per_part[x.part(t)] += 1;
                }
            }
            let own = per_part[x.part(i)];
            brute.push((per_part.iter().copied().max().unwrap() - own) as u64);
        }
        let audit = envy_audit(&g, &x);
        if audit.per_node_envy != brute
            || audit.max_envy != brute.iter().copied().max().unwrap_or(0)
        {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        "envy oracle equivalence",
        mismatches == 0 && elapsed.as_secs_f64() < 5.0,
        &format!("200 instances, {mismatches} mismatches, {:.2}s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_02_blocking_search_completeness() {
    let start = std::time::Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE5502);
    let alphas = [0.5, 1.0, 1.5, 2.0, 2.5, 3.0];
    let betas = [0.0, 1.0, 2.0];
    let mut disagreements = 0usize;
    let mut bad_certificates = 0usize;

    for (g, x) in small_instances() {
        let n = g.n();
        let alpha = pick(&mut rng, &alphas);
        let beta = pick(&mut rng, &betas);
        let q = CoreQuery::balanced(n, x.k(), alpha, beta).unwrap();

        // Second enumerator, written independently: plain combinations with
        // no pruning, strictness recomputed inline.
        let mut independent: Option<Vec<usize>> = None;
        'outer: for &s in &q.size_set {
            for combo in (0..n).combinations(s) {
                let blocking = combo.iter().all(|&i| {
                    let u_s =
                        combo.iter().filter(|&&t| t != i && g.has_edge(i, t)).count();
                    let u_own = g
                        .neighbors(i)
                        .iter()
                        .filter(|&&t| x.part(t) == x.part(i))
                        .count();
                    let rhs = alpha * u_own as f64 + beta;
                    if alpha.fract() == 0.0 && beta.fract() == 0.0 {
                        (u_s as i64) > rhs as i64
                    } else {
                        (u_s as f64) > rhs + 1e-9
                    }
                });
                if blocking {
                    independent = Some(combo);
                    break 'outer;
                }
            }
        }

        let exact = find_blocking_exact(&g, &x, &q).unwrap();
        if exact.is_some() != independent.is_some() {
            disagreements += 1;
            continue;
        }
        if let Some(cert) = &exact {
            let set = NodeSet::from_ids(n, cert.coalition.iter().copied()).unwrap();
            if !verify_certificate(&g, &x, &q, &set).valid {
                bad_certificates += 1;
            }
        }
        if let Some(members) = &independent {
            let set = NodeSet::from_ids(n, members.iter().copied()).unwrap();
            if !verify_certificate(&g, &x, &q, &set).valid {
                bad_certificates += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        2,
        "blocking-search completeness",
        disagreements == 0 && bad_certificates == 0 && elapsed.as_secs_f64() < 60.0,
        &format!(
            "200 instances, {disagreements} existence disagreements, {bad_certificates} invalid certificates, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
}

/// Dense-instance fixture shared by criteria 3 and 9: G(1000, 0.9) with 100
/// balanced uniform samples and their desirability statistics.
struct DenseSamples {
    graph: Graph,
    samples: Vec<Partition>,
    desirable: Vec<bool>,
    window_checks: u64,
    window_violations: u64,
}

static DENSE: LazyLock<DenseSamples> = LazyLock::new(|| {
    let graph = generate(&GraphModel::Gnp { n: 1000, p: 0.9 }, 0xD05E).unwrap();
    let spec = BalanceSpec::new(1000, 2, 0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE5503);
    let mut samples = Vec::with_capacity(100);
    while samples.len() < 100 {
        let x = Partition::new(2, (0..1000).map(|_| rng.random_range(0..2)).collect()).unwrap();
        if is_eps_balanced(&x, &spec) {
            samples.push(x);
        }
    }
    let mut desirable = Vec::with_capacity(100);
    let mut window_checks = 0u64;
    let mut window_violations = 0u64;
    let exempt: Vec<bool> = (0..1000)
        .map(|i| fairpart::guarantees::desirable_interval(graph.degree(i), 2, 1000).is_none())
        .collect();
    let checked_nodes = exempt.iter().filter(|&&e| !e).count() as u64;
    for x in &samples {
        let rep = check_desirability(&graph, x, Regime::Balanced, 0.0).unwrap();
        desirable.push(rep.satisfied);
        window_checks += checked_nodes * 2;
        window_violations += rep.violations.len() as u64;
    }
    DenseSamples { graph, samples, desirable, window_checks, window_violations }
});

#[test]
fn criterion_03_dense_sampling_theorem() {
    let start = std::time::Instant::now();
    let data = &*DENSE;
    let g = &data.graph;
    let delta = g.max_degree();
    let bundle = guarantee_bundle(Regime::Balanced, delta, 2, 1000, 0.0).unwrap();
    // Degree threshold 18*4*ln(1000) ≈ 497 sits below the typical degree.
    assert!(bundle.degree_threshold < 900.0);

    let desirable_count = data.desirable.iter().filter(|&&d| d).count();
    let q = CoreQuery::balanced(1000, 2, bundle.core_alpha, bundle.core_beta).unwrap();
    let mut envy_failures = 0usize;
    let mut blocked = 0usize;
    for (x, &ok) in data.samples.iter().zip(&data.desirable) {
        if !ok {
            continue;
        }
        if envy_audit(g, x).max_envy as f64 > bundle.ef_radius {
            envy_failures += 1;
        }
        if find_blocking_greedy(g, x, &q, 64, 0xA77AC4).is_some() {
            blocked += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        3,
        "dense sampling theorem",
        desirable_count >= 99
            && envy_failures == 0
            && blocked == 0
            && elapsed.as_secs_f64() < 300.0,
        &format!(
            "desirable {desirable_count}/100, envy bound {:.1} violated {envy_failures}x, \
             ({:.3},{:.1})-blocking sets found {blocked}, {:.2}s",
            bundle.ef_radius,
            bundle.core_alpha,
            bundle.core_beta,
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_04_resampling_termination_and_correctness() {
    let start = std::time::Instant::now();
    let (n, k, d, eps) = (2000usize, 4usize, 8usize, 0.35f64);
    let mut total_rounds = 0u64;
    let mut failures = Vec::new();
    for seed in 0..100u64 {
        let g = generate(&GraphModel::Regular { n, d }, seed).unwrap();
        match moser_tardos(&g, k, eps, seed, None) {
            Ok(run) => {
                total_rounds += run.trace.total_rounds() as u64;
                let rep = check_desirability(&g, &run.partition, Regime::Eps, eps).unwrap();
                if !rep.satisfied {
                    failures.push(format!("seed {seed}: re-audit failed"));
                }
            }
            Err(e) => failures.push(format!("seed {seed}: {e}")),
        }
    }
    let mean = total_rounds as f64 / 100.0;
    let elapsed = start.elapsed();
    report(
        4,
        "resampling termination and correctness",
        failures.is_empty() && mean <= 20.0 && elapsed.as_secs_f64() < 120.0,
        &format!(
            "100 seeds, {} failures, mean rounds {mean:.3} (expectation bound ≈ 1.957), {:.2}s",
            failures.len(),
            elapsed.as_secs_f64()
        ),
    );
}

/// 20 G(n, 0.5) instances per n in 7..=12 with their exact minimum balanced
/// cuts; shared by criteria 5, 6, and 7.
static CUT_INSTANCES: LazyLock<Vec<(usize, Graph, Partition)>> = LazyLock::new(|| {
    let mut out = Vec::new();
    for n in 7..=12usize {
        for inst in 0..20u64 {
            let g =
                generate(&GraphModel::Gnp { n, p: 0.5 }, 0xC5_0000 + (n as u64) * 100 + inst)
                    .unwrap();
            let (x, _) = exact_min_balanced_cut(&g).unwrap();
            out.push((n, g, x));
        }
    }
    out
});

#[test]
fn criterion_05_exact_min_cut_core() {
    let start = std::time::Instant::now();
    let mut violations = 0usize;
    for (n, g, x) in CUT_INSTANCES.iter() {
        let q = CoreQuery::balanced(*n, 2, CoreFactors::exact_factor(*n), 0.0).unwrap();
        if find_blocking_exact(g, x, &q).unwrap().is_some() {
            violations += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        5,
        "exact min-cut core",
        violations == 0 && elapsed.as_secs_f64() < 120.0,
        &format!(
            "120 instances under phi(n-2)/(n-6), {violations} blocking sets, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_06_local_search_core() {
    let start = std::time::Instant::now();
    let mut violations = 0usize;
    let mut not_local = 0usize;
    for (n, g, _) in CUT_INSTANCES.iter() {
        let q = CoreQuery::balanced(*n, 2, CoreFactors::local_factor(*n), 0.0).unwrap();
        for start_seed in 0..5u64 {
            let (x, rep) = local_min_cut(g, start_seed, None).unwrap();
            if !rep.locally_minimal {
                not_local += 1;
            }
            if find_blocking_exact(g, &x, &q).unwrap().is_some() {
                violations += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        6,
        "local-search core",
        violations == 0 && not_local == 0 && elapsed.as_secs_f64() < 120.0,
        &format!(
            "600 runs under (2n-4)/(n-6), {violations} blocking sets, {:.2}s",
            elapsed.as_secs_f64()
        ),
    );
}

#[test]
fn criterion_07_one_swap_inequality() {
    let start = std::time::Instant::now();
    let mut failures = 0usize;
    let mut checked = 0usize;
    for (n, g, x) in CUT_INSTANCES.iter().filter(|(n, _, _)| *n <= 10) {
        let sizes: std::collections::BTreeSet<usize> = [n / 2, n.div_ceil(2)].into();
        for &s in &sizes {
            for combo in (0..*n).combinations(s) {
                let set = NodeSet::from_ids(*n, combo).unwrap();
                checked += 1;
                if !check_one_swap_lemma(g, x, &set).unwrap() {
                    failures += 1;
                }
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        7,
        "one-swap inequality",
        failures == 0 && elapsed.as_secs_f64() < 60.0,
        &format!("{checked} coalitions on 80 min cuts, {failures} failures, {:.2}s", elapsed.as_secs_f64()),
    );
}

#[test]
fn criterion_08_rejection_rate_reproduction() {
    // Exact binomial oracle: C(12,6)/2^12 = 924/4096.
    const EXACT_RATE: f64 = 0.2255859375;
    let spec = BalanceSpec::new(12, 2, 0.0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE5508);
    let trials = 100_000u32;
    let mut balanced = 0u32;
    for _ in 0..trials {
        let x = Partition::new(2, (0..12).map(|_| rng.random_range(0..2)).collect()).unwrap();
        balanced += is_eps_balanced(&x, &spec) as u32;
    }
    let rate = balanced as f64 / trials as f64;
    let lower = rejection_success_lower_bound(12, 2);
    report(
        8,
        "rejection-rate reproduction",
        (rate - EXACT_RATE).abs() <= 0.02 && rate >= lower,
        &format!("empirical {rate:.4} vs exact {EXACT_RATE:.4} (±0.02), floor {lower:.3e}"),
    );
}

#[test]
fn criterion_09_chernoff_sanity() {
    // Monte Carlo Binomial(500, 1/4) against the two-sided tail bound.
    let mut rng = ChaCha8Rng::seed_from_u64(0xACCE5509);
    let trials = 100_000u32;
    let mut outside = 0u32;
    for _ in 0..trials {
        let x: u32 = (0..500).map(|_| rng.random_bool(0.25) as u32).sum();
        if (x as f64 - 125.0).abs() >= 0.3 * 125.0 {
            outside += 1;
        }
    }
    let empirical = outside as f64 / trials as f64;
    let bound = chernoff_tail(125.0, 0.3).unwrap();

    // Concentration windows across the criterion-3 samples.
    let data = &*DENSE;
    let hit_rate =
        1.0 - data.window_violations as f64 / data.window_checks.max(1) as f64;

    report(
        9,
        "chernoff sanity",
        empirical <= bound && hit_rate >= 0.999,
        &format!(
            "empirical tail {empirical:.5} <= bound {bound:.5}; window hit rate {hit_rate:.6} over {} checks",
            data.window_checks
        ),
    );
}

#[test]
fn criterion_10_sanity_instances() {
    let g = generate(&GraphModel::Cliques { count: 2, size: 4 }, 0).unwrap();
    let mixed = Partition::new(2, vec![0, 0, 1, 1, 0, 0, 1, 1]).unwrap();
    let aligned = Partition::new(2, vec![0, 0, 0, 0, 1, 1, 1, 1]).unwrap();

    let q20 = CoreQuery::balanced(8, 2, 2.0, 0.0).unwrap();
    let cert = find_blocking_exact(&g, &mixed, &q20).unwrap();
    let mixed_blocked = cert.as_ref().map(|c| c.coalition.clone());

    let q10 = CoreQuery::balanced(8, 2, 1.0, 0.0).unwrap();
    let aligned_clear = find_blocking_exact(&g, &aligned, &q10).unwrap().is_none();

    let mut cuts = Vec::new();
    for seed in 0..5 {
        cuts.push(local_min_cut(&g, seed, None).unwrap().1.cut_value);
    }
    let (from_mixed, _) = local_min_cut(&g, 0, Some(&mixed)).unwrap();
    cuts.push(cut_value(&g, &from_mixed).unwrap());

    let pass = mixed_blocked == Some(vec![0, 1, 2, 3])
        && aligned_clear
        && cuts.iter().all(|&c| c == 0);
    report(
        10,
        "sanity instances",
        pass,
        &format!(
            "mixed certificate {mixed_blocked:?}, aligned (1,0)-clear {aligned_clear}, local cuts {cuts:?}"
        ),
    );
}
