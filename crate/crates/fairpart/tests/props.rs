//! Property tests for the structural invariants: edge-count symmetry,
//! degree conservation, balance monotonicity, and serialization identity.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fairpart::graph::{generate, GraphModel, NodeSet};
use fairpart::partition::{
    is_eps_balanced, parse_partition, part_utilities, serialize_partition, BalanceSpec, Partition,
    PartitionDoc,
};
use fairpart::sample::sample_uniform;

fn random_set(n: usize, seed: u64) -> NodeSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut set = NodeSet::empty(n);
    for i in 0..n {
        if rng.random_bool(0.5) {
            set.insert(i);
        }
    }
    set
}

proptest! {
    #[test]
    fn edges_between_is_symmetric_and_self_count_is_even(
        n in 2usize..28,
        gs in any::<u64>(),
        ss in any::<u64>(),
        ts in any::<u64>(),
    ) {
        let g = generate(&GraphModel::Gnp { n, p: 0.5 }, gs).unwrap();
        let s = random_set(n, ss);
        let t = random_set(n, ts);
        prop_assert_eq!(g.edges_between(&s, &t), g.edges_between(&t, &s));
        prop_assert_eq!(g.edges_between(&s, &s) % 2, 0);
        prop_assert_eq!(g.edges_between(&t, &t) % 2, 0);
    }

    #[test]
    fn part_utilities_conserve_degree(
        n in 2usize..40,
        k in 1usize..5,
        gs in any::<u64>(),
        xs in any::<u64>(),
    ) {
        let k = k.min(n);
        let g = generate(&GraphModel::Gnp { n, p: 0.4 }, gs).unwrap();
        let x = sample_uniform(n, k, xs).unwrap();
        for i in 0..n {
            let parts = part_utilities(&g, &x, i);
            prop_assert_eq!(parts.iter().sum::<usize>(), g.degree(i));
            // Per-singleton edge counts against each part agree.
            let singleton = NodeSet::from_ids(n, [i]).unwrap();
            let total: usize = (0..k).map(|j| g.edges_between(&singleton, &x.part_set(j))).sum();
            prop_assert_eq!(total, g.degree(i));
        }
    }

    #[test]
    fn balance_is_monotone_in_eps(
        n in 1usize..60,
        k in 1usize..6,
        e1 in 0.0f64..=1.0,
        e2 in 0.0f64..=1.0,
        xs in any::<u64>(),
    ) {
        let k = k.min(n);
        let x = sample_uniform(n, k, xs).unwrap();
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let tight = BalanceSpec::new(n, k, lo).unwrap();
        let loose = BalanceSpec::new(n, k, hi).unwrap();
        if is_eps_balanced(&x, &tight) {
            prop_assert!(is_eps_balanced(&x, &loose));
        }
    }

    #[test]
    fn partition_serialization_round_trips(
        n in 1usize..50,
        k in 1usize..6,
        xs in any::<u64>(),
        eps in 0.0f64..=1.0,
    ) {
        let k = k.min(n);
        let doc = PartitionDoc { partition: sample_uniform(n, k, xs).unwrap(), eps };
        let parsed = parse_partition(&serialize_partition(&doc)).unwrap();
        prop_assert_eq!(parsed, doc);
    }

    #[test]
    fn uniform_samples_are_valid_partitions(
        n in 1usize..50,
        k in 1usize..6,
        xs in any::<u64>(),
    ) {
        let k = k.min(n);
        let x = sample_uniform(n, k, xs).unwrap();
        prop_assert_eq!(x.part_sizes().iter().sum::<usize>(), n);
        prop_assert!(x.assignment().iter().all(|&p| p < k));
        let rebuilt = Partition::new(k, x.assignment().to_vec()).unwrap();
        prop_assert_eq!(rebuilt.part_sizes(), x.part_sizes());
    }
}
