use invol::perm::{
    big_b, brute_force_invol, class_size, enumerate_cycle_types, invol, invol_hermite, ln_big_b,
    ln_invol, permutations, telephone,
};
use invol::{CycleCounts, CycleType, Permutation};
use proptest::prelude::*;
use rug::Integer;

/// A random cycle type given as `(length, multiplicity)` pairs.
fn cycle_type() -> impl Strategy<Value = CycleType> {
    prop::collection::vec((1usize..=12, 0usize..=6), 1..6).prop_filter_map("empty", |pairs| {
        let c = CycleCounts::from_pairs(pairs).ok()?;
        (!c.is_empty())
            .then(|| CycleType::from_counts(c).ok())
            .flatten()
    })
}

fn shuffled(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_one_line(&v).unwrap())
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(shuffled)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn invol_dominates_b(c in cycle_type()) {
        prop_assert!(invol(&c) >= big_b(&c));
    }

    #[test]
    fn hermite_form_agrees(c in cycle_type()) {
        prop_assert_eq!(invol_hermite(&c), invol(&c));
    }

    #[test]
    fn log_ratio_bound(c in cycle_type()) {
        let n = c.n();
        let gap = ln_invol(c.counts(), n) - ln_big_b(c.counts(), n);
        let bound: f64 = c.iter().map(|(k, m)| (m * m) as f64 / (2 * k) as f64).sum();
        prop_assert!(gap <= bound + 1e-9);
        let exact_gap = (rug::Float::with_val(128, invol(&c)) / big_b(&c)).ln().to_f64();
        prop_assert!((gap - exact_gap).abs() < 1e-9 * (1.0 + exact_gap));
    }

    #[test]
    fn brute_force_agrees(p in permutation(8)) {
        let c = p.cycle_type().unwrap();
        prop_assert_eq!(brute_force_invol(&p).unwrap(), invol(&c));
    }

    #[test]
    fn cycle_type_is_a_class_function((p, q) in (1usize..=9).prop_flat_map(|n| (shuffled(n), shuffled(n)))) {
        let conj = q.inverse().after(&p.after(&q).unwrap()).unwrap();
        prop_assert_eq!(conj.cycle_type().unwrap(), p.cycle_type().unwrap());
    }
}

#[test]
fn every_permutation_up_to_seven() {
    for n in 1..=7 {
        for p in permutations(n) {
            let c = p.cycle_type().unwrap();
            let brute = brute_force_invol(&p).unwrap();
            assert_eq!(brute, invol(&c), "{p}");
            assert_eq!(brute, invol_hermite(&c), "{p}");
        }
    }
}

#[test]
fn class_sizes_count_permutations() {
    for n in 1..=7 {
        let mut by_type = std::collections::BTreeMap::new();
        for p in permutations(n) {
            *by_type.entry(p.cycle_type().unwrap()).or_insert(0u64) += 1;
        }
        for (c, size) in enumerate_cycle_types(n) {
            assert_eq!(size, class_size(&c));
            assert_eq!(size, by_type[&c]);
        }
    }
}

#[test]
fn pair_identity() {
    for n in 1..=9 {
        let total: Integer = enumerate_cycle_types(n).map(|(c, s)| s * invol(&c)).sum();
        assert_eq!(total, telephone(n).square(), "n = {n}");
    }
}

#[test]
fn documented_values() {
    let ct = |s: &str| CycleType::parse_compact(s).unwrap();
    assert_eq!(invol(&ct("1^2")), 2);
    assert_eq!(invol(&ct("1^4")), 10);
    assert_eq!(invol_hermite(&ct("1^4")), 10);
    assert_eq!(invol_hermite(&ct("3")), 3);
    assert_eq!(big_b(&ct("2 3")), 6);
    assert_eq!(brute_force_invol(&Permutation::identity(5)).unwrap(), 26);
    assert_eq!(
        brute_force_invol(&Permutation::parse("2,3,1").unwrap()).unwrap(),
        3
    );
    assert_eq!(
        CycleType::parse_counts("1,1").unwrap(),
        Permutation::parse("2,1,3").unwrap().cycle_type().unwrap()
    );
}
