use std::collections::BTreeMap;

use invol::esf::{
    compose_involutions, esf_distribution, feller_ones, feller_sample, FellerSampler,
    InvolutionSampler,
};
use invol::experiments::par_samples;
use invol::perm::involutions;
use invol::{EsfParams, Permutation, RngSeed, SpacingSample};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn sandwich_holds(seed in any::<u64>(), n in 1usize..400, t in 1u32..=40, hf in 1usize..=6) {
        let theta = EsfParams::real(f64::from(t) / 10.0).unwrap();
        let s = feller_sample(n, &theta, hf, RngSeed::new(seed)).unwrap();
        prop_assert!(s.sandwich_violations().is_empty(), "{:?}", s);
        prop_assert_eq!(s.cycle_type().n(), n);
    }

    #[test]
    fn one_run_serves_every_n(seed in any::<u64>(), n in 2usize..200) {
        let mut rng = RngSeed::new(seed).rng();
        let ones = feller_ones(1.3, 4 * n, &mut rng);
        let small = SpacingSample::from_ones(n - 1, 4 * n, ones.clone()).unwrap();
        let big = SpacingSample::from_ones(n, 4 * n, ones).unwrap();
        // Z₀ does not depend on n.
        prop_assert_eq!(small.z(), big.z());
    }
}

#[test]
fn poisson_limit_of_small_cycles() {
    let n = 10_000;
    let theta = EsfParams::ratio(1, 1).unwrap();
    let sampler = FellerSampler::new(n, &theta, 1).unwrap();
    let counts: Vec<Vec<usize>> = par_samples(100_000, 5, |rng| {
        let s = sampler.sample(rng);
        (1..=10).map(|k| s.c().get(k)).collect()
    });
    for k in 1..=10 {
        let mean = counts.iter().map(|c| c[k - 1] as f64).sum::<f64>() / counts.len() as f64;
        let sd = (1.0 / k as f64 / counts.len() as f64).sqrt();
        assert!((mean - 1.0 / k as f64).abs() < 3.0 * sd, "k = {k}: {mean}");
    }
}

#[test]
fn feller_frequencies_match_ewens() {
    let theta = EsfParams::ratio(3, 2).unwrap();
    let sampler = FellerSampler::new(6, &theta, 1).unwrap();
    let draws = par_samples(1_000_000, 11, |rng| sampler.sample(rng).cycle_type());
    let mut freq = BTreeMap::new();
    for c in draws {
        *freq.entry(c).or_insert(0usize) += 1;
    }
    let total = 1_000_000.0;
    for (c, p) in esf_distribution(6, &theta).unwrap() {
        let p = p.to_f64();
        let got = freq.get(&c).copied().unwrap_or(0) as f64 / total;
        let sd = (p * (1.0 - p) / total).sqrt();
        assert!((got - p).abs() < 4.0 * sd, "{c}: {got} vs {p}");
    }
}

#[test]
fn uniform_involutions_of_four() {
    let sampler = InvolutionSampler::new(4);
    let draws = par_samples(1_000_000, 3, |rng| sampler.sample(rng));
    let all = involutions(4);
    assert_eq!(all.len(), 10);
    for inv in &all {
        let got = draws.iter().filter(|d| *d == inv).count() as f64 / 1e6;
        let sd = (0.1 * 0.9 / 1e6f64).sqrt();
        assert!((got - 0.1).abs() < 4.0 * sd, "{inv}: {got}");
    }
}

#[test]
fn compositions() {
    let p = |s: &str| Permutation::parse(s).unwrap();
    let (a, b) = (p("2,1,3"), p("1,3,2"));
    assert_eq!(compose_involutions(&a, &b).unwrap(), p("3,1,2"));
    assert!(compose_involutions(&a, &a).unwrap().is_identity());
    assert_eq!(
        compose_involutions(&Permutation::identity(2), &p("2,1")).unwrap(),
        p("2,1")
    );
    assert!(compose_involutions(&p("2,3,1"), &a).is_err());
}
