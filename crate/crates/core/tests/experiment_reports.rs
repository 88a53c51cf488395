use invol::esf::{feller_sample, DEFAULT_HORIZON_FACTOR};
use invol::experiments::{
    clt_experiment, composition_bias_experiment, dominated_violation, functional_experiment,
    inequality_suite, log_invol_prefix, membership_experiment, ExperimentConfig, ExperimentReport,
};
use invol::perm::ln_invol;
use invol::{CycleCounts, EsfParams, RngSeed};
use proptest::prelude::*;

fn strip_clock(mut r: ExperimentReport) -> String {
    r.wall_clock_seconds = 0.0;
    r.to_json().unwrap()
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn reports_do_not_depend_on_threads() {
    let mut cfg = ExperimentConfig::new(vec![500, 5000], EsfParams::ratio(1, 1).unwrap(), 2500);
    cfg.skew = None;
    type Run = fn(&ExperimentConfig) -> invol::Result<ExperimentReport>;
    let runs: [Run; 5] = [
        clt_experiment,
        functional_experiment,
        inequality_suite,
        composition_bias_experiment,
        |c| membership_experiment(c, &c.xi),
    ];
    for run in runs {
        let one = in_pool(1, || strip_clock(run(&cfg).unwrap()));
        let three = in_pool(3, || strip_clock(run(&cfg).unwrap()));
        assert_eq!(one, three);
    }
}

#[test]
fn reports_reload_exactly() {
    let cfg = ExperimentConfig::new(vec![2000], EsfParams::ratio(1, 2).unwrap(), 1000);
    let r = functional_experiment(&cfg).unwrap();
    let back = ExperimentReport::from_json(&r.to_json().unwrap()).unwrap();
    assert_eq!(back, r);
    let csv = r.to_csv().unwrap();
    assert_eq!(csv.lines().count(), r.rows.len() + 1);
}

#[test]
fn adversarial_fixed_points() {
    let b = CycleCounts::from_pairs([(1, 50), (7, 2), (950, 1)]).unwrap();
    let a = CycleCounts::from_pairs([(7, 1)]).unwrap();
    assert_eq!(dominated_violation(&a, &b, 1000), None);
    assert_eq!(dominated_violation(&b, &b, 1000), None);
}

#[test]
fn small_membership_matches_series() {
    let cfg = ExperimentConfig::new(vec![20], EsfParams::ratio(1, 1).unwrap(), 50_000);
    let r = membership_experiment(&cfg, &[3.0]).unwrap();
    let row = r.get("p_outside", 20).unwrap();
    assert!((row.value - row.target.unwrap()).abs() < 3.0 * row.stderr.unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn path_endpoints(seed in any::<u64>(), n in 20usize..20_000, t in 1u32..=30) {
        let theta = f64::from(t) / 10.0;
        let s = feller_sample(n, &EsfParams::real(theta).unwrap(), DEFAULT_HORIZON_FACTOR, RngSeed::new(seed)).unwrap();
        let p = log_invol_prefix(&s, &[0.0, 0.5, 1.0], theta);
        let l = (n as f64).ln();
        let c1 = s.c().get(1) as f64;
        prop_assert!(p.w[0].abs() <= 10.0 * c1 * c1 / (l * l * l).sqrt() + 1e-12);
        let full = (ln_invol(s.c(), n) - theta / 2.0 * l * l) / (theta / 3.0 * l * l * l).sqrt();
        prop_assert!((p.w[2] - full).abs() < 1e-9);
        prop_assert_eq!(p.b[0], 0.0);
    }
}
