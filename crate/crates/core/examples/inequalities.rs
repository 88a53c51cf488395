//! Sample-level inequality checks; every count should be zero.

use invol::experiments::{inequality_suite, ExperimentConfig, CHECKS};
use invol::EsfParams;

fn main() -> invol::Result<()> {
    for (p, q) in [(1, 2), (1, 1), (2, 1)] {
        let cfg = ExperimentConfig::new(vec![1000], EsfParams::ratio(p, q)?, 100_000);
        let report = inequality_suite(&cfg)?;
        let counts: Vec<String> = CHECKS
            .iter()
            .map(|c| {
                format!(
                    "{c}={}",
                    report.get(&format!("violations_{c}"), 1000).unwrap().value
                )
            })
            .collect();
        println!("theta={}: {}", cfg.theta, counts.join(" "));
    }
    Ok(())
}
