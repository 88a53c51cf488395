//! Paths W_n(t) against the coupled B_n(t), and the covariance grid.

use invol::experiments::{functional_experiment, ExperimentConfig};
use invol::EsfParams;

fn main() -> invol::Result<()> {
    let cfg = ExperimentConfig::new(vec![10_000, 1_000_000], EsfParams::ratio(1, 1)?, 5_000);
    let report = functional_experiment(&cfg)?;
    for &n in &cfg.n {
        println!(
            "n={n}: E sup|W - B| = {:.4}",
            report.get("sup_distance", n).unwrap().value
        );
    }
    let n = 1_000_000;
    for &s in &cfg.cov_t {
        let line: Vec<String> = cfg
            .cov_t
            .iter()
            .map(|&t| format!("{:.3}", report.get_at("cov", n, s, Some(t)).unwrap().value))
            .collect();
        println!("  s={s:.1}  {}", line.join(" "));
    }
    Ok(())
}
