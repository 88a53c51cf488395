//! Cycle counts of τ₂∘τ₁ for independent uniform involutions.

use invol::experiments::{composition_bias_experiment, ExperimentConfig};
use invol::EsfParams;

fn main() -> invol::Result<()> {
    let cfg = ExperimentConfig::new(vec![30, 500], EsfParams::ratio(1, 1)?, 50_000);
    let report = composition_bias_experiment(&cfg)?;
    for &n in &cfg.n {
        println!("n={n}");
        for k in 1..=cfg.k_max {
            let row = report.get_at("mean_c", n, k as f64, None).unwrap();
            let exact = report
                .get_at("mean_c_exact", n, k as f64, None)
                .map(|r| format!("{:.4}", r.value));
            println!(
                "  k={k} E c_k {:.4} ± {:.4}  exact {}  limit {:.4}",
                row.value,
                row.stderr.unwrap(),
                exact.unwrap_or_else(|| "-".into()),
                row.target.unwrap()
            );
        }
    }
    Ok(())
}
