//! How often a sample falls outside P_ξ, and the typical-value bound.

use invol::experiments::{membership_experiment, ExperimentConfig};
use invol::EsfParams;

fn main() -> invol::Result<()> {
    let mut cfg = ExperimentConfig::new(vec![10_000], EsfParams::ratio(1, 1)?, 20_000);
    cfg.skew = Some((20, 20));
    let report = membership_experiment(&cfg, &cfg.xi)?;
    for &xi in &cfg.xi {
        let row = report.get_at("xi_p_outside", 10_000, xi, None).unwrap();
        println!("xi={xi:<3} xi*P(outside) = {:.3}", row.value);
    }
    let b = report.get("below_skew_bound", 10_000).unwrap();
    println!(
        "below bound: {:.4} (guaranteed {:.4})",
        b.value,
        b.target.unwrap()
    );
    Ok(())
}
