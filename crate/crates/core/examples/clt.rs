//! Lognormal limit: KS distance of standardized log invol to the normal law.

use invol::experiments::{clt_experiment, ExperimentConfig};
use invol::EsfParams;

fn main() -> invol::Result<()> {
    let cfg = ExperimentConfig::new(
        vec![10_000, 100_000, 1_000_000],
        EsfParams::ratio(1, 1)?,
        20_000,
    );
    let report = clt_experiment(&cfg)?;
    for &n in &cfg.n {
        let ks = report.get("ks", n).unwrap().value;
        let edge = report.get("ks_edgeworth", n).unwrap().value;
        let var = report.get("var", n).unwrap().value;
        println!("n={n:<8} KS {ks:.4}  KS(Edgeworth) {edge:.4}  var {var:.3}");
    }
    Ok(())
}
