//! Closed-form leading terms against 160-bit exact moments.

use invol::asym::{mean_asym, second_moment_asym, second_moment_asym_uncorrected};
use invol::series::{mean_invol_real, second_moment_real, DEFAULT_PREC};
use invol::EsfParams;

fn main() -> invol::Result<()> {
    let one = EsfParams::ratio(1, 1)?;
    println!("mean, theta = 1");
    for n in [250u64, 1000, 4000] {
        let exact = mean_invol_real(n as usize, &one, DEFAULT_PREC)?;
        println!(
            "  n={n:<5} exact/asym {:.5}",
            mean_asym(n, 1.0)?.ratio(&exact)
        );
    }
    println!("second moment, n = 1000");
    for (p, q) in [(1, 2), (1, 1), (2, 1)] {
        let theta = EsfParams::ratio(p, q)?;
        let exact = second_moment_real(1000, &theta, DEFAULT_PREC)?;
        let fixed = second_moment_asym(1000, theta.theta())?;
        let uncorrected = second_moment_asym_uncorrected(1000, theta.theta())?;
        println!(
            "  theta={theta:<4} {:?}: log ratio {:.5}, uncorrected-form log ratio {:.5}",
            fixed.regime,
            fixed.log_ratio(&exact),
            uncorrected.log_ratio(&exact)
        );
    }
    Ok(())
}
