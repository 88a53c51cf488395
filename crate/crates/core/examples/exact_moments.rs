//! Exact E_n invol and E_n invol² from the generating functions.

use invol::series::{mean_invol_all, second_moment_all, Exact};
use invol::EsfParams;

fn main() -> invol::Result<()> {
    for theta in [
        EsfParams::ratio(1, 2)?,
        EsfParams::ratio(1, 1)?,
        EsfParams::ratio(2, 1)?,
    ] {
        let m = mean_invol_all(&Exact, &theta, 8)?;
        let s = second_moment_all(&Exact, &theta, 8)?;
        println!("theta = {theta}");
        for n in 1..=8 {
            println!("  n={n}  mean {:<14} second {}", m[n].to_string(), s[n]);
        }
    }
    Ok(())
}
