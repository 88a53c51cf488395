//! The remainder of the small-t expansion shrinks linearly in t.

use invol::asym::{mellin_expansion, mellin_lhs};

fn main() -> invol::Result<()> {
    for theta in [0.5, 1.0] {
        println!("theta = {theta}");
        for t in [0.2, 0.1, 0.05, 0.025, 0.0125] {
            let d = mellin_lhs(t, theta)? - mellin_expansion(t, theta)?;
            println!("  t={t:<7} remainder {d:+.3e}  remainder/t {:+.5}", d / t);
        }
    }
    Ok(())
}
