//! The Feller coupling: exact law against the Ewens formula, then one sampled
//! realization with its window counts and the coupled limiting counts.

use invol::esf::{
    esf_distribution, exact_feller_distribution, feller_sample, DEFAULT_HORIZON_FACTOR,
};
use invol::{EsfParams, RngSeed};

fn main() -> invol::Result<()> {
    let theta = EsfParams::ratio(3, 2)?;
    let n = 5;
    let feller = exact_feller_distribution(n, &theta)?;
    let esf = esf_distribution(n, &theta)?;
    for (c, p) in &esf {
        println!("{c:<10} ESF {p:<10} Feller {}", feller[c]);
    }

    let s = feller_sample(30, &theta, DEFAULT_HORIZON_FACTOR, RngSeed::new(7))?;
    println!("\nsuccesses {:?}", s.ones());
    println!("C(30)     {}", s.c());
    println!("Z0        {}", s.z());
    println!("L_n = {}, R_n = {:?}", s.l_n(), s.r_n());
    println!("sandwich violations: {:?}", s.sandwich_violations());
    Ok(())
}
