//! Counts involution factorizations of one permutation three ways.
//!
//! cargo run --example involution_count -- 2,3,1,5,4

use invol::perm::{big_b, brute_force_invol, invol, invol_hermite};
use invol::Permutation;

fn main() -> invol::Result<()> {
    let arg = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "2,3,1,5,4,6".into());
    let sigma = Permutation::parse(&arg)?;
    let c = sigma.cycle_type()?;
    println!("sigma          {sigma}");
    println!("cycle type     {c}");
    println!("B              {}", big_b(&c));
    println!("invol          {}", invol(&c));
    println!("invol_hermite  {}", invol_hermite(&c));
    match brute_force_invol(&sigma) {
        Ok(v) => println!("brute force    {v}"),
        Err(e) => println!("brute force    skipped ({e})"),
    }
    Ok(())
}
