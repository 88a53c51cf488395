//! Sums invol over conjugacy classes; every ordered involution pair is counted
//! once, so the total is t_n².

use invol::experiments::involution_pair_total;
use invol::perm::{partition_count, telephone};

fn main() {
    println!("{:>2} {:>6} {:>12} {:>12}", "n", "p(n)", "sum", "t_n^2");
    for n in 1..=12 {
        let t = telephone(n);
        println!(
            "{n:>2} {:>6} {:>12} {:>12}",
            partition_count(n),
            involution_pair_total(n),
            t.square()
        );
    }
}
