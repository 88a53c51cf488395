use rug::ops::Pow;
use rug::Integer;

use super::cycle_type::{CycleCounts, CycleType};

/// Size of the conjugacy class `n! / Π k^{c_k} c_k!`.
pub fn class_size(c: &CycleType) -> Integer {
    let mut den = Integer::from(1);
    for (k, m) in c.iter() {
        den *= Integer::from(k).pow(m as u32);
        den *= Integer::from(Integer::factorial(m as u32));
    }
    Integer::from(Integer::factorial(c.n() as u32)) / den
}

/// Every cycle type of `[n]` with its class size, each exactly once.
///
/// Partitions are produced in reverse lexicographic order, from the single
/// `n`-cycle down to the identity.
pub fn enumerate_cycle_types(n: usize) -> CycleTypes {
    assert!(n >= 1, "ground set must be non-empty");
    CycleTypes {
        parts: Some(vec![n]),
        n,
    }
}

/// Number of partitions of `n`, by the pentagonal-free DP.
pub fn partition_count(n: usize) -> Integer {
    let mut p = vec![Integer::new(); n + 1];
    p[0] = Integer::from(1);
    for part in 1..=n {
        for total in part..=n {
            let add = p[total - part].clone();
            p[total] += add;
        }
    }
    p[n].clone()
}

pub struct CycleTypes {
    /// Current partition as a non-increasing list of parts.
    parts: Option<Vec<usize>>,
    n: usize,
}

impl CycleTypes {
    fn advance(parts: &mut Vec<usize>) -> bool {
        let mut spare = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            spare += 1;
        }
        let Some(x) = parts.pop() else {
            return false;
        };
        let x = x - 1;
        parts.push(x);
        spare += 1;
        while spare > 0 {
            let p = spare.min(x);
            parts.push(p);
            spare -= p;
        }
        true
    }
}

impl Iterator for CycleTypes {
    type Item = (CycleType, Integer);

    fn next(&mut self) -> Option<Self::Item> {
        let parts = self.parts.as_mut()?;
        let counts =
            CycleCounts::from_pairs(parts.iter().map(|&k| (k, 1))).expect("parts are positive");
        let ct = CycleType::new(self.n, counts).expect("parts sum to n");
        if !Self::advance(parts) {
            self.parts = None;
        }
        let size = class_size(&ct);
        Some((ct, size))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_classes() {
        let all: Vec<_> = enumerate_cycle_types(3).collect();
        assert_eq!(all.len(), 3);
        let size_of = |s: &str| {
            let want = CycleType::parse_compact(s).unwrap();
            all.iter().find(|(c, _)| *c == want).unwrap().1.clone()
        };
        assert_eq!(size_of("1^3"), 1);
        assert_eq!(size_of("1 2"), 3);
        assert_eq!(size_of("3"), 2);
    }

    #[test]
    fn s4_double_transpositions() {
        let c = CycleType::parse_compact("2^2").unwrap();
        assert_eq!(class_size(&c), 3);
    }

    #[test]
    fn partition_counts_and_class_sums() {
        assert_eq!(enumerate_cycle_types(5).count(), 7);
        for n in 1..=14 {
            let mut count = 0u32;
            let mut total = Integer::new();
            for (_, size) in enumerate_cycle_types(n) {
                count += 1;
                total += size;
            }
            assert_eq!(partition_count(n), count);
            assert_eq!(total, Integer::from(Integer::factorial(n as u32)));
        }
    }

    #[test]
    fn types_are_distinct() {
        let mut all: Vec<_> = enumerate_cycle_types(12).map(|(c, _)| c).collect();
        let len = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), len);
        assert_eq!(len, 77);
    }
}
