use std::fmt;

use serde::{Deserialize, Serialize};

use super::cycle_type::{CycleCounts, CycleType};
use crate::error::{Error, Result};

/// A permutation of `[n]` in one-line notation.
///
/// Stored zero-based; the public constructors and [`one_line`](Self::one_line)
/// speak the usual one-based notation. Composition is function composition:
/// `b.after(&a)` is `b ∘ a`, i.e. `a` is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            image: (0..n).collect(),
        }
    }

    /// `one_line[i]` is the image of `i + 1`, values in `1..=n`.
    pub fn from_one_line(one_line: &[usize]) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        let mut image = Vec::with_capacity(n);
        for &v in one_line {
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            image.push(v - 1);
        }
        Ok(Self { image })
    }

    /// Zero-based images; must be a bijection of `0..n`.
    pub fn from_zero_based(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &v in &image {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidPermutation(format!(
                    "{image:?} is not a bijection"
                )));
            }
        }
        Ok(Self { image })
    }

    /// Parses `"2,3,1"` or `"2 3 1"`.
    pub fn parse(s: &str) -> Result<Self> {
        let vals = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_line(&vals)
    }

    pub fn n(&self) -> usize {
        self.image.len()
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.image.iter().map(|&v| v + 1).collect()
    }

    /// Zero-based image of zero-based `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.image
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Permutation) -> Result<Permutation> {
        if self.n() != first.n() {
            return Err(Error::InvalidPermutation(format!(
                "cannot compose permutations of [{}] and [{}]",
                self.n(),
                first.n()
            )));
        }
        Ok(Permutation {
            image: first.image.iter().map(|&x| self.image[x]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &v) in self.image.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { image: inv }
    }

    pub fn is_involution(&self) -> bool {
        self.image
            .iter()
            .enumerate()
            .all(|(i, &v)| self.image[v] == i)
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// Counts of each cycle length.
    pub fn cycle_counts(&self) -> CycleCounts {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut dense = vec![0usize; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
                len += 1;
            }
            dense[len - 1] += 1;
        }
        CycleCounts::from_dense(&dense)
    }

    /// Cycle type; errors only for the empty permutation.
    pub fn cycle_type(&self) -> Result<CycleType> {
        CycleType::new(self.n(), self.cycle_counts())
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(one_line: Vec<usize>) -> Result<Self> {
        Permutation::from_one_line(&one_line)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.one_line()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v + 1)?;
        }
        f.write_str(")")
    }
}

/// All permutations of `[n]` in lexicographic order of one-line notation.
pub fn permutations(n: usize) -> Permutations {
    Permutations {
        next: Some((0..n).collect()),
    }
}

pub struct Permutations {
    next: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut a = current.clone();
        // Standard next-permutation step.
        let n = a.len();
        if n > 1 {
            let mut i = n - 1;
            while i > 0 && a[i - 1] >= a[i] {
                i -= 1;
            }
            if i > 0 {
                let mut j = n - 1;
                while a[j] <= a[i - 1] {
                    j -= 1;
                }
                a.swap(i - 1, j);
                a[i..].reverse();
                self.next = Some(a);
            }
        }
        Some(Permutation { image: current })
    }
}

/// Every involution of `[n]`; there are `t_n` of them.
pub fn involutions(n: usize) -> Vec<Permutation> {
    fn extend(image: &mut Vec<usize>, free: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        let Some(first) = free.pop() else {
            out.push(Permutation {
                image: image.clone(),
            });
            return;
        };
        image[first] = first;
        extend(image, free, out);
        for idx in 0..free.len() {
            let partner = free.remove(idx);
            image[first] = partner;
            image[partner] = first;
            extend(image, free, out);
            image[partner] = partner;
            free.insert(idx, partner);
        }
        image[first] = first;
        free.push(first);
    }

    let mut image: Vec<usize> = (0..n).collect();
    let mut free: Vec<usize> = (0..n).rev().collect();
    let mut out = Vec::new();
    extend(&mut image, &mut free, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_validation() {
        assert!(Permutation::from_one_line(&[2, 1, 3]).is_ok());
        assert!(Permutation::from_one_line(&[2, 2, 3]).is_err());
        assert!(Permutation::from_one_line(&[0, 1]).is_err());
        assert!(Permutation::from_one_line(&[1, 4]).is_err());
        assert!(Permutation::parse("2, x").is_err());
    }

    #[test]
    fn cycle_type_examples() {
        let ct = |v: &[usize]| Permutation::from_one_line(v).unwrap().cycle_type().unwrap();
        let t = ct(&[2, 1, 3]);
        assert_eq!((t.count(1), t.count(2)), (1, 1));
        assert_eq!(ct(&[1, 2, 3, 4]).count(1), 4);
        let t = ct(&[2, 3, 1]);
        assert_eq!((t.count(3), t.num_cycles()), (1, 1));
    }

    #[test]
    fn composition_applies_right_factor_first() {
        // a = (1 2), b = (2 3): b ∘ a sends 1 → 2 → 3, 2 → 1, 3 → 2.
        let a = Permutation::from_one_line(&[2, 1, 3]).unwrap();
        let b = Permutation::from_one_line(&[1, 3, 2]).unwrap();
        assert_eq!(b.after(&a).unwrap().one_line(), vec![3, 1, 2]);
        assert_eq!(a.after(&b).unwrap().one_line(), vec![2, 3, 1]);
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(0).count(), 1);
        assert_eq!(permutations(4).count(), 24);
        let all: Vec<_> = permutations(5).collect();
        let mut dedup = all.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 120);
    }

    #[test]
    fn involution_counts_are_telephone_numbers() {
        let counts: Vec<usize> = (0..=7).map(|n| involutions(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 10, 26, 76, 232]);
        assert!(involutions(6).iter().all(Permutation::is_involution));
    }

    #[test]
    fn inverse_composes_to_identity() {
        for p in permutations(5) {
            assert!(p.after(&p.inverse()).unwrap().is_identity());
        }
    }
}
