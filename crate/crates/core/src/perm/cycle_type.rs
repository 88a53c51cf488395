use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sparse multiplicity vector: `(k, c_k)` pairs with `c_k > 0`, sorted by `k`.
///
/// No constraint ties the entries to a ground-set size, so this also holds
/// Poisson-process counts such as the coupled `Z₀` of the Feller coupling.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleCounts {
    entries: Vec<(usize, usize)>,
}

impl CycleCounts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds counts from `(k, c)` pairs; repeated `k` accumulate, zero counts vanish.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut out = Self::new();
        for (k, c) in pairs {
            if k == 0 {
                return Err(Error::InvalidCycleType("cycle length 0".into()));
            }
            out.add(k, c);
        }
        Ok(out)
    }

    /// Dense form: `counts[i]` is the number of `(i + 1)`-cycles.
    pub fn from_dense(counts: &[usize]) -> Self {
        Self {
            entries: counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(i, &c)| (i + 1, c))
                .collect(),
        }
    }

    pub fn get(&self, k: usize) -> usize {
        match self.entries.binary_search_by_key(&k, |&(key, _)| key) {
            Ok(i) => self.entries[i].1,
            Err(_) => 0,
        }
    }

    /// Adds `by` to the count of `k`-cycles. `k` must be positive.
    pub fn add(&mut self, k: usize, by: usize) {
        assert!(k > 0, "cycle length must be positive");
        if by == 0 {
            return;
        }
        match self.entries.binary_search_by_key(&k, |&(key, _)| key) {
            Ok(i) => self.entries[i].1 += by,
            Err(i) => self.entries.insert(i, (k, by)),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of distinct lengths present.
    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// `Σ k·c_k`.
    pub fn size(&self) -> usize {
        self.entries.iter().map(|&(k, c)| k * c).sum()
    }

    /// Total number of cycles `Σ c_k`.
    pub fn total(&self) -> usize {
        self.entries.iter().map(|&(_, c)| c).sum()
    }

    pub fn max_len(&self) -> Option<usize> {
        self.entries.last().map(|&(k, _)| k)
    }

    /// Keeps only lengths `k ≤ max_k`.
    pub fn truncated(&self, max_k: usize) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .copied()
                .take_while(|&(k, _)| k <= max_k)
                .collect(),
        }
    }

    /// Dense vector of length `len`; index `i` holds `c_{i+1}`.
    pub fn dense(&self, len: usize) -> Vec<usize> {
        let mut out = vec![0; len];
        for &(k, c) in &self.entries {
            if k <= len {
                out[k - 1] = c;
            }
        }
        out
    }

    /// Coordinatewise sum.
    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            out.add(k, c);
        }
        out
    }

    /// `true` when every coordinate of `self` is at most the one in `other`.
    pub fn dominated_by(&self, other: &Self) -> bool {
        self.iter().all(|(k, c)| c <= other.get(k))
    }

    /// `‖other − self‖₁` for `self ≤ other`; `None` when not dominated.
    pub fn l1_gap(&self, other: &Self) -> Option<usize> {
        if !self.dominated_by(other) {
            return None;
        }
        Some(other.total() - self.total())
    }
}

impl fmt::Display for CycleCounts {
    /// Compact `k^c` notation, e.g. `1^2 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("∅");
        }
        for (i, &(k, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            if c == 1 {
                write!(f, "{k}")?;
            } else {
                write!(f, "{k}^{c}")?;
            }
        }
        Ok(())
    }
}

/// Cycle type of a permutation of `[n]`: counts with `Σ k·c_k = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "CycleTypeRepr", into = "CycleTypeRepr")]
pub struct CycleType {
    n: usize,
    counts: CycleCounts,
}

impl CycleType {
    pub fn new(n: usize, counts: CycleCounts) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCycleType(
                "ground set must be non-empty".into(),
            ));
        }
        let size = counts.size();
        if size != n {
            return Err(Error::InvalidCycleType(format!(
                "Σ k·c_k = {size} but n = {n}"
            )));
        }
        Ok(Self { n, counts })
    }

    /// Infers `n = Σ k·c_k`.
    pub fn from_counts(counts: CycleCounts) -> Result<Self> {
        let n = counts.size();
        Self::new(n, counts)
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_counts(CycleCounts::from_pairs(pairs)?)
    }

    /// Dense counts, `counts[i]` = number of `(i + 1)`-cycles.
    pub fn from_dense(counts: &[usize]) -> Result<Self> {
        Self::from_counts(CycleCounts::from_dense(counts))
    }

    pub fn single_cycle(n: usize) -> Result<Self> {
        Self::from_pairs([(n, 1)])
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_pairs([(1, n)])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &CycleCounts {
        &self.counts
    }

    pub fn count(&self, k: usize) -> usize {
        self.counts.get(k)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.counts.iter()
    }

    /// The statistic `K`, total number of cycles.
    pub fn num_cycles(&self) -> usize {
        self.counts.total()
    }

    pub fn dense(&self) -> Vec<usize> {
        self.counts.dense(self.n)
    }

    /// Parses compact notation (`"1^2 2"`, `"5"`, `"2^2,3"`).
    pub fn parse_compact(s: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for tok in s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
        {
            let (k, c) = match tok.split_once('^') {
                Some((k, c)) => (k, c),
                None => (tok, "1"),
            };
            let k: usize = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad cycle length {k:?} in {s:?}")))?;
            let c: usize = c
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad multiplicity {c:?} in {s:?}")))?;
            pairs.push((k, c));
        }
        if pairs.is_empty() {
            return Err(Error::Parse("empty cycle type".into()));
        }
        Self::from_pairs(pairs)
    }

    /// Parses an explicit count vector `c_1,c_2,…`.
    pub fn parse_counts(s: &str) -> Result<Self> {
        let counts = s
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad count {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_dense(&counts)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.counts.fmt(f)
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_compact(s)
    }
}

#[derive(Serialize, Deserialize)]
struct CycleTypeRepr {
    n: usize,
    counts: CycleCounts,
}

impl TryFrom<CycleTypeRepr> for CycleType {
    type Error = Error;

    fn try_from(r: CycleTypeRepr) -> Result<Self> {
        CycleType::new(r.n, r.counts)
    }
}

impl From<CycleType> for CycleTypeRepr {
    fn from(c: CycleType) -> Self {
        CycleTypeRepr {
            n: c.n,
            counts: c.counts,
        }
    }
}
