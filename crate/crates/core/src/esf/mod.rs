//! Ewens measure `ESF(θ)`: exact probabilities and every random generator
//! in the crate.
//!
//! All randomness flows through [`RngSeed`], a `(seed, stream)` pair naming a
//! ChaCha8 stream. Two samplers with the same pair produce identical output
//! regardless of which thread runs them.

mod feller;
mod involution;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{CycleCounts, CycleType};

pub use feller::{
    exact_feller_distribution, feller_ones, feller_sample, feller_sample_exact, FellerSampler,
    SpacingSample, DEFAULT_HORIZON_FACTOR, EXACT_FELLER_CAP,
};
pub use involution::{compose_involutions, sample_uniform_involution, InvolutionSampler};

/// The Ewens parameter. Always has a real value; the exact rational is kept
/// when θ was given as one, and is required by the exact series and pmf code.
#[derive(Clone, Debug, PartialEq)]
pub struct EsfParams {
    exact: Option<Rational>,
    real: f64,
}

impl EsfParams {
    pub fn exact(theta: Rational) -> Result<Self> {
        if theta <= 0 {
            return Err(Error::domain(format!("θ must be positive, got {theta}")));
        }
        let real = theta.to_f64();
        Ok(Self {
            exact: Some(theta),
            real,
        })
    }

    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::domain("θ has a zero denominator"));
        }
        Self::exact(Rational::from((num, den)))
    }

    pub fn real(theta: f64) -> Result<Self> {
        if !(theta.is_finite() && theta > 0.0) {
            return Err(Error::domain(format!(
                "θ must be positive and finite, got {theta}"
            )));
        }
        Ok(Self {
            exact: None,
            real: theta,
        })
    }

    /// Parses `"p/q"`, an integer, or a decimal. With `exact` set a decimal is
    /// read as the rational it spells (`"0.25"` is `1/4`); otherwise decimals
    /// are real-only and fractions and integers stay exact.
    pub fn parse(s: &str, exact: bool) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot read θ from {s:?}"));
        if s.contains('/') || s.bytes().all(|b| b.is_ascii_digit()) {
            return Self::exact(Rational::from_str(s).map_err(|_| bad())?);
        }
        if exact {
            return Self::exact(parse_decimal(s).ok_or_else(bad)?);
        }
        Self::real(s.parse::<f64>().map_err(|_| bad())?)
    }

    pub fn theta(&self) -> f64 {
        self.real
    }

    pub fn theta_exact(&self) -> Result<&Rational> {
        self.exact
            .as_ref()
            .ok_or_else(|| Error::domain("this computation needs θ as an exact rational"))
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }
}

impl fmt::Display for EsfParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "{}", self.real),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EsfParamsRepr {
    theta: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta_exact: Option<String>,
}

impl Serialize for EsfParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        EsfParamsRepr {
            theta: self.real,
            theta_exact: self.exact.as_ref().map(|q| q.to_string()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for EsfParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = EsfParamsRepr::deserialize(d)?;
        match repr.theta_exact {
            Some(q) => Rational::from_str(&q)
                .map_err(serde::de::Error::custom)
                .and_then(|q| Self::exact(q).map_err(serde::de::Error::custom)),
            None => Self::real(repr.theta).map_err(serde::de::Error::custom),
        }
    }
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.bytes().chain(frac.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let num = Integer::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    let q = Rational::from((num, Integer::from(10).pow(frac.len() as u32)));
    Some(if neg { -q } else { q })
}

/// Names one reproducible random stream.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSeed {
    pub seed: u64,
    pub stream: u64,
}

impl RngSeed {
    pub fn new(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        Self { stream, ..self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// `θ⁽ⁿ⁾ = θ(θ+1)⋯(θ+n−1)`.
pub fn rising_factorial(theta: &Rational, n: usize) -> Rational {
    let mut acc = Rational::from(1);
    for j in 0..n {
        acc *= Rational::from(theta + Integer::from(j));
    }
    acc
}

/// `P_{θ,n}(c) = n!/θ⁽ⁿ⁾ · Π (θ/k)^{c_k}/c_k!`.
pub fn esf_pmf(c: &CycleType, params: &EsfParams) -> Result<Rational> {
    esf_pmf_counts(c.counts(), c.n(), params)
}

/// As [`esf_pmf`], for raw counts; zero when `Σ k·c_k ≠ n`.
pub fn esf_pmf_counts(c: &CycleCounts, n: usize, params: &EsfParams) -> Result<Rational> {
    let theta = params.theta_exact()?;
    if c.size() != n {
        return Ok(Rational::new());
    }
    let mut p = Rational::from(Integer::factorial(n as u32)) / rising_factorial(theta, n);
    for (k, m) in c.iter() {
        let ratio = Rational::from(theta / Integer::from(k));
        p *= ratio.pow(m as u32);
        p /= Integer::from(Integer::factorial(m as u32));
    }
    Ok(p)
}

/// The full `ESF(θ)` law on `S_n`, keyed by cycle type.
pub fn esf_distribution(n: usize, params: &EsfParams) -> Result<BTreeMap<CycleType, Rational>> {
    crate::perm::enumerate_cycle_types(n)
        .map(|(c, _)| esf_pmf(&c, params).map(|p| (c, p)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::enumerate_cycle_types;

    #[test]
    fn uniform_at_theta_one() {
        let p = EsfParams::ratio(1, 1).unwrap();
        for (c, size) in enumerate_cycle_types(3) {
            assert_eq!(esf_pmf(&c, &p).unwrap(), Rational::from((size, 6)));
        }
    }

    #[test]
    fn small_cases() {
        let p = EsfParams::ratio(2, 1).unwrap();
        let one = CycleType::identity(1).unwrap();
        assert_eq!(esf_pmf(&one, &p).unwrap(), 1);
        let fixed = CycleType::identity(2).unwrap();
        let swap = CycleType::single_cycle(2).unwrap();
        assert_eq!(esf_pmf(&fixed, &p).unwrap(), Rational::from((2, 3)));
        assert_eq!(esf_pmf(&swap, &p).unwrap(), Rational::from((1, 3)));
    }

    #[test]
    fn sums_to_one() {
        for (a, b) in [(1, 3), (1, 2), (3, 2), (7, 2)] {
            let p = EsfParams::ratio(a, b).unwrap();
            for n in 1..=10 {
                let total: Rational = esf_distribution(n, &p).unwrap().into_values().sum();
                assert_eq!(total, 1);
            }
        }
    }

    #[test]
    fn pmf_of_mismatched_counts_is_zero() {
        let p = EsfParams::ratio(1, 1).unwrap();
        let c = CycleCounts::from_pairs([(2, 1)]).unwrap();
        assert_eq!(esf_pmf_counts(&c, 3, &p).unwrap(), 0);
    }

    #[test]
    fn real_params_refuse_exact_work() {
        let p = EsfParams::real(0.7).unwrap();
        assert!(esf_pmf(&CycleType::identity(2).unwrap(), &p).is_err());
    }

    #[test]
    fn parsing() {
        assert_eq!(
            EsfParams::parse("3/2", false).unwrap(),
            EsfParams::ratio(3, 2).unwrap()
        );
        assert_eq!(
            EsfParams::parse("2", false).unwrap(),
            EsfParams::ratio(2, 1).unwrap()
        );
        assert!(!EsfParams::parse("0.25", false).unwrap().is_exact());
        assert_eq!(
            EsfParams::parse("0.25", true).unwrap(),
            EsfParams::ratio(1, 4).unwrap()
        );
        assert_eq!(
            EsfParams::parse(".5", true).unwrap(),
            EsfParams::ratio(1, 2).unwrap()
        );
        assert!(EsfParams::parse("0", false).is_err());
        assert!(EsfParams::parse("-1/2", false).is_err());
        assert!(EsfParams::parse("abc", true).is_err());
    }

    #[test]
    fn params_round_trip_json() {
        for p in [
            EsfParams::ratio(7, 2).unwrap(),
            EsfParams::real(0.3).unwrap(),
        ] {
            let s = serde_json::to_string(&p).unwrap();
            assert_eq!(serde_json::from_str::<EsfParams>(&s).unwrap(), p);
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        use rand::Rng;
        let a: u64 = RngSeed::new(7).with_stream(3).rng().random();
        let b: u64 = RngSeed::new(7).with_stream(3).rng().random();
        let c: u64 = RngSeed::new(7).with_stream(4).rng().random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}
