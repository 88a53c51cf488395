use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::esf::{EsfParams, DEFAULT_HORIZON_FACTOR};

/// Settings shared by every experiment, read from TOML.
///
/// ```toml
/// n = [10000, 100000]
/// theta = "1"          # "p/q", integer, or decimal (read exactly)
/// samples = 20000
/// seed = 42
/// horizon_factor = 4
/// t_points = 101       # equispaced path grid on [0, 1]
/// cov_t = [0.2, 0.4, 0.6, 0.8, 1.0]
/// xi = [5, 10, 20, 40]
/// x_grid = [-2.0, -1.5, -0.5, 0.0, 0.5, 1.5, 2.0]
/// skew = [20, 20]
/// k_max = 5
/// output = "report.json"
/// ```
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub n: Vec<u64>,
    #[serde(with = "theta_field")]
    pub theta: EsfParams,
    pub samples: usize,
    #[serde(default = "defaults::seed")]
    pub seed: u64,
    #[serde(default = "defaults::horizon_factor")]
    pub horizon_factor: usize,
    #[serde(default = "defaults::t_points")]
    pub t_points: usize,
    #[serde(default = "defaults::cov_t")]
    pub cov_t: Vec<f64>,
    #[serde(default = "defaults::xi")]
    pub xi: Vec<f64>,
    #[serde(default = "defaults::x_grid")]
    pub x_grid: Vec<f64>,
    /// `(ξ₁, ξ₂)` for the typical-value bound check, if wanted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skew: Option<(u64, u64)>,
    #[serde(default = "defaults::k_max")]
    pub k_max: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

mod defaults {
    pub fn seed() -> u64 {
        42
    }
    pub fn horizon_factor() -> usize {
        super::DEFAULT_HORIZON_FACTOR
    }
    pub fn t_points() -> usize {
        101
    }
    pub fn cov_t() -> Vec<f64> {
        vec![0.2, 0.4, 0.6, 0.8, 1.0]
    }
    pub fn xi() -> Vec<f64> {
        vec![5.0, 10.0, 20.0, 40.0]
    }
    pub fn x_grid() -> Vec<f64> {
        (0..=16)
            .map(|i| -2.0 + 0.25 * i as f64)
            .filter(|x: &f64| (x.abs() - 1.0).abs() > 1e-12)
            .collect()
    }
    pub fn k_max() -> usize {
        5
    }
}

impl ExperimentConfig {
    /// A config with defaults everywhere except the required fields.
    pub fn new(n: Vec<u64>, theta: EsfParams, samples: usize) -> Self {
        Self {
            n,
            theta,
            samples,
            seed: defaults::seed(),
            horizon_factor: defaults::horizon_factor(),
            t_points: defaults::t_points(),
            cov_t: defaults::cov_t(),
            xi: defaults::xi(),
            x_grid: defaults::x_grid(),
            skew: None,
            k_max: defaults::k_max(),
            output: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn from_toml_str(s: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(s).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_toml_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<()> {
        let mut bad = Vec::new();
        if self.n.is_empty() || self.n.iter().any(|&n| n < 3) {
            bad.push("every n must be at least 3".to_string());
        }
        if self.samples == 0 {
            bad.push("samples must be at least 1".into());
        }
        if self.horizon_factor == 0 {
            bad.push("horizon_factor must be at least 1".into());
        }
        if self.t_points < 2 {
            bad.push("t_points must be at least 2".into());
        }
        let in_unit = |v: &[f64]| v.iter().all(|t| (0.0..=1.0).contains(t));
        let sorted = |v: &[f64]| v.windows(2).all(|w| w[0] < w[1]);
        if !in_unit(&self.cov_t) || !sorted(&self.cov_t) {
            bad.push("cov_t must be strictly increasing within [0, 1]".into());
        }
        if self.xi.iter().any(|&x| !(x >= 1.0)) {
            bad.push("every ξ must be at least 1".into());
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(bad.join("; ")))
        }
    }

    /// The equispaced path grid `0, 1/(p−1), …, 1`.
    pub fn t_grid(&self) -> Vec<f64> {
        let last = (self.t_points - 1) as f64;
        (0..self.t_points).map(|i| i as f64 / last).collect()
    }

    pub fn max_n(&self) -> u64 {
        self.n.iter().copied().max().unwrap_or(0)
    }
}

/// θ is written as a string (`"1/2"`) and read from a string, integer or
/// float; decimals are taken as the exact rational they spell.
mod theta_field {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::esf::EsfParams;

    pub fn serialize<S: Serializer>(p: &EsfParams, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&p.to_string())
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Float(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<EsfParams, D::Error> {
        let text = match Raw::deserialize(d)? {
            Raw::Int(i) => i.to_string(),
            Raw::Float(f) => format!("{f:?}"),
            Raw::Str(s) => s,
        };
        EsfParams::parse(&text, true).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let cfg = ExperimentConfig::from_toml_str(
            r#"
            n = [10000, 100000]
            theta = "1"
            samples = 20000
            seed = 42
            horizon_factor = 4
            t_points = 101
            cov_t = [0.2, 0.4, 0.6, 0.8, 1.0]
            xi = [5, 10, 20, 40]
            x_grid = [-2.0, -1.5, -0.5, 0.0, 0.5, 1.5, 2.0]
            skew = [20, 20]
            k_max = 5
            output = "report.json"
            "#,
        )
        .unwrap();
        assert_eq!(cfg.theta, EsfParams::ratio(1, 1).unwrap());
        assert_eq!(cfg.skew, Some((20, 20)));
        assert_eq!(cfg.t_grid().len(), 101);
    }

    #[test]
    fn theta_forms() {
        for (text, want) in [("0.5", (1, 2)), ("\"3/2\"", (3, 2)), ("2", (2, 1))] {
            let cfg =
                ExperimentConfig::from_toml_str(&format!("n = [10]\ntheta = {text}\nsamples = 1"))
                    .unwrap();
            assert_eq!(cfg.theta, EsfParams::ratio(want.0, want.1).unwrap());
        }
    }

    #[test]
    fn round_trips_through_toml() {
        let cfg = ExperimentConfig::new(vec![100], EsfParams::ratio(1, 3).unwrap(), 7);
        let back = ExperimentConfig::from_toml_str(&cfg.to_toml_string().unwrap()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn rejects_bad_values() {
        assert!(ExperimentConfig::from_toml_str("n = [10]\ntheta = 1\nsamples = 0").is_err());
        assert!(ExperimentConfig::from_toml_str(
            "n = [10]\ntheta = 1\nsamples = 5\ncov_t = [0.5, 0.2]"
        )
        .is_err());
        assert!(ExperimentConfig::from_toml_str("n = [10]\ntheta = -1\nsamples = 5").is_err());
        assert!(
            ExperimentConfig::from_toml_str("n = [10]\ntheta = 1\nsamples = 5\nbogus = 1").is_err()
        );
    }
}
