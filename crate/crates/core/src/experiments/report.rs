use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::config::ExperimentConfig;
use crate::error::Result;
use crate::esf::SpacingSample;

/// Version of the JSON and CSV layout written by [`ExperimentReport`].
pub const SCHEMA_VERSION: u32 = 1;

/// One statistic at one grid point. `x` and `y` locate it on whatever grid the
/// statistic lives on (ξ, t, s, x or k); `target` is the value it is compared
/// against, if any.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub statistic: String,
    pub n: u64,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub value: f64,
    pub target: Option<f64>,
    pub stderr: Option<f64>,
}

impl Row {
    pub fn new(statistic: &str, n: u64, value: f64) -> Self {
        Self {
            statistic: statistic.to_string(),
            n,
            x: None,
            y: None,
            value,
            target: None,
            stderr: None,
        }
    }

    pub fn at(mut self, x: f64) -> Self {
        self.x = Some(x);
        self
    }

    pub fn at2(mut self, x: f64, y: f64) -> Self {
        self.x = Some(x);
        self.y = Some(y);
        self
    }

    pub fn target(mut self, t: f64) -> Self {
        self.target = Some(t);
        self
    }

    pub fn stderr(mut self, s: f64) -> Self {
        self.stderr = Some(s);
        self
    }
}

/// A failed sample-level check, with the sample for replay.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
    pub sample: Option<SpacingSample>,
}

const CSV_HEADER: [&str; 10] = [
    "schema_version",
    "experiment",
    "theta",
    "statistic",
    "n",
    "x",
    "y",
    "value",
    "target",
    "stderr",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: u32,
    pub experiment: String,
    pub config: ExperimentConfig,
    pub wall_clock_seconds: f64,
    pub rows: Vec<Row>,
    pub failures: Vec<Failure>,
}

impl ExperimentReport {
    pub fn new(experiment: &str, config: &ExperimentConfig) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            experiment: experiment.to_string(),
            config: config.clone(),
            wall_clock_seconds: 0.0,
            rows: Vec::new(),
            failures: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Row) {
        self.rows.push(row);
    }

    /// First row with this statistic and `n`.
    pub fn get(&self, statistic: &str, n: u64) -> Option<&Row> {
        self.rows
            .iter()
            .find(|r| r.statistic == statistic && r.n == n)
    }

    /// First row with this statistic, `n` and grid location.
    pub fn get_at(&self, statistic: &str, n: u64, x: f64, y: Option<f64>) -> Option<&Row> {
        let close = |a: Option<f64>, b: f64| a.is_some_and(|a| (a - b).abs() < 1e-12);
        self.rows.iter().find(|r| {
            r.statistic == statistic
                && r.n == n
                && close(r.x, x)
                && match y {
                    Some(y) => close(r.y, y),
                    None => r.y.is_none(),
                }
        })
    }

    /// All rows with this statistic and `n`, in insertion order.
    pub fn series(&self, statistic: &str, n: u64) -> Vec<&Row> {
        self.rows
            .iter()
            .filter(|r| r.statistic == statistic && r.n == n)
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Flat table, one line per row, with the schema version and experiment
    /// name repeated in each line so files can be concatenated.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(CSV_HEADER)?;
        let theta = self.config.theta.to_string();
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            out.write_record([
                self.schema_version.to_string(),
                self.experiment.clone(),
                theta.clone(),
                r.statistic.clone(),
                r.n.to_string(),
                opt(r.x),
                opt(r.y),
                r.value.to_string(),
                opt(r.target),
                opt(r.stderr),
            ])?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("csv writer emits utf-8"))
    }

    pub fn save_json(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::esf::EsfParams;

    fn sample_report() -> ExperimentReport {
        let cfg = ExperimentConfig::new(vec![100], EsfParams::ratio(1, 2).unwrap(), 10);
        let mut r = ExperimentReport::new("demo", &cfg);
        r.push(Row::new("ks", 100, 0.1 + 0.2).stderr(1e-300));
        r.push(
            Row::new("cov", 100, std::f64::consts::PI)
                .at2(0.2, 0.4)
                .target(0.008),
        );
        r.failures.push(Failure {
            check: "x".into(),
            detail: "y".into(),
            sample: Some(SpacingSample::from_ones(6, 12, vec![1, 3, 4, 8, 10]).unwrap()),
        });
        r.wall_clock_seconds = 1.25;
        r
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let r = sample_report();
        let back = ExperimentReport::from_json(&r.to_json().unwrap()).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.rows[0].value.to_bits(), r.rows[0].value.to_bits());
    }

    #[test]
    fn csv_has_one_line_per_row() {
        let csv = sample_report().to_csv().unwrap();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[0],
            "schema_version,experiment,theta,statistic,n,x,y,value,target,stderr"
        );
        assert!(lines[2].starts_with("1,demo,1/2,cov,100,0.2,0.4,"));
    }

    #[test]
    fn lookup() {
        let r = sample_report();
        assert!(r.get_at("cov", 100, 0.2, Some(0.4)).is_some());
        assert!(r.get_at("cov", 100, 0.2, None).is_none());
        assert_eq!(r.series("ks", 100).len(), 1);
    }
}
