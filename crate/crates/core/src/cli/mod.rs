//! Command-line adapter: parses flags, calls the library, writes JSON or CSV.
//!
//! Exit codes: 0 success, 1 internal or I/O error, 2 invalid input or a
//! violated precondition, 64 unusable command line.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rug::{Float, Rational};
use serde_json::{json, Map, Value};

use crate::asym::{
    mean_asym, mellin_expansion, mellin_lhs, second_moment_asym, second_moment_asym_uncorrected,
    AsymptoticEstimate,
};
use crate::error::{Error, Result};
use crate::esf::EsfParams;
use crate::experiments::{
    clt_experiment, composition_bias_experiment, functional_experiment, inequality_suite,
    membership_experiment, ExperimentConfig, ExperimentReport, SCHEMA_VERSION,
};
use crate::perm::{big_b, brute_force_invol, invol, invol_hermite, CycleType, Permutation};
use crate::series::{
    mean_invol_all, mean_invol_real, second_moment_all, second_moment_real, Exact, Real,
    DEFAULT_PREC,
};

/// Environment variable naming the directory for outputs when `--out` is absent.
pub const OUT_DIR_ENV: &str = "INVOL_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(
    name = "invol",
    version,
    about = "Involution factorizations of Ewens random permutations"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file; defaults to $INVOL_OUT_DIR/<command>.<ext>, else stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to the logical core count.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Read decimal θ as an exact rational.
    #[arg(long, global = true)]
    pub exact: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct SigmaArgs {
    /// Compact cycle type, e.g. "1^2 2" or "5".
    #[arg(long, group = "sigma")]
    pub cycle_type: Option<String>,
    /// Count vector c_1,c_2,...
    #[arg(long, group = "sigma")]
    pub counts: Option<String>,
    /// One-line permutation, e.g. "2,1,4,3".
    #[arg(long, group = "sigma")]
    pub perm: Option<String>,
}

impl SigmaArgs {
    fn resolve(&self) -> Result<(CycleType, Option<Permutation>)> {
        match (&self.cycle_type, &self.counts, &self.perm) {
            (Some(s), _, _) => Ok((CycleType::parse_compact(s)?, None)),
            (_, Some(s), _) => Ok((CycleType::parse_counts(s)?, None)),
            (_, _, Some(s)) => {
                let p = Permutation::parse(s)?;
                Ok((p.cycle_type()?, Some(p)))
            }
            _ => Err(Error::Parse(
                "give one of --cycle-type, --counts, --perm".into(),
            )),
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ExperimentArgs {
    /// TOML config; flags given explicitly override its fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Sizes, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u64>,
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub horizon_factor: Option<usize>,
    #[arg(long)]
    pub t_points: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub cov_t: Vec<f64>,
    #[arg(long, value_delimiter = ',')]
    pub xi: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x_grid: Vec<f64>,
    /// ξ₁,ξ₂ for the typical-value bound.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    pub skew: Vec<u64>,
    #[arg(long)]
    pub k_max: Option<usize>,
}

impl ExperimentArgs {
    /// Merges the config file (if any) with explicit flags.
    pub fn resolve(&self, exact: bool) -> Result<ExperimentConfig> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::load(path)?,
            None => {
                let theta = self.theta.as_deref().unwrap_or("1");
                let n = if self.n.is_empty() {
                    vec![10_000]
                } else {
                    self.n.clone()
                };
                ExperimentConfig::new(
                    n,
                    parse_theta(theta, exact)?,
                    self.samples.unwrap_or(10_000),
                )
            }
        };
        if !self.n.is_empty() {
            cfg.n = self.n.clone();
        }
        if let Some(t) = &self.theta {
            cfg.theta = parse_theta(t, exact)?;
        }
        if let Some(s) = self.samples {
            cfg.samples = s;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        cfg.horizon_factor = self.horizon_factor.unwrap_or(cfg.horizon_factor);
        cfg.t_points = self.t_points.unwrap_or(cfg.t_points);
        cfg.k_max = self.k_max.unwrap_or(cfg.k_max);
        if !self.cov_t.is_empty() {
            cfg.cov_t = self.cov_t.clone();
        }
        if !self.xi.is_empty() {
            cfg.xi = self.xi.clone();
        }
        if !self.x_grid.is_empty() {
            cfg.x_grid = self.x_grid.clone();
        }
        match self.skew.as_slice() {
            [] => {}
            [a, b] => cfg.skew = Some((*a, *b)),
            other => return Err(Error::Parse(format!("--skew takes ξ₁,ξ₂, got {other:?}"))),
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Exact invol and B of one permutation or cycle type.
    Compute(SigmaArgs),
    /// Product formula, Hermite form and brute-force enumeration side by side.
    Oracle(SigmaArgs),
    /// Exact (rational θ) or high-precision E_n invol and E_n invol².
    Moments {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: String,
        /// Emit every size 0..=n instead of n alone.
        #[arg(long)]
        all: bool,
        /// Bits of precision for real θ.
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: u32,
    },
    /// Closed-form asymptotics, optionally against the exact moments.
    Asym {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        theta: String,
        /// Also compute the exact moments and report ratios.
        #[arg(long)]
        compare: bool,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: u32,
    },
    /// Both sides of the Mellin expansion of Σ θ^k/k · log(1 − e^{−kt}).
    Mellin {
        #[arg(long)]
        theta: String,
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.1, 0.05, 0.025, 0.0125])]
        t: Vec<f64>,
    },
    /// KS distance of standardized log invol to Φ.
    Clt(ExperimentArgs),
    /// W_n(t) against B_n(t) and the covariance grid.
    Paths(ExperimentArgs),
    /// Frequency of σ outside P_ξ, and the typical-value bound.
    Membership(ExperimentArgs),
    /// Sample-level inequality checks; all counts must be zero.
    Inequalities(ExperimentArgs),
    /// Cycle counts of a product of two uniform involutions.
    ComposeBias(ExperimentArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Compute(_) => "compute",
            Command::Oracle(_) => "oracle",
            Command::Moments { .. } => "moments",
            Command::Asym { .. } => "asym",
            Command::Mellin { .. } => "mellin",
            Command::Clt(_) => "clt",
            Command::Paths(_) => "paths",
            Command::Membership(_) => "membership",
            Command::Inequalities(_) => "inequalities",
            Command::ComposeBias(_) => "compose-bias",
        }
    }
}

/// What a command produced: a JSON document and the same content as a table.
pub struct Output {
    pub json: Value,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Output {
    fn from_report(report: &ExperimentReport) -> Result<Self> {
        Ok(Self {
            json: serde_json::to_value(report)?,
            header: Vec::new(),
            rows: Vec::new(),
        })
    }

    pub fn render(&self, format: Format, report: Option<&ExperimentReport>) -> Result<String> {
        match (format, report) {
            (Format::Json, _) => Ok(serde_json::to_string_pretty(&self.json)? + "\n"),
            (Format::Csv, Some(r)) => r.to_csv(),
            (Format::Csv, None) => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.header)?;
                for row in &self.rows {
                    w.write_record(row)?;
                }
                Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8"))
            }
        }
    }
}

/// Parses, executes and writes; returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Io(_) | Error::Json(_) | Error::Csv(_) => EXIT_INTERNAL,
        _ => EXIT_PRECONDITION,
    }
}

fn execute(cli: &Cli) -> Result<()> {
    if let Some(t) = cli.common.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Error::Config(e.to_string()))?;
    }
    let (out, report) = dispatch(&cli.command, cli.common.exact)?;
    let text = out.render(cli.common.format, report.as_ref())?;
    let ext = match cli.common.format {
        Format::Json => "json",
        Format::Csv => "csv",
    };
    let target = cli.common.out.clone().or_else(|| {
        std::env::var_os(OUT_DIR_ENV)
            .map(|d| Path::new(&d).join(format!("{}.{ext}", cli.command.name())))
    });
    match target {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs a command without writing anything; experiments also return their report.
pub fn dispatch(command: &Command, exact: bool) -> Result<(Output, Option<ExperimentReport>)> {
    let name = command.name();
    let experiment =
        |args: &ExperimentArgs, f: &dyn Fn(&ExperimentConfig) -> Result<ExperimentReport>| {
            let cfg = args.resolve(exact)?;
            let report = f(&cfg)?;
            Ok((Output::from_report(&report)?, Some(report)))
        };
    match command {
        Command::Compute(sigma) => Ok((compute(name, sigma)?, None)),
        Command::Oracle(sigma) => Ok((oracle(name, sigma)?, None)),
        Command::Moments {
            n,
            theta,
            all,
            prec,
        } => Ok((
            moments(name, *n, &parse_theta(theta, exact)?, *all, *prec)?,
            None,
        )),
        Command::Asym {
            n,
            theta,
            compare,
            prec,
        } => Ok((
            asym(name, *n, &parse_theta(theta, exact)?, *compare, *prec)?,
            None,
        )),
        Command::Mellin { theta, t } => Ok((mellin(name, &parse_theta(theta, exact)?, t)?, None)),
        Command::Clt(a) => experiment(a, &clt_experiment),
        Command::Paths(a) => experiment(a, &functional_experiment),
        Command::Membership(a) => experiment(a, &|cfg| membership_experiment(cfg, &cfg.xi)),
        Command::Inequalities(a) => experiment(a, &inequality_suite),
        Command::ComposeBias(a) => experiment(a, &composition_bias_experiment),
    }
}

fn parse_theta(s: &str, exact: bool) -> Result<EsfParams> {
    EsfParams::parse(s, exact)
}

fn envelope(command: &str, config: Value) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("config".into(), config);
    m
}

/// An exact rational as a JSON number when integral, else as `"p/q"`.
fn rational_json(q: &Rational) -> Value {
    if *q.denom() == 1 {
        Value::Number(q.numer().to_string().parse().expect("integer literal"))
    } else {
        Value::String(q.to_string())
    }
}

fn integer_json(i: &rug::Integer) -> Value {
    Value::Number(i.to_string().parse().expect("integer literal"))
}

fn float_string(f: &Float) -> String {
    f.to_string_radix(10, Some(30))
}

fn sigma_config(c: &CycleType, p: &Option<Permutation>) -> Value {
    json!({
        "n": c.n(),
        "cycle_type": c.to_string(),
        "perm": p.as_ref().map(|p| p.to_string()),
    })
}

fn compute(name: &str, sigma: &SigmaArgs) -> Result<Output> {
    let (c, p) = sigma.resolve()?;
    let (i, b) = (invol(&c), big_b(&c));
    let mut m = envelope(name, sigma_config(&c, &p));
    m.insert("invol".into(), integer_json(&i));
    m.insert("B".into(), integer_json(&b));
    Ok(Output {
        json: Value::Object(m),
        header: vec!["cycle_type".into(), "invol".into(), "B".into()],
        rows: vec![vec![c.to_string(), i.to_string(), b.to_string()]],
    })
}

fn oracle(name: &str, sigma: &SigmaArgs) -> Result<Output> {
    let (c, p) = sigma.resolve()?;
    let rep = match &p {
        Some(p) => p.clone(),
        None => representative(&c),
    };
    let brute = brute_force_invol(&rep)?;
    let (product, hermite) = (invol(&c), invol_hermite(&c));
    let agree = product == hermite && hermite == brute;
    let mut m = envelope(name, sigma_config(&c, &p));
    m.insert("invol".into(), integer_json(&product));
    m.insert("invol_hermite".into(), integer_json(&hermite));
    m.insert("brute_force".into(), integer_json(&brute));
    m.insert("agree".into(), json!(agree));
    Ok(Output {
        json: Value::Object(m),
        header: [
            "cycle_type",
            "invol",
            "invol_hermite",
            "brute_force",
            "agree",
        ]
        .map(String::from)
        .to_vec(),
        rows: vec![vec![
            c.to_string(),
            product.to_string(),
            hermite.to_string(),
            brute.to_string(),
            agree.to_string(),
        ]],
    })
}

/// A permutation with cycles `(1 … k₁)(k₁+1 …)…` of the given type.
pub fn representative(c: &CycleType) -> Permutation {
    let mut image = Vec::with_capacity(c.n());
    for (k, m) in c.iter() {
        for _ in 0..m {
            let base = image.len();
            image.extend((0..k).map(|i| base + (i + 1) % k));
        }
    }
    Permutation::from_zero_based(image).expect("cycles partition [n]")
}

fn moments(name: &str, n: usize, params: &EsfParams, all: bool, prec: u32) -> Result<Output> {
    let config =
        json!({ "n": n, "theta": params.to_string(), "exact": params.is_exact(), "prec": prec });
    let sizes: Vec<usize> = if all { (0..=n).collect() } else { vec![n] };
    let (means, seconds): (Vec<Value>, Vec<Value>) = if params.is_exact() {
        let m = mean_invol_all(&Exact, params, n)?;
        let s = second_moment_all(&Exact, params, n)?;
        sizes
            .iter()
            .map(|&k| (rational_json(&m[k]), rational_json(&s[k])))
            .unzip()
    } else {
        let dom = Real::new(prec)?;
        let m = mean_invol_all(&dom, params, n)?;
        let s = second_moment_all(&dom, params, n)?;
        sizes
            .iter()
            .map(|&k| (json!(float_string(&m[k])), json!(float_string(&s[k]))))
            .unzip()
    };
    let plain = |v: &Value| match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    let rows = sizes
        .iter()
        .zip(means.iter().zip(&seconds))
        .map(|(k, (m, s))| vec![k.to_string(), plain(m), plain(s)])
        .collect();
    let mut m = envelope(name, config);
    if all {
        let table: Vec<Value> = sizes
            .iter()
            .zip(means.iter().zip(&seconds))
            .map(|(k, (m, s))| json!({ "n": k, "mean": m, "second_moment": s }))
            .collect();
        m.insert("moments".into(), Value::Array(table));
    } else {
        m.insert("mean".into(), means[0].clone());
        m.insert("second_moment".into(), seconds[0].clone());
    }
    Ok(Output {
        json: Value::Object(m),
        header: ["n", "mean", "second_moment"].map(String::from).to_vec(),
        rows,
    })
}

fn estimate_json(e: &AsymptoticEstimate) -> Value {
    json!({
        "ln_value": e.ln_value,
        "error_exponent": e.claimed_error_exponent.to_string(),
        "regime": e.regime,
        "growth": e.regime.growth(),
    })
}

fn asym(name: &str, n: u64, params: &EsfParams, compare: bool, prec: u32) -> Result<Output> {
    let theta = params.theta();
    let config = json!({ "n": n, "theta": params.to_string(), "compare": compare, "prec": prec });
    let mean = mean_asym(n, theta)?;
    let second = second_moment_asym(n, theta)?;
    let uncorrected = second_moment_asym_uncorrected(n, theta)?;
    let mut rows = vec![
        vec!["mean".to_string(), mean.ln_value.to_string(), String::new()],
        vec![
            "second_moment".to_string(),
            second.ln_value.to_string(),
            String::new(),
        ],
        vec![
            "second_moment_uncorrected".to_string(),
            uncorrected.ln_value.to_string(),
            String::new(),
        ],
    ];
    let mut m = envelope(name, config);
    m.insert("mean".into(), estimate_json(&mean));
    m.insert("second_moment".into(), estimate_json(&second));
    m.insert(
        "second_moment_uncorrected".into(),
        estimate_json(&uncorrected),
    );
    if compare {
        let exact_mean = mean_invol_real(n as usize, params, prec)?;
        let exact_second = second_moment_real(n as usize, params, prec)?;
        let ratios = [
            mean.ratio(&exact_mean),
            second.ratio(&exact_second),
            uncorrected.ratio(&exact_second),
        ];
        let logs = [
            mean.log_ratio(&exact_mean),
            second.log_ratio(&exact_second),
            uncorrected.log_ratio(&exact_second),
        ];
        for ((row, r), l) in rows.iter_mut().zip(ratios).zip(logs) {
            row[2] = r.to_string();
            let key = row[0].clone();
            m[&key]["exact_over_asym"] = json!(r);
            m[&key]["log_ratio"] = json!(l);
        }
        m.insert("exact_mean".into(), json!(float_string(&exact_mean)));
        m.insert(
            "exact_second_moment".into(),
            json!(float_string(&exact_second)),
        );
    }
    Ok(Output {
        json: Value::Object(m),
        header: ["quantity", "ln_value", "exact_over_asym"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

fn mellin(name: &str, params: &EsfParams, ts: &[f64]) -> Result<Output> {
    let theta = params.theta();
    let mut m = envelope(name, json!({ "theta": params.to_string(), "t": ts }));
    let mut table = Vec::new();
    let mut rows = Vec::new();
    for &t in ts {
        let (lhs, rhs) = (mellin_lhs(t, theta)?, mellin_expansion(t, theta)?);
        let diff = lhs - rhs;
        table.push(json!({ "t": t, "lhs": lhs, "expansion": rhs, "difference": diff, "difference_over_t": diff / t }));
        rows.push(
            [t, lhs, rhs, diff, diff / t]
                .map(|v| v.to_string())
                .to_vec(),
        );
    }
    m.insert("rows".into(), Value::Array(table));
    Ok(Output {
        json: Value::Object(m),
        header: ["t", "lhs", "expansion", "difference", "difference_over_t"]
            .map(String::from)
            .to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("invol").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn representative_has_type() {
        let c = CycleType::parse_compact("1^2 3 4^2").unwrap();
        assert_eq!(representative(&c).cycle_type().unwrap(), c);
    }

    #[test]
    fn n_cycle() {
        let cli = parse(&["compute", "--cycle-type", "5"]);
        let (out, _) = dispatch(&cli.command, false).unwrap();
        assert_eq!(out.json["invol"], json!(5));
        assert_eq!(out.json["B"], json!(5));
        assert_eq!(out.json["schema_version"], json!(SCHEMA_VERSION));
    }

    #[test]
    fn moments_s2() {
        let cli = parse(&["moments", "--n", "2", "--theta", "1"]);
        let (out, _) = dispatch(&cli.command, false).unwrap();
        assert_eq!(out.json["mean"], json!(2));
        assert_eq!(out.json["second_moment"], json!(4));
        let cli = parse(&["moments", "--n", "3", "--theta", "1"]);
        assert_eq!(
            dispatch(&cli.command, false).unwrap().0.json["mean"],
            json!("8/3")
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["invol", "--bogus"]), EXIT_USAGE);
        assert_eq!(
            run(["invol", "compute", "--cycle-type", "x"]),
            EXIT_PRECONDITION
        );
        let code = run([
            "invol",
            "membership",
            "--n",
            "100",
            "--samples",
            "5",
            "--skew",
            "5,20",
        ]);
        assert_eq!(code, EXIT_PRECONDITION);
        assert_eq!(run(["invol", "--help"]), EXIT_OK);
    }

    #[test]
    fn flags_override_config_file() {
        let dir = std::env::temp_dir().join(format!("invol-cli-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.toml");
        std::fs::write(
            &path,
            "n = [100]\ntheta = \"1/2\"\nsamples = 50\nseed = 3\n",
        )
        .unwrap();
        let args = ExperimentArgs {
            config: Some(path),
            n: vec![],
            theta: None,
            samples: Some(70),
            seed: None,
            horizon_factor: None,
            t_points: None,
            cov_t: vec![],
            xi: vec![],
            x_grid: vec![],
            skew: vec![],
            k_max: None,
        };
        let cfg = args.resolve(false).unwrap();
        assert_eq!((cfg.samples, cfg.seed, cfg.n.clone()), (70, 3, vec![100]));
        assert_eq!(cfg.theta, EsfParams::ratio(1, 2).unwrap());
        assert_eq!(cfg.horizon_factor, crate::esf::DEFAULT_HORIZON_FACTOR);
    }
}
