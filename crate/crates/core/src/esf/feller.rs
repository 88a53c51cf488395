use std::collections::BTreeMap;

use rand::Rng;
use rug::{Integer, Rational};
use serde::{Deserialize, Serialize};

use super::{EsfParams, RngSeed};
use crate::error::{Error, Result};
use crate::perm::{CycleCounts, CycleType};

/// Default horizon `M = 4n` for the truncated limiting process `Z₀`.
pub const DEFAULT_HORIZON_FACTOR: usize = 4;

/// Largest `n` for which [`exact_feller_distribution`] enumerates all
/// `2^{n−1}` Bernoulli patterns.
pub const EXACT_FELLER_CAP: usize = 12;

/// One realization of the Feller coupling up to a finite horizon.
///
/// `ones` lists the positions `j ≤ horizon` with `β_j = 1`; `β₁ = 1` always.
/// `C⁽ⁿ⁾` counts spacings in `1β₂⋯β_n1` and `Z₀` counts spacings in
/// `β₁β₂⋯β_M`, dropping the spacing still open at `M`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpacingRepr", into = "SpacingRepr")]
pub struct SpacingSample {
    n: usize,
    horizon: usize,
    ones: Vec<usize>,
    c: CycleCounts,
    z: CycleCounts,
}

#[derive(Serialize, Deserialize)]
struct SpacingRepr {
    n: usize,
    horizon: usize,
    ones: Vec<usize>,
}

impl TryFrom<SpacingRepr> for SpacingSample {
    type Error = Error;
    fn try_from(r: SpacingRepr) -> Result<Self> {
        SpacingSample::from_ones(r.n, r.horizon, r.ones)
    }
}

impl From<SpacingSample> for SpacingRepr {
    fn from(s: SpacingSample) -> Self {
        SpacingRepr {
            n: s.n,
            horizon: s.horizon,
            ones: s.ones,
        }
    }
}

impl SpacingSample {
    /// Builds a sample from the success positions. Positions past `horizon`
    /// are ignored, which lets one long Bernoulli run serve several `n`.
    pub fn from_ones(n: usize, horizon: usize, mut ones: Vec<usize>) -> Result<Self> {
        let bad = |msg: String| Err(Error::domain(msg));
        if n == 0 || horizon < n {
            return bad(format!(
                "need 1 ≤ n ≤ horizon, got n = {n}, horizon = {horizon}"
            ));
        }
        if ones.first() != Some(&1) {
            return bad("β₁ = 1 is forced; ones must start at position 1".into());
        }
        if ones.windows(2).any(|w| w[0] >= w[1]) {
            return bad("success positions must be strictly increasing".into());
        }
        let keep = ones.partition_point(|&j| j <= horizon);
        ones.truncate(keep);

        let in_window = ones.partition_point(|&j| j <= n);
        let mut c = spacings(&ones[..in_window]);
        c.add(n + 1 - ones[in_window - 1], 1);
        let z = spacings(&ones);
        Ok(Self {
            n,
            horizon,
            ones,
            c,
            z,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn ones(&self) -> &[usize] {
        &self.ones
    }

    /// Cycle counts `C⁽ⁿ⁾`, distributed as `ESF(θ)`.
    pub fn c(&self) -> &CycleCounts {
        &self.c
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.n, self.c.clone()).expect("window spacings sum to n")
    }

    /// `Z₀` truncated at the horizon.
    pub fn z(&self) -> &CycleCounts {
        &self.z
    }

    /// `Z_n`: spacings that start after position `n`.
    pub fn z_tail(&self) -> CycleCounts {
        let from = self.ones.partition_point(|&j| j <= self.n);
        spacings(&self.ones[from..])
    }

    /// `L_n = min{j ≥ 1 : β_{n−j+1} = 1}`.
    pub fn l_n(&self) -> usize {
        let last = self.ones[self.ones.partition_point(|&j| j <= self.n) - 1];
        self.n - last + 1
    }

    /// `R_n = min{j ≥ 1 : β_{n+j} = 1}`, or `None` if no success occurs
    /// before the horizon.
    pub fn r_n(&self) -> Option<usize> {
        self.ones
            .get(self.ones.partition_point(|&j| j <= self.n))
            .map(|&j| j - self.n)
    }

    /// Lengths `k ≤ n` at which
    /// `Z_{k,0} − Z_{k,n} − 1{L_n+R_n = k+1} ≤ c_k ≤ Z_{k,0} + 1{L_n = k}` fails.
    /// Empty for every valid sample.
    pub fn sandwich_violations(&self) -> Vec<usize> {
        let tail = self.z_tail();
        let l = self.l_n();
        let straddle = self.r_n().map(|r| l + r - 1);
        let mut ks: Vec<usize> = self
            .c
            .iter()
            .chain(self.z.iter())
            .map(|(k, _)| k)
            .chain([l])
            .chain(straddle)
            .filter(|&k| k <= self.n)
            .collect();
        ks.sort_unstable();
        ks.dedup();
        ks.into_iter()
            .filter(|&k| {
                let ck = self.c.get(k) as i64;
                let z0 = self.z.get(k) as i64;
                let lower = z0 - tail.get(k) as i64 - i64::from(straddle == Some(k));
                let upper = z0 + i64::from(l == k);
                !(lower <= ck && ck <= upper)
            })
            .collect()
    }
}

fn spacings(ones: &[usize]) -> CycleCounts {
    let mut out = CycleCounts::new();
    for w in ones.windows(2) {
        out.add(w[1] - w[0], 1);
    }
    out
}

/// Success positions of `β₁β₂⋯β_M` with `P(β_j = 1) = θ/(θ+j−1)`.
///
/// Thinning: from position `i` the next candidate is a geometric skip under
/// the dominating rate `θ/(θ+i)`, kept with probability `(θ+i)/(θ+j−1)`.
/// Cost is proportional to the number of candidates, about `θ log M`.
pub fn feller_ones<R: Rng + ?Sized>(theta: f64, horizon: usize, rng: &mut R) -> Vec<usize> {
    let mut ones = vec![1];
    let mut i = 1usize;
    loop {
        let p = theta / (theta + i as f64);
        let u = 1.0 - rng.random::<f64>();
        let skip = (u.ln() / (-p).ln_1p()).floor();
        if !(skip < (horizon - i) as f64) {
            break;
        }
        let j = i + 1 + skip as usize;
        let keep = (theta + i as f64) / (theta + (j - 1) as f64);
        if rng.random::<f64>() < keep {
            ones.push(j);
        }
        i = j;
    }
    ones
}

/// Reusable sampler for a fixed `(n, θ, M)`.
#[derive(Clone, Debug)]
pub struct FellerSampler {
    n: usize,
    horizon: usize,
    theta: f64,
}

impl FellerSampler {
    pub fn new(n: usize, params: &EsfParams, horizon_factor: usize) -> Result<Self> {
        if n == 0 || horizon_factor == 0 {
            return Err(Error::domain("need n ≥ 1 and horizon_factor ≥ 1"));
        }
        let horizon = n
            .checked_mul(horizon_factor)
            .ok_or_else(|| Error::domain("horizon overflows"))?;
        Ok(Self {
            n,
            horizon,
            theta: params.theta(),
        })
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> SpacingSample {
        let ones = feller_ones(self.theta, self.horizon, rng);
        SpacingSample::from_ones(self.n, self.horizon, ones).expect("sampler output is valid")
    }
}

pub fn feller_sample(
    n: usize,
    params: &EsfParams,
    horizon_factor: usize,
    seed: RngSeed,
) -> Result<SpacingSample> {
    Ok(FellerSampler::new(n, params, horizon_factor)?.sample(&mut seed.rng()))
}

/// Per-index sampler that decides each `β_j` by an exact rational comparison
/// of a uniform 64-bit integer against `2^64·θ/(θ+j−1)`. Slow; meant for
/// exactness tests with rational θ.
pub fn feller_sample_exact(
    n: usize,
    params: &EsfParams,
    horizon_factor: usize,
    seed: RngSeed,
) -> Result<SpacingSample> {
    let theta = params.theta_exact()?;
    let horizon = FellerSampler::new(n, params, horizon_factor)?.horizon;
    let scale = Integer::from(1) << 64;
    let mut rng = seed.rng();
    let mut ones = vec![1];
    for j in 2..=horizon {
        let u = Integer::from(rng.random::<u64>());
        let p = theta / Rational::from(theta + Integer::from(j - 1));
        if u < p * &scale {
            ones.push(j);
        }
    }
    SpacingSample::from_ones(n, horizon, ones)
}

/// The law of `C⁽ⁿ⁾` by enumerating every `β₂⋯β_n`.
pub fn exact_feller_distribution(
    n: usize,
    params: &EsfParams,
) -> Result<BTreeMap<CycleType, Rational>> {
    if n == 0 {
        return Err(Error::domain("n must be positive"));
    }
    if n > EXACT_FELLER_CAP {
        return Err(Error::TooLarge {
            n,
            cap: EXACT_FELLER_CAP,
            hint: "the enumeration visits 2^(n-1) Bernoulli patterns",
        });
    }
    let theta = params.theta_exact()?;
    let p: Vec<Rational> = (2..=n)
        .map(|j| theta / Rational::from(theta + Integer::from(j - 1)))
        .collect();
    let mut law = BTreeMap::new();
    for mask in 0u32..(1 << (n - 1)) {
        let mut prob = Rational::from(1);
        let mut ones = vec![1];
        for (bit, pj) in p.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                prob *= pj;
                ones.push(bit + 2);
            } else {
                prob *= Rational::from(1 - pj);
            }
        }
        let sample = SpacingSample::from_ones(n, n, ones)?;
        *law.entry(sample.cycle_type()).or_insert_with(Rational::new) += prob;
    }
    Ok(law)
}
