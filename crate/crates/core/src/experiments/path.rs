use serde::{Deserialize, Serialize};

use crate::esf::SpacingSample;
use crate::perm::{ln_v_factor, CycleCounts};

/// `W_n(t)` and its coupled counterpart `B_n(t)` on a grid of `t` values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathSample {
    pub t: Vec<f64>,
    /// Centered, scaled `log invol_{⌊n^t⌋}(C⁽ⁿ⁾)`.
    pub w: Vec<f64>,
    /// Centered, scaled `log B_{⌊n^t⌋}(Z₀)`.
    pub b: Vec<f64>,
}

impl PathSample {
    pub fn sup_distance(&self) -> f64 {
        self.w
            .iter()
            .zip(&self.b)
            .map(|(w, b)| (w - b).abs())
            .fold(0.0, f64::max)
    }
}

/// `⌊n^t⌋`, with a small allowance so that `t = 1` gives `n`.
pub fn grid_cutoff(n: usize, t: f64) -> usize {
    ((n as f64).powf(t) + 1e-9).floor() as usize
}

/// Evaluates both paths at each `t` of a nondecreasing grid in `[0, 1]`.
pub fn log_invol_prefix(sample: &SpacingSample, t_grid: &[f64], theta: f64) -> PathSample {
    let n = sample.n();
    let l = (n as f64).ln();
    let scale = (theta / 3.0 * l * l * l).sqrt();
    let center = |t: f64| theta * t * t / 2.0 * l * l;
    let cutoffs: Vec<usize> = t_grid.iter().map(|&t| grid_cutoff(n, t)).collect();
    let w = prefix_sums(sample.c(), &cutoffs, true);
    let b = prefix_sums(sample.z(), &cutoffs, false);
    let standardize = |v: Vec<f64>| -> Vec<f64> {
        v.into_iter()
            .zip(t_grid)
            .map(|(x, &t)| (x - center(t)) / scale)
            .collect()
    };
    PathSample {
        t: t_grid.to_vec(),
        w: standardize(w),
        b: standardize(b),
    }
}

/// `Σ_{k ≤ cut} c_k log k (+ log V_{c_k}(k))` at each nondecreasing cutoff.
fn prefix_sums(counts: &CycleCounts, cutoffs: &[usize], with_v: bool) -> Vec<f64> {
    let mut entries = counts.iter().peekable();
    let mut acc = 0.0;
    cutoffs
        .iter()
        .map(|&cut| {
            while let Some(&(k, m)) = entries.peek() {
                if k > cut {
                    break;
                }
                acc += m as f64 * (k as f64).ln();
                if with_v {
                    acc += ln_v_factor(m, k);
                }
                entries.next();
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asym::asymptotic_normalizers;
    use crate::perm::ln_invol;

    fn fixture() -> SpacingSample {
        // C = 1² 2 6, Z₀ = 1² 2
        SpacingSample::from_ones(10, 40, vec![1, 2, 3, 5]).unwrap()
    }

    #[test]
    fn hand_computed_endpoint() {
        let p = log_invol_prefix(&fixture(), &[0.0, 0.5, 1.0], 1.0);
        // invol(1² 2 6) = 2 · 2 · 6
        assert!((p.w[2] - 0.261_296_772_171_650_4).abs() < 1e-12);
        assert!((p.b[2] + 0.970_523_005_221_788_2).abs() < 1e-12);
    }

    #[test]
    fn endpoint_is_standardized_log_invol() {
        let s = fixture();
        let p = log_invol_prefix(&s, &[1.0], 1.0);
        let norm = asymptotic_normalizers(10, 1.0).unwrap();
        assert!((p.w[0] - norm.standardize(ln_invol(s.c(), 10))).abs() < 1e-12);
    }

    #[test]
    fn start_only_sees_fixed_points() {
        let s = fixture();
        let p = log_invol_prefix(&s, &[0.0], 1.0);
        let l = 10f64.ln();
        let expected = ln_v_factor(2, 1) / (l * l * l / 3.0).sqrt();
        assert!((p.w[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn cutoffs() {
        assert_eq!(grid_cutoff(1000, 1.0), 1000);
        assert_eq!(grid_cutoff(1000, 0.0), 1);
        assert_eq!(grid_cutoff(1_000_000, 0.5), 1000);
    }
}
