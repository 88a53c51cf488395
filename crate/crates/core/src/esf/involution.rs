use rand::Rng;

use super::RngSeed;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Uniform sampler over the involutions of `[n]`.
///
/// The largest unassigned element is fixed with probability `t_{m−1}/t_m`
/// (`m` elements left) and otherwise paired with a uniform partner. The
/// ratios satisfy `q_m = 1/(1 + (m−1)q_{m−1})`, which stays in `f64` range
/// long after `t_m` itself does not.
#[derive(Clone, Debug)]
pub struct InvolutionSampler {
    q: Vec<f64>,
}

impl InvolutionSampler {
    pub fn new(n: usize) -> Self {
        let mut q = vec![1.0; n + 1];
        for m in 2..=n {
            q[m] = 1.0 / (1.0 + (m - 1) as f64 * q[m - 1]);
        }
        Self { q }
    }

    pub fn n(&self) -> usize {
        self.q.len() - 1
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let n = self.n();
        let mut image: Vec<usize> = (0..n).collect();
        let mut free: Vec<usize> = (0..n).collect();
        while let Some(x) = free.pop() {
            let m = free.len() + 1;
            if rng.random::<f64>() < self.q[m] {
                continue;
            }
            let y = free.swap_remove(rng.random_range(0..free.len()));
            image[x] = y;
            image[y] = x;
        }
        Permutation::from_zero_based(image).expect("pairing is a bijection")
    }
}

pub fn sample_uniform_involution(n: usize, seed: RngSeed) -> Permutation {
    InvolutionSampler::new(n).sample(&mut seed.rng())
}

/// `b ∘ a`: apply `a` first.
pub fn compose_involutions(a: &Permutation, b: &Permutation) -> Result<Permutation> {
    for (name, p) in [("a", a), ("b", b)] {
        if !p.is_involution() {
            return Err(Error::NotInvolution(format!("{name} = {p}")));
        }
    }
    b.after(a)
}
