use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::esf::RngSeed;

/// Samples per random stream. Fixed, so results do not depend on the number
/// of worker threads.
pub const CHUNK: usize = 512;

/// Runs `f` once per sample. Sample `i` draws from stream `i / CHUNK` of
/// `seed`, and results come back in sample order.
pub fn par_samples<T, F>(samples: usize, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng) -> T + Sync,
{
    let chunks = samples.div_ceil(CHUNK);
    let parts: Vec<Vec<T>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = RngSeed::new(seed).with_stream(c as u64).rng();
            let len = CHUNK.min(samples - c * CHUNK);
            (0..len).map(|_| f(&mut rng)).collect()
        })
        .collect();
    parts.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use rand::Rng;

    use super::*;

    #[test]
    fn independent_of_thread_count() {
        let draw = |r: &mut ChaCha8Rng| r.random::<u64>();
        let one = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let four = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap();
        let a = one.install(|| par_samples(2000, 9, draw));
        let b = four.install(|| par_samples(2000, 9, draw));
        assert_eq!(a.len(), 2000);
        assert_eq!(a, b);
        assert_ne!(a, par_samples(2000, 10, draw));
    }
}
