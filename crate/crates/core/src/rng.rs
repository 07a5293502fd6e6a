//! Seeded, thread-count independent Monte Carlo plumbing.
//!
//! Trials are cut into fixed-size blocks; block `b` draws from the ChaCha8
//! stream `b` of the generator seeded with `seed`. Blocks run in parallel and
//! their hit counts are summed, so results depend only on `(seed, trials)`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub(crate) const BLOCK_TRIALS: u64 = 4096;

pub(crate) fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

/// Runs `trials` Bernoulli trials and returns the number of hits. `trial`
/// receives the block generator and a per-block scratch value from `init`.
pub(crate) fn count_hits<S, I, F>(trials: u64, seed: u64, init: I, trial: F) -> u64
where
    I: Fn() -> S + Sync,
    F: Fn(&mut ChaCha8Rng, &mut S) -> bool + Sync,
{
    let blocks = trials.div_ceil(BLOCK_TRIALS);
    (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = block_rng(seed, b);
            let mut scratch = init();
            let n = BLOCK_TRIALS.min(trials - b * BLOCK_TRIALS);
            (0..n).filter(|_| trial(&mut rng, &mut scratch)).count() as u64
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn independent_of_thread_count() {
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| count_hits(20_000, 7, || (), |rng, _| rng.random::<f64>() < 0.3))
        };
        let one = run(1);
        assert_eq!(one, run(4));
        assert!((one as f64 / 20_000.0 - 0.3).abs() < 0.02);
    }

    #[test]
    fn streams_differ() {
        let a: u64 = block_rng(1, 0).random();
        let b: u64 = block_rng(1, 1).random();
        assert_ne!(a, b);
        assert_eq!(a, block_rng(1, 0).random::<u64>());
    }
}
