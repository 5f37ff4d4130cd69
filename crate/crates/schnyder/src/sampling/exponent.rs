use rayon::prelude::*;
use serde::Serialize;

use crate::sampling::rejection::{one_trial, PruneOpts};
use crate::sampling::SeedSpec;

/// Estimate of `P[Z^{b,n} in W_n]` with a Wilson confidence interval.
#[derive(Clone, Debug, Serialize)]
pub struct ExponentEstimate {
    pub n: usize,
    pub trials: u64,
    pub hits: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

const TRIALS_PER_SUBSTREAM: u64 = 1 << 14;

/// Unbiased early-abort estimator of the acceptance probability. A trial
/// that leaves the quadrant counts as a miss, which is exact because an
/// exited walk cannot be in `W_n`. Trials are partitioned into fixed-size
/// substream chunks, so the result does not depend on the worker count.
pub fn acceptance_probability_estimate(
    n: usize,
    trials: u64,
    seed: &SeedSpec,
) -> ExponentEstimate {
    let chunks = trials.div_ceil(TRIALS_PER_SUBSTREAM);
    let hits: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = seed.stream(chunk);
            let lo = chunk * TRIALS_PER_SUBSTREAM;
            let hi = ((chunk + 1) * TRIALS_PER_SUBSTREAM).min(trials);
            let mut hits = 0u64;
            for _ in lo..hi {
                if one_trial(n, &mut rng, PruneOpts::default()).is_some() {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    let (estimate, ci_low, ci_high) = wilson(hits, trials, 1.959964);
    ExponentEstimate { n, trials, hits, estimate, ci_low, ci_high }
}

/// Wilson score interval for a binomial proportion.
pub(crate) fn wilson(hits: u64, trials: u64, z: f64) -> (f64, f64, f64) {
    if trials == 0 {
        return (f64::NAN, 0.0, 1.0);
    }
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    (p, (center - half).max(0.0), (center + half).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_acceptance_is_one_eighth() {
        // P(W_1) = |W_1| * 2/16 = 1/8 exactly.
        let seed = SeedSpec::new(31);
        let est = acceptance_probability_estimate(1, 200_000, &seed);
        assert!((est.estimate - 0.125).abs() < 0.003, "{}", est.estimate);
        assert!(est.ci_low < 0.125 && 0.125 < est.ci_high);
    }

    #[test]
    fn deterministic_across_runs() {
        let seed = SeedSpec::new(8);
        let a = acceptance_probability_estimate(4, 100_000, &seed);
        let b = acceptance_probability_estimate(4, 100_000, &seed);
        assert_eq!(a.hits, b.hits);
    }
}
