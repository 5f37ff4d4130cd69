use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::color::Color;
use crate::sampling::chain::transition_distribution;
use crate::words::{step_of, Word};

/// Optional pruning beyond the always-on quadrant abort. Aborting on a
/// quadrant exit never changes the conditional law because an exited walk
/// can never rejoin `W_n`; the extra prunes are equivalent for the same
/// reason (they only cut walks that cannot complete).
#[derive(Clone, Copy, Debug, Default)]
pub struct PruneOpts {
    /// Abort as soon as a letter count exceeds `n` or the remaining steps
    /// cannot bring the walk home.
    pub feasibility: bool,
}

#[derive(Clone, Debug)]
pub struct RejectionSample {
    pub word: Word,
    pub trials: u64,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RejectionError {
    #[error("budget of {budget} trials exhausted at n = {n}")]
    BudgetExhausted { n: usize, budget: u64 },
}

/// Runs the `w_1 = g` chain until a trial stays in the quadrant and returns
/// to the origin; accepted words are exactly uniform on `W_n`.
pub fn rejection_sample(
    n: usize,
    rng: &mut ChaCha8Rng,
    budget: u64,
    prune: PruneOpts,
) -> Result<RejectionSample, RejectionError> {
    for trial in 1..=budget {
        if let Some(word) = one_trial(n, rng, prune) {
            return Ok(RejectionSample { word, trials: trial });
        }
    }
    Err(RejectionError::BudgetExhausted { n, budget })
}

/// One chain trial with early abort; `None` on rejection.
pub(crate) fn one_trial(n: usize, rng: &mut ChaCha8Rng, prune: PruneOpts) -> Option<Word> {
    let total = 3 * n;
    let mut letters = Vec::with_capacity(total);
    let mut cur = Color::G;
    let (mut l, mut r) = (0i64, 1i64);
    letters.push(cur);
    let mut counts = [0usize; 3];
    counts[Color::G as usize] = 1;
    for step in 1..total {
        let mut q = rng.gen_range(0u8..4);
        let mut next = Color::B;
        for (c, w) in transition_distribution(cur) {
            if q < w {
                next = c;
                break;
            }
            q -= w;
        }
        let (dl, dr) = step_of(next);
        l += dl;
        r += dr;
        if l < 0 || r < 0 {
            return None;
        }
        counts[next as usize] += 1;
        if prune.feasibility {
            if counts[next as usize] > n {
                return None;
            }
            let left = (total - step - 1) as i64;
            if l + r > left {
                return None;
            }
        }
        letters.push(next);
        cur = next;
    }
    (l == 0 && r == 0).then(|| Word::finite(letters))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::SeedSpec;
    use crate::words::validate_wn;

    #[test]
    fn accepted_words_are_members() {
        let seed = SeedSpec::new(42);
        for sub in 0..10 {
            let mut rng = seed.stream(sub);
            let s = rejection_sample(3, &mut rng, 1_000_000, PruneOpts::default()).unwrap();
            assert!(validate_wn(&s.word).is_member());
        }
    }

    #[test]
    fn feasibility_prune_preserves_law() {
        // Same stream, both prune settings: the accepted word may be reached
        // after different trial counts, but each accepted word is in W_n.
        let seed = SeedSpec::new(9);
        let mut rng = seed.stream(0);
        let a = rejection_sample(2, &mut rng, 100_000, PruneOpts { feasibility: true }).unwrap();
        assert!(validate_wn(&a.word).is_member());
    }

    #[test]
    fn tiny_budget_fails_at_large_n() {
        let seed = SeedSpec::new(1);
        let mut rng = seed.stream(0);
        let res = rejection_sample(20, &mut rng, 1, PruneOpts::default());
        assert!(matches!(res, Err(RejectionError::BudgetExhausted { .. })));
    }
}
