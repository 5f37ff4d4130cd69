use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::color::Color;
use crate::sampling::SeedSpec;
use crate::words::Word;

/// Transition probabilities of the letter chain, in quarters. Rows:
/// from b: (b 1/2, r 1/4, g 1/4); from r: (r 1/2, g 1/2); from g: as from b.
/// The r -> b entry is zero.
pub fn transition_distribution(from: Color) -> [(Color, u8); 3] {
    match from {
        Color::B | Color::G => [(Color::B, 2), (Color::R, 1), (Color::G, 1)],
        Color::R => [(Color::B, 0), (Color::R, 2), (Color::G, 2)],
    }
}

/// The reversed chain (the transpose; the stationary law is uniform).
pub fn backward_transition_distribution(from: Color) -> [(Color, u8); 3] {
    match from {
        Color::B => [(Color::B, 2), (Color::R, 0), (Color::G, 2)],
        Color::R | Color::G => [(Color::B, 1), (Color::R, 2), (Color::G, 1)],
    }
}

fn draw(dist: [(Color, u8); 3], rng: &mut ChaCha8Rng) -> Color {
    let mut q = rng.gen_range(0u8..4);
    for (c, w) in dist {
        if q < w {
            return c;
        }
        q -= w;
    }
    unreachable!("weights sum to 4")
}

fn forward_step(cur: Color, rng: &mut ChaCha8Rng) -> Color {
    draw(transition_distribution(cur), rng)
}

fn backward_step(cur: Color, rng: &mut ChaCha8Rng) -> Color {
    draw(backward_transition_distribution(cur), rng)
}

/// A length-`3n` chain word started at `w_1 = g`.
pub fn markov_word(n: usize, rng: &mut ChaCha8Rng) -> Word {
    let mut letters = Vec::with_capacity(3 * n);
    let mut cur = Color::G;
    letters.push(cur);
    for _ in 1..3 * n {
        cur = forward_step(cur, rng);
        letters.push(cur);
    }
    Word::finite(letters)
}

/// The chain probability of a finite word under the `w_1 = g` chain. Every
/// admissible word has a dyadic probability `2^-m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChainProb {
    Zero { reason: String },
    Dyadic { neg_log2: u64 },
}

impl ChainProb {
    /// Exact rational value.
    pub fn exact(&self) -> Ratio<BigInt> {
        match self {
            ChainProb::Zero { .. } => Ratio::from(BigInt::from(0)),
            ChainProb::Dyadic { neg_log2 } => {
                Ratio::new(BigInt::one(), BigInt::one() << *neg_log2 as usize)
            }
        }
    }

    pub fn ln(&self) -> f64 {
        match self {
            ChainProb::Zero { .. } => f64::NEG_INFINITY,
            ChainProb::Dyadic { neg_log2 } => -(*neg_log2 as f64) * std::f64::consts::LN_2,
        }
    }
}

/// Exact chain probability of `w`; zero when `w_1 != g` or a forbidden
/// `r -> b` transition occurs.
pub fn chain_prob(w: &Word) -> ChainProb {
    let letters = w.letters();
    if letters.is_empty() {
        return ChainProb::Dyadic { neg_log2: 0 };
    }
    if letters[0] != Color::G {
        return ChainProb::Zero { reason: format!("first letter is {}, not g", letters[0]) };
    }
    let mut m = 0u64;
    for (i, pair) in letters.windows(2).enumerate() {
        let q = transition_distribution(pair[0])
            .iter()
            .find(|(c, _)| *c == pair[1])
            .map(|&(_, q)| q)
            .expect("all colors listed");
        match q {
            0 => {
                return ChainProb::Zero {
                    reason: format!("forbidden transition r -> b at indices {}-{}", i + 1, i + 2),
                }
            }
            1 => m += 2,
            2 => m += 1,
            _ => unreachable!(),
        }
    }
    ChainProb::Dyadic { neg_log2: m }
}

/// A lazily revealed two-sided stationary chain word. The letter at index 0
/// is uniform; indices grow forward with the chain and backward with its
/// reversal, so enlarging the window never changes letters already seen.
pub struct StationaryWord {
    center: Color,
    fwd: Vec<Color>,
    bwd: Vec<Color>,
    rng_f: ChaCha8Rng,
    rng_b: ChaCha8Rng,
}

impl StationaryWord {
    /// Uses substreams `4k`, `4k + 1`, `4k + 2` of the seed for the center
    /// letter, the forward run, and the backward run.
    pub fn new(seed: &SeedSpec, substream: u64) -> StationaryWord {
        let base = substream.wrapping_mul(4);
        let mut rng_c = seed.stream(base);
        let center = Color::ALL[rng_c.gen_range(0usize..3)];
        StationaryWord {
            center,
            fwd: Vec::new(),
            bwd: Vec::new(),
            rng_f: seed.stream(base + 1),
            rng_b: seed.stream(base + 2),
        }
    }

    pub fn letter(&mut self, i: i64) -> Color {
        if i == 0 {
            return self.center;
        }
        if i > 0 {
            let k = (i - 1) as usize;
            while self.fwd.len() <= k {
                let cur = *self.fwd.last().unwrap_or(&self.center);
                let next = forward_step(cur, &mut self.rng_f);
                self.fwd.push(next);
            }
            self.fwd[k]
        } else {
            let k = (-i - 1) as usize;
            while self.bwd.len() <= k {
                let cur = *self.bwd.last().unwrap_or(&self.center);
                let prev = backward_step(cur, &mut self.rng_b);
                self.bwd.push(prev);
            }
            self.bwd[k]
        }
    }

    /// Snapshot of the letters on `[lo, hi]`.
    pub fn window(&mut self, lo: i64, hi: i64) -> Word {
        let letters = (lo..=hi).map(|i| self.letter(i)).collect();
        Word::window(letters, lo)
    }

    /// Smallest index `i >= from` whose letter equals `c`.
    pub fn first_at_or_after(&mut self, from: i64, c: Color) -> i64 {
        let mut i = from;
        while self.letter(i) != c {
            i += 1;
        }
        i
    }

    /// Largest index `i <= from` whose letter equals `c`.
    pub fn last_at_or_before(&mut self, from: i64, c: Color) -> i64 {
        let mut i = from;
        while self.letter(i) != c {
            i -= 1;
        }
        i
    }
}

/// A stationary window word on `[-m, m]` with the root symbol at index 0.
pub fn stationary_window(m: usize, seed: &SeedSpec, substream: u64) -> Word {
    StationaryWord::new(seed, substream).window(-(m as i64), m as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn word(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn chain_prob_examples() {
        // P(gbr) = 1 * 1/2 * 1/4 = 1/8 = 2 * 16^-1.
        assert_eq!(chain_prob(&word("gbr")), ChainProb::Dyadic { neg_log2: 3 });
        assert!(matches!(chain_prob(&word("grb")), ChainProb::Zero { .. }));
        assert!(matches!(chain_prob(&word("bgr")), ChainProb::Zero { .. }));

        // Every W_2 word has probability 2 * 16^-2 = 2^-7.
        for w in ["gbgbrr", "gbrgbr", "ggbbrr"] {
            assert_eq!(chain_prob(&word(w)), ChainProb::Dyadic { neg_log2: 7 }, "{w}");
        }
        let exact = chain_prob(&word("ggbbrr")).exact();
        assert_eq!(exact, Ratio::new(BigInt::from(2), BigInt::from(256)));
    }

    #[test]
    fn markov_word_shape() {
        let seed = SeedSpec::new(3);
        let mut rng = seed.stream(0);
        let w = markov_word(10, &mut rng);
        assert_eq!(w.len(), 30);
        assert_eq!(w.letters()[0], Color::G);
        assert!(!matches!(chain_prob(&w), ChainProb::Zero { .. }));
        // Deterministic under the same stream.
        let again = markov_word(10, &mut seed.stream(0));
        assert_eq!(w, again);
    }

    #[test]
    fn stationary_window_stable_under_enlargement() {
        let seed = SeedSpec::new(11);
        let mut sw = StationaryWord::new(&seed, 5);
        let small = sw.window(-10, 10);
        let mut sw2 = StationaryWord::new(&seed, 5);
        let large = sw2.window(-50, 50);
        for i in -10..=10 {
            assert_eq!(small.get(i), large.get(i));
        }
    }

    #[test]
    fn no_r_then_b_in_windows() {
        let seed = SeedSpec::new(1);
        for sub in 0..20 {
            let w = stationary_window(200, &seed, sub);
            for i in w.start()..w.end() {
                assert!(!(w.get(i) == Some(Color::R) && w.get(i + 1) == Some(Color::B)));
            }
        }
    }
}
