//! Generators for `W_n` and its bi-infinite stationary analogue: exhaustive
//! enumeration, closed-form counting, the Markov-chain rejection sampler, an
//! exact count-and-sample DP, and window words with local graph / pocket
//! extraction.

mod chain;
mod count;
mod dp;
mod enumerate;
mod exponent;
mod rejection;
mod seed;
mod uiwt;

pub use chain::{
    backward_transition_distribution, chain_prob, markov_word, stationary_window,
    transition_distribution, ChainProb, StationaryWord,
};
pub use count::{catalan, count_wn_closed};
pub use dp::{dp_count, dp_sample, dp_sample_batch, DpError, DpMode, DpSampler};
pub use enumerate::{enumerate_wn, enumerate_wn_with_cap, EnumerateError, DEFAULT_ENUM_CAP};
pub use exponent::{acceptance_probability_estimate, ExponentEstimate};
pub use rejection::{rejection_sample, PruneOpts, RejectionError, RejectionSample};
pub use seed::SeedSpec;
pub use uiwt::{uiwt_local_graph, uiwt_pocket, LocalGraph, Pocket, PocketError, SymbolEdge};
