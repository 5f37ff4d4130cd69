//! Schnyder-wood-decorated simple triangulations and their lattice-walk
//! encoding.
//!
//! The crate is organized around the word/walk class `W_n` (words over
//! `{b, r, g}` whose lattice image stays in the first quadrant, returns to
//! the origin, and never takes a `b` right after an `r`):
//!
//! * [`words`] — words, walks, membership validation, parenthesis matchings,
//!   and the Dyck-path / plane-tree bijection.
//! * [`maps`] — rotation-system combinatorial maps, the COLOR algorithm,
//!   Schnyder-rule validation, the blue+red submap with its dual trees and
//!   flow lines.
//! * [`codec`] — the bijection between wooded triangulations and `W_n`
//!   walks, in both exploration directions and all three colors.
//! * [`sampling`] — exact enumeration and counting, the Markov-chain
//!   rejection sampler, an exact count-and-sample DP, and stationary
//!   bi-infinite windows with local graph / pocket extraction.
//! * [`excursions`] — grouped-step walks, alternating left/right excursion
//!   decompositions, overshoots, discrete local time, and flow-line side
//!   classifications.
//! * [`embed`] — the straight-line grid embedding with an exact-arithmetic
//!   planarity validator and SVG output.
//! * [`diagnostics`] — the statistical harness turning scaling claims into
//!   seeded, reproducible checks.

pub mod color;
pub mod words;
pub mod maps;
pub mod codec;
pub mod sampling;
pub mod excursions;
pub mod embed;
pub mod diagnostics;

pub use color::Color;
