//! Words over `{b, r, g}`, their lattice walks, and membership in `W_n`.
//!
//! Indices are 1-based for finite words (`w_1 .. w_{3n}`) so that reports
//! line up with hand computations. Window words (segments of the bi-infinite
//! stationary word) carry an explicit start index, typically negative, with
//! the root symbol at index 0.

mod matching;
mod tree;

pub use matching::{match_pairs, MatchKind, MatchTable};
pub use tree::{DyckError, DyckPath, PlaneTree};

use std::fmt;

use thiserror::Error;

use crate::color::Color;

/// A word over the alphabet `{b, r, g}` with explicit absolute indexing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Word {
    letters: Vec<Color>,
    start: i64,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid letter {0:?}; words use only b, r, g")]
    InvalidLetter(char),
    #[error("walk step {index} is {step:?}, not one of (1,-1), (-1,0), (0,1)")]
    InvalidStep { index: i64, step: (i64, i64) },
    #[error("empty walk; a walk needs at least its starting point")]
    EmptyWalk,
}

impl Word {
    /// A finite word indexed `1..=len`.
    pub fn finite(letters: Vec<Color>) -> Word {
        Word { letters, start: 1 }
    }

    /// A window word whose first letter sits at absolute index `start`.
    pub fn window(letters: Vec<Color>, start: i64) -> Word {
        Word { letters, start }
    }

    pub fn parse(s: &str) -> Result<Word, WordError> {
        let letters = s
            .chars()
            .map(|c| Color::from_char(c).ok_or(WordError::InvalidLetter(c)))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word::finite(letters))
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// First absolute index.
    pub fn start(&self) -> i64 {
        self.start
    }

    /// Last absolute index (start - 1 when empty).
    pub fn end(&self) -> i64 {
        self.start + self.letters.len() as i64 - 1
    }

    pub fn get(&self, index: i64) -> Option<Color> {
        if index < self.start {
            return None;
        }
        self.letters.get((index - self.start) as usize).copied()
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + '_ {
        self.start..=self.end()
    }

    pub fn letters(&self) -> &[Color] {
        &self.letters
    }

    /// `n` when the length is `3n`.
    pub fn n(&self) -> Option<usize> {
        (self.letters.len() % 3 == 0).then(|| self.letters.len() / 3)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Word {
    type Err = WordError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Word::parse(s)
    }
}

/// The step map `f(b) = (1,-1)`, `f(r) = (-1,0)`, `f(g) = (0,1)`.
pub fn step_of(letter: Color) -> (i64, i64) {
    match letter {
        Color::B => (1, -1),
        Color::R => (-1, 0),
        Color::G => (0, 1),
    }
}

pub fn letter_of_step(step: (i64, i64)) -> Option<Color> {
    match step {
        (1, -1) => Some(Color::B),
        (-1, 0) => Some(Color::R),
        (0, 1) => Some(Color::G),
        _ => None,
    }
}

/// A lattice walk with steps in `{(1,-1), (-1,0), (0,1)}`.
///
/// `points[k]` is the walk value after `k` steps; the point before the
/// letter at absolute index `i` is `points[i - start]` with
/// `start = first letter index`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LatticeWalk {
    start: i64,
    points: Vec<(i64, i64)>,
}

impl LatticeWalk {
    pub fn from_word(w: &Word) -> LatticeWalk {
        let mut points = Vec::with_capacity(w.len() + 1);
        let mut p = (0i64, 0i64);
        points.push(p);
        for &l in w.letters() {
            let (dx, dy) = step_of(l);
            p = (p.0 + dx, p.1 + dy);
            points.push(p);
        }
        LatticeWalk { start: w.start, points }
    }

    pub fn from_points(points: Vec<(i64, i64)>) -> Result<LatticeWalk, WordError> {
        if points.is_empty() {
            return Err(WordError::EmptyWalk);
        }
        for (k, pair) in points.windows(2).enumerate() {
            let step = (pair[1].0 - pair[0].0, pair[1].1 - pair[0].1);
            if letter_of_step(step).is_none() {
                return Err(WordError::InvalidStep { index: k as i64 + 1, step });
            }
        }
        Ok(LatticeWalk { start: 1, points })
    }

    pub fn to_word(&self) -> Word {
        let letters = self
            .points
            .windows(2)
            .map(|p| letter_of_step((p[1].0 - p[0].0, p[1].1 - p[0].1)).expect("validated"))
            .collect();
        Word { letters, start: self.start }
    }

    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Walk value after the letter at absolute index `i` (`L_i`, `R_i`).
    pub fn at(&self, i: i64) -> (i64, i64) {
        self.points[(i - self.start + 1) as usize]
    }

    pub fn abscissa(&self) -> Vec<i64> {
        self.points.iter().map(|p| p.0).collect()
    }

    pub fn ordinate(&self) -> Vec<i64> {
        self.points.iter().map(|p| p.1).collect()
    }

    /// CSV with header `L,R`, one point per line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("L,R\n");
        for (l, r) in &self.points {
            out.push_str(&format!("{l},{r}\n"));
        }
        out
    }

    pub fn from_csv(s: &str) -> Result<LatticeWalk, WordError> {
        let mut points = Vec::new();
        for line in s.lines().skip(1) {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split(',');
            let l = it.next().and_then(|v| v.trim().parse().ok());
            let r = it.next().and_then(|v| v.trim().parse().ok());
            match (l, r) {
                (Some(l), Some(r)) => points.push((l, r)),
                _ => return Err(WordError::EmptyWalk),
            }
        }
        LatticeWalk::from_points(points)
    }
}

/// Why a word fails to belong to `W_n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WnViolation {
    /// Length is not a multiple of three.
    LengthNotTripled { len: usize },
    /// First quadrant exit; `index` is the 1-based step taking the walk out.
    QuadrantExit { index: i64, point: (i64, i64) },
    /// Walk does not return to the origin.
    NonzeroEndpoint { endpoint: (i64, i64) },
    /// A `b` immediately follows an `r` at `(index, index + 1)`.
    RThenB { index: i64 },
}

impl fmt::Display for WnViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WnViolation::LengthNotTripled { len } => {
                write!(f, "length {len} is not 3n")
            }
            WnViolation::QuadrantExit { index, point } => {
                write!(f, "walk leaves the first quadrant at step {index} (reaches {point:?})")
            }
            WnViolation::NonzeroEndpoint { endpoint } => {
                write!(f, "walk ends at {endpoint:?}, not the origin")
            }
            WnViolation::RThenB { index } => {
                write!(f, "b immediately follows r at indices {}-{}", index, index + 1)
            }
        }
    }
}

/// Full membership report for `W_n`; an empty violation list means the word
/// is a member.
#[derive(Clone, Debug)]
pub struct WnReport {
    pub violations: Vec<WnViolation>,
    pub n: Option<usize>,
}

impl WnReport {
    pub fn is_member(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every `W_n` condition and reports all violations, not just the
/// first.
pub fn validate_wn(w: &Word) -> WnReport {
    let mut violations = Vec::new();
    if w.len() % 3 != 0 {
        violations.push(WnViolation::LengthNotTripled { len: w.len() });
    }
    let mut p = (0i64, 0i64);
    let mut exited = false;
    let mut prev: Option<Color> = None;
    for (k, &l) in w.letters().iter().enumerate() {
        let (dx, dy) = step_of(l);
        p = (p.0 + dx, p.1 + dy);
        if !exited && (p.0 < 0 || p.1 < 0) {
            violations.push(WnViolation::QuadrantExit { index: k as i64 + 1, point: p });
            exited = true;
        }
        if prev == Some(Color::R) && l == Color::B {
            violations.push(WnViolation::RThenB { index: k as i64 });
        }
        prev = Some(l);
    }
    if p != (0, 0) {
        violations.push(WnViolation::NonzeroEndpoint { endpoint: p });
    }
    WnReport { violations, n: w.n() }
}

/// The image of a `W_n` walk under the shear mapping the quadrant onto
/// `{x >= y >= 0}`: abscissa path `L + R`, ordinate path `R`.
#[derive(Clone, Debug)]
pub struct ShearPair {
    pub upper: Vec<i64>,
    pub lower: Vec<i64>,
    pub non_crossing: bool,
}

#[derive(Error, Debug)]
#[error("word is not in W_n: {report:?}")]
pub struct NotInWn {
    pub report: WnReport,
}

pub fn shear_dyck_pair(w: &Word) -> Result<ShearPair, NotInWn> {
    let report = validate_wn(w);
    if !report.is_member() {
        return Err(NotInWn { report });
    }
    let walk = LatticeWalk::from_word(w);
    let upper: Vec<i64> = walk.points().iter().map(|&(l, r)| l + r).collect();
    let lower: Vec<i64> = walk.points().iter().map(|&(_, r)| r).collect();
    let non_crossing = upper.iter().zip(&lower).all(|(u, l)| u >= l);
    Ok(ShearPair { upper, lower, non_crossing })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn walk_of_word_examples() {
        let w = word("gbr");
        let z = LatticeWalk::from_word(&w);
        assert_eq!(z.points(), &[(0, 0), (0, 1), (1, 0), (0, 0)]);

        let empty = LatticeWalk::from_word(&word(""));
        assert_eq!(empty.points(), &[(0, 0)]);

        let gg = LatticeWalk::from_word(&word("gg"));
        assert_eq!(gg.points(), &[(0, 0), (0, 1), (0, 2)]);
    }

    #[test]
    fn word_of_walk_examples() {
        let z = LatticeWalk::from_points(vec![(0, 0), (0, 1), (1, 0), (0, 0)]).unwrap();
        assert_eq!(z.to_word().to_string(), "gbr");

        let single = LatticeWalk::from_points(vec![(0, 0)]).unwrap();
        assert_eq!(single.to_word().to_string(), "");

        let bad = LatticeWalk::from_points(vec![(0, 0), (1, 0)]);
        assert_eq!(
            bad.unwrap_err(),
            WordError::InvalidStep { index: 1, step: (1, 0) }
        );
    }

    #[test]
    fn validate_wn_examples() {
        assert!(validate_wn(&word("gbr")).is_member());

        let grb = validate_wn(&word("grb"));
        assert!(!grb.is_member());
        assert!(grb
            .violations
            .iter()
            .any(|v| matches!(v, WnViolation::QuadrantExit { index: 2, .. })));
        assert!(grb
            .violations
            .iter()
            .any(|v| matches!(v, WnViolation::RThenB { index: 2 })));

        let ggbrbr = validate_wn(&word("ggbrbr"));
        assert_eq!(ggbrbr.violations, vec![WnViolation::RThenB { index: 4 }]);
    }

    #[test]
    fn empty_word_is_w0() {
        assert!(validate_wn(&word("")).is_member());
    }

    #[test]
    fn shear_examples() {
        let p = shear_dyck_pair(&word("gbr")).unwrap();
        assert_eq!(p.upper, vec![0, 1, 1, 0]);
        assert_eq!(p.lower, vec![0, 1, 0, 0]);
        assert!(p.non_crossing);

        assert!(shear_dyck_pair(&word("ggbbrr")).unwrap().non_crossing);
        assert!(shear_dyck_pair(&word("grb")).is_err());
    }

    #[test]
    fn walk_csv_roundtrip() {
        let z = LatticeWalk::from_word(&word("gbgbrr"));
        let csv = z.to_csv();
        assert!(csv.starts_with("L,R\n0,0\n"));
        assert_eq!(LatticeWalk::from_csv(&csv).unwrap(), z);
    }

    #[test]
    fn window_indexing() {
        let w = Word::window(vec![Color::G, Color::B, Color::R], -1);
        assert_eq!(w.get(-1), Some(Color::G));
        assert_eq!(w.get(0), Some(Color::B));
        assert_eq!(w.get(1), Some(Color::R));
        assert_eq!(w.get(2), None);
        assert_eq!(w.end(), 1);
    }
}
