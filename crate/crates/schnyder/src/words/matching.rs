use std::collections::HashMap;

use crate::color::Color;
use crate::words::Word;

/// Which two-letter subword is matched: `gb` (drop the r's, `g` opens and
/// `b` closes) or `br` (drop the g's, `b` opens and `r` closes).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatchKind {
    Gb,
    Br,
}

impl MatchKind {
    fn open(self) -> Color {
        match self {
            MatchKind::Gb => Color::G,
            MatchKind::Br => Color::B,
        }
    }

    fn close(self) -> Color {
        match self {
            MatchKind::Gb => Color::B,
            MatchKind::Br => Color::R,
        }
    }
}

/// The non-crossing pairing obtained by reducing the kind-restricted subword
/// to the empty word. On window words some symbols have no partner inside
/// the window; those land in the unmatched lists.
#[derive(Clone, Debug)]
pub struct MatchTable {
    pub kind: MatchKind,
    /// `(open, close)` index pairs with `open < close`, sorted by close.
    pub pairs: Vec<(i64, i64)>,
    partner: HashMap<i64, i64>,
    /// Opens whose close lies beyond the word, innermost last (stack order).
    pub unmatched_opens: Vec<i64>,
    /// Closes whose open lies before the word, in index order.
    pub unmatched_closes: Vec<i64>,
    /// Per position (relative to word start): the innermost open strictly
    /// enclosing that position, if any open is on the stack there.
    enclosing: Vec<Option<i64>>,
    start: i64,
}

impl MatchTable {
    pub fn partner(&self, index: i64) -> Option<i64> {
        self.partner.get(&index).copied()
    }

    /// The innermost pair `(j, k)` with `j < i < k` whose open is inside the
    /// word. Returns the open index; its close may still be unmatched (see
    /// [`MatchTable::partner`]).
    pub fn enclosing_open(&self, i: i64) -> Option<i64> {
        let rel = i - self.start;
        if rel < 0 || rel as usize >= self.enclosing.len() {
            return None;
        }
        self.enclosing[rel as usize]
    }

    /// Opens on the stack at absolute position `i` (strictly before `i`,
    /// unclosed before `i`), ordered innermost first.
    pub fn stack_at(&self, word: &Word, i: i64) -> Vec<i64> {
        let mut stack = Vec::new();
        let mut j = word.start();
        while j < i {
            if let Some(l) = word.get(j) {
                if l == self.kind.open() {
                    stack.push(j);
                } else if l == self.kind.close() && !stack.is_empty() {
                    stack.pop();
                }
            }
            j += 1;
        }
        stack.reverse();
        stack
    }
}

/// Builds the matching of the given kind over `w`, window-tolerant.
pub fn match_pairs(w: &Word, kind: MatchKind) -> MatchTable {
    let mut pairs = Vec::new();
    let mut partner = HashMap::new();
    let mut stack: Vec<i64> = Vec::new();
    let mut unmatched_closes = Vec::new();
    let mut enclosing = Vec::with_capacity(w.len());
    for i in w.indices() {
        let l = w.get(i).expect("in range");
        if l == kind.open() {
            enclosing.push(stack.last().copied());
            stack.push(i);
        } else if l == kind.close() {
            match stack.pop() {
                Some(j) => {
                    pairs.push((j, i));
                    partner.insert(j, i);
                    partner.insert(i, j);
                    enclosing.push(stack.last().copied());
                }
                None => {
                    unmatched_closes.push(i);
                    enclosing.push(None);
                }
            }
        } else {
            enclosing.push(stack.last().copied());
        }
    }
    MatchTable {
        kind,
        pairs,
        partner,
        unmatched_opens: stack,
        unmatched_closes,
        enclosing,
        start: w.start(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn gbr_matches() {
        let w = word("gbr");
        let gb = match_pairs(&w, MatchKind::Gb);
        assert_eq!(gb.pairs, vec![(1, 2)]);
        let br = match_pairs(&w, MatchKind::Br);
        assert_eq!(br.pairs, vec![(2, 3)]);
    }

    #[test]
    fn nested_gb() {
        let gb = match_pairs(&word("ggbbrr"), MatchKind::Gb);
        let mut pairs = gb.pairs.clone();
        pairs.sort();
        assert_eq!(pairs, vec![(1, 4), (2, 3)]);
    }

    #[test]
    fn lone_symbol() {
        let br = match_pairs(&word("b"), MatchKind::Br);
        assert!(br.pairs.is_empty());
        assert_eq!(br.unmatched_opens, vec![1]);

        let br = match_pairs(&word("r"), MatchKind::Br);
        assert_eq!(br.unmatched_closes, vec![1]);
    }

    #[test]
    fn nesting_invariant() {
        // Pairs of one table are nested or disjoint.
        let w = word("gbgbrrgbrgbr");
        for kind in [MatchKind::Gb, MatchKind::Br] {
            let t = match_pairs(&w, kind);
            for &(j, k) in &t.pairs {
                for &(j2, k2) in &t.pairs {
                    if (j, k) == (j2, k2) {
                        continue;
                    }
                    let nested = (j < j2 && k2 < k) || (j2 < j && k < k2);
                    let disjoint = k < j2 || k2 < j;
                    assert!(nested || disjoint, "{:?} vs {:?}", (j, k), (j2, k2));
                }
            }
        }
    }

    #[test]
    fn enclosing_open_queries() {
        let w = word("ggbbrr");
        let gb = match_pairs(&w, MatchKind::Gb);
        // Position 3 (a b) closes (2,3); its strict encloser is the g at 1.
        assert_eq!(gb.enclosing_open(3), Some(1));
        assert_eq!(gb.enclosing_open(2), Some(1));
        assert_eq!(gb.enclosing_open(1), None);
        assert_eq!(gb.enclosing_open(4), None);
    }

    #[test]
    fn stack_at_window_origin() {
        let w = Word::window("bbrgbrr".chars().map(|c| Color::from_char(c).unwrap()).collect(), -3);
        // Indices: b@-3 b@-2 r@-1 g@0 b@1 r@2 r@3. br stack at 0: open b@-3
        // (b@-2 closed by r@-1), so innermost first = [-3].
        let br = match_pairs(&w, MatchKind::Br);
        assert_eq!(br.stack_at(&w, 0), vec![-3]);
    }
}
