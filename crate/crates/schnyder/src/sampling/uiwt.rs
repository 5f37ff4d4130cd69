use std::collections::BTreeMap;

use thiserror::Error;

use crate::color::Color;
use crate::words::{match_pairs, MatchKind, MatchTable, Word};

/// A per-symbol edge of the local graph read off a window word. Vertices
/// are `b` indices. Outer vertices never occur: on the bi-infinite word the
/// fallback branches of the construction almost surely never fire, so a
/// missing match means "not determined by this window", not "outer".
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SymbolEdge {
    Edge { tail: i64, head: i64, color: Color },
    /// The matches or lookups this symbol needs do not resolve inside the
    /// window.
    Unresolved,
}

/// The partial map carried by a window: one entry per symbol index.
#[derive(Clone, Debug)]
pub struct LocalGraph {
    pub edges: BTreeMap<i64, SymbolEdge>,
}

impl LocalGraph {
    pub fn resolved(&self) -> impl Iterator<Item = (i64, i64, i64, Color)> + '_ {
        self.edges.iter().filter_map(|(&i, e)| match e {
            SymbolEdge::Edge { tail, head, color } => Some((i, *tail, *head, *color)),
            SymbolEdge::Unresolved => None,
        })
    }

    pub fn unresolved_count(&self) -> usize {
        self.edges
            .values()
            .filter(|e| matches!(e, SymbolEdge::Unresolved))
            .count()
    }
}

fn next_g_table(w: &Word) -> BTreeMap<i64, i64> {
    let mut out = BTreeMap::new();
    let mut upcoming = None;
    for i in (w.start()..=w.end()).rev() {
        if let Some(j) = upcoming {
            out.insert(i, j);
        }
        if w.get(i) == Some(Color::G) {
            upcoming = Some(i);
        }
    }
    out
}

fn resolve_symbol(
    w: &Word,
    gb: &MatchTable,
    br: &MatchTable,
    next_g: &BTreeMap<i64, i64>,
    i: i64,
) -> SymbolEdge {
    let unresolved = SymbolEdge::Unresolved;
    match w.get(i).expect("in window") {
        Color::B => {
            let Some(j) = gb.enclosing_open(i) else { return unresolved };
            let Some(k) = gb.partner(j) else { return unresolved };
            SymbolEdge::Edge { tail: i, head: k, color: Color::B }
        }
        Color::R => {
            let Some(tail) = br.partner(i) else { return unresolved };
            if tail > i {
                return unresolved; // i is an open in some window corner case
            }
            let Some(&j) = next_g.get(&i) else { return unresolved };
            let Some(k) = gb.partner(j) else { return unresolved };
            if k < j {
                return unresolved;
            }
            SymbolEdge::Edge { tail, head: k, color: Color::R }
        }
        Color::G => {
            let Some(tail) = gb.partner(i) else { return unresolved };
            if tail < i {
                return unresolved;
            }
            let Some(j) = br.enclosing_open(i) else { return unresolved };
            SymbolEdge::Edge { tail, head: j, color: Color::G }
        }
    }
}

/// Applies the word-to-map rules to every symbol whose matches resolve
/// inside the window.
pub fn uiwt_local_graph(w: &Word) -> LocalGraph {
    let gb = match_pairs(w, MatchKind::Gb);
    let br = match_pairs(w, MatchKind::Br);
    let next_g = next_g_table(w);
    let edges = w
        .indices()
        .map(|i| (i, resolve_symbol(w, &gb, &br, &next_g, i)))
        .collect();
    LocalGraph { edges }
}

/// A pocket subgraph: the symbols enclosed by the `m`-th br match
/// straddling the root index 0.
#[derive(Clone, Debug)]
pub struct Pocket {
    /// The br match `(j, k)` with `j < 0 < k`, `k` the m-th smallest.
    pub open: i64,
    pub close: i64,
    /// Resolved edges of `w([j, k])`.
    pub edges: Vec<(i64, i64, i64, Color)>,
    /// Symbols in the interval whose edges did not resolve in the window.
    pub unresolved: Vec<i64>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum PocketError {
    #[error("pocket {m} is not closed in this window: only {available} straddling br matches close")]
    NotClosed { m: usize, available: usize },
    #[error("window does not contain index 0")]
    NoRoot,
}

/// Extracts pocket `m` (1-based). The straddling br matches are the opens
/// on the br stack at index 0; they close in inside-out order, so the m-th
/// smallest close belongs to the m-th stack entry.
pub fn uiwt_pocket(w: &Word, m: usize) -> Result<Pocket, PocketError> {
    if w.get(0).is_none() {
        return Err(PocketError::NoRoot);
    }
    let gb = match_pairs(w, MatchKind::Gb);
    let br = match_pairs(w, MatchKind::Br);
    let mut stack = br.stack_at(w, 0);
    // An open at exactly 0 is not straddling (j < 0 required).
    stack.retain(|&j| j < 0);
    let closed: Vec<(i64, i64)> = stack
        .iter()
        .filter_map(|&j| br.partner(j).map(|k| (j, k)))
        .filter(|&(_, k)| k > 0)
        .collect();
    if m == 0 || m > closed.len() {
        return Err(PocketError::NotClosed { m, available: closed.len() });
    }
    let (open, close) = closed[m - 1];
    let next_g = next_g_table(w);
    let mut edges = Vec::new();
    let mut unresolved = Vec::new();
    for i in open..=close {
        match resolve_symbol(w, &gb, &br, &next_g, i) {
            SymbolEdge::Edge { tail, head, color } => edges.push((i, tail, head, color)),
            SymbolEdge::Unresolved => unresolved.push(i),
        }
    }
    Ok(Pocket { open, close, edges, unresolved })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::decode;
    use crate::maps::Vertex;
    use crate::sampling::{enumerate_wn, stationary_window, SeedSpec};

    #[test]
    fn local_graph_agrees_with_decode_on_embedded_words() {
        // Embed each W_3 word as a window with index 0 interior; wherever
        // the local graph resolves, it must agree with the decoded map.
        for w in enumerate_wn(3).unwrap() {
            let s = decode(&w).unwrap();
            let shift = -4; // put index 0 a third of the way in
            let window = Word::window(w.letters().to_vec(), 1 + shift);
            let local = uiwt_local_graph(&window);
            for (i, tail, head, color) in local.resolved() {
                let e = s.edge((i - shift - 1) as usize);
                assert_eq!(e.color(), Some(color));
                assert_eq!(e.tail, Vertex::Inner(tail - shift), "word {w} index {i}");
                assert_eq!(e.head, Vertex::Inner(head - shift), "word {w} index {i}");
            }
        }
    }

    #[test]
    fn pockets_nest() {
        let seed = SeedSpec::new(2024);
        let mut found = 0;
        for sub in 0..40 {
            let w = stationary_window(400, &seed, sub);
            let (Ok(p1), Ok(p2)) = (uiwt_pocket(&w, 1), uiwt_pocket(&w, 2)) else {
                continue;
            };
            found += 1;
            assert!(p2.open < p1.open && p1.close < p2.close);
            let inner: std::collections::HashSet<_> =
                p1.edges.iter().map(|&(i, ..)| i).collect();
            let outer: std::collections::HashSet<_> =
                p2.edges.iter().map(|&(i, ..)| i).collect();
            // Resolved symbols of the inner pocket are symbols of the outer.
            for i in inner {
                assert!(outer.contains(&i) || p2.unresolved.contains(&i));
            }
        }
        assert!(found > 5, "too few closed pocket pairs: {found}");
    }

    #[test]
    fn pocket_not_closed_reported() {
        // A window that is all g's has no straddling br match.
        let w = Word::window(vec![Color::G; 9], -4);
        assert!(matches!(uiwt_pocket(&w, 1), Err(PocketError::NotClosed { .. })));
    }
}
