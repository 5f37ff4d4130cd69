//! The bijection between wooded triangulations and `W_n` walks.
//!
//! `decode` builds the map from a word by the matching rules (blue edges to
//! the innermost enclosing gb match, red edges through the next g, green
//! edges to the innermost enclosing br match) together with the prescribed
//! cyclic orders. `encode` reads a walk back off the rotation system by
//! exploring the chosen tree; it never looks at a word, so the two
//! directions check each other.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::color::Color;
use crate::maps::validate::{parse_corners, parse_outer_corner};
use crate::maps::{
    build_mbr, MapError, MbrError, RotationSpec, Vertex, WoodedTriangulation,
};
use crate::words::{
    match_pairs, validate_wn, LatticeWalk, MatchKind, MatchTable, WnReport, Word,
};

#[derive(Error, Debug)]
pub enum CodecError {
    #[error("word is not in W_n: {0:?}")]
    NotInWn(Vec<String>),
    #[error("letter at index {index} is {found}, expected {expected}")]
    WrongLetter { index: i64, expected: Color, found: Color },
    #[error("index {0} is out of range")]
    OutOfRange(i64),
    #[error("map does not satisfy Schnyder's rule: {0}")]
    InvalidMap(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Mbr(#[from] MbrError),
}

fn membership_error(report: &WnReport) -> CodecError {
    CodecError::NotInWn(report.violations.iter().map(|v| v.to_string()).collect())
}

/// Which tree is traced and in which direction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ExplorationSpec {
    pub color: Color,
    pub direction: Direction,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Cw,
    Ccw,
}

/// One edge encounter of the exploration path; every inner edge is met
/// exactly twice.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Encounter {
    pub edge: usize,
    pub second: bool,
}

/// The full encounter sequence of the clockwise exploration of the
/// `role_b`-colored tree, outer-edge crossings elided.
///
/// The sequence starts with the first crossings at `A_prev(role_b)`, walks
/// the tree (descents are first traversals, ascents second), and ends with
/// the second crossings at `A_next(role_b)`.
pub fn exploration_events(
    s: &WoodedTriangulation,
    role_b: Color,
) -> Result<Vec<Encounter>, CodecError> {
    let role_g = role_b.prev();
    let mut events = Vec::with_capacity(6 * s.n());

    for e in parse_outer_corner(s, role_g).map_err(CodecError::InvalidMap)? {
        events.push(Encounter { edge: e, second: false });
    }

    struct Frame {
        via: usize,
        tree_in: Vec<usize>,
        next_out: usize,
        prev_in: Vec<usize>,
        child: usize,
    }

    let enter = |events: &mut Vec<Encounter>, via: usize| -> Result<Frame, CodecError> {
        let v = match s.edge(via).tail {
            Vertex::Inner(id) => id,
            Vertex::Outer(_) => unreachable!("colored edges leave inner vertices"),
        };
        let corners = parse_corners(s, v, role_b).map_err(CodecError::InvalidMap)?;
        debug_assert_eq!(corners.tree_out, via);
        events.push(Encounter { edge: via, second: false });
        for e in &corners.next_in {
            events.push(Encounter { edge: *e, second: true });
        }
        events.push(Encounter { edge: corners.prev_out, second: true });
        Ok(Frame {
            via,
            tree_in: corners.tree_in,
            next_out: corners.next_out,
            prev_in: corners.prev_in,
            child: 0,
        })
    };

    let roots = parse_outer_corner(s, role_b).map_err(CodecError::InvalidMap)?;
    let mut stack: Vec<Frame> = Vec::new();
    for root in roots {
        stack.push(enter(&mut events, root)?);
        while let Some(top) = stack.last_mut() {
            if top.child < top.tree_in.len() {
                let via = top.tree_in[top.child];
                top.child += 1;
                let frame = enter(&mut events, via)?;
                stack.push(frame);
            } else {
                let frame = stack.pop().expect("nonempty");
                events.push(Encounter { edge: frame.next_out, second: false });
                for e in &frame.prev_in {
                    events.push(Encounter { edge: *e, second: false });
                }
                events.push(Encounter { edge: frame.via, second: true });
            }
        }
    }

    for e in parse_outer_corner(s, role_b.next()).map_err(CodecError::InvalidMap)? {
        events.push(Encounter { edge: e, second: true });
    }

    debug_assert_eq!(events.len(), 6 * s.n());
    Ok(events)
}

/// The outcome of an exploration: the role word, its walk, and the edge met
/// at each step.
#[derive(Clone, Debug)]
pub struct Encoded {
    pub word: Word,
    pub walk: LatticeWalk,
    pub edges: Vec<usize>,
}

/// Encodes a wooded triangulation as a lattice walk.
///
/// Clockwise: a step `(1,-1)` at the second traversal of each tree-color
/// edge, `(-1,0)` at the second crossing of each next-color edge, `(0,1)`
/// at the second crossing of each previous-color edge. Counterclockwise is
/// the exact time reversal of the clockwise encounter sequence with the
/// next/previous roles swapped.
pub fn encode(s: &WoodedTriangulation, spec: ExplorationSpec) -> Result<Encoded, CodecError> {
    let mut events = exploration_events(s, spec.color)?;
    let want_second = match spec.direction {
        Direction::Cw => true,
        Direction::Ccw => {
            events.reverse();
            false
        }
    };
    let mut letters = Vec::with_capacity(3 * s.n());
    let mut edges = Vec::with_capacity(3 * s.n());
    for ev in events {
        if ev.second != want_second {
            continue;
        }
        let c = s.edge(ev.edge).color().expect("inner edge");
        let letter = if c == spec.color {
            Color::B
        } else if c == spec.color.next() {
            match spec.direction {
                Direction::Cw => Color::R,
                Direction::Ccw => Color::G,
            }
        } else {
            match spec.direction {
                Direction::Cw => Color::G,
                Direction::Ccw => Color::R,
            }
        };
        letters.push(letter);
        edges.push(ev.edge);
    }
    let word = Word::finite(letters);
    let walk = LatticeWalk::from_word(&word);
    Ok(Encoded { word, walk, edges })
}

/// Canonical equality of wooded triangulations: equality of their clockwise
/// blue words.
pub fn maps_equal(a: &WoodedTriangulation, b: &WoodedTriangulation) -> bool {
    match (
        encode(a, ExplorationSpec { color: Color::B, direction: Direction::Cw }),
        encode(b, ExplorationSpec { color: Color::B, direction: Direction::Cw }),
    ) {
        (Ok(wa), Ok(wb)) => wa.word == wb.word,
        _ => false,
    }
}

/// Builds the wooded triangulation of a `W_n` word.
pub fn decode(w: &Word) -> Result<WoodedTriangulation, CodecError> {
    let report = validate_wn(w);
    if !report.is_member() {
        return Err(membership_error(&report));
    }
    let n = w.n().expect("validated");
    let gb = match_pairs(w, MatchKind::Gb);
    let br = match_pairs(w, MatchKind::Br);

    // next_g[i] = smallest g-index strictly after position i.
    let len = w.len();
    let mut next_g: Vec<Option<i64>> = vec![None; len + 2];
    let mut upcoming = None;
    for i in (1..=len as i64).rev() {
        next_g[i as usize] = upcoming;
        if w.get(i) == Some(Color::G) {
            upcoming = Some(i);
        }
    }
    next_g[0] = upcoming;

    let vertex_of_close = |table: &MatchTable, open: i64| -> Vertex {
        match table.partner(open) {
            Some(k) => Vertex::Inner(k),
            None => unreachable!("every open is matched in a W_n word"),
        }
    };

    let mut inner = Vec::with_capacity(3 * n);
    for i in w.indices() {
        let letter = w.get(i).expect("in range");
        let edge = match letter {
            Color::B => {
                let head = match gb.enclosing_open(i) {
                    Some(j) => vertex_of_close(&gb, j),
                    None => Vertex::outer(Color::B),
                };
                (Vertex::Inner(i), head, Color::B)
            }
            Color::R => {
                let tail = br.partner(i).expect("every r is matched");
                let head = match next_g[i as usize] {
                    Some(j) => vertex_of_close(&gb, j),
                    None => Vertex::outer(Color::R),
                };
                (Vertex::Inner(tail), head, Color::R)
            }
            Color::G => {
                let tail = gb.partner(i).expect("every g is matched");
                let head = match br.enclosing_open(i) {
                    Some(j) => Vertex::Inner(j),
                    None => Vertex::outer(Color::G),
                };
                (Vertex::Inner(tail), head, Color::G)
            }
        };
        inner.push(edge);
    }

    // Incoming edge lists per head, in order of appearance.
    let mut blue_in: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    let mut red_in: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    let mut green_in: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (e, &(_, head, color)) in inner.iter().enumerate() {
        let list = match color {
            Color::B => &mut blue_in,
            Color::R => &mut red_in,
            Color::G => &mut green_in,
        };
        list.entry(head).or_default().push(e);
    }

    let empty: Vec<usize> = Vec::new();
    let mut rotation = RotationSpec::new();
    for i in w.indices() {
        if w.get(i) != Some(Color::B) {
            continue;
        }
        let v = Vertex::Inner(i);
        let b_out = (i - 1) as usize;
        let g_out = (gb.partner(i).expect("matched") - 1) as usize;
        let r_out = (br.partner(i).expect("matched") - 1) as usize;
        let mut list = vec![b_out];
        list.extend(red_in.get(&v).unwrap_or(&empty));
        list.push(g_out);
        list.extend(blue_in.get(&v).unwrap_or(&empty));
        list.push(r_out);
        list.extend(green_in.get(&v).unwrap_or(&empty).iter().rev());
        rotation.insert(v, list);
    }

    let (ab_ar, ar_ag, ag_ab) = (3 * n, 3 * n + 1, 3 * n + 2);
    let mut ab = vec![ag_ab];
    ab.extend(blue_in.get(&Vertex::outer(Color::B)).unwrap_or(&empty));
    ab.push(ab_ar);
    rotation.insert(Vertex::outer(Color::B), ab);

    let mut ar = vec![ab_ar];
    ar.extend(red_in.get(&Vertex::outer(Color::R)).unwrap_or(&empty));
    ar.push(ar_ag);
    rotation.insert(Vertex::outer(Color::R), ar);

    let mut ag = vec![ar_ag];
    ag.extend(green_in.get(&Vertex::outer(Color::G)).unwrap_or(&empty).iter().rev());
    ag.push(ag_ab);
    rotation.insert(Vertex::outer(Color::G), ag);

    Ok(WoodedTriangulation::build(n, inner, rotation)?)
}

/// The index set `G_i` of eq-green shape: positions `k > i` carrying a `g`
/// at the same abscissa level `L_k = L_i`, the level being the running
/// minimum over `[i, k]`.
pub fn green_set(w: &Word, i: i64) -> Result<Vec<i64>, CodecError> {
    match w.get(i) {
        None => return Err(CodecError::OutOfRange(i)),
        Some(Color::B) => {}
        Some(found) => {
            return Err(CodecError::WrongLetter { index: i, expected: Color::B, found })
        }
    }
    let walk = LatticeWalk::from_word(w);
    let level = walk.at(i).0;
    let mut out = Vec::new();
    let mut min = level;
    let mut k = i + 1;
    while k <= w.end() {
        let (l, _) = walk.at(k);
        min = min.min(l);
        if min < level {
            break;
        }
        if w.get(k) == Some(Color::G) && l == level {
            out.push(k);
        }
        k += 1;
    }
    Ok(out)
}

/// Per-index dual-flow-line lengths for both colors.
#[derive(Clone, Debug)]
pub struct DualProfile {
    pub rows: Vec<ProfileRow>,
    /// Blue lengths equal `L^b` at every index.
    pub blue_matches_lb: bool,
    /// Red lengths, read in counterclockwise red exploration order, equal
    /// the abscissa of that walk at every step.
    pub red_matches_walk: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct ProfileRow {
    pub index: i64,
    pub letter: Color,
    pub l_b: i64,
    pub blue_len: usize,
    pub red_len: usize,
}

impl DualProfile {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index,letter,Lb,blue_dual_len,red_dual_len\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                r.index, r.letter, r.l_b, r.blue_len, r.red_len
            ));
        }
        out
    }
}

/// Computes, for every index, the dual blue flow-line length from `F(w_i)`
/// and the dual red flow-line length from `F~(w_i)`, and records whether
/// they match the walk coordinates they shadow (`L^b`, and the abscissa of
/// the counterclockwise red walk).
pub fn dual_profile(w: &Word) -> Result<DualProfile, CodecError> {
    let s = decode(w)?;
    let mbr = build_mbr(&s)?;
    let walk = LatticeWalk::from_word(w);

    let mut blue_matches = true;
    let mut rows = Vec::with_capacity(w.len());
    for i in w.indices() {
        let e = (i - 1) as usize;
        let blue_len = mbr
            .dual_flow_line(mbr.f(e).expect("inner edge"), Color::B)
            .len();
        let red_len = mbr
            .dual_flow_line(mbr.f_tilde(e).expect("inner edge"), Color::R)
            .len();
        let l_b = walk.at(i).0;
        if blue_len as i64 != l_b {
            blue_matches = false;
        }
        rows.push(ProfileRow { index: i, letter: w.get(i).expect("in range"), l_b, blue_len, red_len });
    }

    // Red side: the abscissa of the ccw red walk at step k equals the dual
    // red flow-line length from F~ of the edge met at step k.
    let ccw_red = encode(&s, ExplorationSpec { color: Color::R, direction: Direction::Ccw })?;
    let mut red_matches = true;
    for (k, &e) in ccw_red.edges.iter().enumerate() {
        let r_len = mbr
            .dual_flow_line(mbr.f_tilde(e).expect("inner edge"), Color::R)
            .len();
        let abscissa = ccw_red.walk.points()[k + 1].0;
        if r_len as i64 != abscissa {
            red_matches = false;
        }
    }

    Ok(DualProfile { rows, blue_matches_lb: blue_matches, red_matches_walk: red_matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::{flow_line, validate_schnyder};

    fn word(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn spec_cw(c: Color) -> ExplorationSpec {
        ExplorationSpec { color: c, direction: Direction::Cw }
    }

    #[test]
    fn decode_gbr() {
        let s = decode(&word("gbr")).unwrap();
        assert_eq!(s.n(), 1);
        assert!(validate_schnyder(&s).is_valid());
        let v = Vertex::Inner(2);
        assert_eq!(s.edge(0).tail, v);
        assert_eq!(s.edge(0).head, Vertex::outer(Color::G));
        assert_eq!(s.edge(1).head, Vertex::outer(Color::B));
        assert_eq!(s.edge(2).head, Vertex::outer(Color::R));
    }

    #[test]
    fn decode_gbgbrr() {
        let s = decode(&word("gbgbrr")).unwrap();
        assert!(validate_schnyder(&s).is_valid());
        // Vertex of w_2 has one incoming green edge, from the vertex of w_4.
        assert_eq!(s.green_indegree(2), 1);
        assert_eq!(s.edge(2).tail, Vertex::Inner(4));
        assert_eq!(s.edge(2).head, Vertex::Inner(2));
        // Red flow line from the vertex of w_2 ends at Ar.
        let fl = flow_line(&s, 2, Color::R).unwrap();
        assert_eq!(*fl.vertices.last().unwrap(), Vertex::outer(Color::R));
    }

    #[test]
    fn encode_n1() {
        let s = decode(&word("gbr")).unwrap();
        let enc = encode(&s, spec_cw(Color::B)).unwrap();
        assert_eq!(enc.word.to_string(), "gbr");
    }

    #[test]
    fn encode_decode_roundtrip_small() {
        for w in ["gbr", "gbgbrr", "gbrgbr", "ggbbrr"] {
            let w = word(w);
            let s = decode(&w).unwrap();
            let enc = encode(&s, spec_cw(Color::B)).unwrap();
            assert_eq!(enc.word, w, "roundtrip of {w}");
        }
    }

    #[test]
    fn color_symmetry_small() {
        for w in ["gbr", "gbgbrr", "gbrgbr", "ggbbrr"] {
            let s = decode(&word(w)).unwrap();
            for c in [Color::R, Color::G] {
                let enc = encode(&s, spec_cw(c)).unwrap();
                assert!(validate_wn(&enc.word).is_member(), "{w} under {c}: {}", enc.word);
            }
        }
    }

    #[test]
    fn green_set_examples() {
        assert_eq!(green_set(&word("gbgbrr"), 2).unwrap(), vec![3]);
        assert_eq!(green_set(&word("gbr"), 2).unwrap(), Vec::<i64>::new());
        assert_eq!(green_set(&word("ggbbrr"), 3).unwrap(), Vec::<i64>::new());
        assert_eq!(green_set(&word("ggbbrr"), 4).unwrap(), Vec::<i64>::new());
        assert!(green_set(&word("gbr"), 1).is_err());
    }

    #[test]
    fn dual_profile_examples() {
        let p = dual_profile(&word("gbgbrr")).unwrap();
        assert!(p.blue_matches_lb);
        assert!(p.red_matches_walk);
        let blues: Vec<usize> = p.rows.iter().map(|r| r.blue_len).collect();
        assert_eq!(blues, vec![0, 1, 1, 2, 1, 0]);

        let p = dual_profile(&word("gbr")).unwrap();
        assert!(p.blue_matches_lb);
        assert!(p.red_matches_walk);
        let blues: Vec<usize> = p.rows.iter().map(|r| r.blue_len).collect();
        assert_eq!(blues, vec![0, 1, 0]);
    }

    #[test]
    fn ccw_is_not_string_reversal() {
        // The ccw blue walk is a genuine exploration, generally different
        // from the reversed cw word.
        let s = decode(&word("gbgbrr")).unwrap();
        let ccw = encode(&s, ExplorationSpec { color: Color::B, direction: Direction::Ccw }).unwrap();
        assert_eq!(ccw.word.len(), 6);
        assert!(validate_wn(&ccw.word).is_member());
    }
}
