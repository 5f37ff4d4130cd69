use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::color::Color;
use crate::maps::{Dart, InnerId, OuterCorner, Vertex, WoodedTriangulation};

/// The rotation of an inner vertex split into Schnyder's blocks, read
/// clockwise: the blue outgoing edge, incoming reds, the green outgoing
/// edge, incoming blues, the red outgoing edge, incoming greens.
///
/// `role_b` generalizes the split: passing `Color::R` reads the same cyclic
/// pattern with the colors rotated (r out, incoming greens, b out, incoming
/// reds, g out, incoming blues), which is what the red and green encodings
/// use.
#[derive(Clone, Debug)]
pub struct Corners {
    pub tree_out: usize,
    pub next_in: Vec<usize>,
    pub prev_out: usize,
    pub tree_in: Vec<usize>,
    pub next_out: usize,
    pub prev_in: Vec<usize>,
}

pub(crate) fn parse_corners(
    s: &WoodedTriangulation,
    v: InnerId,
    role_b: Color,
) -> Result<Corners, String> {
    let role_r = role_b.next();
    let role_g = role_b.prev();
    let darts = s.map().rotation(Vertex::Inner(v));
    if darts.is_empty() {
        return Err(format!("vertex {v} has an empty rotation"));
    }
    let mut info = Vec::with_capacity(darts.len());
    for d in darts {
        let color = s
            .edge(d.edge())
            .color()
            .ok_or_else(|| format!("vertex {v} touches an outer edge"))?;
        info.push((d.edge(), color, d.is_forward()));
    }
    let start = info
        .iter()
        .position(|&(_, c, out)| c == role_b && out)
        .ok_or_else(|| format!("vertex {v} has no outgoing {role_b} edge"))?;
    info.rotate_left(start);

    let mut it = info.into_iter().peekable();
    let tree_out = it.next().expect("nonempty").0;
    let take_in = |c: Color, it: &mut std::iter::Peekable<std::vec::IntoIter<(usize, Color, bool)>>| {
        let mut list = Vec::new();
        while let Some(&(e, color, out)) = it.peek() {
            if color == c && !out {
                list.push(e);
                it.next();
            } else {
                break;
            }
        }
        list
    };
    let next_in = take_in(role_r, &mut it);
    let prev_out = match it.next() {
        Some((e, c, true)) if c == role_g => e,
        other => return Err(format!("vertex {v}: expected outgoing {role_g} after incoming {role_r} block, found {other:?}")),
    };
    let tree_in = take_in(role_b, &mut it);
    let next_out = match it.next() {
        Some((e, c, true)) if c == role_r => e,
        other => return Err(format!("vertex {v}: expected outgoing {role_r} after incoming {role_b} block, found {other:?}")),
    };
    let prev_in = take_in(role_g, &mut it);
    if let Some(extra) = it.next() {
        return Err(format!("vertex {v}: rotation does not follow Schnyder's cyclic order, leftover {extra:?}"));
    }
    Ok(Corners { tree_out, next_in, prev_out, tree_in, next_out, prev_in })
}

/// The rotation of outer corner `A_c` split per the construction: the outer
/// edge toward `A_prev(c)`, the incoming `c`-edges, the outer edge toward
/// `A_next(c)`.
pub(crate) fn parse_outer_corner(
    s: &WoodedTriangulation,
    c: Color,
) -> Result<Vec<usize>, String> {
    let v = Vertex::outer(c);
    let darts = s.map().rotation(v);
    let to_prev = s.outer_edge(c.prev()); // edge {A_prev(c), A_c}
    let to_next = s.outer_edge(c); // edge {A_c, A_next(c)}
    if darts.len() < 2 {
        return Err(format!("outer vertex {} has fewer than two darts", OuterCorner::of(c).name()));
    }
    let start = darts
        .iter()
        .position(|d| d.edge() == to_prev)
        .ok_or_else(|| format!("outer vertex {} misses its {to_prev} outer edge", OuterCorner::of(c).name()))?;
    let mut rotated: Vec<Dart> = darts.to_vec();
    rotated.rotate_left(start);
    if rotated.last().map(|d| d.edge()) != Some(to_next) {
        return Err(format!(
            "outer vertex {}: rotation must run from outer edge {} to outer edge {}",
            OuterCorner::of(c).name(),
            to_prev,
            to_next
        ));
    }
    let mut ins = Vec::new();
    for d in &rotated[1..rotated.len() - 1] {
        let edge = s.edge(d.edge());
        if edge.color() != Some(c) || d.is_forward() {
            return Err(format!(
                "outer vertex {}: expected only incoming {c} edges between the outer edges",
                OuterCorner::of(c).name()
            ));
        }
        ins.push(d.edge());
    }
    Ok(ins)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchnyderViolation {
    OutDegree { vertex: InnerId, color: Color, count: usize },
    CyclicOrder { vertex: InnerId, detail: String },
    OuterRotation { corner: &'static str, detail: String },
    EulerCounts { vertices: usize, edges: usize, faces: usize, n: usize },
    NonTriangleFace { face: usize, size: usize },
    NotSimple { detail: String },
    MonochromeTree { color: Color, detail: String },
}

impl fmt::Display for SchnyderViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SchnyderViolation::OutDegree { vertex, color, count } => {
                write!(f, "vertex {vertex} has {count} outgoing {color} edges, expected 1")
            }
            SchnyderViolation::CyclicOrder { vertex, detail } => {
                write!(f, "cyclic-order violation at vertex {vertex}: {detail}")
            }
            SchnyderViolation::OuterRotation { corner, detail } => {
                write!(f, "outer rotation violation at {corner}: {detail}")
            }
            SchnyderViolation::EulerCounts { vertices, edges, faces, n } => {
                write!(f, "Euler counts off for n={n}: V={vertices}, E={edges}, F={faces}")
            }
            SchnyderViolation::NonTriangleFace { face, size } => {
                write!(f, "face {face} has {size} sides, expected 3")
            }
            SchnyderViolation::NotSimple { detail } => write!(f, "map is not simple: {detail}"),
            SchnyderViolation::MonochromeTree { color, detail } => {
                write!(f, "{color} edges do not form a tree: {detail}")
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SchnyderReport {
    pub violations: Vec<SchnyderViolation>,
}

impl SchnyderReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks Schnyder's rule at every inner vertex, the outer rotations, Euler
/// counts, simplicity, triangle faces, and the monochrome-tree property.
/// Violations are data, not errors.
pub fn validate_schnyder(s: &WoodedTriangulation) -> SchnyderReport {
    let mut violations = Vec::new();
    let n = s.n();

    // Simplicity: no loops (enforced at build) and no parallel edges.
    let mut seen_pairs = HashSet::new();
    for (e, edge) in s.map().edges().iter().enumerate() {
        let key = if edge.tail < edge.head {
            (edge.tail, edge.head)
        } else {
            (edge.head, edge.tail)
        };
        if !seen_pairs.insert(key) {
            violations.push(SchnyderViolation::NotSimple {
                detail: format!("parallel edge {e} between {:?} and {:?}", edge.tail, edge.head),
            });
        }
    }

    for v in s.inner_vertices() {
        for color in Color::ALL {
            let count = s
                .map()
                .rotation(Vertex::Inner(v))
                .iter()
                .filter(|d| d.is_forward() && s.edge(d.edge()).color() == Some(color))
                .count();
            if count != 1 {
                violations.push(SchnyderViolation::OutDegree { vertex: v, color, count });
            }
        }
        if let Err(detail) = parse_corners(s, v, Color::B) {
            violations.push(SchnyderViolation::CyclicOrder { vertex: v, detail });
        }
    }

    for c in Color::ALL {
        if let Err(detail) = parse_outer_corner(s, c) {
            violations.push(SchnyderViolation::OuterRotation {
                corner: OuterCorner::of(c).name(),
                detail,
            });
        }
    }

    let vertices = s.map().vertex_count();
    let edges = s.map().edges().len();
    let faces = s.faces().len();
    if vertices != n + 3 || edges != 3 * n + 3 || faces != 2 * n + 2 {
        violations.push(SchnyderViolation::EulerCounts { vertices, edges, faces, n });
    }
    for (i, f) in s.faces().faces.iter().enumerate() {
        if f.len() != 3 {
            violations.push(SchnyderViolation::NonTriangleFace { face: i, size: f.len() });
        }
    }

    for color in Color::ALL {
        if let Err(detail) = check_monochrome_tree(s, color) {
            violations.push(SchnyderViolation::MonochromeTree { color, detail });
        }
    }

    SchnyderReport { violations }
}

/// The edges of one color plus the matching outer vertex must form a tree
/// spanning the inner vertices.
fn check_monochrome_tree(s: &WoodedTriangulation, color: Color) -> Result<(), String> {
    let mut ids: HashMap<Vertex, usize> = HashMap::new();
    let root = Vertex::outer(color);
    ids.insert(root, 0);
    for v in s.inner_vertices() {
        let next = ids.len();
        ids.insert(Vertex::Inner(v), next);
    }
    let mut uf: Vec<usize> = (0..ids.len()).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    let mut count = 0usize;
    for (_, edge) in s.inner_edges() {
        if edge.color() != Some(color) {
            continue;
        }
        count += 1;
        let (&a, &b) = match (ids.get(&edge.tail), ids.get(&edge.head)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(format!("{color} edge touches a foreign outer vertex")),
        };
        let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
        if ra == rb {
            return Err(format!("{color} edges contain a cycle"));
        }
        uf[ra] = rb;
    }
    if count != s.n() {
        return Err(format!("expected {} {color} edges, found {count}", s.n()));
    }
    let r0 = find(&mut uf, 0);
    for i in 1..ids.len() {
        if find(&mut uf, i) != r0 {
            return Err(format!("{color} edges do not span all inner vertices"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::test_maps::n1;
    use crate::maps::RotationSpec;

    #[test]
    fn n1_is_valid() {
        let report = validate_schnyder(&n1());
        assert!(report.is_valid(), "{:?}", report.violations);
    }

    #[test]
    fn swapped_outgoing_edges_violate_cyclic_order() {
        // Same map as n1 but with green and red outgoing swapped at v.
        let v = Vertex::Inner(2);
        let inner = vec![
            (v, Vertex::outer(Color::G), Color::G),
            (v, Vertex::outer(Color::B), Color::B),
            (v, Vertex::outer(Color::R), Color::R),
        ];
        let mut rot: RotationSpec = RotationSpec::new();
        rot.insert(v, vec![1, 2, 0]); // b_out, r_out, g_out: wrong order
        rot.insert(Vertex::outer(Color::B), vec![5, 1, 3]);
        rot.insert(Vertex::outer(Color::R), vec![3, 2, 4]);
        rot.insert(Vertex::outer(Color::G), vec![4, 0, 5]);
        let s = WoodedTriangulation::build(1, inner, rot).unwrap();
        let report = validate_schnyder(&s);
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, SchnyderViolation::CyclicOrder { vertex: 2, .. })));
    }
}
