//! Rotation-system combinatorial maps for wooded triangulations.
//!
//! The ground truth is a directed colored edge list plus an explicit
//! clockwise rotation (cyclic dart order) at every vertex; faces are derived
//! by the standard next-dart face walk, so no geometric embedding is stored.

mod color_algo;
mod json;
mod mbr;
pub(crate) mod validate;

pub use color_algo::{color_orientation, ColorError};
pub use json::{map_from_json, map_from_json_str, map_to_json, map_to_json_string, JsonError};
pub use mbr::{build_mbr, DualFlowPath, MbrError, MbrMap};
pub use validate::{validate_schnyder, SchnyderReport, SchnyderViolation};

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::color::Color;

pub type InnerId = i64;

/// A vertex: an inner vertex (identified by the 1-based position of its `b`
/// symbol when the map comes from a word) or one of the outer corners.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Vertex {
    Inner(InnerId),
    Outer(OuterCorner),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum OuterCorner {
    Ab,
    Ar,
    Ag,
}

impl OuterCorner {
    pub const ALL: [OuterCorner; 3] = [OuterCorner::Ab, OuterCorner::Ar, OuterCorner::Ag];

    pub fn of(color: Color) -> OuterCorner {
        match color {
            Color::B => OuterCorner::Ab,
            Color::R => OuterCorner::Ar,
            Color::G => OuterCorner::Ag,
        }
    }

    pub fn color(self) -> Color {
        match self {
            OuterCorner::Ab => Color::B,
            OuterCorner::Ar => Color::R,
            OuterCorner::Ag => Color::G,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OuterCorner::Ab => "Ab",
            OuterCorner::Ar => "Ar",
            OuterCorner::Ag => "Ag",
        }
    }

    pub fn from_name(s: &str) -> Option<OuterCorner> {
        match s {
            "Ab" => Some(OuterCorner::Ab),
            "Ar" => Some(OuterCorner::Ar),
            "Ag" => Some(OuterCorner::Ag),
            _ => None,
        }
    }
}

impl Vertex {
    pub fn outer(color: Color) -> Vertex {
        Vertex::Outer(OuterCorner::of(color))
    }

    pub fn is_inner(self) -> bool {
        matches!(self, Vertex::Inner(_))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EdgeKind {
    /// Directed inner edge carrying a Schnyder color.
    Colored(Color),
    /// Directed inner edge of a bare 3-orientation.
    Plain,
    /// One of the three undirected outer edges; stored with a canonical
    /// tail/head but treated as undirected.
    Outer,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Edge {
    pub tail: Vertex,
    pub head: Vertex,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn color(&self) -> Option<Color> {
        match self.kind {
            EdgeKind::Colored(c) => Some(c),
            _ => None,
        }
    }
}

/// A dart is one of the two ends of an edge: `2e` sits at the tail (the
/// forward traversal), `2e + 1` at the head.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Dart(pub u32);

impl Dart {
    pub fn forward(edge: usize) -> Dart {
        Dart(2 * edge as u32)
    }

    pub fn backward(edge: usize) -> Dart {
        Dart(2 * edge as u32 + 1)
    }

    pub fn edge(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_forward(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn reversed(self) -> Dart {
        Dart(self.0 ^ 1)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("edge {0} is a loop")]
    Loop(usize),
    #[error("rotation at {0:?} references edge {1}, which is not incident to it")]
    NotIncident(Vertex, usize),
    #[error("rotation at {0:?} is missing a dart of edge {1}")]
    MissingDart(Vertex, usize),
    #[error("vertex {0:?} appears in an edge but has no rotation")]
    MissingRotation(Vertex),
    #[error("rotation at {0:?} lists edge {1} more than its incidence")]
    DuplicateDart(Vertex, usize),
    #[error("colored edge {0} does not leave an inner vertex")]
    BadTail(usize),
    #[error("expected {expected} outer edges in canonical order, found mismatch at {index}")]
    OuterEdges { expected: usize, index: usize },
}

/// The shared rotation-system core: edges plus the clockwise dart order at
/// every vertex.
#[derive(Clone, Debug)]
pub struct CombMap {
    edges: Vec<Edge>,
    rotation: BTreeMap<Vertex, Vec<Dart>>,
    dart_pos: HashMap<Dart, (Vertex, usize)>,
}

impl CombMap {
    /// Builds and checks structural coherence: every dart appears exactly
    /// once, at the vertex it leaves.
    pub fn build(
        edges: Vec<Edge>,
        rotation: BTreeMap<Vertex, Vec<Dart>>,
    ) -> Result<CombMap, MapError> {
        let mut dart_pos = HashMap::with_capacity(2 * edges.len());
        for (e, edge) in edges.iter().enumerate() {
            if edge.tail == edge.head {
                return Err(MapError::Loop(e));
            }
        }
        for (&v, darts) in &rotation {
            for (pos, &d) in darts.iter().enumerate() {
                let e = d.edge();
                let edge = edges.get(e).ok_or(MapError::NotIncident(v, e))?;
                let from = if d.is_forward() { edge.tail } else { edge.head };
                if from != v {
                    return Err(MapError::NotIncident(v, e));
                }
                if dart_pos.insert(d, (v, pos)).is_some() {
                    return Err(MapError::DuplicateDart(v, e));
                }
            }
        }
        for (e, edge) in edges.iter().enumerate() {
            for (d, v) in [
                (Dart::forward(e), edge.tail),
                (Dart::backward(e), edge.head),
            ] {
                match dart_pos.get(&d) {
                    Some(&(at, _)) if at == v => {}
                    Some(_) => return Err(MapError::NotIncident(v, e)),
                    None => {
                        if rotation.contains_key(&v) {
                            return Err(MapError::MissingDart(v, e));
                        }
                        return Err(MapError::MissingRotation(v));
                    }
                }
            }
        }
        Ok(CombMap { edges, rotation, dart_pos })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.rotation.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotation(&self, v: Vertex) -> &[Dart] {
        self.rotation.get(&v).map(|d| d.as_slice()).unwrap_or(&[])
    }

    /// Vertex the dart leaves.
    pub fn from_of(&self, d: Dart) -> Vertex {
        let e = self.edge(d.edge());
        if d.is_forward() {
            e.tail
        } else {
            e.head
        }
    }

    /// Vertex the dart points at.
    pub fn to_of(&self, d: Dart) -> Vertex {
        self.from_of(d.reversed())
    }

    /// Clockwise successor around the dart's origin vertex.
    pub fn cw_next(&self, d: Dart) -> Dart {
        let (v, pos) = self.dart_pos[&d];
        let darts = &self.rotation[&v];
        darts[(pos + 1) % darts.len()]
    }

    /// Next dart along the face lying left of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.cw_next(d.reversed())
    }

    /// Decomposes all darts into faces; each dart belongs to the face on its
    /// left.
    pub fn trace_faces(&self) -> FaceSet {
        let mut face_of = HashMap::with_capacity(2 * self.edges.len());
        let mut faces = Vec::new();
        for e in 0..self.edges.len() {
            for d0 in [Dart::forward(e), Dart::backward(e)] {
                if face_of.contains_key(&d0) {
                    continue;
                }
                let id = faces.len();
                let mut cycle = Vec::new();
                let mut d = d0;
                loop {
                    face_of.insert(d, id);
                    cycle.push(d);
                    d = self.face_next(d);
                    if d == d0 {
                        break;
                    }
                }
                faces.push(cycle);
            }
        }
        FaceSet { faces, face_of }
    }
}

/// Faces of a rotation map. `faces[i]` lists the boundary darts in order;
/// the face lies left of each of them.
#[derive(Clone, Debug)]
pub struct FaceSet {
    pub faces: Vec<Vec<Dart>>,
    face_of: HashMap<Dart, usize>,
}

impl FaceSet {
    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[&d]
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }
}

/// A Schnyder-wood-decorated simple plane triangulation of size `n`.
///
/// Inner edges occupy indices `0..3n` (word order when the map was decoded
/// from a word); the outer edges sit at `3n..3n + 3` in the canonical order
/// `AbAr`, `ArAg`, `AgAb`.
#[derive(Clone, Debug)]
pub struct WoodedTriangulation {
    n: usize,
    map: CombMap,
    faces: FaceSet,
}

/// Rotation entries handed to the builders: an edge index is resolved to the
/// dart at the vertex in question.
pub type RotationSpec = BTreeMap<Vertex, Vec<usize>>;

fn resolve_rotation(edges: &[Edge], spec: &RotationSpec) -> Result<BTreeMap<Vertex, Vec<Dart>>, MapError> {
    let mut rotation = BTreeMap::new();
    for (&v, list) in spec {
        let mut darts = Vec::with_capacity(list.len());
        for &e in list {
            let edge = edges.get(e).ok_or(MapError::NotIncident(v, e))?;
            let d = if edge.tail == v {
                Dart::forward(e)
            } else if edge.head == v {
                Dart::backward(e)
            } else {
                return Err(MapError::NotIncident(v, e));
            };
            darts.push(d);
        }
        rotation.insert(v, darts);
    }
    Ok(rotation)
}

/// The three outer edges in canonical order, for size-`n` maps they occupy
/// indices `3n`, `3n + 1`, `3n + 2`.
pub fn outer_edges() -> [Edge; 3] {
    [
        Edge { tail: Vertex::outer(Color::B), head: Vertex::outer(Color::R), kind: EdgeKind::Outer },
        Edge { tail: Vertex::outer(Color::R), head: Vertex::outer(Color::G), kind: EdgeKind::Outer },
        Edge { tail: Vertex::outer(Color::G), head: Vertex::outer(Color::B), kind: EdgeKind::Outer },
    ]
}

impl WoodedTriangulation {
    /// Builds a wooded triangulation from its inner edges (word order) and
    /// full rotation spec. Outer edges are appended automatically and are
    /// referenced in rotations by their indices `3n..3n + 3`.
    pub fn build(
        n: usize,
        inner_edges: Vec<(Vertex, Vertex, Color)>,
        rotation: RotationSpec,
    ) -> Result<WoodedTriangulation, MapError> {
        let mut edges: Vec<Edge> = inner_edges
            .into_iter()
            .map(|(tail, head, c)| Edge { tail, head, kind: EdgeKind::Colored(c) })
            .collect();
        for (e, edge) in edges.iter().enumerate() {
            if !edge.tail.is_inner() {
                return Err(MapError::BadTail(e));
            }
        }
        edges.extend(outer_edges());
        let rotation = resolve_rotation(&edges, &rotation)?;
        let map = CombMap::build(edges, rotation)?;
        let faces = map.trace_faces();
        Ok(WoodedTriangulation { n, map, faces })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn inner_edge_count(&self) -> usize {
        3 * self.n
    }

    pub fn edge(&self, e: usize) -> &Edge {
        self.map.edge(e)
    }

    pub fn inner_edges(&self) -> impl Iterator<Item = (usize, &Edge)> {
        self.map.edges()[..self.inner_edge_count()].iter().enumerate()
    }

    /// Index of the outer edge between `A_c` and `A_{next(c)}`.
    pub fn outer_edge(&self, c: Color) -> usize {
        self.inner_edge_count()
            + match c {
                Color::B => 0,
                Color::R => 1,
                Color::G => 2,
            }
    }

    pub fn inner_vertices(&self) -> impl Iterator<Item = InnerId> + '_ {
        self.map.vertices().filter_map(|v| match v {
            Vertex::Inner(id) => Some(id),
            _ => None,
        })
    }

    /// The unbounded face: the face right of the canonical `Ab -> Ar` edge.
    pub fn outer_face(&self) -> usize {
        self.faces.face_of(Dart::backward(self.outer_edge(Color::B)))
    }

    /// The unique outgoing edge of the given color at an inner vertex.
    pub fn out_edge(&self, v: InnerId, color: Color) -> Option<usize> {
        self.map
            .rotation(Vertex::Inner(v))
            .iter()
            .filter(|d| d.is_forward())
            .map(|d| d.edge())
            .find(|&e| self.edge(e).color() == Some(color))
    }

    pub fn green_indegree(&self, v: InnerId) -> usize {
        self.map
            .rotation(Vertex::Inner(v))
            .iter()
            .filter(|d| !d.is_forward() && self.edge(d.edge()).color() == Some(Color::G))
            .count()
    }

    /// Drops the colors, keeping directions and rotations.
    pub fn strip_colors(&self) -> Orientation3 {
        let edges = self
            .map
            .edges()
            .iter()
            .map(|e| Edge {
                kind: match e.kind {
                    EdgeKind::Colored(_) => EdgeKind::Plain,
                    k => k,
                },
                ..*e
            })
            .collect();
        let map = CombMap {
            edges,
            rotation: self.map.rotation.clone(),
            dart_pos: self.map.dart_pos.clone(),
        };
        Orientation3 { n: self.n, map }
    }

    /// Applies the cyclic color relabeling `b -> r -> g -> b` `shift` times,
    /// renaming outer vertices accordingly. Edge indices are preserved for
    /// inner edges; outer edges are re-sorted into canonical order.
    pub fn relabel_cyclic(&self, shift: u8) -> WoodedTriangulation {
        let shift = shift % 3;
        let mapc = |c: Color| {
            let mut c = c;
            for _ in 0..shift {
                c = c.next();
            }
            c
        };
        let mapv = |v: Vertex| match v {
            Vertex::Inner(id) => Vertex::Inner(id),
            Vertex::Outer(o) => Vertex::outer(mapc(o.color())),
        };
        let ne = self.inner_edge_count();
        let inner: Vec<(Vertex, Vertex, Color)> = self.map.edges()[..ne]
            .iter()
            .map(|e| (mapv(e.tail), mapv(e.head), mapc(e.color().expect("inner"))))
            .collect();
        // Outer edge {A_c, A_next(c)} becomes {A_mapc(c), A_mapc(next(c))},
        // i.e. the canonical outer edge of color mapc(c).
        let outer_index = |old: usize| {
            let c = [Color::B, Color::R, Color::G][old - ne];
            let c2 = mapc(c);
            ne + match c2 {
                Color::B => 0,
                Color::R => 1,
                Color::G => 2,
            }
        };
        let mut rotation: RotationSpec = BTreeMap::new();
        for v in self.map.vertices() {
            let list = self
                .map
                .rotation(v)
                .iter()
                .map(|d| {
                    let e = d.edge();
                    if e < ne {
                        e
                    } else {
                        outer_index(e)
                    }
                })
                .collect();
            rotation.insert(mapv(v), list);
        }
        WoodedTriangulation::build(self.n, inner, rotation).expect("relabeling preserves coherence")
    }
}

/// A 3-orientation: the same map with directed, uncolored inner edges.
#[derive(Clone, Debug)]
pub struct Orientation3 {
    n: usize,
    map: CombMap,
}

impl Orientation3 {
    pub fn build(
        n: usize,
        inner_edges: Vec<(Vertex, Vertex)>,
        rotation: RotationSpec,
    ) -> Result<Orientation3, MapError> {
        let mut edges: Vec<Edge> = inner_edges
            .into_iter()
            .map(|(tail, head)| Edge { tail, head, kind: EdgeKind::Plain })
            .collect();
        for (e, edge) in edges.iter().enumerate() {
            if !edge.tail.is_inner() {
                return Err(MapError::BadTail(e));
            }
        }
        edges.extend(outer_edges());
        let rotation = resolve_rotation(&edges, &rotation)?;
        let map = CombMap::build(edges, rotation)?;
        Ok(Orientation3 { n, map })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn inner_edge_count(&self) -> usize {
        3 * self.n
    }

    pub fn out_degree(&self, v: InnerId) -> usize {
        self.map
            .rotation(Vertex::Inner(v))
            .iter()
            .filter(|d| d.is_forward() && d.edge() < self.inner_edge_count())
            .count()
    }
}

/// A monochrome directed path from a vertex to its outer corner.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlowPath {
    pub color: Color,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<usize>,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FlowError {
    #[error("vertex {0} has no outgoing {1} edge")]
    NoOutEdge(InnerId, Color),
    #[error("flow line revisits vertex {0:?}; the map is corrupted")]
    NotSimple(Vertex),
}

/// Follows the unique outgoing edge of `color` from `v` until an outer
/// vertex.
pub fn flow_line(s: &WoodedTriangulation, v: InnerId, color: Color) -> Result<FlowPath, FlowError> {
    let mut vertices = vec![Vertex::Inner(v)];
    let mut edges = Vec::new();
    let mut cur = v;
    let mut seen = std::collections::HashSet::new();
    seen.insert(Vertex::Inner(v));
    loop {
        let e = s.out_edge(cur, color).ok_or(FlowError::NoOutEdge(cur, color))?;
        let head = s.edge(e).head;
        edges.push(e);
        if !seen.insert(head) {
            return Err(FlowError::NotSimple(head));
        }
        vertices.push(head);
        match head {
            Vertex::Inner(id) => cur = id,
            Vertex::Outer(_) => return Ok(FlowPath { color, vertices, edges }),
        }
    }
}

#[cfg(test)]
pub(crate) mod test_maps {
    use super::*;

    /// The unique n = 1 wooded triangulation: inner vertex 2 (word "gbr"),
    /// edges green(0): 2 -> Ag, blue(1): 2 -> Ab, red(2): 2 -> Ar.
    pub fn n1() -> WoodedTriangulation {
        let v = Vertex::Inner(2);
        let inner = vec![
            (v, Vertex::outer(Color::G), Color::G),
            (v, Vertex::outer(Color::B), Color::B),
            (v, Vertex::outer(Color::R), Color::R),
        ];
        let mut rot: RotationSpec = BTreeMap::new();
        rot.insert(v, vec![1, 0, 2]); // b_out, g_out, r_out
        rot.insert(Vertex::outer(Color::B), vec![5, 1, 3]); // AgAb, blue-in, AbAr
        rot.insert(Vertex::outer(Color::R), vec![3, 2, 4]); // AbAr, red-in, ArAg
        rot.insert(Vertex::outer(Color::G), vec![4, 0, 5]); // ArAg, green-in, AgAb
        WoodedTriangulation::build(1, inner, rot).unwrap()
    }

    #[test]
    fn n1_faces() {
        let s = n1();
        assert_eq!(s.faces().len(), 4);
        for f in &s.faces().faces {
            assert_eq!(f.len(), 3);
        }
        let outer = s.outer_face();
        // Outer face is bounded by the three outer edges.
        let boundary: Vec<usize> = s.faces().faces[outer].iter().map(|d| d.edge()).collect();
        let mut b = boundary.clone();
        b.sort_unstable();
        assert_eq!(b, vec![3, 4, 5]);
    }

    #[test]
    fn n1_flow_lines() {
        let s = n1();
        let red = flow_line(&s, 2, Color::R).unwrap();
        assert_eq!(red.vertices, vec![Vertex::Inner(2), Vertex::outer(Color::R)]);
        assert_eq!(red.edges, vec![2]);
    }

    #[test]
    fn n1_green_indegree() {
        assert_eq!(n1().green_indegree(2), 0);
    }

    #[test]
    fn relabel_cycles_home() {
        let s = n1();
        let r3 = s.relabel_cyclic(1).relabel_cyclic(1).relabel_cyclic(1);
        assert_eq!(s.map().edges(), r3.map().edges());
    }
}
