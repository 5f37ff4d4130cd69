use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::color::Color;
use crate::maps::{
    CombMap, Dart, Edge, EdgeKind, FaceSet, Vertex, WoodedTriangulation,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MbrError {
    #[error("vertex {0:?} lost all its darts in the blue+red submap")]
    IsolatedVertex(Vertex),
    #[error("dual {0} tree is not a spanning tree rooted at the outer face: {1}")]
    BrokenDual(Color, String),
    #[error("count mismatch: {0}")]
    Counts(String),
}

/// The submap `M_br` of all blue and red edges plus the outer edge `AbAr`,
/// with its face list, the face identification maps `F` and `F~`, and both
/// dual trees.
///
/// The local map reuses the parent's edge indices through `parent_edge`;
/// `F`/`F~` are indexed by parent edge id and cover every inner edge of the
/// parent (green edges map to the face containing them).
#[derive(Clone, Debug)]
pub struct MbrMap {
    map: CombMap,
    faces: FaceSet,
    parent_edge: Vec<usize>,
    local_edge: HashMap<usize, usize>,
    f_of: Vec<Option<usize>>,
    f_tilde_of: Vec<Option<usize>>,
    outer_face: usize,
    dual_blue_parent: Vec<Option<(usize, usize)>>,
    dual_red_parent: Vec<Option<(usize, usize)>>,
    n: usize,
}

/// A branch of a dual tree from a face to the dual root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFlowPath {
    pub color: Color,
    /// Faces visited, starting at the queried face and ending at the root.
    pub faces: Vec<usize>,
    /// Primal edges crossed by the dual steps; its length is the flow-line
    /// length.
    pub crossed: Vec<usize>,
}

impl DualFlowPath {
    pub fn len(&self) -> usize {
        self.crossed.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossed.is_empty()
    }
}

impl MbrMap {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn faces(&self) -> &FaceSet {
        &self.faces
    }

    pub fn outer_face(&self) -> usize {
        self.outer_face
    }

    pub fn inner_face_count(&self) -> usize {
        self.faces.len() - 1
    }

    /// Parent edge id of a local edge.
    pub fn parent_edge(&self, local: usize) -> usize {
        self.parent_edge[local]
    }

    pub fn local_edge(&self, parent: usize) -> Option<usize> {
        self.local_edge.get(&parent).copied()
    }

    /// `F`: the face left of a blue or red edge, the containing face of a
    /// green edge. Indexed by parent edge id; `None` for outer edges.
    pub fn f(&self, parent_edge: usize) -> Option<usize> {
        self.f_of.get(parent_edge).copied().flatten()
    }

    /// `F~`: right instead of left.
    pub fn f_tilde(&self, parent_edge: usize) -> Option<usize> {
        self.f_tilde_of.get(parent_edge).copied().flatten()
    }

    /// Parent pointer of the dual tree: for blue, the dual edge from the
    /// right face to the left face of each red edge; for red, from the left
    /// face to the right face of each blue edge. Values are
    /// `(parent face, crossed parent edge)`.
    pub fn dual_parent(&self, color: Color, face: usize) -> Option<(usize, usize)> {
        match color {
            Color::B => self.dual_blue_parent[face],
            Color::R => self.dual_red_parent[face],
            Color::G => None,
        }
    }

    /// Edge count of the dual tree (one per red or blue edge).
    pub fn dual_edge_count(&self, color: Color) -> usize {
        let parents = match color {
            Color::B => &self.dual_blue_parent,
            Color::R => &self.dual_red_parent,
            Color::G => return 0,
        };
        parents.iter().flatten().count()
    }

    pub fn dual_flow_line(&self, face: usize, color: Color) -> DualFlowPath {
        let mut faces = vec![face];
        let mut crossed = Vec::new();
        let mut cur = face;
        while let Some((next, via)) = self.dual_parent(color, cur) {
            crossed.push(via);
            faces.push(next);
            cur = next;
        }
        debug_assert_eq!(cur, self.outer_face);
        DualFlowPath { color, faces, crossed }
    }
}

/// Builds `M_br` from a valid wooded triangulation.
pub fn build_mbr(s: &WoodedTriangulation) -> Result<MbrMap, MbrError> {
    let n = s.n();
    let keep = |e: usize| -> bool {
        match s.edge(e).kind {
            EdgeKind::Colored(Color::B) | EdgeKind::Colored(Color::R) => true,
            EdgeKind::Outer => e == s.outer_edge(Color::B),
            _ => false,
        }
    };

    let mut parent_edge = Vec::with_capacity(2 * n + 1);
    let mut local_edge = HashMap::with_capacity(2 * n + 1);
    let mut edges: Vec<Edge> = Vec::with_capacity(2 * n + 1);
    for (e, edge) in s.map().edges().iter().enumerate() {
        if keep(e) {
            local_edge.insert(e, edges.len());
            parent_edge.push(e);
            edges.push(*edge);
        }
    }

    let mut rotation: BTreeMap<Vertex, Vec<Dart>> = BTreeMap::new();
    for v in s.map().vertices() {
        if v == Vertex::outer(Color::G) {
            continue;
        }
        let darts: Vec<Dart> = s
            .map()
            .rotation(v)
            .iter()
            .filter(|d| keep(d.edge()))
            .map(|d| {
                let local = local_edge[&d.edge()];
                if d.is_forward() {
                    Dart::forward(local)
                } else {
                    Dart::backward(local)
                }
            })
            .collect();
        if darts.is_empty() {
            return Err(MbrError::IsolatedVertex(v));
        }
        rotation.insert(v, darts);
    }

    let map = CombMap::build(edges, rotation).map_err(|e| MbrError::Counts(e.to_string()))?;
    let faces = map.trace_faces();

    let v = map.vertex_count();
    let e = map.edges().len();
    if v != n + 2 || e != 2 * n + 1 || faces.len() != n + 1 {
        return Err(MbrError::Counts(format!(
            "V={v} (want {}), E={e} (want {}), F={} (want {})",
            n + 2,
            2 * n + 1,
            faces.len(),
            n + 1
        )));
    }

    let local_ab_ar = local_edge[&s.outer_edge(Color::B)];
    let outer_face = faces.face_of(Dart::backward(local_ab_ar));

    // F / F~ per parent edge. Blue/red: left and right faces. Green with an
    // inner head v: the face left of v's blue out-edge (the green edges
    // triangulate that face); green into Ag: the unbounded face.
    let mut f_of = vec![None; s.map().edges().len()];
    let mut f_tilde_of = vec![None; s.map().edges().len()];
    for (pe, edge) in s.inner_edges() {
        match edge.color() {
            Some(Color::B) | Some(Color::R) => {
                let local = local_edge[&pe];
                f_of[pe] = Some(faces.face_of(Dart::forward(local)));
                f_tilde_of[pe] = Some(faces.face_of(Dart::backward(local)));
            }
            Some(Color::G) => {
                let face = match edge.head {
                    Vertex::Inner(hv) => {
                        let blue_out = s
                            .out_edge(hv, Color::B)
                            .ok_or_else(|| MbrError::Counts(format!("vertex {hv} lacks a blue out-edge")))?;
                        faces.face_of(Dart::forward(local_edge[&blue_out]))
                    }
                    Vertex::Outer(_) => outer_face,
                };
                f_of[pe] = Some(face);
                f_tilde_of[pe] = Some(face);
            }
            None => unreachable!("inner edges are colored"),
        }
    }

    // Dual trees. Blue: counterclockwise rotation of each red edge (right
    // face -> left face). Red: clockwise rotation of each blue edge (left ->
    // right).
    let mut dual_blue_parent = vec![None; faces.len()];
    let mut dual_red_parent = vec![None; faces.len()];
    for (pe, edge) in s.inner_edges() {
        match edge.color() {
            Some(Color::R) => {
                let from = f_tilde_of[pe].expect("red has faces");
                let to = f_of[pe].expect("red has faces");
                if from == outer_face {
                    return Err(MbrError::BrokenDual(Color::B, format!("red edge {pe} has the outer face on its right")));
                }
                if dual_blue_parent[from].replace((to, pe)).is_some() {
                    return Err(MbrError::BrokenDual(Color::B, format!("face {from} has two dual parents")));
                }
            }
            Some(Color::B) => {
                let from = f_of[pe].expect("blue has faces");
                let to = f_tilde_of[pe].expect("blue has faces");
                if from == outer_face {
                    return Err(MbrError::BrokenDual(Color::R, format!("blue edge {pe} has the outer face on its left")));
                }
                if dual_red_parent[from].replace((to, pe)).is_some() {
                    return Err(MbrError::BrokenDual(Color::R, format!("face {from} has two dual parents")));
                }
            }
            _ => {}
        }
    }
    for (color, parents) in [(Color::B, &dual_blue_parent), (Color::R, &dual_red_parent)] {
        for face in 0..faces.len() {
            if face != outer_face && parents[face].is_none() {
                return Err(MbrError::BrokenDual(color, format!("face {face} has no dual parent")));
            }
            // Reaching the root from every face also rules out cycles.
            let mut cur = face;
            let mut hops = 0;
            while let Some((next, _)) = parents[cur] {
                cur = next;
                hops += 1;
                if hops > faces.len() {
                    return Err(MbrError::BrokenDual(color, format!("cycle above face {face}")));
                }
            }
            if cur != outer_face {
                return Err(MbrError::BrokenDual(color, format!("face {face} does not reach the root")));
            }
        }
    }

    Ok(MbrMap {
        map,
        faces,
        parent_edge,
        local_edge,
        f_of,
        f_tilde_of,
        outer_face,
        dual_blue_parent,
        dual_red_parent,
        n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::test_maps::n1;

    #[test]
    fn n1_mbr_shape() {
        let s = n1();
        let m = build_mbr(&s).unwrap();
        assert_eq!(m.faces().len(), 2);
        assert_eq!(m.inner_face_count(), 1);
        let inner = (0..2).find(|&f| f != m.outer_face()).unwrap();
        // F(blue edge 1) is the unique inner face.
        assert_eq!(m.f(1), Some(inner));
        // F of the green edge (head Ag) is the unbounded face.
        assert_eq!(m.f(0), Some(m.outer_face()));
        // Dual trees: one edge each, inner -> outer.
        assert_eq!(m.dual_parent(Color::B, inner), Some((m.outer_face(), 2)));
        assert_eq!(m.dual_parent(Color::R, inner), Some((m.outer_face(), 1)));
        assert_eq!(m.dual_flow_line(inner, Color::B).len(), 1);
        assert_eq!(m.dual_flow_line(m.outer_face(), Color::B).len(), 0);
    }
}
