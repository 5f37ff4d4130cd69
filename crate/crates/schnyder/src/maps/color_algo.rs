use std::collections::HashSet;

use thiserror::Error;

use crate::color::Color;
use crate::maps::{
    Dart, InnerId, MapError, Orientation3, RotationSpec, Vertex, WoodedTriangulation,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ColorError {
    #[error("inner vertex {0} has out-degree {1}, expected 3")]
    OutDegree(InnerId, usize),
    #[error("COLOR path from edge {0} revisits edge {1}; the input map is corrupted")]
    NonSimplePath(usize, usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// The COLOR algorithm: each inner edge takes the color of the outer vertex
/// reached by repeatedly moving to the second outgoing edge met when
/// rotating clockwise about the current head.
pub fn color_orientation(o: &Orientation3) -> Result<WoodedTriangulation, ColorError> {
    let ne = o.inner_edge_count();
    for v in o.map().vertices() {
        if let Vertex::Inner(id) = v {
            let d = o.out_degree(id);
            if d != 3 {
                return Err(ColorError::OutDegree(id, d));
            }
        }
    }

    let mut colors: Vec<Option<Color>> = vec![None; ne];
    for e0 in 0..ne {
        if colors[e0].is_some() {
            continue;
        }
        let mut path = vec![e0];
        let mut seen: HashSet<usize> = HashSet::new();
        seen.insert(e0);
        let color = loop {
            let e = *path.last().expect("nonempty");
            match o.map().edge(e).head {
                Vertex::Outer(c) => break c.color(),
                Vertex::Inner(_) => {
                    // Second outgoing edge, clockwise from the incoming dart.
                    let mut d = Dart::backward(e);
                    let mut outgoing = 0;
                    let next = loop {
                        d = o.map().cw_next(d);
                        if d.is_forward() && d.edge() < ne {
                            outgoing += 1;
                            if outgoing == 2 {
                                break d.edge();
                            }
                        }
                    };
                    // Edges along a COLOR path share a color; stop early
                    // when we hit one already resolved.
                    if let Some(c) = colors[next] {
                        break c;
                    }
                    if !seen.insert(next) {
                        return Err(ColorError::NonSimplePath(e0, next));
                    }
                    path.push(next);
                }
            }
        };
        for e in path {
            colors[e] = Some(color);
        }
    }

    let inner: Vec<(Vertex, Vertex, Color)> = (0..ne)
        .map(|e| {
            let edge = o.map().edge(e);
            (edge.tail, edge.head, colors[e].expect("assigned"))
        })
        .collect();
    let mut rotation = RotationSpec::new();
    for v in o.map().vertices() {
        rotation.insert(v, o.map().rotation(v).iter().map(|d| d.edge()).collect());
    }
    Ok(WoodedTriangulation::build(o.n(), inner, rotation)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::test_maps::n1;
    use crate::maps::validate_schnyder;

    #[test]
    fn n1_star_recolors() {
        let s = n1();
        let o = s.strip_colors();
        let recolored = color_orientation(&o).unwrap();
        assert!(validate_schnyder(&recolored).is_valid());
        for (e, edge) in s.inner_edges() {
            assert_eq!(edge.color(), recolored.edge(e).color(), "edge {e}");
        }
    }

    #[test]
    fn out_degree_two_rejected() {
        // Two inner vertices, one of which only has two outgoing edges: not
        // a 3-orientation. Build a fake rotation system that is coherent as
        // a map but fails the precondition.
        let v = Vertex::Inner(1);
        let inner = vec![
            (v, Vertex::outer(Color::B)),
            (v, Vertex::outer(Color::R)),
        ];
        let mut rot = RotationSpec::new();
        rot.insert(v, vec![0, 1]);
        rot.insert(Vertex::outer(Color::B), vec![4, 0, 2]);
        rot.insert(Vertex::outer(Color::R), vec![2, 1, 3]);
        rot.insert(Vertex::outer(Color::G), vec![3, 4]);
        let o = Orientation3::build(1, inner, rot).unwrap();
        assert_eq!(color_orientation(&o).unwrap_err(), ColorError::OutDegree(1, 2));
    }
}
