use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::color::Color;
use crate::maps::{MapError, OuterCorner, RotationSpec, Vertex, WoodedTriangulation};

#[derive(Error, Debug)]
pub enum JsonError {
    #[error("json: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("schema: {0}")]
    Schema(String),
    #[error(transparent)]
    Map(#[from] MapError),
}

fn vertex_to_value(v: Vertex) -> Value {
    match v {
        Vertex::Inner(id) => json!(id),
        Vertex::Outer(o) => json!(o.name()),
    }
}

fn vertex_from_value(v: &Value) -> Result<Vertex, JsonError> {
    if let Some(id) = v.as_i64() {
        return Ok(Vertex::Inner(id));
    }
    if let Some(s) = v.as_str() {
        if let Some(o) = OuterCorner::from_name(s) {
            return Ok(Vertex::Outer(o));
        }
    }
    Err(JsonError::Schema(format!("bad vertex {v}")))
}

const OUTER_NAMES: [&str; 3] = ["AbAr", "ArAg", "AgAb"];

/// Serializes a map to the interchange schema: inner edges in index order,
/// rotations keyed by vertex with inner edges as indices and outer edges as
/// `"AbAr" | "ArAg" | "AgAb"`. Key order is deterministic: inner vertices
/// ascending, then `Ab`, `Ar`, `Ag`.
pub fn map_to_json(s: &WoodedTriangulation) -> Value {
    let ne = s.inner_edge_count();
    let edges: Vec<Value> = s
        .inner_edges()
        .map(|(_, e)| {
            json!({
                "tail": vertex_to_value(e.tail),
                "head": vertex_to_value(e.head),
                "color": e.color().expect("inner edges are colored").as_char().to_string(),
            })
        })
        .collect();

    let mut rotation = Map::new();
    let mut vertices: Vec<Vertex> = s.map().vertices().collect();
    vertices.sort();
    for v in vertices {
        let key = match v {
            Vertex::Inner(id) => id.to_string(),
            Vertex::Outer(o) => o.name().to_string(),
        };
        let entries: Vec<Value> = s
            .map()
            .rotation(v)
            .iter()
            .map(|d| {
                let e = d.edge();
                if e < ne {
                    json!(e)
                } else {
                    json!(OUTER_NAMES[e - ne])
                }
            })
            .collect();
        rotation.insert(key, Value::Array(entries));
    }

    json!({
        "n": s.n(),
        "edges": edges,
        "rotation": Value::Object(rotation),
    })
}

pub fn map_to_json_string(s: &WoodedTriangulation) -> String {
    serde_json::to_string_pretty(&map_to_json(s)).expect("serializable")
}

pub fn map_from_json(v: &Value) -> Result<WoodedTriangulation, JsonError> {
    let n = v
        .get("n")
        .and_then(Value::as_u64)
        .ok_or_else(|| JsonError::Schema("missing n".into()))? as usize;
    let edges = v
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Schema("missing edges".into()))?;
    if edges.len() != 3 * n {
        return Err(JsonError::Schema(format!(
            "expected {} inner edges for n={n}, found {}",
            3 * n,
            edges.len()
        )));
    }
    let mut inner = Vec::with_capacity(edges.len());
    for e in edges {
        let tail = vertex_from_value(e.get("tail").ok_or_else(|| JsonError::Schema("edge missing tail".into()))?)?;
        let head = vertex_from_value(e.get("head").ok_or_else(|| JsonError::Schema("edge missing head".into()))?)?;
        let color = e
            .get("color")
            .and_then(Value::as_str)
            .and_then(|s| s.chars().next())
            .and_then(Color::from_char)
            .ok_or_else(|| JsonError::Schema("edge missing color".into()))?;
        inner.push((tail, head, color));
    }

    let rotation_obj = v
        .get("rotation")
        .and_then(Value::as_object)
        .ok_or_else(|| JsonError::Schema("missing rotation".into()))?;
    let mut rotation = RotationSpec::new();
    for (key, entries) in rotation_obj {
        let vertex = if let Some(o) = OuterCorner::from_name(key) {
            Vertex::Outer(o)
        } else {
            Vertex::Inner(
                key.parse::<i64>()
                    .map_err(|_| JsonError::Schema(format!("bad rotation key {key}")))?,
            )
        };
        let list = entries
            .as_array()
            .ok_or_else(|| JsonError::Schema(format!("rotation at {key} is not an array")))?;
        let mut resolved = Vec::with_capacity(list.len());
        for item in list {
            if let Some(idx) = item.as_u64() {
                resolved.push(idx as usize);
            } else if let Some(s) = item.as_str() {
                let pos = OUTER_NAMES
                    .iter()
                    .position(|&o| o == s)
                    .ok_or_else(|| JsonError::Schema(format!("bad outer edge name {s}")))?;
                resolved.push(3 * n + pos);
            } else {
                return Err(JsonError::Schema(format!("bad rotation entry {item}")));
            }
        }
        rotation.insert(vertex, resolved);
    }

    Ok(WoodedTriangulation::build(n, inner, rotation)?)
}

pub fn map_from_json_str(s: &str) -> Result<WoodedTriangulation, JsonError> {
    map_from_json(&serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::maps::test_maps::n1;

    #[test]
    fn json_roundtrip_n1() {
        let s = n1();
        let text = map_to_json_string(&s);
        let back = map_from_json_str(&text).unwrap();
        assert_eq!(s.map().edges(), back.map().edges());
        assert_eq!(map_to_json_string(&back), text);
    }

    #[test]
    fn json_deterministic() {
        let s = n1();
        assert_eq!(map_to_json_string(&s), map_to_json_string(&s.clone()));
    }
}
