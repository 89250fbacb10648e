//! JSON interchange for buildings, graphs, complexes, fans and polytopes.
//!
//! Indices are 0-based. Object keys come out sorted because every document
//! is assembled as a `serde_json::Value`, whose maps are ordered.

use serde::Deserialize;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::building::{graphical_from_graph, validate_building, BuildingError, BuildingSet, Graph};
use crate::fan::QuotientLattice;
use crate::linalg::Rational;
use crate::nested::NestedComplex;
use crate::polytope::Polytope;
use crate::subset::{GroundSet, Subset};

#[derive(Debug, Error)]
pub enum IoError {
    /// Carries serde's line and column.
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error(transparent)]
    Building(#[from] BuildingError),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct BuildingFile {
    ground_set: usize,
    sets: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

fn subset_in(indices: &[usize], n: usize) -> Result<Subset, BuildingError> {
    if let Some(&element) = indices.iter().find(|&&i| i >= n) {
        return Err(BuildingError::OutOfRange { element, ground: n });
    }
    Ok(Subset::from_indices(indices.iter().copied()))
}

/// Parses `{"ground_set": n, "sets": [[i, ...], ...]}` and validates it.
pub fn parse_building(text: &str) -> Result<BuildingSet, IoError> {
    let file: BuildingFile = serde_json::from_str(text)?;
    let ground =
        GroundSet::new(file.ground_set).ok_or(BuildingError::InvalidGround(file.ground_set))?;
    let sets = file
        .sets
        .iter()
        .map(|s| {
            if s.is_empty() {
                Err(BuildingError::EmptySetMember)
            } else {
                subset_in(s, file.ground_set)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(validate_building(&sets, ground)?)
}

/// Parses `{"vertices": n, "edges": [[i, j], ...]}`.
pub fn parse_graph(text: &str) -> Result<Graph, IoError> {
    let file: GraphFile = serde_json::from_str(text)?;
    let g = Graph::with_edges(file.vertices, file.edges.iter().map(|e| (e[0], e[1])))?;
    Ok(g)
}

/// Parses either format; `graph` selects the graph reading.
pub fn parse_input(text: &str, graph: bool) -> Result<BuildingSet, IoError> {
    if graph {
        Ok(graphical_from_graph(&parse_graph(text)?))
    } else {
        parse_building(text)
    }
}

fn indices(s: Subset) -> Value {
    Value::from(s.iter().collect::<Vec<_>>())
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("values always serialize");
    out.push('\n');
    out
}

pub fn building_json(b: &BuildingSet) -> Value {
    json!({
        "ground_set": b.n(),
        "sets": b.sets().iter().map(|&s| indices(s)).collect::<Vec<_>>(),
    })
}

pub fn graph_json(g: &Graph) -> Value {
    json!({
        "vertices": g.vertex_count(),
        "edges": g.edges().map(|(s, t)| json!([s, t])).collect::<Vec<_>>(),
    })
}

pub fn complex_json(c: &NestedComplex) -> Value {
    json!({
        "f_vector": c.f_vector().coefficients(),
        "maximal_faces": c
            .maximal_faces()
            .iter()
            .map(|n| n.members().iter().map(|&s| indices(s)).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn fan_json(ql: &QuotientLattice, c: &NestedComplex) -> Value {
    let mut rays = Map::new();
    for &v in c.vertices() {
        rays.insert(v.key(), Value::from(ql.ray(v).coords().to_vec()));
    }
    json!({
        "dim": ql.dim(),
        "rays": rays,
        "maximal_cones": c
            .maximal_faces()
            .iter()
            .map(|n| n.members().iter().map(|s| s.key()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

/// `"p/q"` in lowest terms, always with a denominator.
pub fn rational_string(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn polytope_json(p: &Polytope) -> Value {
    json!({
        "equalities": p.equalities.iter().map(|&s| indices(s)).collect::<Vec<_>>(),
        "inequalities": p
            .inequalities
            .iter()
            .map(|ineq| json!({"set": indices(ineq.set), "rhs": ineq.rhs as i64}))
            .collect::<Vec<_>>(),
        "vertices": p
            .vertices
            .iter()
            .map(|(n, x)| {
                json!({
                    "nested_set": n.members().iter().map(|&s| indices(s)).collect::<Vec<_>>(),
                    "point": x.iter().map(rational_string).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::nested::enumerate_complex;
    use crate::polytope::realize;

    #[test]
    fn building_round_trip() {
        let d3 = fixtures::d3();
        let text = to_pretty(&building_json(&d3));
        assert_eq!(parse_building(&text).unwrap(), d3);
    }

    #[test]
    fn building_errors() {
        let missing = r#"{"ground_set": 2, "sets": [[0], [0, 1]]}"#;
        assert!(matches!(
            parse_building(missing),
            Err(IoError::Building(BuildingError::MissingSingleton(1)))
        ));
        let out_of_range = r#"{"ground_set": 2, "sets": [[0], [1], [2]]}"#;
        assert!(matches!(
            parse_building(out_of_range),
            Err(IoError::Building(BuildingError::OutOfRange {
                element: 2,
                ..
            }))
        ));
        let unknown = r#"{"ground_set": 1, "sets": [[0]], "extra": 1}"#;
        assert!(matches!(parse_building(unknown), Err(IoError::Parse(_))));
        let bad = "{\"ground_set\": 1,\n \"sets\": [[0]";
        let msg = parse_building(bad).unwrap_err().to_string();
        assert!(msg.contains("line 2"), "{msg}");
    }

    #[test]
    fn graph_input() {
        let b = parse_input(r#"{"vertices": 3, "edges": [[0, 1], [1, 2]]}"#, true).unwrap();
        assert_eq!(b, fixtures::d4());
        assert!(parse_graph(r#"{"vertices": 2, "edges": [[1, 1]]}"#).is_err());
    }

    #[test]
    fn fan_and_polytope_documents() {
        let d3 = fixtures::d3();
        let c = enumerate_complex(&d3).unwrap();
        let ql = QuotientLattice::new(&d3);
        let fan = fan_json(&ql, &c);
        assert_eq!(fan["dim"], 2);
        assert_eq!(fan["rays"].as_object().unwrap().len(), 4);
        let keys: Vec<&String> = fan["rays"].as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);

        let p = realize(&d3).unwrap();
        let doc = polytope_json(&p);
        assert_eq!(doc["vertices"].as_array().unwrap().len(), 4);
        let text = to_pretty(&doc);
        assert!(text.contains("\"3/1\""));
        assert!(text.contains("\"-4/1\""));
    }
}
