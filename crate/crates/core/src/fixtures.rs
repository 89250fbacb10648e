//! The five rank-two buildings D1–D5 and a few standard graphical families.
//!
//! Ground sets are 0-based here; `{1,2}` in the comments means the subset
//! `{0, 1}` in code.

use crate::building::{graphical_from_graph, validate_building, BuildingSet, Graph};
use crate::subset::{GroundSet, Subset};

fn build(n: usize, extra: &[&[usize]]) -> BuildingSet {
    let ground = GroundSet::new(n).expect("fixture ground size");
    let mut sets: Vec<Subset> = (0..n).map(Subset::singleton).collect();
    sets.extend(
        extra
            .iter()
            .map(|s| Subset::from_indices(s.iter().copied())),
    );
    validate_building(&sets, ground).expect("fixture is a building")
}

/// Singletons and `{1,2,3}`: the triangle.
pub fn d1() -> BuildingSet {
    build(3, &[&[0, 1, 2]])
}

/// Singletons, `{1,3}`, `{2,4}`: the square.
pub fn d2() -> BuildingSet {
    build(4, &[&[0, 2], &[1, 3]])
}

/// Singletons, `{1,2}`, `{1,2,3}`: the trapezoid.
pub fn d3() -> BuildingSet {
    build(3, &[&[0, 1], &[0, 1, 2]])
}

/// Singletons, `{1,2}`, `{2,3}`, `{1,2,3}`: the pentagon.
pub fn d4() -> BuildingSet {
    build(3, &[&[0, 1], &[1, 2], &[0, 1, 2]])
}

/// Every nonempty subset of `{1,2,3}`: the hexagon.
pub fn d5() -> BuildingSet {
    build(3, &[&[0, 1], &[0, 2], &[1, 2], &[0, 1, 2]])
}

/// D1 through D5 in order.
pub fn rank_two() -> [BuildingSet; 5] {
    [d1(), d2(), d3(), d4(), d5()]
}

/// Graphical building of the path on `n` vertices (associahedron).
pub fn path(n: usize) -> BuildingSet {
    graphical_from_graph(&Graph::path(n).expect("path size"))
}

/// Graphical building of the complete graph on `n` vertices (permutohedron).
pub fn complete(n: usize) -> BuildingSet {
    graphical_from_graph(&Graph::complete(n).expect("complete graph size"))
}

/// Graphical building of the cycle on `n` vertices (cyclohedron).
pub fn cycle(n: usize) -> BuildingSet {
    graphical_from_graph(&Graph::cycle(n).expect("cycle size"))
}

/// Graphical building of the star with `n - 1` leaves (stellohedron).
pub fn star(n: usize) -> BuildingSet {
    graphical_from_graph(&Graph::star(n).expect("star size"))
}
