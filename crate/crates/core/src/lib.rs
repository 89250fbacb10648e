//! Building sets, nested set complexes, nested fans and nested polytopes,
//! computed in exact arithmetic.
//!
//! A [`BuildingSet`] on `{0, .., n-1}` determines a simplicial complex of
//! nested sets ([`enumerate_complex`]), a smooth complete fan in the
//! quotient lattice ([`QuotientLattice`]) and a simple polytope whose
//! normal fan it is ([`realize`]). Every structural claim about these
//! objects has a checker, and the [`oracle`] module holds brute-force
//! references for small instances.
//!
//! ```
//! use nestohedra::{enumerate_complex, fixtures, realize};
//!
//! let pentagon = fixtures::path(3);
//! let complex = enumerate_complex(&pentagon).unwrap();
//! assert_eq!(complex.f_vector().coefficients(), [1, 5, 5]);
//! assert_eq!(realize(&pentagon).unwrap().vertices.len(), 5);
//! ```

pub mod building;
pub mod cli;
pub mod fan;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod nested;
pub mod oracle;
pub mod polytope;
pub mod render;
pub mod subset;

pub use building::{
    contraction, graphical_from_graph, is_graphical, product, restriction, validate_building,
    BuildingError, BuildingSet, Graph,
};
pub use fan::{verify_fan, LatticeVector, NestedExpansion, QuotientLattice};
pub use linalg::Rational;
pub use nested::{
    dual_graph, enumerate_complex, is_nested, link, DualGraph, NestedComplex, NestedError,
    NestedSet, RankTwoType,
};
pub use polytope::{realize, verify_normal_fan, Polytope};
pub use subset::{GroundSet, Subset};
