//! The nested polytope: H-description with
//! `Σ_{i∈I} x_i <= |I| (2^{|C|-1} - 2^{|I|-1})`, exact vertices, the
//! linear dependences across dual-graph edges, and normal-fan checks.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

use crate::building::BuildingSet;
use crate::fan::{FanError, QuotientLattice};
use crate::linalg::{solve, Rational};
use crate::nested::{
    dual_graph, enumerate_complex, exchange_record, DualGraph, NestedComplex, NestedError,
    NestedSet,
};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("tight system of {0} is singular")]
    SingularSystem(NestedSet),
    #[error("vertex of {nested_set} violates the inequality for {set}")]
    Infeasible { nested_set: NestedSet, set: Subset },
    #[error("vertex of {nested_set} is tight on {set}, which is not in the nested set")]
    ExtraTight { nested_set: NestedSet, set: Subset },
    #[error("{0} and {1} are not adjacent maximal nested sets")]
    NotAdjacent(NestedSet, NestedSet),
    #[error("dependence for {0} and {1} does not vanish")]
    DependenceNonzero(NestedSet, NestedSet),
    #[error("convexity margin {margin} for {i1} ↔ {i2} is not positive")]
    ConvexityViolation {
        i1: Subset,
        i2: Subset,
        margin: i128,
    },
    #[error("normal fan mismatch: {0}")]
    NormalFanMismatch(String),
    #[error("{0} has no vertex in this polytope")]
    UnknownVertex(NestedSet),
    #[error(transparent)]
    Nested(#[from] NestedError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// `f_n(m) = m (2^{n-1} - 2^{m-1})`, with `f_n(0) = 0`.
pub fn f_n(n: u32, m: u32) -> i128 {
    if m == 0 {
        return 0;
    }
    i128::from(m) * ((1i128 << (n - 1)) - (1i128 << (m - 1)))
}

/// `F(ē_I) = f_{|C|}(|I|)` where `C` is the component containing `I`.
#[derive(Debug, Clone)]
pub struct SupportFunction {
    building: BuildingSet,
}

impl SupportFunction {
    pub fn new(b: &BuildingSet) -> Self {
        SupportFunction {
            building: b.clone(),
        }
    }

    pub fn value(&self, s: Subset) -> i128 {
        let c = self
            .building
            .component_of(s)
            .expect("nonempty subset of the ground set");
        f_n(c.len() as u32, s.len() as u32)
    }

    /// `I ↦ F(I)` for every vertex of the nested complex.
    pub fn values(&self) -> BTreeMap<Subset, i128> {
        self.building
            .non_maximal()
            .map(|s| (s, self.value(s)))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inequality {
    pub set: Subset,
    pub rhs: i128,
}

/// Exact H-description plus the vertex attached to each maximal nested set.
#[derive(Debug, Clone)]
pub struct Polytope {
    building: BuildingSet,
    /// `Σ_{i∈C} x_i = 0` for each component `C`.
    pub equalities: Vec<Subset>,
    /// `Σ_{i∈I} x_i <= rhs` for each `I ∈ B - B_max`, canonical order.
    pub inequalities: Vec<Inequality>,
    pub vertices: BTreeMap<NestedSet, Vec<Rational>>,
}

impl Polytope {
    /// The H-description alone.
    pub fn h_description(b: &BuildingSet) -> Self {
        let f = SupportFunction::new(b);
        Polytope {
            building: b.clone(),
            equalities: b.components().to_vec(),
            inequalities: b
                .non_maximal()
                .map(|set| Inequality {
                    set,
                    rhs: f.value(set),
                })
                .collect(),
            vertices: BTreeMap::new(),
        }
    }

    pub fn building(&self) -> &BuildingSet {
        &self.building
    }

    pub fn dimension(&self) -> usize {
        self.building.rank()
    }

    pub fn rhs(&self, s: Subset) -> Option<i128> {
        self.inequalities
            .binary_search_by(|q| q.set.cmp(&s))
            .ok()
            .map(|k| self.inequalities[k].rhs)
    }

    /// Solves the equalities together with the inequalities of `n` taken
    /// as equations, then checks every other inequality holds strictly.
    pub fn vertex(&self, n: &NestedSet) -> Result<Vec<Rational>, PolytopeError> {
        let size = self.building.n();
        let indicator =
            |s: Subset| -> Vec<i128> { (0..size).map(|i| i128::from(s.contains(i))).collect() };
        let mut rows = Vec::with_capacity(size);
        let mut rhs = Vec::with_capacity(size);
        for &c in &self.equalities {
            rows.push(indicator(c));
            rhs.push(0);
        }
        for &s in n.members() {
            rows.push(indicator(s));
            rhs.push(self.rhs(s).ok_or(NestedError::NotAVertex(s))?);
        }
        if rows.len() != size {
            return Err(PolytopeError::SingularSystem(n.clone()));
        }
        let x = solve(&rows, &rhs).ok_or_else(|| PolytopeError::SingularSystem(n.clone()))?;
        for q in &self.inequalities {
            let lhs = pair(q.set, &x);
            let bound = Rational::from_integer(q.rhs);
            if lhs > bound {
                return Err(PolytopeError::Infeasible {
                    nested_set: n.clone(),
                    set: q.set,
                });
            }
            if lhs == bound && !n.contains(q.set) {
                return Err(PolytopeError::ExtraTight {
                    nested_set: n.clone(),
                    set: q.set,
                });
            }
        }
        Ok(x)
    }

    /// Inequalities tight at `x`, as indices into `inequalities`.
    pub fn tight_at(&self, x: &[Rational]) -> BTreeSet<usize> {
        self.inequalities
            .iter()
            .enumerate()
            .filter(|(_, q)| pair(q.set, x) == Rational::from_integer(q.rhs))
            .map(|(k, _)| k)
            .collect()
    }

    /// Whether `x` satisfies every equality and inequality.
    pub fn contains_point(&self, x: &[Rational]) -> bool {
        self.equalities.iter().all(|&c| pair(c, x).is_zero())
            && self
                .inequalities
                .iter()
                .all(|q| pair(q.set, x) <= Rational::from_integer(q.rhs))
    }

    /// Vertex points of a cycle of maximal nested sets, in cycle order.
    pub fn polygon(&self, cycle: &[NestedSet]) -> Result<Vec<Vec<Rational>>, PolytopeError> {
        cycle
            .iter()
            .map(|n| {
                self.vertices
                    .get(n)
                    .cloned()
                    .ok_or_else(|| PolytopeError::UnknownVertex(n.clone()))
            })
            .collect()
    }
}

/// `⟨e_I, x⟩`.
pub fn pair(s: Subset, x: &[Rational]) -> Rational {
    s.iter().map(|i| x[i]).sum()
}

/// Enumerates the complex and realizes the polytope with all vertices.
pub fn realize(b: &BuildingSet) -> Result<Polytope, PolytopeError> {
    realize_complex(&enumerate_complex(b)?)
}

pub fn realize_complex(complex: &NestedComplex) -> Result<Polytope, PolytopeError> {
    let mut p = Polytope::h_description(complex.building());
    for n in complex.maximal_faces() {
        let x = p.vertex(n)?;
        p.vertices.insert(n.clone(), x);
    }
    Ok(p)
}

/// The linear relation among the rays of two adjacent maximal cones:
/// `ē_{I1} + ē_{I2} - Σ ē_J + Σ ē_{pad} - ē_{union} = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dependence {
    pub i1: Subset,
    pub i2: Subset,
    /// Components of the restriction to `i1 ∩ i2`.
    pub intersection_components: Vec<Subset>,
    pub padding: Vec<Subset>,
    pub union_target: Subset,
    /// True when the union is a component, so `ē_union = 0`.
    pub union_is_component: bool,
}

impl Dependence {
    /// Signed terms of the relation.
    pub fn terms(&self) -> Vec<(Subset, i64)> {
        let mut out = vec![(self.i1, 1), (self.i2, 1)];
        out.extend(self.intersection_components.iter().map(|&j| (j, -1)));
        out.extend(self.padding.iter().map(|&p| (p, 1)));
        out.push((self.union_target, -1));
        out
    }

    /// Whether the relation holds exactly in `L`.
    pub fn vanishes(&self, ql: &QuotientLattice) -> bool {
        let mut total = crate::fan::LatticeVector::zero(ql.dim());
        for (s, k) in self.terms() {
            total.add_scaled(&ql.ray(s), k);
        }
        total.is_zero()
    }

    /// Left side of the convexity inequality for an arbitrary `F`.
    pub fn margin_with<F: Fn(Subset) -> i128>(&self, f: F) -> i128 {
        self.terms()
            .into_iter()
            .map(|(s, k)| i128::from(k) * f(s))
            .sum()
    }
}

/// Builds and checks the dependence between two adjacent maximal nested sets.
pub fn dependence(
    b: &BuildingSet,
    n1: &NestedSet,
    n2: &NestedSet,
) -> Result<Dependence, PolytopeError> {
    let not_adjacent = || PolytopeError::NotAdjacent(n1.clone(), n2.clone());
    if n1.len() != b.rank() || n2.len() != b.rank() {
        return Err(not_adjacent());
    }
    let i1 = n1.single_difference(n2).ok_or_else(not_adjacent)?;
    let i2 = n2.single_difference(n1).ok_or_else(not_adjacent)?;
    let common = n1.intersection(n2);
    let record = exchange_record(b, &common, i1, i2)?;
    let dep = Dependence {
        i1,
        i2,
        intersection_components: record.intersection_components,
        padding: record.padding,
        union_target: record.union_target,
        union_is_component: b.is_component(record.union_target),
    };
    if !dep.vanishes(&QuotientLattice::new(b)) {
        return Err(PolytopeError::DependenceNonzero(n1.clone(), n2.clone()));
    }
    Ok(dep)
}

/// Convexity margin across an edge with the standard support function;
/// must be a positive integer.
pub fn check_convexity(
    b: &BuildingSet,
    n1: &NestedSet,
    n2: &NestedSet,
) -> Result<i128, PolytopeError> {
    let dep = dependence(b, n1, n2)?;
    let f = SupportFunction::new(b);
    let margin = dep.margin_with(|s| f.value(s));
    if margin <= 0 {
        return Err(PolytopeError::ConvexityViolation {
            i1: dep.i1,
            i2: dep.i2,
            margin,
        });
    }
    Ok(margin)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalFanReport {
    pub vertices: usize,
    pub edges: usize,
    pub min_margin: Option<i128>,
}

/// Checks that `Π(B)` has the nested fan as its normal fan:
/// each vertex is tight exactly on its nested set, every dual-graph edge
/// has a positive convexity margin, and the polytope's own edge graph
/// (vertices sharing `rank - 1` tight facets) equals the dual graph.
pub fn verify_normal_fan(
    complex: &NestedComplex,
    polytope: &Polytope,
    dual: &DualGraph,
) -> Result<NormalFanReport, PolytopeError> {
    let b = complex.building();
    let rank = b.rank();
    let mismatch = |msg: String| PolytopeError::NormalFanMismatch(msg);

    let mut tight_sets = Vec::with_capacity(dual.nodes.len());
    for n in &dual.nodes {
        let x = polytope
            .vertices
            .get(n)
            .ok_or_else(|| PolytopeError::UnknownVertex(n.clone()))?;
        if !polytope.contains_point(x) {
            return Err(mismatch(format!("vertex of {n} lies outside the polytope")));
        }
        let tight = polytope.tight_at(x);
        let tight_sets_here: NestedSet = tight
            .iter()
            .map(|&k| polytope.inequalities[k].set)
            .collect();
        if &tight_sets_here != n {
            return Err(mismatch(format!(
                "vertex of {n} is tight on {tight_sets_here}"
            )));
        }
        tight_sets.push(tight);
    }

    let mut min_margin: Option<i128> = None;
    for e in &dual.edges {
        let m = check_convexity(b, &dual.nodes[e.a], &dual.nodes[e.b])?;
        min_margin = Some(min_margin.map_or(m, |old| old.min(m)));
    }

    let mut geometric = BTreeSet::new();
    for a in 0..tight_sets.len() {
        for c in a + 1..tight_sets.len() {
            if tight_sets[a].intersection(&tight_sets[c]).count() + 1 == rank {
                geometric.insert((a, c));
            }
        }
    }
    let combinatorial: BTreeSet<(usize, usize)> = dual.edge_pairs().into_iter().collect();
    if geometric != combinatorial {
        let witness = geometric
            .symmetric_difference(&combinatorial)
            .next()
            .copied()
            .unwrap_or((0, 0));
        return Err(mismatch(format!(
            "edge {} – {} differs between polytope and dual graph",
            dual.nodes[witness.0], dual.nodes[witness.1]
        )));
    }

    Ok(NormalFanReport {
        vertices: dual.nodes.len(),
        edges: dual.edges.len(),
        min_margin,
    })
}

/// Enumerates everything needed and runs [`verify_normal_fan`].
pub fn verify_normal_fan_for(b: &BuildingSet) -> Result<NormalFanReport, PolytopeError> {
    let complex = enumerate_complex(b)?;
    let dual = dual_graph(&complex)?;
    let polytope = realize_complex(&complex)?;
    verify_normal_fan(&complex, &polytope, &dual)
}

/// Gon sizes of the 2-faces, as a multiset `size -> count`.
pub fn two_faces(complex: &NestedComplex) -> Result<BTreeMap<usize, usize>, PolytopeError> {
    Ok(complex.loop_lengths()?)
}
