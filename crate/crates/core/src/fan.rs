//! The nested fan: rays `ē_I` in the quotient lattice, unimodularity of
//! maximal cones, the nested expansion, and a fan-axiom verifier.
//!
//! Coordinates: for every component the largest element is eliminated
//! using `e_C = 0`, so a vector `Σ v_i e_i` has coordinate
//! `v_i - v_{elim(i)}` at each remaining element `i`.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::building::BuildingSet;
use crate::linalg::{determinant, has_nonnegative_kernel_ray, integer_inverse};
use crate::nested::{is_nested, NestedComplex, NestedError, NestedSet};
use crate::subset::Subset;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FanError {
    #[error("expected a vector of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{0} is not a maximal nested set")]
    NotMaximal(NestedSet),
    #[error("fan violation: {0}")]
    FanViolation(String),
    #[error(transparent)]
    Nested(#[from] NestedError),
}

/// An integer vector in the quotient lattice `L`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(dim: usize) -> Self {
        LatticeVector(vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add_scaled(&mut self, other: &LatticeVector, k: i64) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += k * b;
        }
    }
}

impl fmt::Debug for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// `L = π(ℤ^S)` where `π` kills `e_C` for every component `C`.
#[derive(Debug, Clone)]
pub struct QuotientLattice {
    building: BuildingSet,
    /// Eliminated element of each component, in component order.
    eliminated: Vec<usize>,
    /// Ground elements that keep a coordinate, increasing.
    kept: Vec<usize>,
    /// For each ground element, the eliminated element of its component.
    elim_of: Vec<usize>,
}

impl QuotientLattice {
    pub fn new(b: &BuildingSet) -> Self {
        let mut elim_of = vec![0; b.n()];
        let mut eliminated = Vec::new();
        for c in b.components() {
            let e = c.max_element().expect("components are nonempty");
            eliminated.push(e);
            for i in c.iter() {
                elim_of[i] = e;
            }
        }
        let kept = (0..b.n()).filter(|i| !eliminated.contains(i)).collect();
        QuotientLattice {
            building: b.clone(),
            eliminated,
            kept,
            elim_of,
        }
    }

    pub fn building(&self) -> &BuildingSet {
        &self.building
    }

    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn eliminated(&self) -> &[usize] {
        &self.eliminated
    }

    /// Ground elements carrying the coordinates, in coordinate order.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// `π(v)` for `v ∈ ℤ^S`.
    pub fn project(&self, v: &[i64]) -> Result<LatticeVector, FanError> {
        if v.len() != self.building.n() {
            return Err(FanError::LengthMismatch {
                expected: self.building.n(),
                found: v.len(),
            });
        }
        Ok(LatticeVector(
            self.kept
                .iter()
                .map(|&i| v[i] - v[self.elim_of[i]])
                .collect(),
        ))
    }

    /// `ē_I = π(e_I)`.
    pub fn ray(&self, s: Subset) -> LatticeVector {
        let v: Vec<i64> = (0..self.building.n())
            .map(|i| i64::from(s.contains(i)))
            .collect();
        self.project(&v).expect("indicator has ground length")
    }

    /// The cone spanned by the rays of a nested set.
    pub fn cone(&self, n: &NestedSet) -> FanCone {
        FanCone {
            nested_set: n.clone(),
            rays: n.members().iter().map(|&s| self.ray(s)).collect(),
        }
    }

    fn check_maximal(&self, n: &NestedSet) -> Result<(), FanError> {
        if n.len() != self.building.rank() || !is_nested(&self.building, n.members())? {
            return Err(FanError::NotMaximal(n.clone()));
        }
        Ok(())
    }

    /// Determinant of the ray matrix of a maximal nested set (rows are the
    /// rays, in the nested set's order).
    pub fn basis_check(&self, n: &NestedSet) -> Result<i128, FanError> {
        self.check_maximal(n)?;
        Ok(determinant(&self.cone(n).matrix()))
    }

    /// Determinant of the vectors `e_I` for `I ∈ N ∪ B_max` in `ℤ^S`.
    pub fn full_basis_check(&self, n: &NestedSet) -> Result<i128, FanError> {
        self.check_maximal(n)?;
        let size = self.building.n();
        let rows: Vec<Vec<i128>> = n
            .members()
            .iter()
            .chain(self.building.components())
            .map(|s| (0..size).map(|i| i128::from(s.contains(i))).collect())
            .collect();
        Ok(determinant(&rows))
    }

    /// The unique nonnegative lift `c` with `π(c) = v` and minimum zero on
    /// every component.
    pub fn lift(&self, v: &LatticeVector) -> Result<Vec<i64>, FanError> {
        if v.dim() != self.dim() {
            return Err(FanError::LengthMismatch {
                expected: self.dim(),
                found: v.dim(),
            });
        }
        let mut c = vec![0i64; self.building.n()];
        for (&i, &x) in self.kept.iter().zip(v.coords()) {
            c[i] = x;
        }
        for comp in self.building.components() {
            let min = comp.iter().map(|i| c[i]).min().unwrap_or(0);
            for i in comp.iter() {
                c[i] -= min;
            }
        }
        Ok(c)
    }

    /// Writes `v` as `Σ c_I ē_I` with nested support, via the filtration
    /// `S_j = {i : c_i >= j}` of the normalized lift and the maximal members
    /// inside each `S_j`.
    pub fn nested_expansion(&self, v: &LatticeVector) -> Result<NestedExpansion, FanError> {
        let c = self.lift(v)?;
        let top = c.iter().copied().max().unwrap_or(0);
        let mut terms: BTreeMap<Subset, u64> = BTreeMap::new();
        for j in 1..=top {
            let level = Subset::from_indices((0..c.len()).filter(|&i| c[i] >= j));
            for s in self.building.maximal_within(level) {
                *terms.entry(s).or_insert(0) += 1;
            }
        }
        Ok(NestedExpansion { terms })
    }

    /// The smallest cone containing `v`: the support of its nested expansion.
    pub fn locate(&self, v: &LatticeVector) -> Result<NestedSet, FanError> {
        Ok(self.nested_expansion(v)?.support())
    }

    /// `Σ c_I ē_I`.
    pub fn evaluate(&self, e: &NestedExpansion) -> LatticeVector {
        let mut out = LatticeVector::zero(self.dim());
        for (&s, &k) in &e.terms {
            out.add_scaled(&self.ray(s), k as i64);
        }
        out
    }
}

/// `ℝ≥0 N` for a nested set `N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanCone {
    pub nested_set: NestedSet,
    pub rays: Vec<LatticeVector>,
}

impl FanCone {
    /// Rays as matrix rows.
    pub fn matrix(&self) -> Vec<Vec<i128>> {
        self.rays
            .iter()
            .map(|r| r.coords().iter().map(|&x| i128::from(x)).collect())
            .collect()
    }
}

/// `v = Σ c_I ē_I` with positive integer coefficients on a nested support.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct NestedExpansion {
    pub terms: BTreeMap<Subset, u64>,
}

impl NestedExpansion {
    pub fn support(&self) -> NestedSet {
        NestedSet::new(self.terms.keys().copied())
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Counts gathered by [`verify_fan`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub dim: usize,
    pub maximal_cones: usize,
    pub cone_pairs_checked: usize,
    pub samples_checked: usize,
}

/// A maximal cone prepared for membership tests: `v ∈ ℝ≥0 N` iff every
/// coordinate of `inverse · v` is nonnegative.
struct PreparedCone {
    nested_set: NestedSet,
    rays: Vec<Vec<i128>>,
    /// Inverse of the matrix whose columns are the rays.
    inverse: Vec<Vec<i128>>,
}

impl PreparedCone {
    fn coordinates(&self, v: &[i128]) -> Vec<i128> {
        self.inverse
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Checks smoothness of every maximal cone, the pairwise intersection
/// property of maximal cones, and completeness plus uniqueness of nested
/// expansions on `samples` random vectors with coordinates in `[-50, 50]`.
pub fn verify_fan(
    ql: &QuotientLattice,
    complex: &NestedComplex,
    samples: usize,
    seed: u64,
) -> Result<FanReport, FanError> {
    let b = ql.building();
    let dim = ql.dim();
    let violation = |msg: String| FanError::FanViolation(msg);

    let mut cones = Vec::with_capacity(complex.maximal_faces().len());
    for n in complex.maximal_faces() {
        let det = ql.basis_check(n)?;
        if det.abs() != 1 {
            return Err(violation(format!("{n} has determinant {det}")));
        }
        let rows = ql.cone(n).matrix();
        let columns: Vec<Vec<i128>> = (0..dim)
            .map(|i| rows.iter().map(|r| r[i]).collect())
            .collect();
        let inverse = integer_inverse(&columns)
            .ok_or_else(|| violation(format!("{n} has no integral inverse")))?;
        cones.push(PreparedCone {
            nested_set: n.clone(),
            rays: rows,
            inverse,
        });
    }

    let mut pairs = 0;
    for (a, first) in cones.iter().enumerate() {
        for second in &cones[a + 1..] {
            pairs += 1;
            if !intersection_is_common_face(first, second) {
                return Err(violation(format!(
                    "cones of {} and {} overlap beyond their common face",
                    first.nested_set, second.nested_set
                )));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let v = LatticeVector((0..dim).map(|_| rng.gen_range(-50..=50)).collect());
        let expansion = ql.nested_expansion(&v)?;
        let support = expansion.support();
        if !is_nested(b, support.members())? {
            return Err(violation(format!(
                "support {support} of {v:?} is not nested"
            )));
        }
        let back = ql.evaluate(&expansion);
        if back != v {
            return Err(violation(format!(
                "expansion of {v:?} evaluates to {back:?}"
            )));
        }
        if ql.nested_expansion(&back)? != expansion {
            return Err(violation(format!("re-expansion of {v:?} differs")));
        }
        let wide: Vec<i128> = v.coords().iter().map(|&x| i128::from(x)).collect();
        let mut interior = Vec::new();
        let mut containing_support = false;
        for cone in &cones {
            let y = cone.coordinates(&wide);
            if y.iter().all(|&t| t > 0) {
                interior.push(&cone.nested_set);
            }
            if y.iter().all(|&t| t >= 0) && support.is_subset_of(&cone.nested_set) {
                containing_support = true;
            }
        }
        if interior.len() > 1 {
            return Err(violation(format!(
                "{v:?} is interior to both {} and {}",
                interior[0], interior[1]
            )));
        }
        if dim > 0 && !containing_support {
            return Err(violation(format!(
                "no maximal cone over {support} contains {v:?}"
            )));
        }
    }

    Ok(FanReport {
        dim,
        maximal_cones: cones.len(),
        cone_pairs_checked: pairs,
        samples_checked: samples,
    })
}

/// Exact test of `ℝ≥0 N1 ∩ ℝ≥0 N2 = ℝ≥0 (N1 ∩ N2)` for maximal cones.
///
/// In the basis of `N1` a point is `y >= 0`; it lies in the second cone
/// iff `M y >= 0` with `M = inverse(N2) · rays(N1)`. Columns of shared
/// rays are unit vectors, so the intersection leaves the common face iff
/// some nonzero `y' >= 0` on the unshared rays of `N1` has
/// `M[unshared2, unshared1] y' >= 0`.
fn intersection_is_common_face(first: &PreparedCone, second: &PreparedCone) -> bool {
    let members1 = first.nested_set.members();
    let members2 = second.nested_set.members();
    let only1: Vec<usize> = (0..members1.len())
        .filter(|&j| !second.nested_set.contains(members1[j]))
        .collect();
    let only2: Vec<usize> = (0..members2.len())
        .filter(|&k| !first.nested_set.contains(members2[k]))
        .collect();
    if only1.is_empty() {
        return true;
    }
    let in_second: Vec<Vec<i128>> = first
        .rays
        .iter()
        .map(|ray| second.coordinates(ray))
        .collect();
    let block: Vec<Vec<i128>> = only2
        .iter()
        .map(|&k| only1.iter().map(|&j| in_second[j][k]).collect())
        .collect();
    !has_nonnegative_kernel_ray(&block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::nested::enumerate_complex;

    fn s(labels: &[usize]) -> Subset {
        Subset::from_indices(labels.iter().map(|&i| i - 1))
    }

    fn ns(sets: &[&[usize]]) -> NestedSet {
        NestedSet::new(sets.iter().map(|x| s(x)))
    }

    #[test]
    fn projection_examples() {
        let d4 = QuotientLattice::new(&fixtures::d4());
        assert_eq!(d4.eliminated(), &[2]);
        assert_eq!(d4.ray(s(&[1, 2, 3])), LatticeVector(vec![0, 0]));
        assert_eq!(d4.ray(s(&[1, 2])), LatticeVector(vec![1, 1]));

        let d2 = QuotientLattice::new(&fixtures::d2());
        assert_eq!(d2.ray(s(&[3])), LatticeVector(vec![-1, 0]));
        let mut sum = d2.ray(s(&[1]));
        sum.add_scaled(&d2.ray(s(&[3])), 1);
        assert!(sum.is_zero());
        let mut sum = d2.ray(s(&[2]));
        sum.add_scaled(&d2.ray(s(&[4])), 1);
        assert!(sum.is_zero());

        assert_eq!(
            d2.project(&[1, 2]),
            Err(FanError::LengthMismatch {
                expected: 4,
                found: 2
            })
        );
    }

    #[test]
    fn basis_check_examples() {
        let d4 = QuotientLattice::new(&fixtures::d4());
        assert_eq!(d4.basis_check(&ns(&[&[1], &[1, 2]])).unwrap().abs(), 1);
        let d2 = QuotientLattice::new(&fixtures::d2());
        assert_eq!(d2.basis_check(&ns(&[&[1], &[2]])).unwrap(), 1);
        assert!(matches!(
            d2.basis_check(&ns(&[&[1]])),
            Err(FanError::NotMaximal(_))
        ));
        let b5 = fixtures::d5();
        let d5 = QuotientLattice::new(&b5);
        for n in enumerate_complex(&b5).unwrap().maximal_faces() {
            assert_eq!(d5.basis_check(n).unwrap().abs(), 1);
            assert_eq!(d5.full_basis_check(n).unwrap().abs(), 1);
        }
    }

    #[test]
    fn nested_expansion_examples() {
        let d3 = QuotientLattice::new(&fixtures::d3());
        let v = d3.project(&[1, 1, 0]).unwrap();
        let e = d3.nested_expansion(&v).unwrap();
        assert_eq!(e.terms, BTreeMap::from([(s(&[1, 2]), 1)]));
        assert_eq!(d3.locate(&v).unwrap(), ns(&[&[1, 2]]));

        assert!(d3
            .nested_expansion(&LatticeVector::zero(2))
            .unwrap()
            .is_empty());

        let d2 = QuotientLattice::new(&fixtures::d2());
        let v = d2.project(&[1, 1, 0, 0]).unwrap();
        let e = d2.nested_expansion(&v).unwrap();
        assert_eq!(e.terms, BTreeMap::from([(s(&[1]), 1), (s(&[2]), 1)]));

        let d4 = QuotientLattice::new(&fixtures::d4());
        let v = d4.project(&[2, 1, 0]).unwrap();
        assert_eq!(d4.locate(&v).unwrap(), ns(&[&[1], &[1, 2]]));
    }

    #[test]
    fn ray_locates_on_itself() {
        let b = fixtures::path(4);
        let ql = QuotientLattice::new(&b);
        for v in b.non_maximal() {
            assert_eq!(ql.locate(&ql.ray(v)).unwrap(), NestedSet::new([v]));
        }
    }

    #[test]
    fn verify_fan_on_fixtures() {
        for b in fixtures::rank_two() {
            let ql = QuotientLattice::new(&b);
            let c = enumerate_complex(&b).unwrap();
            let report = verify_fan(&ql, &c, 200, 7).unwrap();
            assert_eq!(report.dim, 2);
            assert_eq!(report.maximal_cones, c.maximal_faces().len());
        }
        let trivial = BuildingSet::closure(3, &[]).unwrap();
        let ql = QuotientLattice::new(&trivial);
        let c = enumerate_complex(&trivial).unwrap();
        let report = verify_fan(&ql, &c, 10, 0).unwrap();
        assert_eq!(report.dim, 0);
    }

    #[test]
    fn overlapping_cones_are_detected() {
        let cone = |rays: Vec<Vec<i128>>, labels: &[&[usize]]| {
            let columns: Vec<Vec<i128>> = (0..2)
                .map(|i| rays.iter().map(|r| r[i]).collect())
                .collect();
            PreparedCone {
                nested_set: ns(labels),
                inverse: integer_inverse(&columns).unwrap(),
                rays,
            }
        };
        let a = cone(vec![vec![1, 0], vec![0, 1]], &[&[1], &[2]]);
        let b = cone(vec![vec![1, 1], vec![-1, 0]], &[&[3], &[4]]);
        let c = cone(vec![vec![-1, 0], vec![0, -1]], &[&[3], &[4]]);
        assert!(!intersection_is_common_face(&a, &b));
        assert!(intersection_is_common_face(&a, &c));
    }
}
