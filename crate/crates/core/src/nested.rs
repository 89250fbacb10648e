//! Nested sets, the nested complex and its dual graph.
//!
//! Nestedness is tested on pairwise-disjoint subfamilies only. A family in
//! which two members overlap without containment already fails on that
//! pair (their union is a member by (B1)), so every antichain that can
//! still witness a failure consists of pairwise-disjoint sets.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::building::{is_graphical, BuildingError, BuildingSet};
use crate::subset::{Subset, MAX_ENUMERATION_GROUND};

/// Face lists are kept only while the total face count stays below this.
pub const DEFAULT_MAX_FACES: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NestedError {
    #[error("{0} is not a vertex of the nested complex")]
    NotAVertex(Subset),
    #[error("{what} exceeds the cap ({size} > {cap})")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("{0} is a component or not a member, so it has no link")]
    NotLinkable(Subset),
    #[error("expected a nested set of size {expected}, got {found}")]
    WrongDimension { expected: usize, found: usize },
    #[error("{0} is not nested")]
    NotNested(NestedSet),
    #[error("{0} is not a maximal nested set")]
    NotMaximal(NestedSet),
    #[error("{0} and {1} are not adjacent maximal nested sets")]
    NotAdjacent(NestedSet, NestedSet),
    #[error("face lists were not stored for this complex")]
    FacesNotStored,
    #[error("maximal nested set {0} does not have the rank as its size")]
    PurityViolation(NestedSet),
    #[error("exchange property violated: {0}")]
    ExchangeViolation(String),
    #[error("dual graph node {node} has degree {degree}, expected {rank}")]
    NotRegular {
        node: usize,
        degree: usize,
        rank: usize,
    },
    #[error("dual graph is disconnected")]
    Disconnected,
    #[error("maximal nested sets containing {0} do not form a single cycle")]
    NotACycle(NestedSet),
    #[error("f-vector recursion fails at k = {k}: {lhs} != {rhs}")]
    FVectorMismatch { k: usize, lhs: u64, rhs: u64 },
    #[error(transparent)]
    Building(#[from] BuildingError),
}

/// A set of members of `B - B_max`, stored in canonical order.
///
/// Ordering between nested sets is lexicographic on the sorted members.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct NestedSet(Vec<Subset>);

impl NestedSet {
    pub fn new<I: IntoIterator<Item = Subset>>(members: I) -> Self {
        let mut v: Vec<Subset> = members.into_iter().collect();
        v.sort();
        v.dedup();
        NestedSet(v)
    }

    pub fn empty() -> Self {
        NestedSet(Vec::new())
    }

    pub fn members(&self) -> &[Subset] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.0.binary_search(&s).is_ok()
    }

    pub fn without(&self, s: Subset) -> NestedSet {
        NestedSet(self.0.iter().copied().filter(|&x| x != s).collect())
    }

    pub fn with(&self, s: Subset) -> NestedSet {
        NestedSet::new(self.0.iter().copied().chain(std::iter::once(s)))
    }

    pub fn intersection(&self, other: &NestedSet) -> NestedSet {
        NestedSet(
            self.0
                .iter()
                .copied()
                .filter(|&s| other.contains(s))
                .collect(),
        )
    }

    pub fn is_subset_of(&self, other: &NestedSet) -> bool {
        self.0.iter().all(|&s| other.contains(s))
    }

    /// The single member of `self` missing from `other`, if there is exactly one.
    pub fn single_difference(&self, other: &NestedSet) -> Option<Subset> {
        let mut missing = self.0.iter().copied().filter(|&s| !other.contains(s));
        let first = missing.next()?;
        missing.next().is_none().then_some(first)
    }

    /// 1-based rendering such as `{{1},{1,2}}`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|s| s.label()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for NestedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Display for NestedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl Serialize for NestedSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl FromIterator<Subset> for NestedSet {
    fn from_iter<T: IntoIterator<Item = Subset>>(iter: T) -> Self {
        NestedSet::new(iter)
    }
}

/// Tries to add `x` to a nested family whose disjoint-subfamily unions are
/// `unions`. Returns the unions of the enlarged family on success.
///
/// With `pairwise_only`, only pairs are examined and the returned list is
/// left empty; this is the clique test valid for graphical buildings.
fn try_extend(
    b: &BuildingSet,
    members: &[Subset],
    unions: &[Subset],
    x: Subset,
    pairwise_only: bool,
) -> Option<Vec<Subset>> {
    for &m in members {
        if m == x {
            return None;
        }
        if m.is_disjoint(x) {
            if pairwise_only && b.contains(m.union(x)) {
                return None;
            }
        } else if m.is_incomparable(x) {
            return None;
        }
    }
    if pairwise_only {
        return Some(Vec::new());
    }
    let mut next = Vec::with_capacity(2 * unions.len() + 1);
    next.extend_from_slice(unions);
    next.push(x);
    for &u in unions {
        if u.is_disjoint(x) {
            let w = u.union(x);
            if b.contains(w) {
                return None;
            }
            next.push(w);
        }
    }
    Some(next)
}

fn check_vertices(b: &BuildingSet, family: &[Subset]) -> Result<(), NestedError> {
    match family
        .iter()
        .find(|&&s| !b.contains(s) || b.is_component(s))
    {
        Some(&bad) => Err(NestedError::NotAVertex(bad)),
        None => Ok(()),
    }
}

fn nested_unchecked(b: &BuildingSet, family: &[Subset]) -> bool {
    let mut members: Vec<Subset> = Vec::with_capacity(family.len());
    let mut unions: Vec<Subset> = Vec::new();
    for &x in family {
        if members.contains(&x) {
            continue;
        }
        match try_extend(b, &members, &unions, x, false) {
            Some(next) => {
                unions = next;
                members.push(x);
            }
            None => return false,
        }
    }
    true
}

/// Whether `family` is nested: no antichain of two or more members has
/// its union in the building.
pub fn is_nested(b: &BuildingSet, family: &[Subset]) -> Result<bool, NestedError> {
    check_vertices(b, family)?;
    Ok(nested_unchecked(b, family))
}

/// `I ⊆ J`, `J ⊆ I`, or `I ∪ J` not a member.
pub fn pairwise_compatible(b: &BuildingSet, i: Subset, j: Subset) -> Result<bool, NestedError> {
    check_vertices(b, &[i, j])?;
    Ok(i.is_subset_of(j) || j.is_subset_of(i) || !b.contains(i.union(j)))
}

/// Face counts `f_0, f_1, ..` of a nested complex, where `f_k` counts
/// nested sets of size `k`. Read as the polynomial `Σ f_k x^k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(coefficients: Vec<u64>) -> Self {
        FVector(coefficients)
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// Polynomial product.
    pub fn multiply(&self, other: &FVector) -> FVector {
        let mut out = vec![0u64; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FVector(out)
    }
}

/// The enumerated nested complex of a building.
#[derive(Debug, Clone)]
pub struct NestedComplex {
    building: BuildingSet,
    vertices: Vec<Subset>,
    f_vector: FVector,
    faces: Option<Vec<Vec<NestedSet>>>,
    maximal_faces: Vec<NestedSet>,
    graphical: bool,
}

struct Enumerator<'a> {
    b: &'a BuildingSet,
    vertices: &'a [Subset],
    pairwise_only: bool,
    counts: Vec<u64>,
    faces: Option<Vec<Vec<NestedSet>>>,
    stored: usize,
    max_faces: usize,
    maximal: Vec<NestedSet>,
    impure: Option<NestedSet>,
}

impl Enumerator<'_> {
    fn record(&mut self, members: &[Subset]) {
        self.counts[members.len()] += 1;
        if let Some(faces) = self.faces.as_mut() {
            if self.stored >= self.max_faces {
                self.faces = None;
            } else {
                faces[members.len()].push(NestedSet(members.to_vec()));
                self.stored += 1;
            }
        }
    }

    fn visit(&mut self, chosen: &mut Vec<usize>, members: &mut Vec<Subset>, unions: &[Subset]) {
        self.record(members);
        let start = chosen.last().map_or(0, |&l| l + 1);
        let mut extended = false;
        for v in start..self.vertices.len() {
            let x = self.vertices[v];
            if let Some(next) = try_extend(self.b, members, unions, x, self.pairwise_only) {
                extended = true;
                chosen.push(v);
                members.push(x);
                self.visit(chosen, members, &next);
                members.pop();
                chosen.pop();
            }
        }
        if extended {
            return;
        }
        let extendable_below = (0..start).any(|v| {
            chosen.binary_search(&v).is_err()
                && try_extend(
                    self.b,
                    members,
                    unions,
                    self.vertices[v],
                    self.pairwise_only,
                )
                .is_some()
        });
        if !extendable_below {
            let face = NestedSet::new(members.iter().copied());
            if face.len() != self.b.rank() && self.impure.is_none() {
                self.impure = Some(face.clone());
            }
            self.maximal.push(face);
        }
    }
}

/// Enumerates the nested complex, storing face lists up to
/// [`DEFAULT_MAX_FACES`].
pub fn enumerate_complex(b: &BuildingSet) -> Result<NestedComplex, NestedError> {
    enumerate_complex_with(b, DEFAULT_MAX_FACES)
}

/// Enumerates the nested complex. Face lists are dropped once more than
/// `max_faces` faces have been seen; counts and maximal faces are kept.
pub fn enumerate_complex_with(
    b: &BuildingSet,
    max_faces: usize,
) -> Result<NestedComplex, NestedError> {
    if b.n() > MAX_ENUMERATION_GROUND {
        return Err(NestedError::TooLarge {
            what: "ground set",
            size: b.n(),
            cap: MAX_ENUMERATION_GROUND,
        });
    }
    let vertices: Vec<Subset> = b.non_maximal().collect();
    let (graphical, _) = is_graphical(b);
    let rank = b.rank();
    let mut e = Enumerator {
        b,
        vertices: &vertices,
        pairwise_only: graphical,
        counts: vec![0; rank + 1],
        faces: Some(vec![Vec::new(); rank + 1]),
        stored: 0,
        max_faces,
        maximal: Vec::new(),
        impure: None,
    };
    e.visit(&mut Vec::new(), &mut Vec::new(), &[]);
    if let Some(face) = e.impure {
        return Err(NestedError::PurityViolation(face));
    }
    let mut maximal = e.maximal;
    maximal.sort();
    let faces = e.faces;
    let counts = e.counts;
    Ok(NestedComplex {
        building: b.clone(),
        vertices,
        f_vector: FVector(counts),
        faces,
        maximal_faces: maximal,
        graphical,
    })
}

impl NestedComplex {
    pub fn building(&self) -> &BuildingSet {
        &self.building
    }

    pub fn rank(&self) -> usize {
        self.building.rank()
    }

    /// `B - B_max` in canonical order.
    pub fn vertices(&self) -> &[Subset] {
        &self.vertices
    }

    pub fn f_vector(&self) -> &FVector {
        &self.f_vector
    }

    /// Maximal nested sets in canonical order.
    pub fn maximal_faces(&self) -> &[NestedSet] {
        &self.maximal_faces
    }

    pub fn is_graphical(&self) -> bool {
        self.graphical
    }

    /// Nested sets of size `k`, when face lists were stored.
    pub fn faces_of_size(&self, k: usize) -> Option<&[NestedSet]> {
        self.faces
            .as_ref()
            .map(|f| f.get(k).map(Vec::as_slice).unwrap_or(&[]))
    }

    /// All faces, smallest first, when face lists were stored.
    pub fn all_faces(&self) -> Option<impl Iterator<Item = &NestedSet>> {
        self.faces.as_ref().map(|f| f.iter().flatten())
    }

    /// Faces containing `c`, with `c` removed.
    pub fn link_faces(&self, c: Subset) -> Result<Vec<NestedSet>, NestedError> {
        let faces = self.faces.as_ref().ok_or(NestedError::FacesNotStored)?;
        let mut out: Vec<NestedSet> = faces
            .iter()
            .flatten()
            .filter(|f| f.contains(c))
            .map(|f| f.without(c))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Induced cycle of maximal nested sets containing `d`, where
    /// `|d| = rank - 2`.
    ///
    /// The cycle starts at its least member and continues toward the
    /// lesser of that member's two neighbours.
    pub fn geodesic_loop(&self, d: &NestedSet) -> Result<GeodesicLoop, NestedError> {
        let rank = self.rank();
        if rank < 2 || d.len() + 2 != rank {
            return Err(NestedError::WrongDimension {
                expected: rank.saturating_sub(2),
                found: d.len(),
            });
        }
        if !is_nested(&self.building, d.members())? {
            return Err(NestedError::NotNested(d.clone()));
        }
        let members: Vec<NestedSet> = self
            .maximal_faces
            .iter()
            .filter(|n| d.is_subset_of(n))
            .cloned()
            .collect();
        let cycle = cycle_order(members).ok_or_else(|| NestedError::NotACycle(d.clone()))?;
        let quotient = iterated_link(&self.building, d)?;
        Ok(GeodesicLoop {
            face: d.clone(),
            class: RankTwoType::classify(&quotient),
            cycle,
        })
    }

    /// Sizes of the geodesic loops of all faces of size `rank - 2`, as a
    /// multiset `length -> count`.
    pub fn loop_lengths(&self) -> Result<BTreeMap<usize, usize>, NestedError> {
        let rank = self.rank();
        if rank < 2 {
            return Err(NestedError::WrongDimension {
                expected: 2,
                found: rank,
            });
        }
        let mut groups: HashMap<NestedSet, Vec<usize>> = HashMap::new();
        for (idx, n) in self.maximal_faces.iter().enumerate() {
            let m = n.members();
            for a in 0..m.len() {
                for b in a + 1..m.len() {
                    let d: NestedSet = NestedSet(
                        m.iter()
                            .enumerate()
                            .filter(|&(k, _)| k != a && k != b)
                            .map(|(_, &s)| s)
                            .collect(),
                    );
                    groups.entry(d).or_default().push(idx);
                }
            }
        }
        let mut sizes = BTreeMap::new();
        for (d, idxs) in groups {
            let members: Vec<NestedSet> = idxs
                .iter()
                .map(|&i| self.maximal_faces[i].clone())
                .collect();
            let len = members.len();
            cycle_order(members).ok_or(NestedError::NotACycle(d))?;
            *sizes.entry(len).or_insert(0) += 1;
        }
        Ok(sizes)
    }

    /// Checks `k f_k = Σ_C f_{k-1}(link building of C)` for every `k`.
    pub fn verify_f_recursion(&self) -> Result<(), NestedError> {
        let rank = self.rank();
        let mut rhs = vec![0u64; rank + 1];
        for &c in &self.vertices {
            let link = self.building.link_building(c);
            let sub = enumerate_complex_with(&link, 0)?;
            for (k, v) in sub.f_vector().coefficients().iter().enumerate() {
                if k < rank {
                    rhs[k + 1] += v;
                }
            }
        }
        for (k, &expected) in rhs.iter().enumerate().skip(1) {
            let lhs = k as u64 * self.f_vector.get(k);
            if lhs != expected {
                return Err(NestedError::FVectorMismatch {
                    k,
                    lhs,
                    rhs: expected,
                });
            }
        }
        Ok(())
    }
}

/// Orders a set of maximal nested sets into a cycle, or returns `None`
/// when the induced adjacency is not a single cycle.
fn cycle_order(mut members: Vec<NestedSet>) -> Option<Vec<NestedSet>> {
    members.sort();
    let len = members.len();
    if len < 3 {
        return None;
    }
    let adjacent = |a: &NestedSet, b: &NestedSet| a.single_difference(b).is_some();
    let neighbours: Vec<Vec<usize>> = (0..len)
        .map(|i| {
            (0..len)
                .filter(|&j| j != i && adjacent(&members[i], &members[j]))
                .collect()
        })
        .collect();
    if neighbours.iter().any(|n| n.len() != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = 0usize;
    let mut current = neighbours[0][0].min(neighbours[0][1]);
    while current != 0 {
        order.push(current);
        let next = if neighbours[current][0] == prev {
            neighbours[current][1]
        } else {
            neighbours[current][0]
        };
        prev = current;
        current = next;
        if order.len() > len {
            return None;
        }
    }
    (order.len() == len).then(|| order.into_iter().map(|i| members[i].clone()).collect())
}

/// The combinatorial type of a rank-two building after dropping singleton
/// components: one of the five cases D1–D5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RankTwoType {
    /// Three elements, no two-element members: triangle.
    D1,
    /// Two components of size two: square.
    D2,
    /// Three elements, one two-element member: quadrilateral.
    D3,
    /// Three elements, two two-element members: pentagon.
    D4,
    /// Three elements, all two-element members: hexagon.
    D5,
}

impl RankTwoType {
    pub fn classify(b: &BuildingSet) -> Option<RankTwoType> {
        if b.rank() != 2 {
            return None;
        }
        let big: Vec<Subset> = b
            .components()
            .iter()
            .copied()
            .filter(|c| c.len() > 1)
            .collect();
        match big.as_slice() {
            [a, c] if a.len() == 2 && c.len() == 2 => Some(RankTwoType::D2),
            [c] if c.len() == 3 => {
                let pairs = b
                    .sets()
                    .iter()
                    .filter(|s| s.len() == 2 && s.is_subset_of(*c))
                    .count();
                [
                    RankTwoType::D1,
                    RankTwoType::D3,
                    RankTwoType::D4,
                    RankTwoType::D5,
                ]
                .get(pairs)
                .copied()
            }
            _ => None,
        }
    }

    pub fn loop_length(self) -> usize {
        match self {
            RankTwoType::D1 => 3,
            RankTwoType::D2 | RankTwoType::D3 => 4,
            RankTwoType::D4 => 5,
            RankTwoType::D5 => 6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicLoop {
    pub face: NestedSet,
    pub cycle: Vec<NestedSet>,
    pub class: Option<RankTwoType>,
}

/// The link of `c` as a nested complex of a smaller building.
#[derive(Debug, Clone)]
pub struct Link {
    /// `B|_C × C\B` on the original ground set.
    pub building: BuildingSet,
    /// `I ↦ I'`: `I - C` when `I` strictly contains `C`, otherwise `I`.
    pub correspondence: BTreeMap<Subset, Subset>,
}

impl Link {
    /// Maps a nested set of the link through the correspondence.
    pub fn map(&self, n: &NestedSet) -> Option<NestedSet> {
        n.members()
            .iter()
            .map(|s| self.correspondence.get(s).copied())
            .collect::<Option<Vec<_>>>()
            .map(NestedSet::new)
    }
}

pub fn link(b: &BuildingSet, c: Subset) -> Result<Link, NestedError> {
    if !b.contains(c) || b.is_component(c) {
        return Err(NestedError::NotLinkable(c));
    }
    let building = b.link_building(c);
    let correspondence: BTreeMap<Subset, Subset> = b
        .non_maximal()
        .filter(|&i| i != c)
        .filter(|&i| {
            i.is_subset_of(c) || c.is_subset_of(i) || (i.is_disjoint(c) && !b.contains(i.union(c)))
        })
        .map(|i| {
            let image = if c.is_subset_of(i) {
                i.difference(c)
            } else {
                i
            };
            (i, image)
        })
        .collect();
    debug_assert_eq!(
        {
            let mut v: Vec<Subset> = correspondence.values().copied().collect();
            v.sort();
            v
        },
        building.non_maximal().collect::<Vec<_>>()
    );
    Ok(Link {
        building,
        correspondence,
    })
}

/// Applies the link decomposition once per member of `d`.
pub fn iterated_link(b: &BuildingSet, d: &NestedSet) -> Result<BuildingSet, NestedError> {
    let mut current = b.clone();
    let mut pending: Vec<Subset> = d.members().to_vec();
    while let Some(c) = pending.pop() {
        let l = link(&current, c)?;
        pending = pending
            .iter()
            .map(|s| {
                l.correspondence
                    .get(s)
                    .copied()
                    .ok_or_else(|| NestedError::NotNested(d.clone()))
            })
            .collect::<Result<_, _>>()?;
        current = l.building;
    }
    Ok(current)
}

/// What changes across an edge of the dual graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExchangeRecord {
    /// The member leaving.
    pub i1: Subset,
    /// The member entering.
    pub i2: Subset,
    /// Components of the restriction to `i1 ∩ i2` (empty when disjoint).
    pub intersection_components: Vec<Subset>,
    /// Pairwise-disjoint common members, disjoint from `i1 ∪ i2`, that
    /// complete `i1 ∪ i2` to `union_target`.
    pub padding: Vec<Subset>,
    /// A common member or a component equal to `i1 ∪ i2 ∪ padding`.
    pub union_target: Subset,
}

/// Builds and checks the exchange record for `i1 ↔ i2` with common part
/// `common`.
pub fn exchange_record(
    b: &BuildingSet,
    common: &NestedSet,
    i1: Subset,
    i2: Subset,
) -> Result<ExchangeRecord, NestedError> {
    if !i1.is_incomparable(i2) {
        return Err(NestedError::ExchangeViolation(format!(
            "{i1} and {i2} are comparable"
        )));
    }
    let meet = i1.intersection(i2);
    let intersection_components = if meet.is_empty() {
        Vec::new()
    } else {
        b.maximal_within(meet)
    };
    if let Some(j) = intersection_components
        .iter()
        .find(|&&j| !common.contains(j))
    {
        return Err(NestedError::ExchangeViolation(format!(
            "component {j} of {i1} ∩ {i2} is not shared"
        )));
    }
    let joined = i1.union(i2);
    let mut targets: Vec<Subset> = common
        .members()
        .iter()
        .chain(b.components())
        .copied()
        .filter(|t| joined.is_subset_of(*t))
        .collect();
    targets.sort();
    for t in targets {
        let rest = t.difference(joined);
        let inside: Vec<Subset> = common
            .members()
            .iter()
            .copied()
            .filter(|s| !s.is_empty() && s.is_subset_of(rest))
            .collect();
        let padding: Vec<Subset> = inside
            .iter()
            .copied()
            .filter(|s| !inside.iter().any(|o| o != s && s.is_subset_of(*o)))
            .collect();
        let covered = padding.iter().fold(Subset::EMPTY, |acc, s| acc.union(*s));
        if covered == rest {
            return Ok(ExchangeRecord {
                i1,
                i2,
                intersection_components,
                padding,
                union_target: t,
            });
        }
    }
    Err(NestedError::ExchangeViolation(format!(
        "no union target for {i1} ↔ {i2}"
    )))
}

/// The unique maximal nested set `N'` with `N ∩ N' = N - {i}`, found by a
/// scan over all vertices; uniqueness is checked.
pub fn exchange(
    b: &BuildingSet,
    n: &NestedSet,
    i: Subset,
) -> Result<(NestedSet, ExchangeRecord), NestedError> {
    check_vertices(b, n.members())?;
    if n.len() != b.rank() || !nested_unchecked(b, n.members()) {
        return Err(NestedError::NotMaximal(n.clone()));
    }
    if !n.contains(i) {
        return Err(NestedError::NotAVertex(i));
    }
    let common = n.without(i);
    let mut found: Vec<Subset> = Vec::new();
    for v in b.non_maximal() {
        if v == i || n.contains(v) {
            continue;
        }
        let mut family = common.members().to_vec();
        family.push(v);
        if nested_unchecked(b, &family) {
            found.push(v);
        }
    }
    let [replacement] = found.as_slice() else {
        return Err(NestedError::ExchangeViolation(format!(
            "{} replacements for {i} in {n}",
            found.len()
        )));
    };
    let record = exchange_record(b, &common, i, *replacement)?;
    Ok((common.with(*replacement), record))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualEdge {
    /// Endpoint indices into [`DualGraph::nodes`], `a < b`.
    pub a: usize,
    pub b: usize,
    /// Oriented so that `record.i1` belongs to node `a`.
    pub record: ExchangeRecord,
}

/// Maximal nested sets joined when they share all but one member.
#[derive(Debug, Clone)]
pub struct DualGraph {
    pub nodes: Vec<NestedSet>,
    pub edges: Vec<DualEdge>,
}

/// Builds the dual graph and checks that it is `rank`-regular and
/// connected.
pub fn dual_graph(complex: &NestedComplex) -> Result<DualGraph, NestedError> {
    let b = complex.building();
    let nodes = complex.maximal_faces().to_vec();
    let index: HashMap<&NestedSet, usize> = nodes.iter().enumerate().map(|(k, n)| (n, k)).collect();
    let mut edges = Vec::new();
    let mut degree = vec![0usize; nodes.len()];
    for (a, n) in nodes.iter().enumerate() {
        for &i in n.members() {
            let common = n.without(i);
            let partners: Vec<(usize, Subset)> = complex
                .vertices()
                .iter()
                .filter(|&&v| v != i && !n.contains(v))
                .filter_map(|&v| index.get(&common.with(v)).map(|&k| (k, v)))
                .collect();
            let [(other, v)] = partners.as_slice() else {
                return Err(NestedError::ExchangeViolation(format!(
                    "{} replacements for {i} in {n}",
                    partners.len()
                )));
            };
            degree[a] += 1;
            if a < *other {
                edges.push(DualEdge {
                    a,
                    b: *other,
                    record: exchange_record(b, &common, i, *v)?,
                });
            }
        }
    }
    if let Some((node, &d)) = degree.iter().enumerate().find(|&(_, &d)| d != b.rank()) {
        return Err(NestedError::NotRegular {
            node,
            degree: d,
            rank: b.rank(),
        });
    }
    let graph = DualGraph { nodes, edges };
    if !graph.is_connected() {
        return Err(NestedError::Disconnected);
    }
    Ok(graph)
}

impl DualGraph {
    pub fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let adj = self.neighbours();
        let mut seen = vec![false; self.nodes.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Undirected edge list as index pairs.
    pub fn edge_pairs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|e| (e.a, e.b)).collect()
    }

    /// Graphviz rendering with 1-based labels.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph dual {\n");
        for (k, n) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{k} [label=\"{}\"];\n", n.label()));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  n{} -- n{} [label=\"{} / {}\"];\n",
                e.a,
                e.b,
                e.record.i1.label(),
                e.record.i2.label()
            ));
        }
        out.push_str("}\n");
        out
    }
}
