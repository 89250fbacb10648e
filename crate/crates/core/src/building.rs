//! Building sets and the operations that produce new ones from old:
//! restriction, contraction, products and graphical buildings.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::subset::{GroundSet, Subset, MAX_GROUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildingError {
    #[error("ground set size {0} is outside 1..={MAX_GROUND}")]
    InvalidGround(usize),
    #[error("the empty set cannot be a member of a building")]
    EmptySetMember,
    #[error("element {} lies outside the ground set of size {ground}", .element + 1)]
    OutOfRange { element: usize, ground: usize },
    #[error("missing singleton {{{}}}", .0 + 1)]
    MissingSingleton(usize),
    #[error("{0} and {1} intersect but their union is not a member")]
    UnionNotClosed(Subset, Subset),
    #[error("cannot restrict to the empty set")]
    EmptyRestriction,
    #[error("cannot contract the empty set")]
    EmptyContraction,
    #[error("contracting the whole ground set leaves an empty ground set")]
    EmptyGround,
    #[error("{0} is not a member of the building")]
    NotAMember(Subset),
    #[error("a product needs at least one factor")]
    EmptyProduct,
    #[error("graph has a loop at vertex {}", .0 + 1)]
    SelfLoop(usize),
}

/// A validated building set on `{0, .., n-1}`.
///
/// Members are stored once each in canonical order. Membership queries go
/// through a dense bitmap indexed by the subset's bit pattern.
#[derive(Clone, PartialEq, Eq)]
pub struct BuildingSet {
    ground: GroundSet,
    sets: Vec<Subset>,
    membership: Vec<u64>,
    components: Vec<Subset>,
    rank: usize,
}

impl std::fmt::Debug for BuildingSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BuildingSet")
            .field("ground", &self.ground.size())
            .field("sets", &self.sets)
            .finish()
    }
}

/// Checks (B1) and (B2) and builds the cached data.
///
/// Singletons are checked before union closure so that a family missing a
/// singleton reports `MissingSingleton` even when it also fails (B1).
pub fn validate_building(sets: &[Subset], ground: GroundSet) -> Result<BuildingSet, BuildingError> {
    let n = ground.size();
    let full = ground.full();
    let mut family: Vec<Subset> = Vec::with_capacity(sets.len());
    for &s in sets {
        if s.is_empty() {
            return Err(BuildingError::EmptySetMember);
        }
        if !s.is_subset_of(full) {
            let element = s.difference(full).min_element().unwrap_or(n);
            return Err(BuildingError::OutOfRange { element, ground: n });
        }
        family.push(s);
    }
    family.sort();
    family.dedup();
    let membership = membership_bitmap(n, &family);
    let is_member = |s: Subset| bit(&membership, s);
    for i in 0..n {
        if !is_member(Subset::singleton(i)) {
            return Err(BuildingError::MissingSingleton(i));
        }
    }
    for (a, &x) in family.iter().enumerate() {
        for &y in &family[a + 1..] {
            if !x.is_disjoint(y) && !is_member(x.union(y)) {
                return Err(BuildingError::UnionNotClosed(x, y));
            }
        }
    }
    Ok(BuildingSet::assemble(ground, family, membership))
}

fn membership_bitmap(n: usize, sets: &[Subset]) -> Vec<u64> {
    let words = (1usize << n).div_ceil(64);
    let mut bitmap = vec![0u64; words];
    for s in sets {
        let b = s.bits() as usize;
        bitmap[b / 64] |= 1 << (b % 64);
    }
    bitmap
}

fn bit(bitmap: &[u64], s: Subset) -> bool {
    let b = s.bits() as usize;
    bitmap.get(b / 64).is_some_and(|w| w & (1 << (b % 64)) != 0)
}

impl BuildingSet {
    fn assemble(ground: GroundSet, sets: Vec<Subset>, membership: Vec<u64>) -> Self {
        let mut components: Vec<Subset> = Vec::new();
        let mut covered = Subset::EMPTY;
        for &s in sets.iter().rev() {
            if s.is_disjoint(covered) {
                components.push(s);
                covered = covered.union(s);
            }
        }
        components.sort();
        let rank = ground.size() - components.len();
        BuildingSet {
            ground,
            sets,
            membership,
            components,
            rank,
        }
    }

    /// Builds from a family already known to satisfy (B1) and (B2).
    pub(crate) fn from_valid(ground: GroundSet, mut sets: Vec<Subset>) -> Self {
        sets.sort();
        sets.dedup();
        let membership = membership_bitmap(ground.size(), &sets);
        let b = BuildingSet::assemble(ground, sets, membership);
        debug_assert!(validate_building(&b.sets, ground).is_ok());
        b
    }

    /// The smallest building on `n` elements containing `generators`:
    /// adds every singleton and closes under unions of intersecting members.
    pub fn closure(n: usize, generators: &[Subset]) -> Result<BuildingSet, BuildingError> {
        let ground = GroundSet::new(n).ok_or(BuildingError::InvalidGround(n))?;
        let full = ground.full();
        let mut seen: HashSet<Subset> = HashSet::new();
        let mut family: Vec<Subset> = Vec::new();
        for s in (0..n)
            .map(Subset::singleton)
            .chain(generators.iter().copied())
        {
            if s.is_empty() {
                return Err(BuildingError::EmptySetMember);
            }
            if !s.is_subset_of(full) {
                let element = s.difference(full).min_element().unwrap_or(n);
                return Err(BuildingError::OutOfRange { element, ground: n });
            }
            if seen.insert(s) {
                family.push(s);
            }
        }
        let mut next = 0;
        while next < family.len() {
            let x = family[next];
            for k in 0..next {
                let y = family[k];
                if !x.is_disjoint(y) {
                    let u = x.union(y);
                    if seen.insert(u) {
                        family.push(u);
                    }
                }
            }
            next += 1;
        }
        Ok(BuildingSet::from_valid(ground, family))
    }

    pub fn ground(&self) -> GroundSet {
        self.ground
    }

    /// Number of elements of the ground set.
    pub fn n(&self) -> usize {
        self.ground.size()
    }

    pub fn full(&self) -> Subset {
        self.ground.full()
    }

    /// All members in canonical order.
    pub fn sets(&self) -> &[Subset] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: Subset) -> bool {
        bit(&self.membership, s)
    }

    /// The maximal members, which partition the ground set.
    pub fn components(&self) -> &[Subset] {
        &self.components
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_component(&self, s: Subset) -> bool {
        self.components.contains(&s)
    }

    /// The component containing some element of `s`.
    pub fn component_of(&self, s: Subset) -> Option<Subset> {
        self.components.iter().copied().find(|c| !c.is_disjoint(s))
    }

    /// Members that are not components: the vertices of the nested complex.
    pub fn non_maximal(&self) -> impl Iterator<Item = Subset> + '_ {
        self.sets.iter().copied().filter(|&s| !self.is_component(s))
    }

    /// The maximal members of the building contained in `x`, i.e. the
    /// components of the restriction to `x`. Sorted canonically.
    pub fn maximal_within(&self, x: Subset) -> Vec<Subset> {
        let mut found = Vec::new();
        let mut covered = Subset::EMPTY;
        for &s in self.sets.iter().rev() {
            if covered == x {
                break;
            }
            if s.is_subset_of(x) && s.is_disjoint(covered) {
                found.push(s);
                covered = covered.union(s);
            }
        }
        found.sort();
        found
    }

    /// Members of the restriction to `c`, kept in the original labels.
    pub fn restricted_sets(&self, c: Subset) -> Vec<Subset> {
        self.sets
            .iter()
            .copied()
            .filter(|s| s.is_subset_of(c))
            .collect()
    }

    /// Members of the contraction of `c`, kept in the original labels:
    /// nonempty `I` outside `c` with `I` or `c ∪ I` a member.
    pub fn contracted_sets(&self, c: Subset) -> Vec<Subset> {
        let mut out: Vec<Subset> = self
            .sets
            .iter()
            .filter_map(|&s| {
                if s.is_disjoint(c) {
                    Some(s)
                } else if c.is_subset_of(s) && s != c {
                    Some(s.difference(c))
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// `B|_C × C\B` on the original ground set. This is the building whose
    /// nested complex is the link of `c`.
    pub fn link_building(&self, c: Subset) -> BuildingSet {
        let mut sets = self.restricted_sets(c);
        sets.extend(self.contracted_sets(c));
        BuildingSet::from_valid(self.ground, sets)
    }

    /// Edges `{s, t}` with `{s, t}` a member.
    pub fn two_element_graph(&self) -> Graph {
        let edges = self
            .sets
            .iter()
            .filter(|s| s.len() == 2)
            .map(|s| {
                let mut it = s.iter();
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        Graph {
            vertex_count: self.n(),
            edges,
        }
    }
}

/// A building re-indexed onto a smaller ground set.
///
/// `index_map[k]` is the original label of the new element `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Minor {
    pub building: BuildingSet,
    pub index_map: Vec<usize>,
}

impl Minor {
    fn new(building: BuildingSet, mask: Subset) -> Self {
        Minor {
            building,
            index_map: mask.iter().collect(),
        }
    }

    fn mask(&self) -> Subset {
        Subset::from_indices(self.index_map.iter().copied())
    }

    /// Original labels of a subset of the minor's ground set.
    pub fn lift(&self, s: Subset) -> Subset {
        s.expand(self.mask())
    }

    /// New labels of a subset of the original ground set.
    pub fn lower(&self, s: Subset) -> Subset {
        s.compress(self.mask())
    }
}

/// `B|_C = {I ⊆ C : I ∈ B}`, re-indexed onto `0..|C|`.
pub fn restriction(b: &BuildingSet, c: Subset) -> Result<Minor, BuildingError> {
    if c.is_empty() {
        return Err(BuildingError::EmptyRestriction);
    }
    if !c.is_subset_of(b.full()) {
        let element = c.difference(b.full()).min_element().unwrap_or(0);
        return Err(BuildingError::OutOfRange {
            element,
            ground: b.n(),
        });
    }
    let ground = GroundSet::new(c.len()).expect("nonempty subset of a valid ground set");
    let sets = b
        .restricted_sets(c)
        .into_iter()
        .map(|s| s.compress(c))
        .collect();
    Ok(Minor::new(BuildingSet::from_valid(ground, sets), c))
}

/// `C\B` on `S - C`, re-indexed onto `0..|S - C|`.
///
/// With `strict` set, `c` must be a member of `b`.
pub fn contraction(b: &BuildingSet, c: Subset, strict: bool) -> Result<Minor, BuildingError> {
    if c.is_empty() {
        return Err(BuildingError::EmptyContraction);
    }
    if !c.is_subset_of(b.full()) {
        let element = c.difference(b.full()).min_element().unwrap_or(0);
        return Err(BuildingError::OutOfRange {
            element,
            ground: b.n(),
        });
    }
    if strict && !b.contains(c) {
        return Err(BuildingError::NotAMember(c));
    }
    let rest = b.full().difference(c);
    if rest.is_empty() {
        return Err(BuildingError::EmptyGround);
    }
    let ground = GroundSet::new(rest.len()).expect("nonempty complement");
    let sets = b
        .contracted_sets(c)
        .into_iter()
        .map(|s| s.compress(rest))
        .collect();
    Ok(Minor::new(BuildingSet::from_valid(ground, sets), rest))
}

/// Product on the disjoint union; factor `k` is shifted by the sizes of
/// the factors before it.
pub fn product(factors: &[BuildingSet]) -> Result<BuildingSet, BuildingError> {
    if factors.is_empty() {
        return Err(BuildingError::EmptyProduct);
    }
    let total: usize = factors.iter().map(BuildingSet::n).sum();
    let ground = GroundSet::new(total).ok_or(BuildingError::InvalidGround(total))?;
    let mut sets = Vec::new();
    let mut offset = 0;
    for f in factors {
        sets.extend(f.sets().iter().map(|s| s.shift(offset)));
        offset += f.n();
    }
    Ok(BuildingSet::from_valid(ground, sets))
}

/// A simple undirected graph on `0..vertex_count`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertex_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize) -> Result<Self, BuildingError> {
        GroundSet::new(vertex_count).ok_or(BuildingError::InvalidGround(vertex_count))?;
        Ok(Graph {
            vertex_count,
            edges: BTreeSet::new(),
        })
    }

    pub fn with_edges<I>(vertex_count: usize, edges: I) -> Result<Self, BuildingError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(vertex_count)?;
        for (s, t) in edges {
            g.add_edge(s, t)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, s: usize, t: usize) -> Result<(), BuildingError> {
        for v in [s, t] {
            if v >= self.vertex_count {
                return Err(BuildingError::OutOfRange {
                    element: v,
                    ground: self.vertex_count,
                });
            }
        }
        if s == t {
            return Err(BuildingError::SelfLoop(s));
        }
        self.edges.insert((s.min(t), s.max(t)));
        Ok(())
    }

    pub fn path(n: usize) -> Result<Self, BuildingError> {
        Graph::with_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self, BuildingError> {
        let mut g = Graph::path(n)?;
        if n >= 3 {
            g.add_edge(0, n - 1)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, BuildingError> {
        Graph::with_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
    }

    pub fn star(n: usize) -> Result<Self, BuildingError> {
        Graph::with_edges(n, (1..n).map(|i| (0, i)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edges with the smaller endpoint first, in increasing order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    fn adjacency(&self) -> Vec<Subset> {
        let mut adj = vec![Subset::EMPTY; self.vertex_count];
        for &(s, t) in &self.edges {
            adj[s] = adj[s].union(Subset::singleton(t));
            adj[t] = adj[t].union(Subset::singleton(s));
        }
        adj
    }
}

fn induces_connected(adj: &[Subset], c: Subset) -> bool {
    let Some(start) = c.min_element() else {
        return false;
    };
    let mut reached = Subset::singleton(start);
    let mut frontier = reached;
    while !frontier.is_empty() {
        let mut next = Subset::EMPTY;
        for v in frontier.iter() {
            next = next.union(adj[v]);
        }
        next = next.intersection(c).difference(reached);
        reached = reached.union(next);
        frontier = next;
    }
    reached == c
}

/// All nonempty vertex sets inducing a connected subgraph.
pub fn graphical_from_graph(g: &Graph) -> BuildingSet {
    let ground = GroundSet::new(g.vertex_count).expect("graph has a valid vertex count");
    let adj = g.adjacency();
    let sets: Vec<Subset> = ground
        .full()
        .subsets()
        .filter(|&c| !c.is_empty() && induces_connected(&adj, c))
        .collect();
    BuildingSet::from_valid(ground, sets)
}

/// Builds the graph of two-element members and reports whether its
/// graphical building is `b` itself.
pub fn is_graphical(b: &BuildingSet) -> (bool, Graph) {
    let g = b.two_element_graph();
    let candidate = graphical_from_graph(&g);
    (candidate.sets() == b.sets(), g)
}
