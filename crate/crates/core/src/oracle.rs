//! Brute-force reference implementations for small instances.
//!
//! Nothing here shares code paths with the optimized modules beyond the
//! building itself and exact linear solves: nestedness is tested straight
//! from the antichain definition, expansions are found by searching every
//! nested support, and vertices come from every choice of tight
//! constraints.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::building::{graphical_from_graph, BuildingSet, Graph};
use crate::fan::{LatticeVector, QuotientLattice};
use crate::linalg::{rank, solve, Rational};
use crate::nested::{enumerate_complex, NestedError, NestedSet};
use crate::polytope::Polytope;
use crate::subset::Subset;

/// Vertex cap for [`brute_nested_complex`].
pub const MAX_BRUTE_VERTICES: usize = 64;
/// Cap on the number of tight-constraint choices in [`brute_vertices`].
pub const MAX_CONSTRAINT_CHOICES: u64 = 3_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} exceeds the oracle cap ({size} > {cap})")]
    TooLarge {
        what: &'static str,
        size: u64,
        cap: u64,
    },
    #[error(transparent)]
    Nested(#[from] NestedError),
}

/// Faces of the nested complex found by the raw definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteComplex {
    /// `faces[k]` holds the nested sets of size `k`, sorted.
    pub faces: Vec<Vec<NestedSet>>,
    pub maximal_faces: Vec<NestedSet>,
}

impl BruteComplex {
    pub fn f_vector(&self) -> Vec<u64> {
        self.faces.iter().map(|f| f.len() as u64).collect()
    }

    pub fn all_faces(&self) -> impl Iterator<Item = &NestedSet> {
        self.faces.iter().flatten()
    }
}

/// Tests `family ∪ {x}` for antichains containing `x` whose union lies in
/// `b`, over every subfamily. `family` must already be nested.
fn extension_is_nested(b: &BuildingSet, family: &[Subset], x: Subset) -> bool {
    let k = family.len();
    for mask in 1u64..(1u64 << k) {
        let chosen: Vec<Subset> = (0..k)
            .filter(|&i| mask & (1 << i) != 0)
            .map(|i| family[i])
            .chain(std::iter::once(x))
            .collect();
        let antichain = chosen.iter().enumerate().all(|(a, &p)| {
            chosen
                .iter()
                .enumerate()
                .all(|(c, &q)| a == c || !p.is_subset_of(q))
        });
        if antichain {
            let union = chosen.iter().fold(Subset::EMPTY, |acc, s| acc.union(*s));
            if b.contains(union) {
                return false;
            }
        }
    }
    true
}

/// Every nested set, by the antichain definition. Nestedness is inherited
/// by subsets, so a depth-first search that only grows nested sets visits
/// all of them.
pub fn brute_nested_complex(b: &BuildingSet) -> Result<BruteComplex, OracleError> {
    let vertices: Vec<Subset> = b
        .sets()
        .iter()
        .copied()
        .filter(|s| !b.components().contains(s))
        .collect();
    if vertices.len() > MAX_BRUTE_VERTICES {
        return Err(OracleError::TooLarge {
            what: "vertex count",
            size: vertices.len() as u64,
            cap: MAX_BRUTE_VERTICES as u64,
        });
    }
    let mut faces: Vec<Vec<NestedSet>> = Vec::new();
    let mut maximal = Vec::new();
    let mut stack: Vec<(Vec<usize>, Vec<Subset>)> = vec![(Vec::new(), Vec::new())];
    while let Some((chosen, members)) = stack.pop() {
        if faces.len() <= members.len() {
            faces.resize(members.len() + 1, Vec::new());
        }
        let face = NestedSet::new(members.iter().copied());
        faces[members.len()].push(face.clone());
        let start = chosen.last().map_or(0, |&l| l + 1);
        for (v, &x) in vertices.iter().enumerate().skip(start) {
            if extension_is_nested(b, &members, x) {
                let mut c = chosen.clone();
                c.push(v);
                let mut m = members.clone();
                m.push(x);
                stack.push((c, m));
            }
        }
        let extendable = vertices
            .iter()
            .any(|&v| !members.contains(&v) && extension_is_nested(b, &members, v));
        if !extendable {
            maximal.push(face);
        }
    }
    for f in &mut faces {
        f.sort();
    }
    maximal.sort();
    Ok(BruteComplex {
        faces,
        maximal_faces: maximal,
    })
}

/// Number of ways to write `v` as `Σ c_I ē_I` with positive integer
/// coefficients on a nested support, found by trying every face of the
/// brute-force complex.
pub fn brute_expansion_uniqueness(
    ql: &QuotientLattice,
    complex: &BruteComplex,
    v: &LatticeVector,
) -> Result<usize, OracleError> {
    if ql.dim() > 5 {
        return Err(OracleError::TooLarge {
            what: "lattice dimension",
            size: ql.dim() as u64,
            cap: 5,
        });
    }
    if let Some(big) = v.coords().iter().find(|x| x.abs() > 10) {
        return Err(OracleError::TooLarge {
            what: "coordinate bound",
            size: big.unsigned_abs(),
            cap: 10,
        });
    }
    let target: Vec<i128> = v.coords().iter().map(|&x| i128::from(x)).collect();
    let mut count = 0;
    for face in complex.all_faces() {
        if face.is_empty() {
            count += usize::from(v.is_zero());
            continue;
        }
        let rays: Vec<Vec<i128>> = face
            .members()
            .iter()
            .map(|&s| ql.ray(s).coords().iter().map(|&x| i128::from(x)).collect())
            .collect();
        count += positive_representations(&rays, &target);
    }
    Ok(count)
}

/// Number of positive integer `c` with `Σ c_k rays[k] = target`.
fn positive_representations(rays: &[Vec<i128>], target: &[i128]) -> usize {
    let k = rays.len();
    let dim = target.len();
    if rank(rays) == k {
        // Normal equations have a unique solution when the rays are independent.
        let gram: Vec<Vec<i128>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|c| (0..dim).map(|i| rays[a][i] * rays[c][i]).sum())
                    .collect()
            })
            .collect();
        let rhs: Vec<i128> = (0..k)
            .map(|a| (0..dim).map(|i| rays[a][i] * target[i]).sum())
            .collect();
        let Some(c) = solve(&gram, &rhs) else {
            return 0;
        };
        let exact = (0..dim).all(|i| {
            (0..k)
                .map(|a| c[a] * Rational::from_integer(rays[a][i]))
                .sum::<Rational>()
                == Rational::from_integer(target[i])
        });
        let positive_integers = c
            .iter()
            .all(|q| q.is_integer() && *q > Rational::from_integer(0));
        return usize::from(exact && positive_integers);
    }
    // Dependent rays: bounded search over coefficients 1..=10.
    let mut count = 0;
    let mut coeff = vec![1i128; k];
    loop {
        let hit =
            (0..dim).all(|i| (0..k).map(|a| coeff[a] * rays[a][i]).sum::<i128>() == target[i]);
        count += usize::from(hit);
        let mut pos = 0;
        loop {
            if pos == k {
                return count;
            }
            if coeff[pos] < 10 {
                coeff[pos] += 1;
                break;
            }
            coeff[pos] = 1;
            pos += 1;
        }
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n.saturating_sub(k));
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Vertices of the H-description found by solving every choice of `rank`
/// inequalities as equations and keeping the feasible solutions.
pub fn brute_vertices(p: &Polytope) -> Result<BTreeSet<Vec<Rational>>, OracleError> {
    let b = p.building();
    if b.n() > 7 {
        return Err(OracleError::TooLarge {
            what: "ground set",
            size: b.n() as u64,
            cap: 7,
        });
    }
    let m = p.inequalities.len();
    let r = b.rank();
    let choices = binomial(m as u64, r as u64);
    if choices > MAX_CONSTRAINT_CHOICES {
        return Err(OracleError::TooLarge {
            what: "constraint choices",
            size: choices,
            cap: MAX_CONSTRAINT_CHOICES,
        });
    }
    let size = b.n();
    let indicator =
        |s: Subset| -> Vec<i128> { (0..size).map(|i| i128::from(s.contains(i))).collect() };
    let base_rows: Vec<Vec<i128>> = p.equalities.iter().map(|&c| indicator(c)).collect();
    let mut found = BTreeSet::new();
    let mut pick: Vec<usize> = (0..r).collect();
    loop {
        let mut rows = base_rows.clone();
        let mut rhs = vec![0i128; rows.len()];
        for &k in &pick {
            rows.push(indicator(p.inequalities[k].set));
            rhs.push(p.inequalities[k].rhs);
        }
        if let Some(x) = solve(&rows, &rhs) {
            if p.contains_point(&x) {
                found.insert(x);
            }
        }
        // Next combination in lexicographic order.
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(found);
            }
            i -= 1;
            if pick[i] < m - r + i {
                pick[i] += 1;
                for j in i + 1..r {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A random building on `n` elements: the graphical building of a random
/// graph, and with probability one half, also the union closure of a few
/// random extra subsets (which usually makes it non-graphical).
pub fn random_building<R: Rng>(rng: &mut R, n: usize) -> BuildingSet {
    let mut g = Graph::new(n).expect("valid size");
    for s in 0..n {
        for t in s + 1..n {
            if rng.gen_bool(0.4) {
                g.add_edge(s, t).expect("valid edge");
            }
        }
    }
    let base = graphical_from_graph(&g);
    if n < 3 || rng.gen_bool(0.5) {
        return base;
    }
    let mut generators: Vec<Subset> = base.sets().to_vec();
    let extra = rng.gen_range(1..=3);
    for _ in 0..extra {
        let size = rng.gen_range(2..=n);
        let mut s = Subset::EMPTY;
        while s.len() < size {
            s = s.union(Subset::singleton(rng.gen_range(0..n)));
        }
        generators.push(s);
    }
    BuildingSet::closure(n, &generators).expect("random generators stay in range")
}

/// Outcome of comparing the optimized modules against the oracles on one
/// building.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub instance: String,
    pub checks: Vec<(String, bool)>,
    /// First disagreement found, if any.
    pub counterexample: Option<String>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs every oracle that fits the instance. `vectors` random lattice
/// vectors with coordinates in `[-10, 10]` are used for the expansion
/// uniqueness check.
pub fn compare_with_oracles<R: Rng>(
    b: &BuildingSet,
    vectors: usize,
    rng: &mut R,
) -> Result<OracleReport, OracleError> {
    let instance = format!(
        "n={} sets={:?}",
        b.n(),
        b.sets().iter().map(|s| s.label()).collect::<Vec<_>>()
    );
    let mut report = OracleReport {
        instance,
        checks: Vec::new(),
        counterexample: None,
    };
    let fast = enumerate_complex(b)?;
    let brute = brute_nested_complex(b)?;

    let mut complex_ok = true;
    for (k, brute_faces) in brute.faces.iter().enumerate() {
        let fast_faces = fast.faces_of_size(k).unwrap_or(&[]);
        if fast_faces != brute_faces.as_slice() {
            complex_ok = false;
            let witness = brute_faces
                .iter()
                .find(|f| !fast_faces.contains(f))
                .or_else(|| fast_faces.iter().find(|f| !brute_faces.contains(f)));
            report
                .counterexample
                .get_or_insert_with(|| format!("faces of size {k} differ at {:?}", witness));
        }
    }
    if fast.maximal_faces() != brute.maximal_faces.as_slice() {
        complex_ok = false;
        report
            .counterexample
            .get_or_insert_with(|| "maximal faces differ".to_string());
    }
    report
        .checks
        .push(("nested complex".to_string(), complex_ok));

    let ql = QuotientLattice::new(b);
    if ql.dim() <= 5 {
        let mut ok = true;
        for _ in 0..vectors {
            let v = LatticeVector((0..ql.dim()).map(|_| rng.gen_range(-10..=10)).collect());
            let count = brute_expansion_uniqueness(&ql, &brute, &v)?;
            if count != 1 {
                ok = false;
                report
                    .counterexample
                    .get_or_insert_with(|| format!("{v:?} has {count} nested expansions"));
                break;
            }
        }
        report.checks.push(("expansion uniqueness".to_string(), ok));
    }

    let mut polytope = Polytope::h_description(b);
    for n in fast.maximal_faces() {
        match polytope.vertex(n) {
            Ok(x) => {
                polytope.vertices.insert(n.clone(), x);
            }
            Err(e) => {
                report
                    .counterexample
                    .get_or_insert_with(|| format!("vertex of {n}: {e}"));
            }
        }
    }
    match brute_vertices(&polytope) {
        Ok(points) => {
            let ours: BTreeSet<Vec<Rational>> = polytope.vertices.values().cloned().collect();
            let ok = ours == points;
            if !ok {
                report
                    .counterexample
                    .get_or_insert_with(|| "vertex sets differ".to_string());
            }
            report.checks.push(("polytope vertices".to_string(), ok));
        }
        Err(OracleError::TooLarge { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(report)
}
