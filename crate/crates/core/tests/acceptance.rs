//! Acceptance suite. Runs without the libtest harness so that one
//! PASS/FAIL line per criterion is always printed.

mod common;

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{fixtures_and_random, graphical_fixtures, ns, random_instances, s};
use nestohedra::fan::{verify_fan, LatticeVector, QuotientLattice};
use nestohedra::fixtures;
use nestohedra::linalg::Rational;
use nestohedra::nested::{dual_graph, enumerate_complex, link, pairwise_compatible};
use nestohedra::oracle::{brute_expansion_uniqueness, brute_nested_complex};
use nestohedra::polytope::{f_n, realize_complex, two_faces, verify_normal_fan_for};
use nestohedra::{product, BuildingSet, NestedSet, RankTwoType, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type CliRun = (Vec<u8>, Vec<(String, Vec<u8>)>);
type Criterion = (&'static str, fn() -> Outcome, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(context: &str) -> impl FnOnce(E) -> String + '_ {
    move |e| format!("{context}: {e}")
}

/// Equal as cyclic sequences, allowing rotation and reflection.
fn same_cycle(a: &[NestedSet], b: &[NestedSet]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let mut rev = b.to_vec();
    rev.reverse();
    (0..n)
        .any(|r| (0..n).all(|k| a[k] == b[(k + r) % n]) || (0..n).all(|k| a[k] == rev[(k + r) % n]))
}

fn criterion_1() -> Outcome {
    let expected: [Vec<NestedSet>; 5] = [
        vec![ns(&[&[1], &[2]]), ns(&[&[2], &[3]]), ns(&[&[1], &[3]])],
        vec![
            ns(&[&[1], &[2]]),
            ns(&[&[2], &[3]]),
            ns(&[&[3], &[4]]),
            ns(&[&[1], &[4]]),
        ],
        vec![
            ns(&[&[1], &[1, 2]]),
            ns(&[&[2], &[1, 2]]),
            ns(&[&[2], &[3]]),
            ns(&[&[1], &[3]]),
        ],
        vec![
            ns(&[&[1], &[1, 2]]),
            ns(&[&[2], &[1, 2]]),
            ns(&[&[2], &[2, 3]]),
            ns(&[&[3], &[2, 3]]),
            ns(&[&[1], &[3]]),
        ],
        vec![
            ns(&[&[1], &[1, 2]]),
            ns(&[&[2], &[1, 2]]),
            ns(&[&[2], &[2, 3]]),
            ns(&[&[3], &[2, 3]]),
            ns(&[&[3], &[1, 3]]),
            ns(&[&[1], &[1, 3]]),
        ],
    ];
    let types = [
        RankTwoType::D1,
        RankTwoType::D2,
        RankTwoType::D3,
        RankTwoType::D4,
        RankTwoType::D5,
    ];
    let mut lengths = Vec::new();
    for (k, b) in fixtures::rank_two().iter().enumerate() {
        let c = enumerate_complex(b).map_err(err("complex"))?;
        let dual = dual_graph(&c).map_err(err("dual graph"))?;
        let nodes: BTreeSet<&NestedSet> = dual.nodes.iter().collect();
        let listed: BTreeSet<&NestedSet> = expected[k].iter().collect();
        ensure!(nodes == listed, "D{}: vertex sets {:?}", k + 1, dual.nodes);
        ensure!(
            dual.edges.len() == dual.nodes.len(),
            "D{}: {} edges",
            k + 1,
            dual.edges.len()
        );
        let lp = c.geodesic_loop(&NestedSet::empty()).map_err(err("loop"))?;
        ensure!(
            same_cycle(&lp.cycle, &expected[k]),
            "D{}: cycle order {:?}",
            k + 1,
            lp.cycle
        );
        ensure!(
            lp.class == Some(types[k]),
            "D{}: classified {:?}",
            k + 1,
            lp.class
        );
        lengths.push(lp.cycle.len());
    }
    ensure!(lengths == [3, 4, 4, 5, 6], "lengths {lengths:?}");
    Ok(format!("cycle lengths {lengths:?}"))
}

fn sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn parallel(a: &[Rational], b: &[Rational]) -> bool {
    (0..a.len()).all(|i| (0..a.len()).all(|j| a[i] * b[j] == a[j] * b[i]))
}

/// Edge vectors of a polygon in cycle order.
fn polygon_edges(b: &BuildingSet) -> Result<Vec<Vec<Rational>>, String> {
    let c = enumerate_complex(b).map_err(err("complex"))?;
    let p = realize_complex(&c).map_err(err("polytope"))?;
    let lp = c.geodesic_loop(&NestedSet::empty()).map_err(err("loop"))?;
    let pts = p.polygon(&lp.cycle).map_err(err("polygon"))?;
    Ok((0..pts.len())
        .map(|k| sub(&pts[(k + 1) % pts.len()], &pts[k]))
        .collect())
}

fn criterion_2() -> Outcome {
    let q = |x: i128| Rational::from_integer(x);
    let d2 = fixtures::d2();
    let e = polygon_edges(&d2)?;
    ensure!(e.len() == 4, "D2 has {} vertices", e.len());
    let lengths: Vec<Rational> = e.iter().map(|v| dot(v, v)).collect();
    ensure!(
        lengths.iter().all(|l| *l == lengths[0]),
        "D2 squared edge lengths {lengths:?}"
    );
    ensure!(
        parallel(&e[0], &e[2]) && parallel(&e[1], &e[3]),
        "D2 opposite edges not parallel"
    );
    ensure!(dot(&e[0], &e[1]) == q(0), "D2 corner is not a right angle");

    let d3 = fixtures::d3();
    let e = polygon_edges(&d3)?;
    ensure!(e.len() == 4, "D3 has {} vertices", e.len());
    let pairs = [(0, 2), (1, 3)]
        .iter()
        .filter(|&&(a, b)| parallel(&e[a], &e[b]))
        .count();
    ensure!(pairs == 1, "D3 has {pairs} pairs of parallel edges");
    let adjacent_parallel = (0..4).any(|k| parallel(&e[k], &e[(k + 1) % 4]));
    ensure!(!adjacent_parallel, "D3 has a degenerate corner");

    let ql = QuotientLattice::new(&d2);
    let zero = LatticeVector::zero(ql.dim());
    let mut r13 = ql.ray(s(&[1]));
    r13.add_scaled(&ql.ray(s(&[3])), 1);
    let mut r24 = ql.ray(s(&[2]));
    r24.add_scaled(&ql.ray(s(&[4])), 1);
    ensure!(r13 == zero && r24 == zero, "D2 relations fail");

    let ql = QuotientLattice::new(&d3);
    let mut r12 = ql.ray(s(&[1]));
    r12.add_scaled(&ql.ray(s(&[2])), 1);
    ensure!(r12 == ql.ray(s(&[1, 2])), "D3: e1 + e2 != e12");
    let mut neg3 = LatticeVector::zero(ql.dim());
    neg3.add_scaled(&ql.ray(s(&[3])), -1);
    ensure!(ql.ray(s(&[1, 2])) == neg3, "D3: e12 != -e3");
    Ok("square and trapezoid, relations exact".to_string())
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let instances = fixtures_and_random(200, 6, 30);
    let mut uniqueness_instances = 0;
    for (name, b) in &instances {
        let c = enumerate_complex(b).map_err(err(name))?;
        let ql = QuotientLattice::new(b);
        for n in c.maximal_faces() {
            let det = ql.basis_check(n).map_err(err(name))?;
            ensure!(det.abs() == 1, "{name}: det {det} at {n}");
        }
        for _ in 0..1000 {
            let v = LatticeVector((0..ql.dim()).map(|_| rng.gen_range(-50..=50)).collect());
            let e = ql.nested_expansion(&v).map_err(err(name))?;
            ensure!(ql.evaluate(&e) == v, "{name}: round trip fails at {v:?}");
            ensure!(
                nestohedra::is_nested(b, e.support().members()).map_err(err(name))?,
                "{name}: support of {v:?} is not nested"
            );
        }
        if ql.dim() <= 5 {
            uniqueness_instances += 1;
            let brute = brute_nested_complex(b).map_err(err(name))?;
            for _ in 0..50 {
                let v = LatticeVector((0..ql.dim()).map(|_| rng.gen_range(-10..=10)).collect());
                let count = brute_expansion_uniqueness(&ql, &brute, &v).map_err(err(name))?;
                ensure!(count == 1, "{name}: {v:?} has {count} expansions");
            }
        }
    }
    Ok(format!(
        "{} instances, uniqueness on {uniqueness_instances}",
        instances.len()
    ))
}

fn criterion_4() -> Outcome {
    let instances = fixtures_and_random(200, 6, 40);
    let mut pairs = 0;
    for (name, b) in &instances {
        let c = enumerate_complex(b).map_err(err(name))?;
        let report = verify_fan(&QuotientLattice::new(b), &c, 0, 0).map_err(err(name))?;
        pairs += report.cone_pairs_checked;
    }
    Ok(format!(
        "{pairs} cone pairs on {} instances",
        instances.len()
    ))
}

fn criterion_5() -> Outcome {
    let instances = fixtures_and_random(200, 6, 50);
    let mut edges = 0;
    let mut min_margin: Option<i128> = None;
    for (name, b) in &instances {
        let report = verify_normal_fan_for(b).map_err(err(name))?;
        edges += report.edges;
        if let Some(m) = report.min_margin {
            ensure!(m > 0, "{name}: margin {m}");
            min_margin = Some(min_margin.map_or(m, |x| x.min(m)));
        }
    }
    Ok(format!(
        "{edges} dual edges, least margin {}",
        min_margin.unwrap_or(0)
    ))
}

fn criterion_6() -> Outcome {
    for (name, b) in fixtures_and_random(200, 6, 60) {
        let c = enumerate_complex(&b).map_err(err(&name))?;
        c.verify_f_recursion().map_err(err(&name))?;
    }
    let factors = random_instances(40, 5, 61);
    for pair in factors.chunks(2) {
        let joint = product(pair).map_err(err("product"))?;
        let f = |b: &BuildingSet| enumerate_complex(b).map(|c| c.f_vector().clone());
        let lhs = f(&joint).map_err(err("product complex"))?;
        let rhs = f(&pair[0])
            .map_err(err("factor"))?
            .multiply(&f(&pair[1]).map_err(err("factor"))?);
        ensure!(lhs == rhs, "product rule: {lhs:?} != {rhs:?}");
    }
    Ok("recursion on all instances, 20 products".to_string())
}

fn criterion_7() -> Outcome {
    let instances = fixtures_and_random(200, 6, 70);
    let mut links = 0;
    for (name, b) in &instances {
        let c = enumerate_complex(b).map_err(err(name))?;
        for &v in c.vertices() {
            let l = link(b, v).map_err(err(name))?;
            let mut mapped: Vec<NestedSet> = c
                .link_faces(v)
                .map_err(err(name))?
                .iter()
                .map(|f| l.map(f).ok_or_else(|| format!("{name}: {f} does not map")))
                .collect::<Result<_, _>>()?;
            mapped.sort();
            let brute = brute_nested_complex(&l.building).map_err(err(name))?;
            let mut expected: Vec<NestedSet> = brute.all_faces().cloned().collect();
            expected.sort();
            ensure!(mapped == expected, "{name}: link of {v} differs");
            links += 1;
        }
    }
    Ok(format!("{links} links"))
}

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// Families of vertices of size at most `k`, or all of them when the
/// vertex set is small.
fn families(vertices: &[Subset], k: usize) -> Vec<Vec<Subset>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![(0usize, Vec::new())];
    while let Some((start, fam)) = frontier.pop() {
        if fam.len() == k {
            continue;
        }
        for (i, &v) in vertices.iter().enumerate().skip(start) {
            let mut next: Vec<Subset> = fam.clone();
            next.push(v);
            out.push(next.clone());
            frontier.push((i + 1, next));
        }
    }
    out
}

fn criterion_8() -> Outcome {
    for n in 3..=5u64 {
        let b = fixtures::path(n as usize);
        let c = enumerate_complex(&b).map_err(err("path"))?;
        let brute = brute_nested_complex(&b).map_err(err("path"))?;
        let count = c.maximal_faces().len() as u64;
        ensure!(
            count == catalan(n) && brute.maximal_faces.len() as u64 == count,
            "path({n}): {count} maximal nested sets"
        );
    }
    let d4 = enumerate_complex(&fixtures::d4()).map_err(err("D4"))?;
    let p3 = enumerate_complex(&fixtures::path(3)).map_err(err("path"))?;
    ensure!(
        d4.maximal_faces() == p3.maximal_faces(),
        "path(3) is not the pentagon D4"
    );
    for n in 1..=5usize {
        let c = enumerate_complex(&fixtures::complete(n)).map_err(err("complete"))?;
        let fact: usize = (1..=n).product();
        ensure!(
            c.maximal_faces().len() == fact,
            "complete({n}): {}",
            c.maximal_faces().len()
        );
    }
    for (name, b) in graphical_fixtures() {
        let c = enumerate_complex(&b).map_err(err(&name))?;
        let brute = brute_nested_complex(&b).map_err(err(&name))?;
        let faces: BTreeSet<NestedSet> = brute.all_faces().cloned().collect();
        let bound = if c.vertices().len() <= 16 {
            usize::MAX
        } else {
            4
        };
        for fam in families(c.vertices(), bound.min(c.vertices().len())) {
            let pairwise = fam.iter().enumerate().all(|(a, &x)| {
                fam[a + 1..]
                    .iter()
                    .all(|&y| pairwise_compatible(&b, x, y).unwrap_or(false))
            });
            let nested = faces.contains(&NestedSet::new(fam.iter().copied()));
            ensure!(
                pairwise == nested,
                "{name}: clique property fails at {fam:?}"
            );
        }
        let dual = dual_graph(&c).map_err(err(&name))?;
        for e in &dual.edges {
            let r = &e.record;
            ensure!(
                r.padding.is_empty(),
                "{name}: padding at {} / {}",
                r.i1,
                r.i2
            );
            let common = dual.nodes[e.a].intersection(&dual.nodes[e.b]);
            let joined = r.i1.union(r.i2);
            ensure!(
                common.contains(joined) || b.is_component(joined),
                "{name}: {joined} is neither common nor a component"
            );
        }
        if c.rank() >= 2 {
            let gons = two_faces(&c).map_err(err(&name))?;
            ensure!(
                gons.keys().all(|k| (4..=6).contains(k)),
                "{name}: 2-faces {gons:?}"
            );
        }
    }
    let d1 = enumerate_complex(&fixtures::d1()).map_err(err("D1"))?;
    let gons = two_faces(&d1).map_err(err("D1"))?;
    ensure!(
        gons.len() == 1 && gons.get(&3) == Some(&1),
        "D1 2-faces {gons:?}"
    );
    ensure!(
        !nestohedra::is_graphical(&fixtures::d1()).0,
        "D1 is graphical"
    );
    Ok(format!("{} graphical fixtures", graphical_fixtures().len()))
}

fn criterion_9() -> Outcome {
    let pow = |e: u32| -> i128 { 1i128 << e };
    let mut checked = 0u64;
    for n in 1..=12u32 {
        ensure!(f_n(n, n) == 0, "f_{n}({n}) != 0");
        for a in 1..n {
            for b in 1..=n - a {
                let lhs = f_n(n, a) + f_n(n, b) - f_n(n, a + b);
                let rhs = i128::from(a) * (pow(a + b - 1) - pow(a - 1))
                    + i128::from(b) * (pow(a + b - 1) - pow(b - 1));
                ensure!(lhs == rhs && lhs > 0, "n={n}, a={a}, b={b}: {lhs} vs {rhs}");
                checked += 1;
            }
        }
        for r in 1..=n {
            for p1 in 1..r {
                for p2 in 1..r {
                    let gap = i128::from(r) * pow(r - 1)
                        - i128::from(p1) * pow(p1 - 1)
                        - i128::from(p2) * pow(p2 - 1);
                    ensure!(gap > 0, "n={n}, r={r}, p=({p1},{p2}): {gap}");
                    checked += 1;
                    // The form before simplification, when it applies.
                    if p1 + p2 > r {
                        let l = p1 + p2 - r;
                        if l < p1.min(p2) {
                            let gap =
                                f_n(n, p1) + f_n(n, p2) - i128::from(l) * f_n(n, 1) - f_n(n, r);
                            ensure!(gap > 0, "n={n}, r={r}, l={l}: {gap}");
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{checked} cases"))
}

fn run_cli(args: &[&str]) -> Result<CliRun, String> {
    let dir = tempfile::tempdir().map_err(err("tempdir"))?;
    let out_dir = dir.path().join("out");
    let mut full: Vec<String> = args.iter().map(|a| a.to_string()).collect();
    full.push("--output".into());
    full.push(out_dir.display().to_string());
    let output = Command::new(env!("CARGO_BIN_EXE_nestohedra"))
        .args(&full)
        .output()
        .map_err(err("spawn"))?;
    ensure!(
        output.status.success(),
        "{args:?} exited with {:?}: {}",
        output.status.code(),
        String::from_utf8_lossy(&output.stderr)
    );
    let mut files = Vec::new();
    for entry in std::fs::read_dir(&out_dir).map_err(err("read_dir"))? {
        let path = entry.map_err(err("entry"))?.path();
        let body = std::fs::read(&path).map_err(err("read"))?;
        files.push((
            path.file_name().unwrap().to_string_lossy().into_owned(),
            body,
        ));
    }
    files.sort();
    Ok((output.stdout, files))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(err("tempdir"))?;
    let building = dir.path().join("d3.json");
    std::fs::write(
        &building,
        r#"{"ground_set": 3, "sets": [[0], [1], [2], [0, 1], [0, 1, 2]]}"#,
    )
    .map_err(err("write"))?;
    let graph = dir.path().join("k4.json");
    std::fs::write(
        &graph,
        r#"{"vertices": 4, "edges": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]}"#,
    )
    .map_err(err("write"))?;
    let b = building.display().to_string();
    let g = graph.display().to_string();
    let commands: Vec<Vec<&str>> = vec![
        vec!["validate", "--input", &b],
        vec!["complex", "--input", &b],
        vec!["fan", "--input", &b],
        vec!["polytope", "--input", &b],
        vec![
            "verify",
            "--input",
            &b,
            "--seed",
            "7",
            "--samples",
            "200",
            "--oracle",
        ],
        vec!["render", "--input", &b],
        vec!["complex", "--input", &g, "--graph"],
        vec![
            "verify",
            "--input",
            &g,
            "--graph",
            "--seed",
            "3",
            "--samples",
            "100",
        ],
        vec!["render", "--input", &g, "--graph"],
    ];
    for cmd in &commands {
        let first = run_cli(cmd)?;
        let second = run_cli(cmd)?;
        ensure!(first == second, "{cmd:?} is not deterministic");
        ensure!(!first.1.is_empty(), "{cmd:?} wrote no artifacts");
    }
    Ok(format!("{} commands", commands.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "rank-two classification",
            criterion_1,
            Duration::from_secs(1),
        ),
        ("square and trapezoid", criterion_2, Duration::from_secs(1)),
        (
            "smoothness and expansions",
            criterion_3,
            Duration::from_secs(60),
        ),
        ("cone intersections", criterion_4, Duration::from_secs(30)),
        ("normal fan", criterion_5, Duration::from_secs(60)),
        ("f-vector recursion", criterion_6, Duration::from_secs(10)),
        ("link decomposition", criterion_7, Duration::from_secs(30)),
        ("graphical suite", criterion_8, Duration::from_secs(60)),
        ("f_n identities", criterion_9, Duration::from_secs(5)),
        ("determinism", criterion_10, Duration::from_secs(60)),
    ];
    let mut failures = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(detail) if elapsed <= *limit => ("PASS", detail),
            Ok(detail) => ("FAIL", format!("{detail}; over the {limit:?} limit")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failures += 1;
        }
        println!(
            "criterion {:>2} {status} {name} ({:.2?}): {detail}",
            k + 1,
            elapsed
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
