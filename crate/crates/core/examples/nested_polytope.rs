//! The polytope of the trapezoid building: inequalities, exact vertices,
//! convexity margins and the normal fan check.
//!
//! Run with `cargo run --example nested_polytope`.

use nestohedra::io::rational_string;
use nestohedra::polytope::check_convexity;
use nestohedra::{dual_graph, enumerate_complex, fixtures, realize, verify_normal_fan};

fn main() {
    let b = fixtures::d3();
    let p = realize(&b).unwrap();
    for q in &p.inequalities {
        println!("sum over {:<6} <= {}", q.set.label(), q.rhs);
    }
    for (n, x) in &p.vertices {
        let point: Vec<String> = x.iter().map(rational_string).collect();
        println!("{n:<16} ({})", point.join(", "));
    }

    let c = enumerate_complex(&b).unwrap();
    let dual = dual_graph(&c).unwrap();
    for e in &dual.edges {
        let (n1, n2) = (&dual.nodes[e.a], &dual.nodes[e.b]);
        println!(
            "margin {n1} | {n2}: {}",
            check_convexity(&b, n1, n2).unwrap()
        );
    }
    println!("{:?}", verify_normal_fan(&c, &p, &dual).unwrap());
}
