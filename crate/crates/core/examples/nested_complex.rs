//! The nested complex of the path graph on four vertices: f-vector, dual
//! graph, links and exchanges.
//!
//! Run with `cargo run --example nested_complex`.

use nestohedra::nested::{exchange, link};
use nestohedra::{dual_graph, enumerate_complex, fixtures};

fn main() {
    let b = fixtures::path(4);
    let c = enumerate_complex(&b).unwrap();
    println!("f-vector {:?}", c.f_vector().coefficients());
    c.verify_f_recursion().unwrap();

    let dual = dual_graph(&c).unwrap();
    println!(
        "{} maximal nested sets, {} flips",
        dual.nodes.len(),
        dual.edges.len()
    );

    let first = &c.maximal_faces()[0];
    println!("flips out of {first}:");
    for &i in first.members() {
        let (next, record) = exchange(&b, first, i).unwrap();
        println!(
            "  drop {} -> {next}  (union target {})",
            record.i1, record.union_target
        );
    }

    let v = c.vertices()[4];
    let l = link(&b, v).unwrap();
    let members: Vec<String> = l.building.sets().iter().map(|s| s.label()).collect();
    println!("link of {v} is the complex of {}", members.join(" "));

    println!("2-faces by size: {:?}", c.loop_lengths().unwrap());
    print!("{}", dual.to_dot());
}
