//! Graph associahedra: associahedra from paths, permutohedra from complete
//! graphs, cyclohedra and stellohedra, checked against the brute-force
//! nested complex.
//!
//! Run with `cargo run --release --example graph_associahedra`.

use nestohedra::oracle::brute_nested_complex;
use nestohedra::polytope::two_faces;
use nestohedra::{enumerate_complex, fixtures, BuildingSet};

fn report(name: &str, b: &BuildingSet) {
    let c = enumerate_complex(b).unwrap();
    let brute = brute_nested_complex(b).unwrap();
    assert_eq!(c.f_vector().coefficients(), brute.f_vector());
    let gons = if c.rank() >= 2 {
        format!("{:?}", two_faces(&c).unwrap())
    } else {
        "-".into()
    };
    println!(
        "{name:<12} f = {:?}  2-faces {gons}",
        c.f_vector().coefficients()
    );
}

fn main() {
    for n in 2..=6 {
        report(&format!("path({n})"), &fixtures::path(n));
    }
    for n in 2..=5 {
        report(&format!("complete({n})"), &fixtures::complete(n));
    }
    for n in 3..=5 {
        report(&format!("cycle({n})"), &fixtures::cycle(n));
        report(&format!("star({n})"), &fixtures::star(n));
    }
}
