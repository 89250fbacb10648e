//! Writes the fan and polytope of the square and trapezoid cases as SVG.
//!
//! Run with `cargo run --example figure -- [DIR]` (default: current
//! directory).

use std::path::PathBuf;

use nestohedra::render::render_svg;
use nestohedra::{enumerate_complex, fixtures, realize, QuotientLattice};

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    for (name, b) in [("d2", fixtures::d2()), ("d3", fixtures::d3())] {
        let c = enumerate_complex(&b).unwrap();
        let svg = render_svg(&QuotientLattice::new(&b), &c, &realize(&b).unwrap()).unwrap();
        let path = dir.join(format!("{name}.svg"));
        std::fs::write(&path, svg).unwrap();
        println!("wrote {}", path.display());
    }
}
