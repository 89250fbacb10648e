//! The five rank-two buildings and their dual cycles.
//!
//! Run with `cargo run --example rank_two`.

use nestohedra::{enumerate_complex, fixtures, NestedSet};

fn main() {
    for (k, b) in fixtures::rank_two().iter().enumerate() {
        let c = enumerate_complex(b).unwrap();
        let lp = c.geodesic_loop(&NestedSet::empty()).unwrap();
        let cycle: Vec<String> = lp.cycle.iter().map(|n| n.label()).collect();
        println!("D{} {:?} ({}-cycle)", k + 1, lp.class.unwrap(), cycle.len());
        println!("   {}", cycle.join(" - "));
    }
}
