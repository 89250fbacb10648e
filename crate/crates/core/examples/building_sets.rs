//! Validating, closing and combining building sets.
//!
//! Run with `cargo run --example building_sets`.

use nestohedra::building::{contraction, restriction, BuildingSet};
use nestohedra::{fixtures, is_graphical, product, validate_building, GroundSet, Subset};

fn show(name: &str, b: &BuildingSet) {
    let members: Vec<String> = b.sets().iter().map(|s| s.label()).collect();
    let maximal: Vec<String> = b.components().iter().map(|s| s.label()).collect();
    println!("{name}: {}", members.join(" "));
    println!(
        "  maximal {}  rank {}  graphical {}",
        maximal.join(" "),
        b.rank(),
        is_graphical(b).0
    );
}

fn main() {
    let ground = GroundSet::new(3).unwrap();
    let missing = [
        Subset::singleton(0),
        Subset::singleton(1),
        Subset::from_indices([0, 1]),
    ];
    println!(
        "without {{3}}: {}",
        validate_building(&missing, ground).unwrap_err()
    );

    let not_closed: Vec<Subset> = (0..3)
        .map(Subset::singleton)
        .chain([Subset::from_indices([0, 1]), Subset::from_indices([1, 2])])
        .collect();
    println!(
        "{{1,2}} and {{2,3}}: {}",
        validate_building(&not_closed, ground).unwrap_err()
    );

    // The union closure repairs it into the pentagon's building.
    let closed = BuildingSet::closure(3, &not_closed).unwrap();
    show("closure", &closed);

    let d5 = fixtures::d5();
    let r = restriction(&d5, Subset::from_indices([0, 2])).unwrap();
    show("D5 restricted to {1,3}", &r.building);
    let k = contraction(&d5, Subset::singleton(1), true).unwrap();
    show("D5 contracted by {2}", &k.building);

    show(
        "D1 x D1",
        &product(&[fixtures::d1(), fixtures::d1()]).unwrap(),
    );
    show("D3", &fixtures::d3());
}
