//! Rays, cones and nested expansions in the quotient lattice.
//!
//! Run with `cargo run --example nested_fan`.

use nestohedra::{enumerate_complex, fixtures, verify_fan, QuotientLattice};

fn main() {
    let b = fixtures::d4();
    let c = enumerate_complex(&b).unwrap();
    let ql = QuotientLattice::new(&b);
    println!("lattice of rank {}", ql.dim());
    for &v in c.vertices() {
        println!("  ray {:<6} {:?}", v.label(), ql.ray(v));
    }
    for n in c.maximal_faces() {
        println!("  cone {n} det {}", ql.basis_check(n).unwrap());
    }

    for x in [[3, -1, 0], [0, 0, 5], [2, 7, -4]] {
        let v = ql.project(&x).unwrap();
        let e = ql.nested_expansion(&v).unwrap();
        let terms: Vec<String> = e
            .terms
            .iter()
            .map(|(s, k)| format!("{k} e{}", s.label()))
            .collect();
        println!("{v:?} = {}", terms.join(" + "));
        assert_eq!(ql.evaluate(&e), v);
    }

    let report = verify_fan(&ql, &c, 1000, 0).unwrap();
    println!("{report:?}");
}
