mod common;

use nestohedra::building::{contraction, restriction};
use nestohedra::fan::{LatticeVector, QuotientLattice};
use nestohedra::nested::{enumerate_complex, is_nested, pairwise_compatible};
use nestohedra::oracle::random_building;
use nestohedra::{
    graphical_from_graph, is_graphical, validate_building, BuildingSet, Graph, Subset,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn building(seed: u64, n: usize) -> BuildingSet {
    random_building(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::new(n).unwrap();
            let mut k = 0;
            for s in 0..n {
                for t in s + 1..n {
                    if bits[k] {
                        g.add_edge(s, t).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minors_are_buildings(seed in any::<u64>(), n in 1usize..=7, pick in any::<prop::sample::Index>()) {
        let b = building(seed, n);
        let c = b.sets()[pick.index(b.len())];
        let r = restriction(&b, c).unwrap();
        prop_assert_eq!(r.building.n(), c.len());
        prop_assert!(validate_building(r.building.sets(), r.building.ground()).is_ok());
        if c != b.full() {
            let k = contraction(&b, c, true).unwrap();
            prop_assert_eq!(k.building.n(), n - c.len());
            for &x in k.building.sets() {
                let lifted = k.lift(x);
                prop_assert!(lifted.is_disjoint(c));
            }
        }
    }

    #[test]
    fn graphical_round_trip(g in graph_strategy()) {
        let b = graphical_from_graph(&g);
        let (graphical, recovered) = is_graphical(&b);
        prop_assert!(graphical);
        prop_assert_eq!(recovered, g);
    }

    #[test]
    fn expansion_round_trip(seed in any::<u64>(), n in 1usize..=8, coords in proptest::collection::vec(-60i64..=60, 8)) {
        let b = building(seed, n);
        let ql = QuotientLattice::new(&b);
        let v = LatticeVector(coords[..ql.dim()].to_vec());
        let e = ql.nested_expansion(&v).unwrap();
        prop_assert_eq!(ql.evaluate(&e), v.clone());
        prop_assert!(is_nested(&b, e.support().members()).unwrap());
        prop_assert_eq!(ql.locate(&v).unwrap(), e.support());
    }

    #[test]
    fn clique_property(g in graph_strategy(), picks in proptest::collection::vec(any::<prop::sample::Index>(), 0..5)) {
        let b = graphical_from_graph(&g);
        let vertices: Vec<Subset> = b.non_maximal().collect();
        prop_assume!(!vertices.is_empty());
        let mut fam: Vec<Subset> = picks.iter().map(|p| vertices[p.index(vertices.len())]).collect();
        fam.sort();
        fam.dedup();
        let pairwise = fam.iter().enumerate().all(|(a, &x)| {
            fam[a + 1..].iter().all(|&y| pairwise_compatible(&b, x, y).unwrap())
        });
        prop_assert_eq!(is_nested(&b, &fam).unwrap(), pairwise);
    }

    #[test]
    fn f_vector_counts_vertices(seed in any::<u64>(), n in 1usize..=7) {
        let b = building(seed, n);
        let c = enumerate_complex(&b).unwrap();
        let f = c.f_vector();
        prop_assert_eq!(f.get(0), 1);
        prop_assert_eq!(f.get(1) as usize, b.len() - b.components().len());
        prop_assert_eq!(f.coefficients().len(), b.rank() + 1);
        prop_assert!(c.maximal_faces().iter().all(|m| m.len() == b.rank()));
    }
}
