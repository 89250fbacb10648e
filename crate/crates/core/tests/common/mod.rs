#![allow(dead_code)]

use nestohedra::fixtures;
use nestohedra::oracle::random_building;
use nestohedra::{BuildingSet, NestedSet, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// 1-based labels, as in the worked examples.
pub fn s(labels: &[usize]) -> Subset {
    Subset::from_indices(labels.iter().map(|&i| i - 1))
}

pub fn ns(sets: &[&[usize]]) -> NestedSet {
    NestedSet::new(sets.iter().map(|x| s(x)))
}

/// The rank-two cases plus a spread of graphical families.
pub fn all_fixtures() -> Vec<(String, BuildingSet)> {
    let mut out: Vec<(String, BuildingSet)> = fixtures::rank_two()
        .into_iter()
        .enumerate()
        .map(|(k, b)| (format!("D{}", k + 1), b))
        .collect();
    for n in 3..=5 {
        out.push((format!("path({n})"), fixtures::path(n)));
        out.push((format!("complete({n})"), fixtures::complete(n)));
    }
    for n in 4..=5 {
        out.push((format!("cycle({n})"), fixtures::cycle(n)));
        out.push((format!("star({n})"), fixtures::star(n)));
    }
    out
}

pub fn graphical_fixtures() -> Vec<(String, BuildingSet)> {
    all_fixtures()
        .into_iter()
        .filter(|(_, b)| nestohedra::is_graphical(b).0)
        .collect()
}

/// `count` seeded random buildings on at most `max_n` elements.
pub fn random_instances(count: usize, max_n: usize, seed: u64) -> Vec<BuildingSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            random_building(&mut rng, n)
        })
        .collect()
}

pub fn fixtures_and_random(count: usize, max_n: usize, seed: u64) -> Vec<(String, BuildingSet)> {
    let mut out = all_fixtures();
    out.extend(
        random_instances(count, max_n, seed)
            .into_iter()
            .enumerate()
            .map(|(k, b)| (format!("random #{k}"), b)),
    );
    out
}
