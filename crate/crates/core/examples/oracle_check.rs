//! Compares the fast constructions with the brute-force oracles on random
//! buildings.
//!
//! Run with `cargo run --release --example oracle_check -- [COUNT] [SEED]`.

use nestohedra::oracle::{compare_with_oracles, random_building};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(50, |a| a.parse().expect("COUNT"));
    let seed: u64 = args.next().map_or(0, |a| a.parse().expect("SEED"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failed = 0;
    for _ in 0..count {
        let n = rng.gen_range(1..=6);
        let b = random_building(&mut rng, n);
        let report = compare_with_oracles(&b, 20, &mut rng).unwrap();
        if !report.passed() {
            failed += 1;
            println!("{report:?}");
        }
    }
    println!("{count} buildings, {failed} disagreements");
}
