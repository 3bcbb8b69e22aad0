//! Exhaustive generation of Stirling permutations.
//!
//! Run with: cargo run --example generate -- [n]

use stirling_mesa::stirling::{generate_all, partitions, stirling_count, ResourceGuard};

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n must be a positive integer"))
        .unwrap_or(3);
    let guard = ResourceGuard::default();

    println!(
        "Q_{n} has (2n-1)!! = {} elements",
        stirling_count(n).unwrap()
    );
    if n <= 3 {
        for w in generate_all(n, &guard).unwrap() {
            println!("  {w}");
        }
    }

    // Split the stream by where `2 2` and `3 3` were inserted; each piece can be
    // handed to its own worker.
    let parts = partitions(n, 2, &guard).unwrap();
    println!("{} partitions by the first two gap choices:", parts.len());
    for p in &parts {
        let first = p.iter().next().unwrap();
        println!(
            "  prefix {:?}: {} words, first {first}",
            p.prefix(),
            p.len()
        );
    }
}
