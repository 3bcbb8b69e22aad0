//! Four ways to count admissible mesa sets, side by side.
//!
//! Run with: cargo run --release --example counting -- [n_max] [brute_max] [workers]

use std::time::Instant;

use stirling_mesa::enumeration::{
    count_brute_force, count_closed_form, count_recurrence, count_subsets, BruteForceOptions,
};
use stirling_mesa::stirling::ResourceGuard;

fn arg(i: usize, default: usize) -> usize {
    std::env::args()
        .nth(i)
        .map(|s| s.parse().expect("expected a number"))
        .unwrap_or(default)
}

fn main() {
    let n_max = arg(1, 20) as u32;
    let brute_max = arg(2, 8);
    let workers = arg(3, 1);

    println!(
        "{:>3} {:>10} {:>10} {:>10} {:>10}",
        "n", "subset", "recurrence", "closed", "brute"
    );
    for n in 1..=n_max {
        let brute = if (n as usize) <= brute_max {
            let opts = BruteForceOptions {
                guard: ResourceGuard::unlimited(),
                workers,
            };
            let t = Instant::now();
            let c = count_brute_force(n as usize, &opts).unwrap();
            format!("{c} ({:.2?})", t.elapsed())
        } else {
            "-".into()
        };
        println!(
            "{n:>3} {:>10} {:>10} {:>10} {:>10}",
            count_subsets(n),
            count_recurrence(n),
            count_closed_form(n),
            brute
        );
    }
}
