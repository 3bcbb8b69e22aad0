//! Maximal mesa sets of order 3k - 1 and their (2k - 1, k)-Dyck paths.
//!
//! Run with: cargo run --example dyck_bijection -- [k]

use stirling_mesa::dyck::{delta, delta_inverse, inversions, rational_catalan};
use stirling_mesa::enumeration::enumerate_maximal;

fn main() {
    let k: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("k must be a positive integer"))
        .unwrap_or(3);

    let mut count = 0;
    for m in enumerate_maximal(k) {
        let path = delta(&m).unwrap();
        assert_eq!(delta_inverse(&path).unwrap(), m);
        println!(
            "{m:<20} {path}  area {}  inversions {}",
            path.area(),
            inversions(&m)
        );
        count += 1;
    }
    println!(
        "{count} maximal sets in order {}; C_({},{}) = {}",
        3 * k - 1,
        2 * k - 1,
        k,
        rational_catalan(2 * k - 1, k).unwrap()
    );
}
