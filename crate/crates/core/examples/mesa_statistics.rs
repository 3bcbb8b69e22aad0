//! Mesas, local minima and (the absence of) pinnacles.
//!
//! Run with: cargo run --example mesa_statistics -- [word]

use stirling_mesa::stirling::{parse_letters, validate_stirling};

fn main() {
    let words: Vec<String> = match std::env::args().nth(1) {
        Some(w) => vec![w],
        None => [
            "884425536776321199",
            "1334664225518877",
            "1331552662774884",
            "31324421",
        ]
        .map(String::from)
        .to_vec(),
    };
    for word in words {
        let letters = parse_letters(&word).expect("digits or comma-separated letters");
        match validate_stirling(&letters) {
            Ok(w) => println!(
                "{w}: mesas {:?}, local minima {:?}, pinnacle: {}",
                w.mesa_set(),
                w.local_minima(),
                w.has_pinnacle()
            ),
            Err(e) => println!("{word}: rejected ({e})"),
        }
    }
}
