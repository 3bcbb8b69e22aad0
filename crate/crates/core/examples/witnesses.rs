//! Admissibility, canonical witnesses, and moving between orders n and n + 1.
//!
//! Run with: cargo run --example witnesses

use stirling_mesa::mesa::{
    canonical_witness, extend, is_admissible, max_mesa_count, minimal_mesa_floor, restrict,
    sharp_witness, MesaSet,
};

fn main() {
    for s in ["5,7", "5,6,8", "3,4,5", "3,4,5,6", "1", "2,4,5,7,8"] {
        let m: MesaSet = s.parse().unwrap();
        if is_admissible(&m) {
            let w = canonical_witness(&m).unwrap();
            println!("{m:<12} admissible, canonical witness {w}");
        } else {
            println!("{m:<12} not admissible");
        }
    }

    println!();
    for n in 2..=9 {
        let w = sharp_witness(n);
        println!(
            "n = {n}: at most {} mesas, reached by {w} with mesas {:?}",
            max_mesa_count(n),
            w.mesa_set()
        );
    }
    println!(
        "smallest possible mesas for |M| = 6: {:?}",
        minimal_mesa_floor(6)
    );

    println!();
    let full: MesaSet = "3,4,5".parse().unwrap();
    match extend(&full, 5) {
        Ok(m) => println!("{full} extends to {m}"),
        Err(e) => println!("{full}: {e}"),
    }
    let small = MesaSet::new([2], 5).unwrap();
    let grown = extend(&small, 5).unwrap();
    println!(
        "{small} extends to {grown}, which restricts back to {}",
        restrict(&grown, 5).unwrap()
    );
}
