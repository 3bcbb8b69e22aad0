//! Writes the permutation graph of a Stirling permutation and the seven
//! (5, 3)-Dyck paths as SVG files.
//!
//! Run with: cargo run --example render_figures -- [output_dir]

use std::path::PathBuf;

use stirling_mesa::dyck::delta;
use stirling_mesa::enumeration::enumerate_maximal;
use stirling_mesa::render::{render_dyck, render_permutation, Styling};
use stirling_mesa::StirlingPermutation;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "figures".into()));
    std::fs::create_dir_all(&dir)?;
    let styling = Styling::default();

    let w: StirlingPermutation = "884425536776321199".parse().unwrap();
    let file = dir.join(format!("perm_{w}.svg"));
    std::fs::write(&file, render_permutation(&w, &styling))?;
    println!("wrote {}", file.display());

    for m in enumerate_maximal(3) {
        let path = delta(&m).unwrap();
        let file = dir.join(format!("dyck_{path}.svg"));
        std::fs::write(&file, render_dyck(&path, &styling))?;
        println!("wrote {} for {m}", file.display());
    }
    Ok(())
}
