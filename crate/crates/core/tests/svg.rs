//! Rendered figures parse as XML and carry the expected geometry.

use roxmltree::Document;
use stirling_mesa::dyck::delta;
use stirling_mesa::enumeration::enumerate_maximal;
use stirling_mesa::render::{render_dyck, render_permutation, Styling};
use stirling_mesa::stirling::{generate_all, ResourceGuard};
use stirling_mesa::{RationalDyckPath, StirlingPermutation};

fn points(doc: &Document, class: &str) -> Vec<(f64, f64)> {
    let node = doc
        .descendants()
        .find(|n| n.attribute("class") == Some(class))
        .unwrap_or_else(|| panic!("no element of class {class}"));
    node.attribute("points")
        .unwrap()
        .split_whitespace()
        .map(|p| {
            let (x, y) = p.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

#[test]
fn permutation_graph_tracks_the_word() {
    let styling = Styling::default();
    for w in generate_all(4, &ResourceGuard::default()).unwrap() {
        let svg = render_permutation(&w, &styling);
        let doc = Document::parse(&svg).unwrap();
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        let pts = points(&doc, "graph");
        assert_eq!(pts.len(), w.word().len());
        for (i, pair) in pts.windows(2).enumerate() {
            assert_eq!(pair[1].0 - pair[0].0, styling.cell as f64);
            // Higher letters sit higher on the page, i.e. at smaller y.
            let rise = w.at(i + 2) as f64 - w.at(i + 1) as f64;
            assert_eq!(pair[0].1 - pair[1].1, rise * styling.cell as f64);
        }
    }
}

#[test]
fn large_letters_render() {
    let w: StirlingPermutation = "1,1,2,2,3,3,4,4,5,5,6,6,7,7,8,8,9,9,10,10,12,12,11,11"
        .parse()
        .unwrap();
    let svg = render_permutation(&w, &Styling::default());
    let doc = Document::parse(&svg).unwrap();
    assert_eq!(
        doc.descendants()
            .filter(|n| n.has_tag_name("circle"))
            .count(),
        24
    );
    assert_eq!(
        doc.descendants().filter(|n| n.has_tag_name("text")).count(),
        12
    );
}

#[test]
fn dyck_grids_are_well_formed() {
    let styling = Styling::default();
    for k in 1..=4 {
        for m in enumerate_maximal(k) {
            let p = delta(&m).unwrap();
            let svg = render_dyck(&p, &styling);
            let doc = Document::parse(&svg).unwrap();
            let (ell, rise) = p.target();
            let grid = doc
                .descendants()
                .find(|n| n.attribute("class") == Some("grid"))
                .unwrap();
            assert_eq!(
                grid.children().filter(|n| n.has_tag_name("line")).count() as u32,
                ell + 1 + rise + 1
            );
            let pts = points(&doc, "path");
            assert_eq!(pts.len(), p.steps().len() + 1);
            let first = pts[0];
            let last = *pts.last().unwrap();
            assert_eq!(last.0 - first.0, (ell * styling.cell) as f64);
            assert_eq!(first.1 - last.1, (rise * styling.cell) as f64);
            let diagonal = doc
                .descendants()
                .find(|n| n.attribute("class") == Some("diagonal"))
                .unwrap();
            assert_eq!(diagonal.attribute("stroke-dasharray"), Some("6,4"));
        }
    }
}

#[test]
fn rendering_is_deterministic() {
    let p: RationalDyckPath = "ENENNENN".parse().unwrap();
    let s = Styling::default();
    assert_eq!(render_dyck(&p, &s), render_dyck(&p, &s));
}
