//! SVG figures: the graph of a Stirling permutation and a rational Dyck path
//! drawn on its grid with the dashed diagonal.
//!
//! Output is plain text built with `write!`, so identical inputs give
//! byte-identical documents. Coordinates are in "math" orientation (y up) and
//! flipped when emitted.

use std::fmt::Write as _;

use crate::dyck::{RationalDyckPath, Step};
use crate::stirling::StirlingPermutation;

pub const DEFAULT_CELL: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FigureKind {
    PermutationGraph,
    DyckGrid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Figure {
    Permutation(StirlingPermutation),
    Dyck(RationalDyckPath),
}

impl Figure {
    pub fn kind(&self) -> FigureKind {
        match self {
            Figure::Permutation(_) => FigureKind::PermutationGraph,
            Figure::Dyck(_) => FigureKind::DyckGrid,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Styling {
    /// Side of one unit cell, in px.
    pub cell: u32,
    pub margin: u32,
    /// Overrides the `width`/`height` attributes; the `viewBox` always spans
    /// the figure.
    pub canvas: Option<(u32, u32)>,
    /// Dyck grids only: draw the dashed line `y = (m / ℓ) x`.
    pub slope_line: bool,
}

impl Default for Styling {
    fn default() -> Self {
        Self {
            cell: DEFAULT_CELL,
            margin: DEFAULT_CELL,
            canvas: None,
            slope_line: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub figure: Figure,
    pub styling: Styling,
}

impl RenderSpec {
    pub fn kind(&self) -> FigureKind {
        self.figure.kind()
    }

    pub fn render(&self) -> String {
        match &self.figure {
            Figure::Permutation(w) => render_permutation(w, &self.styling),
            Figure::Dyck(p) => render_dyck(p, &self.styling),
        }
    }
}

/// Maps unit coordinates (y up) to pixels. Half-unit offsets are kept exact
/// by working in half-cells.
struct Frame {
    cell: u32,
    margin: u32,
    height_units2: u32,
}

impl Frame {
    /// `x2`, `y2` are coordinates in half units.
    fn px(&self, x2: i64, y2: i64) -> (String, String) {
        let half = self.cell as i64;
        let x = self.margin as i64 * 2 + x2 * half;
        let y = self.margin as i64 * 2 + (self.height_units2 as i64 - y2) * half;
        (halves(x), halves(y))
    }
}

/// Formats `v / 2` without trailing `.0`.
fn halves(v: i64) -> String {
    if v % 2 == 0 {
        (v / 2).to_string()
    } else {
        format!("{}.5", v.div_euclid(2))
    }
}

fn open_svg(out: &mut String, styling: &Styling, width: u32, height: u32) {
    let (w, h) = styling.canvas.unwrap_or((width, height));
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>"#
    );
}

/// The graph of `w`: points `(i, w(i))` joined by a polyline, with axes and
/// value labels.
pub fn render_permutation(w: &StirlingPermutation, styling: &Styling) -> String {
    let n = w.order() as u32;
    let len = 2 * n;
    // Axes run from 0.5 to len + 0.5 horizontally and 0.5 to n + 0.5 vertically.
    let frame = Frame {
        cell: styling.cell,
        margin: styling.margin,
        height_units2: 2 * n + 2,
    };
    let width = 2 * styling.margin + (len + 1) * styling.cell;
    let height = 2 * styling.margin + (n + 1) * styling.cell;

    let mut out = String::new();
    open_svg(&mut out, styling, width, height);

    let (ox, oy) = frame.px(1, 1);
    let (tx, ty) = frame.px(1, 2 * n as i64 + 1);
    let (rx, ry) = frame.px(2 * len as i64 + 1, 1);
    let _ = writeln!(
        out,
        r#"<polyline class="axes" points="{tx},{ty} {ox},{oy} {rx},{ry}" fill="none" stroke="black" stroke-width="2"/>"#
    );
    for v in 1..=n {
        let (x, y) = frame.px(0, 2 * v as i64);
        let _ = writeln!(
            out,
            r#"<text class="label" x="{x}" y="{y}" font-size="{}" text-anchor="middle" dominant-baseline="middle">{v}</text>"#,
            styling.cell / 2
        );
    }

    let points: Vec<(String, String)> = w
        .word()
        .iter()
        .enumerate()
        .map(|(i, &v)| frame.px(2 * (i as i64 + 1), 2 * v as i64))
        .collect();
    let joined: Vec<String> = points.iter().map(|(x, y)| format!("{x},{y}")).collect();
    let _ = writeln!(
        out,
        r#"<polyline class="graph" points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
        joined.join(" ")
    );
    let r = (styling.cell / 6).max(2);
    for (x, y) in &points {
        let _ = writeln!(
            out,
            r#"<circle class="point" cx="{x}" cy="{y}" r="{r}" fill="black"/>"#
        );
    }
    out.push_str("</svg>\n");
    out
}

/// An `ℓ × m` grid with the path drawn bold and, optionally, the dashed
/// diagonal from `(0, 0)` to `(ℓ, m)`.
pub fn render_dyck(p: &RationalDyckPath, styling: &Styling) -> String {
    let (ell, m) = p.target();
    let frame = Frame {
        cell: styling.cell,
        margin: styling.margin,
        height_units2: 2 * m,
    };
    let width = 2 * styling.margin + ell * styling.cell;
    let height = 2 * styling.margin + m * styling.cell;

    let mut out = String::new();
    open_svg(&mut out, styling, width, height);

    out.push_str(r#"<g class="grid" stroke="gray" stroke-width="1">"#);
    out.push('\n');
    for a in 0..=ell as i64 {
        let (x1, y1) = frame.px(2 * a, 0);
        let (x2, y2) = frame.px(2 * a, 2 * m as i64);
        let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
    }
    for b in 0..=m as i64 {
        let (x1, y1) = frame.px(0, 2 * b);
        let (x2, y2) = frame.px(2 * ell as i64, 2 * b);
        let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
    }
    out.push_str("</g>\n");

    if styling.slope_line {
        let (x1, y1) = frame.px(0, 0);
        let (x2, y2) = frame.px(2 * ell as i64, 2 * m as i64);
        let _ = writeln!(
            out,
            r#"<line class="diagonal" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="red" stroke-width="2" stroke-dasharray="6,4"/>"#
        );
    }

    let mut corners = Vec::new();
    let (mut a, mut b) = (0i64, 0i64);
    corners.push(frame.px(0, 0));
    for s in p.steps() {
        match s {
            Step::East => a += 1,
            Step::North => b += 1,
        }
        corners.push(frame.px(2 * a, 2 * b));
    }
    let joined: Vec<String> = corners.iter().map(|(x, y)| format!("{x},{y}")).collect();
    let _ = writeln!(
        out,
        r#"<polyline class="path" points="{}" fill="none" stroke="black" stroke-width="4" stroke-linejoin="round"/>"#,
        joined.join(" ")
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_svg_has_one_circle_per_letter() {
        let w: StirlingPermutation = "884425536776321199".parse().unwrap();
        let svg = render_permutation(&w, &Styling::default());
        assert_eq!(svg.matches("<circle").count(), 18);
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn smallest_permutation() {
        let w: StirlingPermutation = "11".parse().unwrap();
        let svg = render_permutation(&w, &Styling::default());
        assert_eq!(svg.matches("<circle").count(), 2);
        // Both points sit at height 1, i.e. on the same pixel row.
        let ys: Vec<&str> = svg
            .lines()
            .filter(|l| l.starts_with("<circle"))
            .map(|l| l.split("cy=\"").nth(1).unwrap().split('"').next().unwrap())
            .collect();
        assert_eq!(ys[0], ys[1]);
    }

    #[test]
    fn dyck_svg_grid() {
        let p: RationalDyckPath = "EEENNNNN".parse().unwrap();
        let svg = render_dyck(&p, &Styling::default());
        // 4 vertical + 6 horizontal grid lines, plus the diagonal.
        assert_eq!(svg.matches("<line").count(), 11);
        assert!(svg.contains("stroke-dasharray"));
        let no_slope = render_dyck(
            &p,
            &Styling {
                slope_line: false,
                ..Default::default()
            },
        );
        assert!(!no_slope.contains("stroke-dasharray"));
    }

    #[test]
    fn canvas_override() {
        let p: RationalDyckPath = "EN".parse().unwrap();
        let svg = render_dyck(
            &p,
            &Styling {
                canvas: Some((300, 200)),
                ..Default::default()
            },
        );
        assert!(svg.contains(r#"width="300" height="200" viewBox="0 0 72 72""#));
    }

    #[test]
    fn halves_format() {
        assert_eq!(halves(4), "2");
        assert_eq!(halves(5), "2.5");
    }

    #[test]
    fn spec_dispatches_on_kind() {
        let w: StirlingPermutation = "1122".parse().unwrap();
        let spec = RenderSpec {
            figure: Figure::Permutation(w.clone()),
            styling: Styling::default(),
        };
        assert_eq!(spec.kind(), FigureKind::PermutationGraph);
        assert_eq!(spec.render(), render_permutation(&w, &Styling::default()));
    }
}
