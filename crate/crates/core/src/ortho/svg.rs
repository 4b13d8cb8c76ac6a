use std::collections::HashSet;
use std::fmt::Write as _;

use super::Drawing;
use crate::graph::EdgeId;

const UNIT: i64 = 40;
const MARGIN: i64 = 20;
const STRAIGHT: &str = "#d62728";
const BENT: &str = "#1f77b4";

/// SVG 1.1 rendering: edges in `straight` red, all others blue.
pub fn render_svg(drawing: &Drawing, straight: &[EdgeId]) -> String {
    let straight: HashSet<EdgeId> = straight.iter().copied().collect();
    let width = drawing.width() * UNIT + 2 * MARGIN;
    let height = drawing.height() * UNIT + 2 * MARGIN;
    let px = |p: (i64, i64)| (MARGIN + p.0 * UNIT, MARGIN + (drawing.height() - p.1) * UNIT);
    let mut out = String::new();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    )
    .unwrap();
    for (e, poly) in drawing.edges.iter().enumerate() {
        let colour = if straight.contains(&e) { STRAIGHT } else { BENT };
        let points: Vec<String> = poly.iter().map(|&p| px(p)).map(|(x, y)| format!("{x},{y}")).collect();
        writeln!(
            out,
            r#"  <polyline data-edge="{e}" points="{}" fill="none" stroke="{colour}" stroke-width="3"/>"#,
            points.join(" ")
        )
        .unwrap();
    }
    for (v, &p) in drawing.vertices.iter().enumerate() {
        let (x, y) = px(p);
        writeln!(out, r#"  <circle data-vertex="{v}" cx="{x}" cy="{y}" r="6" fill="black"/>"#).unwrap();
    }
    out.push_str("</svg>\n");
    out
}
