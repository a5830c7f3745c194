//! SVG rendering of support graphs: one circle marker per vertex at
//! (re y, im y) and one straight segment per edge. Coordinates are 64-bit
//! floating approximations of the exact values; the drawing is
//! illustrative, the certificates are exact.

use std::fmt::Write as _;

use crate::pencil::SupportGraph;

const CANVAS: f64 = 400.0;
const MARGIN: f64 = 32.0;
const RADIUS: f64 = 4.0;

/// Render the graph as a standalone SVG 1.1 document.
pub fn render_support_graph(g: &SupportGraph) -> String {
    let pts: Vec<(f64, f64)> = g
        .vertices
        .iter()
        .map(|v| {
            let (re, im) = v.y.to_complex_f64();
            (re, im)
        })
        .collect();
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &pts {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = (CANVAS - 2.0 * MARGIN) / span;
    // SVG y grows downward; flip the imaginary axis.
    let map = |(x, y): (f64, f64)| {
        (
            MARGIN + (x - min_x) * scale,
            CANVAS - MARGIN - (y - min_y) * scale,
        )
    };

    let mut out = String::new();
    writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    )
    .unwrap();
    for e in &g.edges {
        let (x1, y1) = map(pts[e.a]);
        let (x2, y2) = map(pts[e.b]);
        writeln!(
            out,
            r##"  <line x1="{x1:.3}" y1="{y1:.3}" x2="{x2:.3}" y2="{y2:.3}" stroke="#1f6f3f" stroke-width="2"/>"##
        )
        .unwrap();
    }
    for (i, &p) in pts.iter().enumerate() {
        let (cx, cy) = map(p);
        writeln!(
            out,
            r##"  <circle cx="{cx:.3}" cy="{cy:.3}" r="{RADIUS}" fill="#13335a"><title>line {i}</title></circle>"##
        )
        .unwrap();
    }
    writeln!(out, "</svg>").unwrap();
    out
}
