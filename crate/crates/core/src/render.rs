//! SVG pictures of rank-two nested fans and polytopes.
//!
//! The fan is drawn in the coordinates of the quotient lattice and the
//! polytope is projected onto the same kept coordinates, which is an affine
//! isomorphism on the subspace cut out by the equalities.

use std::fmt::Write as _;

use thiserror::Error;

use crate::fan::QuotientLattice;
use crate::nested::NestedComplex;
use crate::polytope::Polytope;

const PANEL: f64 = 320.0;
const RADIUS: f64 = 115.0;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RenderError {
    #[error("SVG output is only available for rank at most 2 (rank is {0})")]
    RankTooHigh(usize),
}

fn planar(coords: &[f64]) -> (f64, f64) {
    (
        coords.first().copied().unwrap_or(0.0),
        coords.get(1).copied().unwrap_or(0.0),
    )
}

fn label(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Fan on the left, polytope on the right.
pub fn render_svg(
    ql: &QuotientLattice,
    complex: &NestedComplex,
    polytope: &Polytope,
) -> Result<String, RenderError> {
    let rank = complex.rank();
    if rank > 2 {
        return Err(RenderError::RankTooHigh(rank));
    }
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="serif" font-size="13">"#,
        w = 2.0 * PANEL,
        h = PANEL
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);

    // Fan.
    let (cx, cy) = (PANEL / 2.0, PANEL / 2.0);
    let _ = writeln!(svg, r#"<g id="fan">"#);
    for &v in complex.vertices() {
        let ray: Vec<f64> = ql.ray(v).coords().iter().map(|&x| x as f64).collect();
        let (x, y) = planar(&ray);
        let norm = (x * x + y * y).sqrt().max(1.0);
        let (dx, dy) = (x / norm * RADIUS, -y / norm * RADIUS);
        let _ = writeln!(
            svg,
            r#"<line class="ray" x1="{cx:.2}" y1="{cy:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-width="1.5"/>"#,
            cx + dx,
            cy + dy
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
            cx + dx * 1.17,
            cy + dy * 1.17,
            label(&v.label())
        );
    }
    let _ = writeln!(
        svg,
        r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="2.5" fill="black"/>"#
    );
    let _ = writeln!(svg, "</g>");

    // Polytope.
    let kept = ql.kept();
    let points: Vec<(String, (f64, f64))> = polytope
        .vertices
        .iter()
        .map(|(n, x)| {
            let coords: Vec<f64> = kept
                .iter()
                .map(|&i| *x[i].numer() as f64 / *x[i].denom() as f64)
                .collect();
            (n.label(), planar(&coords))
        })
        .collect();
    let extent = points
        .iter()
        .flat_map(|(_, (x, y))| [x.abs(), y.abs()])
        .fold(0.0f64, f64::max)
        .max(1.0);
    let scale = RADIUS * 0.8 / extent;
    let (px, py) = (PANEL + PANEL / 2.0, PANEL / 2.0);
    let screen = |(x, y): (f64, f64)| (px + x * scale, py - y * scale);
    let n = points.len() as f64;
    let centroid = points.iter().fold((0.0, 0.0), |acc, (_, (x, y))| {
        (acc.0 + x / n, acc.1 + y / n)
    });
    let mut ordered: Vec<&(String, (f64, f64))> = points.iter().collect();
    ordered.sort_by(|a, b| {
        let angle = |p: &(f64, f64)| (p.1 - centroid.1).atan2(p.0 - centroid.0);
        angle(&a.1).total_cmp(&angle(&b.1))
    });
    let _ = writeln!(svg, r#"<g id="polytope">"#);
    let outline: Vec<String> = ordered
        .iter()
        .map(|(_, p)| {
            let (x, y) = screen(*p);
            format!("{x:.2},{y:.2}")
        })
        .collect();
    let _ = writeln!(
        svg,
        r##"<polygon points="{}" fill="#cfe0f3" stroke="black" stroke-width="1.5"/>"##,
        outline.join(" ")
    );
    for (name, p) in &ordered {
        let (x, y) = screen(*p);
        let (ox, oy) = (p.0 - centroid.0, centroid.1 - p.1);
        let norm = (ox * ox + oy * oy).sqrt().max(1e-9);
        let _ = writeln!(
            svg,
            r#"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="3.5" fill="black"/>"#
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" dominant-baseline="middle" font-size="11">{}</text>"#,
            x + ox / norm * 28.0,
            y + oy / norm * 16.0,
            label(name)
        );
    }
    let _ = writeln!(svg, "</g>");
    svg.push_str("</svg>\n");
    Ok(svg)
}
