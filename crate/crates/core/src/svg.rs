//! SVG 1.1 pictures of cusp hulls.
//!
//! Points of the translation lattice are placed by the two real embeddings
//! of k. Coordinates are exact until this module rounds them for drawing.

use std::fmt::Write as _;

use crate::cusps::HullCycle;
use crate::qfield::{Place, QuadElt};

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const MAX_POINTS: usize = 20_000;

fn xy(w: &QuadElt) -> (f64, f64) {
    (w.approx(Place::First), w.approx(Place::Second))
}

/// Lattice points `m t1 + n t2` that are totally positive and lie in the
/// square `[0, side]^2` of the embedding.
pub fn lattice_points(t1: &QuadElt, t2: &QuadElt, side: f64) -> Vec<QuadElt> {
    let (a, c) = xy(t1);
    let (b, d) = xy(t2);
    let det = a * d - b * c;
    let corners = [(0.0, 0.0), (side, 0.0), (0.0, side), (side, side)];
    let coeffs: Vec<(f64, f64)> = corners.iter().map(|&(x, y)| ((d * x - b * y) / det, (a * y - c * x) / det)).collect();
    let lo = |f: fn(&(f64, f64)) -> f64| coeffs.iter().map(f).fold(f64::INFINITY, f64::min).floor() as i64 - 1;
    let hi = |f: fn(&(f64, f64)) -> f64| coeffs.iter().map(f).fold(f64::NEG_INFINITY, f64::max).ceil() as i64 + 1;
    let mut out = vec![];
    for m in lo(|p| p.0)..=hi(|p| p.0) {
        for n in lo(|p| p.1)..=hi(|p| p.1) {
            let w = &(t1 * &QuadElt::from_int(m)) + &(t2 * &QuadElt::from_int(n));
            let (x, y) = xy(&w);
            if w.is_totally_positive() && x <= side && y <= side {
                out.push(w);
                if out.len() >= MAX_POINTS {
                    return out;
                }
            }
        }
    }
    out
}

fn label(w: &QuadElt) -> String {
    w.to_string().replace(' ', "")
}

/// Render one period of the hull boundary with its neighbours, the lattice
/// points around it and the self-intersection numbers.
pub fn hull_svg(cycle: &HullCycle, title: &str) -> String {
    // A period can run far out along one axis; the median vertex keeps the
    // window on the corner where the boundary turns.
    let mut reach: Vec<f64> = cycle.vertices.iter().map(xy).map(|(x, y)| x.max(y)).collect();
    reach.sort_by(f64::total_cmp);
    let side = (reach[reach.len() / 2].max(1.0) * 1.15).ceil();
    let scale = (SIZE - 2.0 * MARGIN) / side;
    let px = |(x, y): (f64, f64)| (MARGIN + x * scale, SIZE - MARGIN - y * scale);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ =
        writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#);
    let _ = writeln!(s, "  <title>{}</title>", escape(title));
    let (x0, y0) = px((0.0, 0.0));
    let (x1, y1) = px((side, side));
    let _ = writeln!(
        s,
        r#"  <defs><clipPath id="win"><rect x="{x0:.2}" y="{y1:.2}" width="{:.2}" height="{:.2}"/></clipPath></defs>"#,
        x1 - x0,
        y0 - y1
    );
    let _ = writeln!(s, r#"  <g stroke="black" stroke-width="1">"#);
    let _ = writeln!(s, r#"    <line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}"/>"#);
    let _ = writeln!(s, r#"    <line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{y1:.2}"/>"#);
    let _ = writeln!(s, "  </g>");

    let _ = writeln!(s, r##"  <g fill="#888888">"##);
    for w in lattice_points(&cycle.lattice.t1, &cycle.lattice.t2, side) {
        let (x, y) = px(xy(&w));
        let _ = writeln!(s, r#"    <circle cx="{x:.2}" cy="{y:.2}" r="1.5"/>"#);
    }
    let _ = writeln!(s, "  </g>");

    let mut hull: Vec<(f64, f64)> = cycle.vertices_over(-2, 2).iter().map(xy).collect();
    hull.sort_by(|a, b| a.0.total_cmp(&b.0));
    let path: Vec<String> = hull
        .iter()
        .enumerate()
        .map(|(i, &p)| {
            let (x, y) = px(p);
            format!("{}{x:.2},{y:.2}", if i == 0 { "M" } else { " L" })
        })
        .collect();
    let _ = writeln!(s, r##"  <path clip-path="url(#win)" d="{}" fill="none" stroke="#1f4e99" stroke-width="1.5"/>"##, path.concat());

    let _ = writeln!(s, r#"  <g font-family="sans-serif" font-size="9">"#);
    let mut labelled = 0;
    for (v, b) in cycle.vertices.iter().zip(&cycle.self_intersections) {
        let (vx, vy) = xy(v);
        if vx > side || vy > side {
            continue;
        }
        labelled += 1;
        let (x, y) = px((vx, vy));
        let _ = writeln!(s, r##"    <circle cx="{x:.2}" cy="{y:.2}" r="3" fill="#1f4e99"/>"##);
        let _ = writeln!(s, r#"    <text x="{:.2}" y="{:.2}">{} ({b})</text>"#, x + 5.0, y - 5.0, escape(&label(v)));
    }
    let _ = writeln!(s, "  </g>");
    let _ = writeln!(s, "  <!-- {labelled} of {} vertices in the window -->", cycle.len());
    let _ = writeln!(s, r#"  <text x="{MARGIN}" y="{:.2}" font-family="sans-serif" font-size="12">{}</text>"#, MARGIN / 2.0, escape(title));
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::cycle_of;

    #[test]
    fn lattice_points_are_members() {
        let c = cycle_of("lambda8").unwrap();
        let pts = lattice_points(&c.lattice.t1, &c.lattice.t2, 30.0);
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|w| c.lattice.contains(w) && w.is_totally_positive()));
    }

    #[test]
    fn svg_is_deterministic_and_closed() {
        let c = cycle_of("lambda24").unwrap();
        let a = hull_svg(&c, "lambda24");
        assert_eq!(a, hull_svg(&c, "lambda24"));
        assert!(a.starts_with("<?xml") && a.trim_end().ends_with("</svg>"));
        assert_eq!(a.matches("<text").count(), 10);
        assert!(a.matches("<circle").count() < 1000);
    }
}
