use std::fmt::Write;

use fanfree::crossings::compute_crossings;
use fanfree::StraightLineDrawing;
use num_traits::ToPrimitive;

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

/// SVG 1.1 picture of a straight-line drawing: one circle per vertex, one
/// path per edge and a small square on every crossing.
pub fn svg(d: &StraightLineDrawing) -> String {
    let pts: Vec<(f64, f64)> = d
        .coords()
        .iter()
        .map(|p| (p.x.to_f64().unwrap_or(0.0), p.y.to_f64().unwrap_or(0.0)))
        .collect();
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        lo_x = lo_x.min(x);
        lo_y = lo_y.min(y);
        hi_x = hi_x.max(x);
        hi_y = hi_y.max(y);
    }
    let span = (hi_x - lo_x).max(hi_y - lo_y).max(f64::MIN_POSITIVE);
    let scale = if pts.len() > 1 {
        (SIZE - 2.0 * MARGIN) / span
    } else {
        1.0
    };
    let map = |(x, y): (f64, f64)| {
        if pts.len() <= 1 {
            return (SIZE / 2.0, SIZE / 2.0);
        }
        (MARGIN + (x - lo_x) * scale, SIZE - MARGIN - (y - lo_y) * scale)
    };

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    )
    .unwrap();
    out.push_str("<g class=\"edges\" stroke=\"#333\" stroke-width=\"1.2\" fill=\"none\">\n");
    for (i, &(a, b)) in d.graph().edges().iter().enumerate() {
        let (x1, y1) = map(pts[a]);
        let (x2, y2) = map(pts[b]);
        writeln!(
            out,
            "<path class=\"edge\" id=\"e{i}\" d=\"M {x1:.3} {y1:.3} L {x2:.3} {y2:.3}\"/>"
        )
        .unwrap();
    }
    out.push_str("</g>\n");
    if let Ok(rel) = compute_crossings(d) {
        out.push_str("<g class=\"crossings\" fill=\"#c22\">\n");
        for (e, f) in rel.pairs() {
            let (a, b) = d.graph().edge(e);
            let (c, dd) = d.graph().edge(f);
            if let Some(p) = intersection(pts[a], pts[b], pts[c], pts[dd]) {
                let (x, y) = map(p);
                writeln!(
                    out,
                    "<rect class=\"crossing\" x=\"{:.3}\" y=\"{:.3}\" width=\"5\" height=\"5\"/>",
                    x - 2.5,
                    y - 2.5
                )
                .unwrap();
            }
        }
        out.push_str("</g>\n");
    }
    out.push_str("<g class=\"vertices\" fill=\"#fff\" stroke=\"#000\">\n");
    for (v, &p) in pts.iter().enumerate() {
        let (x, y) = map(p);
        writeln!(
            out,
            "<circle class=\"vertex\" id=\"v{v}\" cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"4\"/>"
        )
        .unwrap();
    }
    out.push_str("</g>\n</svg>\n");
    out
}

fn intersection(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> Option<(f64, f64)> {
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (d.0 - c.0, d.1 - c.1);
    let den = r.0 * s.1 - r.1 * s.0;
    if den == 0.0 {
        return None;
    }
    let t = ((c.0 - a.0) * s.1 - (c.1 - a.1) * s.0) / den;
    Some((a.0 + t * r.0, a.1 + t * r.1))
}
