//! Static SVG rendering of a geodesic fan inside the disk.

use std::fmt::Write;

pub const CANVAS: f64 = 600.0;
const MARGIN: f64 = 30.0;
/// Arcs are thinned to at most this many vertices.
const MAX_VERTICES: usize = 400;

/// A plotted arc in disk coordinates with marked points.
#[derive(Clone, Debug, PartialEq)]
pub struct PlotArc {
    pub points: Vec<[f64; 2]>,
    pub marks: Vec<[f64; 2]>,
}

fn colour(i: usize, n: usize) -> String {
    // blue to orange across the fan
    let t = if n > 1 { i as f64 / (n - 1) as f64 } else { 0.0 };
    let r = (40.0 + 200.0 * t).round();
    let g = (90.0 + 40.0 * t).round();
    let b = (200.0 - 170.0 * t).round();
    format!("rgb({r},{g},{b})")
}

/// SVG 1.1 document, 600×600, with the boundary circle of radius `radius`
/// and every arc as a polyline. Marks are drawn as small red dots.
pub fn render_fan(radius: f64, title: &str, arcs: &[PlotArc]) -> String {
    let c = CANVAS / 2.0;
    let scale = (c - MARGIN) / radius;
    let px = |p: [f64; 2]| (c + scale * p[0], c - scale * p[1]);
    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(s, "<title>{title}</title>");
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<circle cx="{c:.3}" cy="{c:.3}" r="{:.3}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        c - MARGIN
    );
    for (i, arc) in arcs.iter().enumerate() {
        let stride = arc.points.len().div_ceil(MAX_VERTICES).max(1);
        let mut pts: Vec<[f64; 2]> = arc.points.iter().step_by(stride).copied().collect();
        if let Some(&last) = arc.points.last() {
            if pts.last() != Some(&last) {
                pts.push(last);
            }
        }
        let coords: Vec<String> = pts
            .into_iter()
            .map(|p| {
                let (x, y) = px(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="{}" stroke-width="1"/>"#,
            coords.join(" "),
            colour(i, arcs.len())
        );
    }
    for m in arcs.iter().flat_map(|a| a.marks.iter()) {
        let (x, y) = px(*m);
        let _ = writeln!(s, r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="red"/>"#);
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn document_shape() {
        let arc = PlotArc {
            points: (0..1000).map(|k| [k as f64 / 1000.0, 0.0]).collect(),
            marks: vec![[0.5, 0.0]],
        };
        let s = render_fan(1.0, "t", &[arc]);
        assert!(s.starts_with("<?xml") && s.ends_with("</svg>\n"));
        assert!(s.contains(r#"width="600""#) && s.contains(r#"r="270.000""#));
        assert_eq!(s.matches("<polyline").count(), 1);
        assert_eq!(s.matches(r#"fill="red""#).count(), 1);
        let poly = s.lines().find(|l| l.starts_with("<polyline")).unwrap();
        assert!(poly.matches(',').count() <= MAX_VERTICES + 1);
        assert!(poly.contains("569.730,300.000"));
    }
}
