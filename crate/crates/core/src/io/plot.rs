//! Static SVG plane plots and CSV tables of configurations.

use std::fmt::Write;

use crate::config::Configuration;
use crate::value::{format_value, to_f64, Value};

/// Colors cycle by degree.
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

#[derive(Debug, Clone, PartialEq)]
pub struct PlotStyle {
    pub width: u32,
    pub height: u32,
    pub margin: u32,
    pub point_radius: f64,
    pub title: Option<String>,
}

impl Default for PlotStyle {
    fn default() -> Self {
        PlotStyle {
            width: 480,
            height: 480,
            margin: 48,
            point_radius: 5.0,
            title: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub svg: String,
    pub csv: String,
}

/// `degree,a,b,multiplicity`, sorted by degree and then lexicographically.
pub fn write_csv(layers: &[(usize, &Configuration)]) -> String {
    let mut sorted: Vec<_> = layers.to_vec();
    sorted.sort_by_key(|(r, _)| *r);
    let mut out = String::from("degree,a,b,multiplicity\n");
    for (r, c) in sorted {
        for (p, m) in c.iter() {
            writeln!(out, "{r},{},{},{m}", format_value(&p.a), format_value(&p.b)).unwrap();
        }
    }
    out
}

fn bounds(layers: &[(usize, &Configuration)]) -> (f64, f64) {
    let coords: Vec<&Value> = layers
        .iter()
        .flat_map(|(_, c)| c.iter().flat_map(|(p, _)| [&p.a, &p.b]))
        .collect();
    let (lo, hi) = match (coords.iter().min(), coords.iter().max()) {
        (Some(lo), Some(hi)) => (to_f64(lo), to_f64(hi)),
        _ => (0.0, 1.0),
    };
    let pad = if hi > lo { (hi - lo) * 0.1 } else { 1.0 };
    (lo - pad, hi + pad)
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Points above or on the diagonal are filled discs; points below it are
/// hollow squares. Every point carries its multiplicity as a label.
pub fn emit_diagram(layers: &[(usize, &Configuration)], style: &PlotStyle) -> Diagram {
    let (lo, hi) = bounds(layers);
    let (w, h, m) = (style.width as f64, style.height as f64, style.margin as f64);
    let sx = |x: f64| m + (x - lo) / (hi - lo) * (w - 2.0 * m);
    let sy = |y: f64| h - m - (y - lo) / (hi - lo) * (h - 2.0 * m);

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        style.width, style.height, style.width, style.height
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    if let Some(t) = &style.title {
        writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="14">{}</text>"#, w / 2.0, m / 2.0, escape(t)).unwrap();
    }
    // axes
    writeln!(
        svg,
        r#"<g id="axes" stroke="black" stroke-width="1"><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/><line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/></g>"#,
        m, h - m, w - m, h - m, m, h - m, m, m
    )
    .unwrap();
    writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12">a</text>"#, w / 2.0, h - m / 3.0).unwrap();
    writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" font-size="12">b</text>"#, m / 3.0, h / 2.0).unwrap();
    for (x, anchor) in [(lo, "start"), (hi, "end")] {
        writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="{anchor}" font-size="10">{x:.3}</text>"#, sx(x), h - m + 14.0).unwrap();
        writeln!(svg, r#"<text x="{:.2}" y="{:.2}" text-anchor="end" font-size="10">{x:.3}</text>"#, m - 4.0, sy(x)).unwrap();
    }
    writeln!(
        svg,
        r##"<line id="diagonal" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888888" stroke-dasharray="4 3"/>"##,
        sx(lo), sy(lo), sx(hi), sy(hi)
    )
    .unwrap();

    let mut sorted: Vec<_> = layers.to_vec();
    sorted.sort_by_key(|(r, _)| *r);
    let r = style.point_radius;
    for (degree, c) in sorted {
        let color = PALETTE[degree % PALETTE.len()];
        writeln!(svg, r#"<g class="degree-{degree}" fill="{color}" stroke="{color}">"#).unwrap();
        for (p, mult) in c.iter() {
            let (x, y) = (sx(to_f64(&p.a)), sy(to_f64(&p.b)));
            if p.below_diagonal() {
                writeln!(
                    svg,
                    r#"<rect class="below" x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="none" stroke-width="2"/>"#,
                    x - r, y - r, 2.0 * r, 2.0 * r
                )
                .unwrap();
            } else {
                writeln!(svg, r#"<circle class="above" cx="{x:.2}" cy="{y:.2}" r="{r:.2}"/>"#).unwrap();
            }
            writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" font-size="11" stroke="none">{mult}</text>"#,
                x + r + 2.0,
                y - r - 2.0
            )
            .unwrap();
        }
        writeln!(svg, "</g>").unwrap();
    }
    svg.push_str("</svg>\n");
    Diagram {
        svg,
        csv: write_csv(layers),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PlanePoint;
    use crate::value::{int, ratio};

    #[test]
    fn empty_has_axes_and_diagonal_only() {
        let d = emit_diagram(&[], &PlotStyle::default());
        assert!(d.svg.contains(r#"id="axes""#));
        assert!(d.svg.contains(r#"id="diagonal""#));
        assert!(!d.svg.contains("<circle"));
        assert!(!d.svg.contains(r#"class="below""#));
        assert_eq!(d.csv, "degree,a,b,multiplicity\n");
    }

    #[test]
    fn circle_overlay_and_labels() {
        let c0: Configuration = [(PlanePoint::new(int(0), int(2)), 1)].into_iter().collect();
        let c1: Configuration = [(PlanePoint::new(int(2), int(0)), 2)].into_iter().collect();
        let d = emit_diagram(&[(1, &c1), (0, &c0)], &PlotStyle::default());
        assert_eq!(d.svg.matches("<circle").count(), 1);
        assert_eq!(d.svg.matches(r#"class="below""#).count(), 1);
        assert!(d.svg.contains(">2</text>"));
        assert_eq!(d.csv, "degree,a,b,multiplicity\n0,0,2,1\n1,2,0,2\n");
        // deterministic
        assert_eq!(d, emit_diagram(&[(1, &c1), (0, &c0)], &PlotStyle::default()));
    }

    #[test]
    fn csv_is_exact() {
        let c: Configuration = [(PlanePoint::new(ratio(1, 3), ratio(-1, 10)), 1)].into_iter().collect();
        assert_eq!(write_csv(&[(2, &c)]), "degree,a,b,multiplicity\n2,1/3,-1/10,1\n");
    }
}
