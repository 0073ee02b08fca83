//! SVG rendering of a portrait. Disc `Y` points up, so it is negated on
//! output. Numbers are printed with fixed precision so identical inputs give
//! identical bytes.

use std::fmt::Write;

use crate::classify::Kind;
use crate::rational;
use crate::sis::PortraitReport;

use super::{Direction, DiscPoint, Orbit, OriginTag};

#[derive(Clone, Debug, PartialEq)]
pub struct Style {
    pub stroke_width: f64,
    pub orbit_color: String,
    pub separatrix_color: String,
    pub line_color: String,
    pub point_color: String,
    /// Shade the quadrant `x >= 0, y >= 0`.
    pub shade_quadrant: bool,
    /// Drop polyline vertices closer than this to the previous kept one.
    pub min_segment: f64,
}

impl Default for Style {
    fn default() -> Self {
        Style {
            stroke_width: 0.004,
            orbit_color: "#4a6fa5".into(),
            separatrix_color: "#b03a2e".into(),
            line_color: "#1e8449".into(),
            point_color: "#111111".into(),
            shade_quadrant: false,
            min_segment: 2e-3,
        }
    }
}

fn n(v: f64) -> String {
    let s = format!("{v:.5}");
    if s == "-0.00000" {
        "0.00000".into()
    } else {
        s
    }
}

fn xy(p: DiscPoint) -> String {
    format!("{},{}", n(p.x), n(-p.y))
}

fn decimate(points: &[DiscPoint], min: f64) -> Vec<DiscPoint> {
    let mut out: Vec<DiscPoint> = Vec::with_capacity(points.len());
    for (i, p) in points.iter().enumerate() {
        let last = i + 1 == points.len();
        if out.last().is_none_or(|q| q.dist(p) >= min) || last {
            out.push(*p);
        }
    }
    out
}

/// Point and unit tangent at fraction `t` of the polyline's arc length.
fn at_fraction(points: &[DiscPoint], t: f64) -> Option<(DiscPoint, [f64; 2])> {
    let total: f64 = points.windows(2).map(|w| w[0].dist(&w[1])).sum();
    if total <= 0.0 {
        return None;
    }
    let target = t * total;
    let mut acc = 0.0;
    for w in points.windows(2) {
        let l = w[0].dist(&w[1]);
        if l > 0.0 && acc + l >= target {
            let s = (target - acc) / l;
            let p = DiscPoint::new(
                w[0].x + s * (w[1].x - w[0].x),
                w[0].y + s * (w[1].y - w[0].y),
            );
            return Some((p, [(w[1].x - w[0].x) / l, (w[1].y - w[0].y) / l]));
        }
        acc += l;
    }
    None
}

fn arrowhead(out: &mut String, p: DiscPoint, dir: [f64; 2], size: f64, color: &str) {
    let back = DiscPoint::new(p.x - size * dir[0], p.y - size * dir[1]);
    let nrm = [-dir[1], dir[0]];
    let l = DiscPoint::new(back.x + 0.5 * size * nrm[0], back.y + 0.5 * size * nrm[1]);
    let r = DiscPoint::new(back.x - 0.5 * size * nrm[0], back.y - 0.5 * size * nrm[1]);
    let tip = DiscPoint::new(p.x + 0.5 * size * dir[0], p.y + 0.5 * size * dir[1]);
    let _ = writeln!(
        out,
        r#"<polygon points="{} {} {}" fill="{color}"/>"#,
        xy(tip),
        xy(l),
        xy(r)
    );
}

/// Marker for a finite singular point: filled when attracting, hollow when
/// repelling or a saddle, half-filled for a saddle-node.
fn marker(out: &mut String, kind: Kind, p: DiscPoint, style: &Style) {
    let r = 0.022;
    let c = &style.point_color;
    let sw = n(style.stroke_width);
    match kind {
        Kind::NodeStable | Kind::FocusStable => {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" fill="{c}"/>"#,
                n(p.x),
                n(-p.y),
                n(r)
            );
        }
        Kind::SaddleNode => {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" fill="white" stroke="{c}" stroke-width="{sw}"/>"#,
                n(p.x),
                n(-p.y),
                n(r)
            );
            let _ = writeln!(
                out,
                r#"<path d="M {} {} A {} {} 0 0 1 {} {} Z" fill="{c}"/>"#,
                n(p.x),
                n(-p.y - r),
                n(r),
                n(r),
                n(p.x),
                n(-p.y + r)
            );
        }
        _ => {
            let _ = writeln!(
                out,
                r#"<circle cx="{}" cy="{}" r="{}" fill="white" stroke="{c}" stroke-width="{sw}"/>"#,
                n(p.x),
                n(-p.y),
                n(r)
            );
        }
    }
}

fn line_in_disc(a: [f64; 3]) -> Vec<DiscPoint> {
    // a0 + a1 x + a2 y = 0 through the plane, projected; endpoints on the
    // equator in the two directions of the line.
    let [a0, a1, a2] = a;
    let n2 = a1 * a1 + a2 * a2;
    let foot = [-a0 * a1 / n2, -a0 * a2 / n2];
    let dir = [-a2 / n2.sqrt(), a1 / n2.sqrt()];
    let mut pts = Vec::new();
    let steps = 400;
    for i in 0..=steps {
        // t = tan(theta) sweeps the whole line
        let th = -std::f64::consts::FRAC_PI_2 + std::f64::consts::PI * i as f64 / steps as f64;
        let p = if i == 0 || i == steps {
            let s = th.signum();
            DiscPoint::new(s * dir[0], s * dir[1])
        } else {
            let t = th.tan();
            super::project_to_disc(foot[0] + t * dir[0], foot[1] + t * dir[1])
        };
        pts.push(p);
    }
    pts
}

pub fn render_svg(report: &PortraitReport, orbits: &[Orbit], style: &Style) -> String {
    let mut out = String::new();
    let sw = n(style.stroke_width);
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="-1.05 -1.05 2.1 2.1" width="600" height="600">"#
    );
    let _ = writeln!(
        out,
        "<title>SIS portrait b={} c={} k={} m={} class {}</title>",
        report.params.b, report.params.c, report.params.k, report.params.m, report.class
    );
    let _ = writeln!(
        out,
        r#"<defs><clipPath id="disc"><circle cx="0" cy="0" r="1"/></clipPath></defs>"#
    );
    if style.shade_quadrant {
        let _ = writeln!(
            out,
            r##"<path d="M 0 0 L 1 0 A 1 1 0 0 0 0 -1 Z" fill="#f4ecd8"/>"##
        );
    }
    let _ = writeln!(
        out,
        r#"<circle cx="0" cy="0" r="1" fill="none" stroke="black" stroke-width="{}"/>"#,
        n(style.stroke_width * 1.5)
    );

    let _ = writeln!(out, r#"<g clip-path="url(#disc)" fill="none">"#);
    for (id, line) in report.invariant_lines.iter().enumerate() {
        let a = [
            rational::to_f64(&line.f.coeff(0, 0)),
            rational::to_f64(&line.f.coeff(1, 0)),
            rational::to_f64(&line.f.coeff(0, 1)),
        ];
        let pts: Vec<String> = decimate(&line_in_disc(a), style.min_segment)
            .into_iter()
            .map(xy)
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline id="line{id}" points="{}" stroke="{}" stroke-width="{}"/>"#,
            pts.join(" "),
            style.line_color,
            n(style.stroke_width * 2.5)
        );
    }
    for orbit in orbits {
        let color = match orbit.origin_tag {
            OriginTag::SeparatrixOf(_) => &style.separatrix_color,
            OriginTag::InvariantLine(_) => &style.line_color,
            OriginTag::GenericSeed | OriginTag::Equator => &style.orbit_color,
        };
        let pts = decimate(&orbit.points, style.min_segment);
        if pts.len() < 2 {
            continue;
        }
        let text: Vec<String> = pts.iter().map(|p| xy(*p)).collect();
        let _ = writeln!(
            out,
            r#"<polyline points="{}" stroke="{color}" stroke-width="{sw}"/>"#,
            text.join(" ")
        );
        for t in [1.0 / 3.0, 2.0 / 3.0] {
            if let Some((p, d)) = at_fraction(&pts, t) {
                let d = match orbit.direction {
                    Direction::Forward => d,
                    Direction::Backward => [-d[0], -d[1]],
                };
                arrowhead(&mut out, p, d, 0.03, color);
            }
        }
    }
    let _ = writeln!(out, "</g>");

    for p in &report.infinite {
        let d: DiscPoint = p.disc_position().into();
        let _ = writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="0.016" fill="{}"/>"#,
            n(d.x),
            n(-d.y),
            style.point_color
        );
    }
    for p in &report.finite {
        let [x, y] = p.at_f64();
        marker(&mut out, p.kind(), super::project_to_disc(x, y), style);
    }
    let _ = writeln!(out, "</svg>");
    out
}
