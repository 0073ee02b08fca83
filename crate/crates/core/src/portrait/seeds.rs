//! Seeds: separatrices of saddles and saddle-nodes, invariant lines and a
//! fixed ring of generic points.

use num_traits::Signed;

use crate::classify::{Classification, Kind};
use crate::compactify::{Chart, ChartPoint};
use crate::rational;
use crate::sis::PortraitReport;

use super::{project_to_disc, Direction, DiscPoint, OriginTag};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Seed {
    pub point: ChartPoint,
    pub direction: Direction,
    pub tag: OriginTag,
    /// Index into [`singular_stops`] of the point the seed was placed next
    /// to, if any.
    pub source: Option<usize>,
    /// `[a0, a1, a2]` of an invariant line `a0 + a1 x + a2 y = 0` the seed
    /// lies on. The integrator projects every step back onto it.
    pub on_line: Option<[f64; 3]>,
}

/// Disc positions of every singular point in the report: finite points
/// first, then infinite ones in report order.
pub fn singular_stops(report: &PortraitReport) -> Vec<DiscPoint> {
    report
        .finite
        .iter()
        .map(|p| {
            let [x, y] = p.at_f64();
            project_to_disc(x, y)
        })
        .chain(report.infinite.iter().map(|p| p.disc_position().into()))
        .collect()
}

/// Offsets `(direction, flow direction)` from a singular point along its
/// separatrix tangents, in the coordinates the classification was made in.
fn separatrix_offsets(c: &Classification) -> Vec<([f64; 2], Direction)> {
    let along = |v: [f64; 2], s: f64| [s * v[0], s * v[1]];
    match (c.kind, &c.semi, &c.eigen) {
        (Kind::Saddle, _, Some(e)) => match e.vectors {
            Some([stable, unstable]) => vec![
                (along(stable, 1.0), Direction::Backward),
                (along(stable, -1.0), Direction::Backward),
                (along(unstable, 1.0), Direction::Forward),
                (along(unstable, -1.0), Direction::Forward),
            ],
            None => Vec::new(),
        },
        (_, Some(semi), _) => {
            let lambda_neg = semi.lambda.is_negative();
            let a_pos = semi.a.is_positive();
            let strong = semi.strong_direction();
            let center = semi.center_direction();
            let strong_dir = if lambda_neg {
                Direction::Backward
            } else {
                Direction::Forward
            };
            let center_dir = if lambda_neg {
                Direction::Forward
            } else {
                Direction::Backward
            };
            if semi.alpha % 2 == 0 {
                // On the center manifold x' ~ a x^alpha pushes both halves
                // the same way; the half running against the strong
                // direction's stability bounds the hyperbolic sectors.
                let side = if lambda_neg == a_pos { 1.0 } else { -1.0 };
                vec![
                    (along(strong, 1.0), strong_dir),
                    (along(strong, -1.0), strong_dir),
                    (along(center, side), center_dir),
                ]
            } else if a_pos == lambda_neg {
                // Topological saddle.
                vec![
                    (along(strong, 1.0), strong_dir),
                    (along(strong, -1.0), strong_dir),
                    (along(center, 1.0), center_dir),
                    (along(center, -1.0), center_dir),
                ]
            } else {
                Vec::new()
            }
        }
        _ => Vec::new(),
    }
}

/// Seeds at distance `eps` from every saddle and saddle-node, one per
/// separatrix. At infinity, seeds outside the disc or on the equator are
/// dropped.
pub fn separatrix_seeds(report: &PortraitReport, eps: f64) -> Vec<Seed> {
    let mut out = Vec::new();
    for (id, p) in report.finite.iter().enumerate() {
        let [x0, y0] = p.at_f64();
        for (d, direction) in separatrix_offsets(&p.classification) {
            out.push(Seed {
                point: ChartPoint::Plane {
                    x: x0 + eps * d[0],
                    y: y0 + eps * d[1],
                },
                direction,
                tag: OriginTag::SeparatrixOf(id),
                source: Some(id),
                on_line: None,
            });
        }
    }
    let nf = report.finite.len();
    for (i, p) in report.infinite.iter().enumerate() {
        let id = nf + i;
        let u0 = rational::to_f64(&p.u);
        let side = match p.chart {
            Chart::U1 | Chart::U2 => 1.0,
            Chart::V1 | Chart::V2 => -1.0,
            Chart::U3 | Chart::V3 => continue,
        };
        for (d, direction) in separatrix_offsets(&p.classification) {
            let v = eps * d[1];
            if v * side < eps * 1e-6 {
                continue;
            }
            let u = u0 + eps * d[0];
            let point = match p.chart {
                Chart::U1 | Chart::V1 => ChartPoint::U1 { u, v },
                _ => ChartPoint::U2 { u, v },
            };
            out.push(Seed {
                point,
                direction,
                tag: OriginTag::SeparatrixOf(id),
                source: Some(id),
                on_line: None,
            });
        }
    }
    out
}

/// Three points on each invariant line, each traced both ways.
pub fn invariant_line_seeds(report: &PortraitReport) -> Vec<Seed> {
    let finite: Vec<[f64; 2]> = report.finite.iter().map(|p| p.at_f64()).collect();
    let mut out = Vec::new();
    for (id, line) in report.invariant_lines.iter().enumerate() {
        let a0 = rational::to_f64(&line.f.coeff(0, 0));
        let a1 = rational::to_f64(&line.f.coeff(1, 0));
        let a2 = rational::to_f64(&line.f.coeff(0, 1));
        let n2 = a1 * a1 + a2 * a2;
        let foot = [-a0 * a1 / n2, -a0 * a2 / n2];
        let along = [-a2 / n2.sqrt(), a1 / n2.sqrt()];
        for t in [-1.5, 0.25, 1.75] {
            let p = [foot[0] + t * along[0], foot[1] + t * along[1]];
            if finite
                .iter()
                .any(|s| (s[0] - p[0]).hypot(s[1] - p[1]) < 1e-3)
            {
                continue;
            }
            for direction in [Direction::Forward, Direction::Backward] {
                out.push(Seed {
                    point: ChartPoint::Plane { x: p[0], y: p[1] },
                    direction,
                    tag: OriginTag::InvariantLine(id),
                    source: None,
                    on_line: Some([a0, a1, a2]),
                });
            }
        }
    }
    out
}

/// Eight points on the disc circle of radius 0.6, each traced both ways.
pub fn generic_ring() -> Vec<Seed> {
    let mut out = Vec::new();
    for i in 0..8 {
        let th = (22.5 + 45.0 * i as f64).to_radians();
        let d = [0.6 * th.cos(), 0.6 * th.sin()];
        for direction in [Direction::Forward, Direction::Backward] {
            out.push(Seed {
                point: ChartPoint::from_disc(d),
                direction,
                tag: OriginTag::GenericSeed,
                source: None,
                on_line: None,
            });
        }
    }
    out
}
