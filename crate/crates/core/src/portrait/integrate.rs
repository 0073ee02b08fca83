//! Dormand–Prince 5(4) integration of the arc-length normalized flow, in
//! whichever chart currently holds the orbit.

use crate::compactify::{ChartPoint, DiscDynamics};

use super::{Direction, DiscPoint, Orbit, OriginTag, Seed, Termination};

#[derive(Clone, Debug)]
pub struct Controls {
    pub rtol: f64,
    pub atol: f64,
    /// Largest step, measured in chart arc length (an upper bound for the
    /// disc arc length covered).
    pub max_step: f64,
    pub min_step: f64,
    /// Stop radius around known singular points, disc metric.
    pub eps_sing: f64,
    /// Stop band `1 - |d| < eps_eq` at the equator.
    pub eps_eq: f64,
    /// Disc arc-length budget.
    pub max_arc: f64,
    pub max_steps: usize,
}

impl Default for Controls {
    fn default() -> Self {
        Controls {
            rtol: 1e-9,
            atol: 1e-12,
            max_step: 0.05,
            min_step: 1e-13,
            eps_sing: 1e-3,
            eps_eq: 1e-4,
            max_arc: 10.0,
            max_steps: 200_000,
        }
    }
}

/// Radii used for switching charts; the gap between them keeps an orbit
/// from flipping back and forth.
const PLANE_EXIT: f64 = 4.0;
const PLANE_ENTRY: f64 = 2.0;
const SLOPE_EXIT: f64 = 2.0;

/// Orthogonal projection onto `a0 + a1 x + a2 y = 0` written in the
/// coordinates of `pt`'s chart, where the line stays a line.
pub fn project_onto_line(pt: ChartPoint, a: [f64; 3]) -> ChartPoint {
    let [a0, a1, a2] = a;
    let (n, c0) = match pt {
        ChartPoint::Plane { .. } => ([a1, a2], a0),
        ChartPoint::U1 { .. } => ([a2, a0], a1),
        ChartPoint::U2 { .. } => ([a1, a0], a2),
    };
    let n2 = n[0] * n[0] + n[1] * n[1];
    if n2 == 0.0 {
        return pt;
    }
    let [p, q] = pt.coords();
    let r = (n[0] * p + n[1] * q + c0) / n2;
    pt.with_coords([p - r * n[0], q - r * n[1]])
}

fn constrained(pt: ChartPoint, line: Option<[f64; 3]>) -> ChartPoint {
    match line {
        Some(a) => project_onto_line(pt, a),
        None => pt,
    }
}

fn recharted(pt: ChartPoint) -> ChartPoint {
    match pt {
        ChartPoint::Plane { x, y } if x.hypot(y) > PLANE_EXIT => {
            ChartPoint::rechart(x, y, PLANE_EXIT)
        }
        ChartPoint::U1 { u, v } | ChartPoint::U2 { u, v }
            if v != 0.0 && (1.0 + u * u).sqrt() / v.abs() < PLANE_ENTRY =>
        {
            let [x, y] = pt.to_plane();
            ChartPoint::Plane { x, y }
        }
        ChartPoint::U1 { u, v } if u.abs() > SLOPE_EXIT => ChartPoint::U2 {
            u: 1.0 / u,
            v: v / u,
        },
        ChartPoint::U2 { u, v } if u.abs() > SLOPE_EXIT => ChartPoint::U1 {
            u: 1.0 / u,
            v: v / u,
        },
        other => other,
    }
}

fn unit_rhs(dynamics: &DiscDynamics, pt: &ChartPoint, sign: f64) -> Option<[f64; 2]> {
    let f = dynamics.rhs(pt);
    let n = f[0].hypot(f[1]);
    (n.is_finite() && n > 1e-300).then(|| [sign * f[0] / n, sign * f[1] / n])
}

const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
/// Fifth-order weights minus the embedded fourth-order ones.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

struct Step {
    next: [f64; 2],
    err: f64,
}

fn dopri_step(
    dynamics: &DiscDynamics,
    pt: &ChartPoint,
    h: f64,
    sign: f64,
    c: &Controls,
) -> Option<Step> {
    let y = pt.coords();
    let mut k = [[0.0; 2]; 7];
    for s in 0..7 {
        let mut ys = y;
        for (j, kj) in k.iter().enumerate().take(s) {
            ys[0] += h * A[s][j] * kj[0];
            ys[1] += h * A[s][j] * kj[1];
        }
        k[s] = unit_rhs(dynamics, &pt.with_coords(ys), sign)?;
    }
    let mut next = y;
    for s in 0..6 {
        next[0] += h * A[6][s] * k[s][0];
        next[1] += h * A[6][s] * k[s][1];
    }
    let mut err2 = 0.0;
    for i in 0..2 {
        let e: f64 = (0..7).map(|s| h * E[s] * k[s][i]).sum();
        let scale = c.atol + c.rtol * y[i].abs().max(next[i].abs());
        err2 += (e / scale).powi(2);
    }
    Some(Step {
        next,
        err: (err2 / 2.0).sqrt(),
    })
}

/// Integrates from a seed given as an interior disc point.
pub fn integrate_orbit(
    dynamics: &DiscDynamics,
    seed: DiscPoint,
    direction: Direction,
    controls: &Controls,
    stops: &[DiscPoint],
) -> Orbit {
    let s = Seed {
        point: ChartPoint::from_disc(seed.as_array()),
        direction,
        tag: OriginTag::GenericSeed,
        source: None,
        on_line: None,
    };
    integrate_from(dynamics, &s, controls, stops)
}

/// Integrates from a seed in chart coordinates until one of the stop
/// conditions in `controls` fires.
pub fn integrate_from(
    dynamics: &DiscDynamics,
    seed: &Seed,
    c: &Controls,
    stops: &[DiscPoint],
) -> Orbit {
    let sign = seed.direction.sign();
    let mut pt = recharted(constrained(seed.point, seed.on_line));
    let start: DiscPoint = pt.to_disc().into();
    let mut points = vec![start];
    let mut arc = 0.0;
    let mut h = 1e-5_f64.min(c.max_step);
    // The seed may start inside the stop region of its own singular point
    // or inside the equator band; those checks wait until it has left.
    let mut source_armed = seed
        .source
        .is_none_or(|i| start.dist(&stops[i]) > 2.0 * c.eps_sing);
    let mut equator_armed = 1.0 - start.norm() > 2.0 * c.eps_eq;

    let finish = |points: Vec<DiscPoint>, termination, diagnostic| Orbit {
        points,
        origin_tag: seed.tag,
        direction: seed.direction,
        termination,
        diagnostic,
    };

    for _ in 0..c.max_steps {
        let step = match dopri_step(dynamics, &pt, h, sign, c) {
            Some(s) => s,
            None => {
                if h <= c.min_step {
                    return finish(points, Termination::Stalled, Some(stall_message(seed, &pt)));
                }
                h *= 0.25;
                continue;
            }
        };
        if !step.next[0].is_finite() || !step.next[1].is_finite() || step.err > 1.0 {
            let factor = if step.err.is_finite() {
                (0.9 * step.err.powf(-0.2)).clamp(0.1, 0.5)
            } else {
                0.1
            };
            h *= factor;
            if h < c.min_step {
                return finish(
                    points,
                    Termination::StepUnderflow,
                    Some(format!(
                        "step size underflow at disc point {:?} (seed {:?})",
                        pt.to_disc(),
                        seed.point
                    )),
                );
            }
            continue;
        }

        pt = recharted(constrained(pt.with_coords(step.next), seed.on_line));
        let d: DiscPoint = pt.to_disc().into();
        arc += d.dist(points.last().unwrap());
        points.push(d);

        let grow = if step.err > 0.0 {
            (0.9 * step.err.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        h = (h * grow).min(c.max_step);

        if let Some(i) = seed.source {
            if !source_armed && d.dist(&stops[i]) > 2.0 * c.eps_sing {
                source_armed = true;
            }
        }
        let hit = stops
            .iter()
            .enumerate()
            .find(|(i, s)| (source_armed || Some(*i) != seed.source) && d.dist(s) < c.eps_sing);
        if let Some((i, _)) = hit {
            return finish(points, Termination::NearSingular(i), None);
        }
        let gap = 1.0 - d.norm();
        if !equator_armed && gap > 2.0 * c.eps_eq {
            equator_armed = true;
        }
        if equator_armed && gap < c.eps_eq {
            return finish(points, Termination::Equator, None);
        }
        if arc >= c.max_arc {
            return finish(points, Termination::ArcLength, None);
        }
    }
    finish(
        points,
        Termination::MaxSteps,
        Some(format!("step budget exhausted (seed {:?})", seed.point)),
    )
}

fn stall_message(seed: &Seed, pt: &ChartPoint) -> String {
    format!(
        "flow vanishes at disc point {:?} away from the known singular points (seed {:?})",
        pt.to_disc(),
        seed.point
    )
}
