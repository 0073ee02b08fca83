//! Poincaré compactification.
//!
//! In chart `U1` (`x = 1/v`, `y = u/v`) the field becomes
//! `v^n (Q - uP, -vP)` evaluated at `(1/v, u/v)`; in `U2` (`x = u/v`,
//! `y = 1/v`) it is `v^n (P - uQ, -vQ)` at `(u/v, 1/v)`. The positive factor
//! `(1 + u^2 + v^2)^(-(n-1)/2)` is dropped throughout. The equator of the
//! sphere is `v = 0` in both charts, and the `V` charts carry the same
//! expression multiplied by `(-1)^(n-1)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_point, Classification, Kind};
use crate::error::{Error, Result};
use crate::field::{Matrix2, NumericField, VectorField};
use crate::poly::Poly2;
use crate::rational::{self, Rational};
use crate::upoly::UPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chart {
    U1,
    U2,
    U3,
    V1,
    V2,
    V3,
}

impl Chart {
    pub fn opposite(self) -> Chart {
        match self {
            Chart::U1 => Chart::V1,
            Chart::U2 => Chart::V2,
            Chart::U3 => Chart::V3,
            Chart::V1 => Chart::U1,
            Chart::V2 => Chart::U2,
            Chart::V3 => Chart::U3,
        }
    }

    /// Unit direction in the plane of the equator point `(u, 0)`.
    pub fn equator_direction(self, u: f64) -> [f64; 2] {
        let n = (1.0 + u * u).sqrt();
        match self {
            Chart::U1 => [1.0 / n, u / n],
            Chart::V1 => [-1.0 / n, -u / n],
            Chart::U2 => [u / n, 1.0 / n],
            Chart::V2 => [-u / n, -1.0 / n],
            Chart::U3 | Chart::V3 => [f64::NAN, f64::NAN],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartSystem {
    pub chart: Chart,
    pub u: Poly2,
    pub v: Poly2,
    /// The positive factor `Delta(z)` has been dropped.
    pub scaled: bool,
}

impl ChartSystem {
    /// The chart system as a planar field in `(u, v)`, named `(x, y)`.
    pub fn as_field(&self) -> VectorField {
        VectorField::new(self.u.clone(), self.v.clone())
    }

    /// `{v = 0}` is invariant: `v` divides the second component.
    pub fn equator_invariant(&self) -> bool {
        self.v
            .divide_exact(&Poly2::y())
            .map(|q| q.is_some())
            .unwrap_or(false)
    }
}

/// `c x^i y^j -> c s^? t^?` after clearing the denominator `v^n`; `swap`
/// selects the `U2` substitution.
fn homogenize_in_chart(p: &Poly2, n: u32, swap: bool) -> Poly2 {
    Poly2::from_terms(p.terms().map(|(m, c)| {
        let rest = n - m.degree();
        let upow = if swap { m.x } else { m.y };
        (c.clone(), upow, rest)
    }))
}

pub fn chart_u1(f: &VectorField) -> ChartSystem {
    let n = f.degree();
    let pt = homogenize_in_chart(&f.p, n, false);
    let qt = homogenize_in_chart(&f.q, n, false);
    ChartSystem {
        chart: Chart::U1,
        u: &qt - &(&Poly2::x() * &pt),
        v: -(&Poly2::y() * &pt),
        scaled: true,
    }
}

pub fn chart_u2(f: &VectorField) -> ChartSystem {
    let n = f.degree();
    let pt = homogenize_in_chart(&f.p, n, true);
    let qt = homogenize_in_chart(&f.q, n, true);
    ChartSystem {
        chart: Chart::U2,
        u: &pt - &(&Poly2::x() * &qt),
        v: -(&Poly2::y() * &qt),
        scaled: true,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SnType {
    SN1,
    SN2,
}

/// Reads the saddle-node type off the chart Jacobian at an equator point:
/// `SN1` for `(lambda *; 0 0)`, `SN2` for `(0 *; 0 lambda)`.
pub fn classify_sn_type(j: &Matrix2) -> Result<SnType> {
    if !j.a21.is_zero() {
        return Err(Error::NotSaddleNodeShape);
    }
    match (j.a11.is_zero(), j.a22.is_zero()) {
        (false, true) => Ok(SnType::SN1),
        (true, false) => Ok(SnType::SN2),
        _ => Err(Error::NotSaddleNodeShape),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InfinitePoint {
    pub chart: Chart,
    /// `(u, 0)` in the chart coordinates.
    #[serde(with = "crate::serde_util::rational")]
    pub u: Rational,
    pub classification: Classification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sn_type: Option<SnType>,
    /// Copied from the opposite chart rather than computed.
    #[serde(default)]
    pub derived: bool,
}

impl InfinitePoint {
    pub fn kind(&self) -> Kind {
        self.classification.kind
    }

    /// Position on the boundary of the Poincaré disc.
    pub fn disc_position(&self) -> [f64; 2] {
        self.chart.equator_direction(rational::to_f64(&self.u))
    }
}

/// Classifies the equator point `(u, 0)` of a chart system.
pub fn classify_chart_point(
    sys: &ChartSystem,
    u: &Rational,
) -> Result<(Classification, Option<SnType>)> {
    let field = sys.as_field();
    let zero = Rational::zero();
    let c = classify_point(&field, u, &zero)?;
    let sn = if c.kind == Kind::SaddleNode {
        Some(classify_sn_type(&field.jacobian(u, &zero))?)
    } else {
        None
    };
    Ok((c, sn))
}

fn equator_polynomial(sys: &ChartSystem) -> UPoly {
    let on_equator = Poly2::from_terms(
        sys.u
            .terms()
            .filter(|(m, _)| m.y == 0)
            .map(|(m, c)| (c.clone(), m.x, 0)),
    );
    UPoly::from_x_part(&on_equator)
}

fn mirrored(p: &InfinitePoint, degree: u32) -> InfinitePoint {
    let classification = if degree.is_multiple_of(2) {
        p.classification.reversed()
    } else {
        p.classification.clone()
    };
    InfinitePoint {
        chart: p.chart.opposite(),
        u: p.u.clone(),
        classification,
        sn_type: p.sn_type,
        derived: true,
    }
}

/// All infinite singular points: the rational roots of `u'|_{v=0}` in `U1`,
/// the origin of `U2` when it is singular, and their antipodal copies in
/// `V1`, `V2`.
pub fn infinite_singular_points(f: &VectorField) -> Result<Vec<InfinitePoint>> {
    let n = f.degree();
    let u1 = chart_u1(f);
    let u2 = chart_u2(f);
    let restricted = equator_polynomial(&u1);
    if restricted.is_zero() {
        return Err(Error::EquatorOfSingularities);
    }
    let roots = restricted.rational_roots();
    let real = restricted.real_root_count();
    if real > roots.len() {
        return Err(Error::IrrationalDirection(real - roots.len()));
    }

    let mut out = Vec::new();
    let mut u1_points = Vec::new();
    for u in roots {
        let (classification, sn_type) = classify_chart_point(&u1, &u)?;
        u1_points.push(InfinitePoint {
            chart: Chart::U1,
            u,
            classification,
            sn_type,
            derived: false,
        });
    }
    let mirrored_u1: Vec<_> = u1_points.iter().map(|p| mirrored(p, n)).collect();
    out.extend(u1_points);
    out.extend(mirrored_u1);

    let zero = Rational::zero();
    if u2.u.eval(&zero, &zero).is_zero() {
        let (classification, sn_type) = classify_chart_point(&u2, &zero)?;
        let p = InfinitePoint {
            chart: Chart::U2,
            u: zero,
            classification,
            sn_type,
            derived: false,
        };
        let m = mirrored(&p, n);
        out.push(p);
        out.push(m);
    }
    Ok(out)
}

/// The same equator point seen from chart `U2`/`V2`: classifies every
/// nonzero-`u` point of `U1` a second time in the other chart and returns
/// `(point, classification from the other chart)` pairs.
pub fn cross_chart_pairs(
    f: &VectorField,
    points: &[InfinitePoint],
) -> Result<Vec<(InfinitePoint, Classification)>> {
    let n = f.degree();
    let u2 = chart_u2(f);
    let mut out = Vec::new();
    for p in points
        .iter()
        .filter(|p| p.chart == Chart::U1 && !p.u.is_zero())
    {
        let w = p.u.recip();
        let (c, _) = classify_chart_point(&u2, &w)?;
        // Direction (1, u) lies in U2 when u > 0 and in V2 otherwise.
        let seen = if p.u > Rational::zero() || n % 2 == 1 {
            c
        } else {
            c.reversed()
        };
        out.push((p.clone(), seen));
    }
    Ok(out)
}

/// Coordinates used while integrating an orbit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ChartPoint {
    /// The affine plane (chart `U3`).
    Plane { x: f64, y: f64 },
    /// `x = 1/v`, `y = u/v`; `v < 0` covers the `V1` side.
    U1 { u: f64, v: f64 },
    /// `x = u/v`, `y = 1/v`; `v < 0` covers the `V2` side.
    U2 { u: f64, v: f64 },
}

impl ChartPoint {
    pub fn coords(&self) -> [f64; 2] {
        match *self {
            ChartPoint::Plane { x, y } => [x, y],
            ChartPoint::U1 { u, v } | ChartPoint::U2 { u, v } => [u, v],
        }
    }

    pub fn with_coords(&self, c: [f64; 2]) -> ChartPoint {
        match self {
            ChartPoint::Plane { .. } => ChartPoint::Plane { x: c[0], y: c[1] },
            ChartPoint::U1 { .. } => ChartPoint::U1 { u: c[0], v: c[1] },
            ChartPoint::U2 { .. } => ChartPoint::U2 { u: c[0], v: c[1] },
        }
    }

    pub fn to_disc(&self) -> [f64; 2] {
        match *self {
            ChartPoint::Plane { x, y } => {
                let s = (1.0 + x * x + y * y).sqrt();
                [x / s, y / s]
            }
            ChartPoint::U1 { u, v } => {
                let s = v.signum() * (1.0 + u * u + v * v).sqrt();
                [1.0 / s, u / s]
            }
            ChartPoint::U2 { u, v } => {
                let s = v.signum() * (1.0 + u * u + v * v).sqrt();
                [u / s, 1.0 / s]
            }
        }
    }

    /// Plane coordinates; infinite on the equator.
    pub fn to_plane(&self) -> [f64; 2] {
        match *self {
            ChartPoint::Plane { x, y } => [x, y],
            ChartPoint::U1 { u, v } => [1.0 / v, u / v],
            ChartPoint::U2 { u, v } => [u / v, 1.0 / v],
        }
    }

    pub fn from_plane(x: f64, y: f64) -> ChartPoint {
        ChartPoint::Plane { x, y }
    }

    /// Best chart for a plane point: the plane inside radius `r`, otherwise
    /// `U1` when `|x| >= |y|` and `U2` when not.
    pub fn rechart(x: f64, y: f64, r: f64) -> ChartPoint {
        if x.hypot(y) <= r {
            ChartPoint::Plane { x, y }
        } else if x.abs() >= y.abs() {
            ChartPoint::U1 {
                u: y / x,
                v: 1.0 / x,
            }
        } else {
            ChartPoint::U2 {
                u: x / y,
                v: 1.0 / y,
            }
        }
    }

    /// Inverse of the central projection for an interior disc point.
    pub fn from_disc(d: [f64; 2]) -> ChartPoint {
        let z = (1.0 - d[0] * d[0] - d[1] * d[1]).max(0.0).sqrt();
        if z >= 0.1 {
            return ChartPoint::Plane {
                x: d[0] / z,
                y: d[1] / z,
            };
        }
        if d[0].abs() >= d[1].abs() {
            ChartPoint::U1 {
                u: d[1] / d[0],
                v: z / d[0],
            }
        } else {
            ChartPoint::U2 {
                u: d[0] / d[1],
                v: z / d[1],
            }
        }
    }
}

/// Numeric flow on the compactified plane.
#[derive(Clone, Debug)]
pub struct DiscDynamics {
    degree: u32,
    plane: NumericField,
    u1: NumericField,
    u2: NumericField,
    /// Terms `(i, j, l, c)` of `Z^n P(X/Z, Y/Z)` and `Z^n Q(X/Z, Y/Z)`.
    p_hom: Vec<(i32, i32, i32, f64)>,
    q_hom: Vec<(i32, i32, i32, f64)>,
}

fn homogeneous_terms(p: &Poly2, n: u32) -> Vec<(i32, i32, i32, f64)> {
    p.terms()
        .map(|(m, c)| {
            (
                m.x as i32,
                m.y as i32,
                (n - m.degree()) as i32,
                rational::to_f64(c),
            )
        })
        .collect()
}

fn eval_hom(terms: &[(i32, i32, i32, f64)], x: f64, y: f64, z: f64) -> f64 {
    terms
        .iter()
        .map(|&(i, j, l, c)| c * x.powi(i) * y.powi(j) * z.powi(l))
        .sum()
}

impl DiscDynamics {
    pub fn new(f: &VectorField) -> DiscDynamics {
        let n = f.degree().max(1);
        DiscDynamics {
            degree: n,
            plane: f.to_numeric(),
            u1: chart_u1(f).as_field().to_numeric(),
            u2: chart_u2(f).as_field().to_numeric(),
            p_hom: homogeneous_terms(&f.p, n),
            q_hom: homogeneous_terms(&f.q, n),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Direction of the compactified flow at a point of the closed disc.
    /// Equals the push-forward of `(P, Q)` times the positive factor
    /// `Z^(n-1)` with `Z = sqrt(1 - X^2 - Y^2)`, and stays finite on the
    /// equator where it agrees with the chart systems.
    pub fn direction(&self, d: [f64; 2]) -> [f64; 2] {
        let [x, y] = d;
        let z2 = (1.0 - x * x - y * y).max(0.0);
        let z = z2.sqrt();
        let p = eval_hom(&self.p_hom, x, y, z);
        let q = eval_hom(&self.q_hom, x, y, z);
        [p * (z2 + y * y) - x * y * q, q * (z2 + x * x) - x * y * p]
    }

    /// Right-hand side in whichever chart `pt` lives in, oriented so that
    /// time runs the same way as in the plane.
    pub fn rhs(&self, pt: &ChartPoint) -> [f64; 2] {
        match *pt {
            ChartPoint::Plane { x, y } => self.plane.eval(x, y),
            ChartPoint::U1 { u, v } => self.oriented(self.u1.eval(u, v), v),
            ChartPoint::U2 { u, v } => self.oriented(self.u2.eval(u, v), v),
        }
    }

    fn oriented(&self, f: [f64; 2], v: f64) -> [f64; 2] {
        if self.degree.is_multiple_of(2) && v < 0.0 {
            [-f[0], -f[1]]
        } else {
            f
        }
    }
}
