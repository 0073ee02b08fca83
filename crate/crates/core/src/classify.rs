//! Local classification of singular points.
//!
//! Non-degenerate points (`delta != 0`) are decided from the determinant and
//! trace of the Jacobian. Semi-hyperbolic points (`delta = 0`, `tau != 0`) are
//! brought to the form `x' = A(x, y)`, `y' = lambda y + B(x, y)` by a linear
//! change of coordinates; the center manifold `y = f(x)` solving
//! `lambda f + B(x, f) = 0` is expanded as a truncated power series and the
//! lowest term `a x^alpha` of `g(x) = A(x, f(x))` decides the type.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Matrix2, VectorField};
use crate::poly::{AffineMap, Poly2};
use crate::rational::{self, Rational};

pub const DEFAULT_SERIES_ORDER: u32 = 10;
pub const MAX_SERIES_ORDER: u32 = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    Saddle,
    NodeStable,
    NodeUnstable,
    FocusStable,
    FocusUnstable,
    CenterOrWeakFocus,
    SaddleNode,
    SemiHypNodeUnstable,
    SemiHypSaddle,
    Degenerate,
}

impl Kind {
    pub fn is_node(self) -> bool {
        matches!(self, Kind::NodeStable | Kind::NodeUnstable)
    }

    /// The kind seen when every orbit is traversed backwards.
    pub fn reversed(self) -> Kind {
        match self {
            Kind::NodeStable => Kind::NodeUnstable,
            Kind::NodeUnstable => Kind::NodeStable,
            Kind::FocusStable => Kind::FocusUnstable,
            Kind::FocusUnstable => Kind::FocusStable,
            other => other,
        }
    }
}

/// Evidence collected for a semi-hyperbolic point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiHyperbolic {
    /// Nonzero eigenvalue.
    #[serde(with = "crate::serde_util::rational")]
    pub lambda: Rational,
    /// Exponent of the lowest term of `g`.
    pub alpha: u32,
    /// Coefficient of the lowest term of `g`.
    #[serde(with = "crate::serde_util::rational")]
    pub a: Rational,
    /// Linear change `(x, y) = T (u, v)`; the first column spans the kernel
    /// of the Jacobian, the second the `lambda`-eigendirection.
    #[serde(with = "crate::serde_util::rational_matrix")]
    pub change: [[Rational; 2]; 2],
    /// Series order that resolved the point.
    pub order: u32,
}

impl SemiHyperbolic {
    /// Side of the normal-form `u`-axis carrying the stable separatrix of a
    /// saddle-node as stated in the normal-form theorem: `+1` for `a < 0`,
    /// `-1` for `a > 0`.
    pub fn stable_separatrix_side(&self) -> i32 {
        if self.a.is_negative() {
            1
        } else {
            -1
        }
    }

    pub fn center_direction(&self) -> [f64; 2] {
        [
            rational::to_f64(&self.change[0][0]),
            rational::to_f64(&self.change[1][0]),
        ]
    }

    pub fn strong_direction(&self) -> [f64; 2] {
        [
            rational::to_f64(&self.change[0][1]),
            rational::to_f64(&self.change[1][1]),
        ]
    }

    /// Same point with every orbit reversed: the field is negated, so the
    /// nonzero eigenvalue and `g` change sign while the change of
    /// coordinates is untouched.
    pub fn reversed(&self) -> SemiHyperbolic {
        SemiHyperbolic {
            lambda: -self.lambda.clone(),
            a: -self.a.clone(),
            ..self.clone()
        }
    }
}

/// Float eigenvalues `(re, im)` and, when real, unit eigenvectors.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenData {
    pub values: [[f64; 2]; 2],
    pub vectors: Option<[[f64; 2]; 2]>,
}

impl EigenData {
    pub fn of(j: &Matrix2) -> EigenData {
        let tau = j.trace();
        let delta = j.det();
        let disc = &tau * &tau - rational::int(4) * &delta;
        let t = rational::to_f64(&tau);
        let m = j.to_f64();
        if disc.is_negative() {
            let w = (-rational::to_f64(&disc)).sqrt() / 2.0;
            return EigenData {
                values: [[t / 2.0, -w], [t / 2.0, w]],
                vectors: None,
            };
        }
        let s = rational::to_f64(&disc).sqrt();
        let l1 = (t - s) / 2.0;
        let l2 = (t + s) / 2.0;
        let vec_for = |l: f64| -> Option<[f64; 2]> {
            let a = [m[0][1], l - m[0][0]];
            let b = [l - m[1][1], m[1][0]];
            let pick = if a[0].hypot(a[1]) >= b[0].hypot(b[1]) {
                a
            } else {
                b
            };
            let n = pick[0].hypot(pick[1]);
            (n > 1e-14).then(|| [pick[0] / n, pick[1] / n])
        };
        let vectors = match (vec_for(l1), vec_for(l2)) {
            (Some(v1), Some(v2)) => Some([v1, v2]),
            // Scalar matrix: every direction is an eigendirection.
            _ if disc.is_zero() && j.a12.is_zero() && j.a21.is_zero() => {
                Some([[1.0, 0.0], [0.0, 1.0]])
            }
            _ => None,
        };
        EigenData {
            values: [[l1, 0.0], [l2, 0.0]],
            vectors,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub kind: Kind,
    #[serde(with = "crate::serde_util::rational")]
    pub delta: Rational,
    #[serde(with = "crate::serde_util::rational")]
    pub tau: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub semi: Option<SemiHyperbolic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen: Option<EigenData>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<String>,
}

impl Classification {
    fn bare(kind: Kind, delta: Rational, tau: Rational) -> Self {
        Classification {
            kind,
            delta,
            tau,
            semi: None,
            eigen: None,
            diagnostic: None,
        }
    }

    /// Classification of the same point for the time-reversed field.
    pub fn reversed(&self) -> Classification {
        let semi = self.semi.as_ref().map(SemiHyperbolic::reversed);
        let kind = match (&semi, self.kind) {
            (Some(s), Kind::SemiHypNodeUnstable | Kind::SemiHypSaddle) => odd_kind(&s.a),
            (_, k) => k.reversed(),
        };
        Classification {
            kind,
            delta: self.delta.clone(),
            tau: -self.tau.clone(),
            semi,
            eigen: self.eigen.as_ref().map(|e| EigenData {
                values: [
                    [-e.values[1][0], -e.values[1][1]],
                    [-e.values[0][0], -e.values[0][1]],
                ],
                vectors: e.vectors.map(|[v1, v2]| [v2, v1]),
            }),
            diagnostic: self.diagnostic.clone(),
        }
    }
}

/// Type of a point with `delta != 0`.
pub fn classify_nondegenerate(delta: &Rational, tau: &Rational) -> Result<Classification> {
    if delta.is_zero() {
        return Err(Error::ZeroDeterminant);
    }
    let disc = tau * tau - rational::int(4) * delta;
    let kind = if delta.is_negative() {
        Kind::Saddle
    } else if tau.is_zero() {
        Kind::CenterOrWeakFocus
    } else if !disc.is_negative() {
        if tau.is_negative() {
            Kind::NodeStable
        } else {
            Kind::NodeUnstable
        }
    } else if tau.is_negative() {
        Kind::FocusStable
    } else {
        Kind::FocusUnstable
    };
    Ok(Classification::bare(kind, delta.clone(), tau.clone()))
}

/// `x' = A(x, y)`, `y' = lambda y + B(x, y)` with `A`, `B` of order >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    pub lambda: Rational,
    pub a: Poly2,
    pub b: Poly2,
    pub change: AffineMap,
}

impl NormalForm {
    pub fn new(lambda: Rational, a: Poly2, b: Poly2) -> Result<Self> {
        let nf = NormalForm {
            lambda,
            a,
            b,
            change: AffineMap::identity(),
        };
        nf.check()?;
        Ok(nf)
    }

    fn check(&self) -> Result<()> {
        if self.lambda.is_zero() {
            return Err(Error::Inconsistent("normal form with lambda = 0".into()));
        }
        for (name, p) in [("A", &self.a), ("B", &self.b)] {
            if p.order().is_some_and(|o| o < 2) {
                return Err(Error::Inconsistent(format!(
                    "normal-form part {name} = {p} has terms of order < 2"
                )));
            }
        }
        Ok(())
    }
}

fn first_nonzero_unit(v: [Rational; 2]) -> [Rational; 2] {
    let lead = if v[0].is_zero() {
        v[1].clone()
    } else {
        v[0].clone()
    };
    [&v[0] / &lead, &v[1] / &lead]
}

/// Brings a field with a semi-hyperbolic singular point at the origin into
/// the form expected by [`classify_semi_hyperbolic`].
pub fn to_normal_form(f: &VectorField, j: &Matrix2) -> Result<NormalForm> {
    let det = j.det();
    let lambda = j.trace();
    if !det.is_zero() || lambda.is_zero() {
        return Err(Error::NotSemiHyperbolic {
            det: det.to_string(),
            trace: lambda.to_string(),
        });
    }
    let kernel = if !j.a11.is_zero() || !j.a12.is_zero() {
        [j.a12.clone(), -j.a11.clone()]
    } else {
        [j.a22.clone(), -j.a21.clone()]
    };
    // J has rank one and trace lambda, so its column space is the
    // lambda-eigenspace.
    let image = if !j.a11.is_zero() || !j.a21.is_zero() {
        [j.a11.clone(), j.a21.clone()]
    } else {
        [j.a12.clone(), j.a22.clone()]
    };
    let k = first_nonzero_unit(kernel);
    let e = first_nonzero_unit(image);
    let t = [[k[0].clone(), e[0].clone()], [k[1].clone(), e[1].clone()]];
    let tdet = &t[0][0] * &t[1][1] - &t[0][1] * &t[1][0];
    let inv = [
        [&t[1][1] / &tdet, -&t[0][1] / &tdet],
        [-&t[1][0] / &tdet, &t[0][0] / &tdet],
    ];
    let change = AffineMap::linear(t);
    let p = f.p.compose_affine(&change);
    let q = f.q.compose_affine(&change);
    let first = &p.scale(&inv[0][0]) + &q.scale(&inv[0][1]);
    let second = &p.scale(&inv[1][0]) + &q.scale(&inv[1][1]);
    let b = &second - &Poly2::term(lambda.clone(), 0, 1);
    let nf = NormalForm {
        lambda,
        a: first,
        b,
        change,
    };
    nf.check()?;
    Ok(nf)
}

/// Truncated power series `f(x)` with `lambda f + B(x, f) = O(x^(order+1))`.
pub fn solve_center_manifold(lambda: &Rational, b: &Poly2, order: u32) -> Poly2 {
    let inv = -lambda.recip();
    let mut f = Poly2::zero();
    for _ in 0..=order {
        let next = b.compose(&Poly2::x(), &f).truncate(order).scale(&inv);
        if next == f {
            break;
        }
        f = next;
    }
    f
}

fn odd_kind(a: &Rational) -> Kind {
    if a.is_positive() {
        Kind::SemiHypNodeUnstable
    } else {
        Kind::SemiHypSaddle
    }
}

/// Decides the type from the lowest term of `g(x) = A(x, f(x))`.
///
/// Odd `alpha` follows the sign of `a` alone (node for `a > 0`, saddle for
/// `a < 0`); the sign of `lambda` is recorded but not consulted.
pub fn classify_semi_hyperbolic(nf: &NormalForm, order: u32) -> Classification {
    let f = solve_center_manifold(&nf.lambda, &nf.b, order);
    let g = nf.a.compose(&Poly2::x(), &f).truncate(order);
    let change = nf.change.linear.clone();
    let mut out = Classification::bare(Kind::Degenerate, Rational::zero(), nf.lambda.clone());
    match g.terms().next() {
        None => {
            out.diagnostic = Some(format!(
                "g vanishes through order {order}: series too short or point not isolated"
            ));
        }
        Some((m, a)) => {
            let alpha = m.x;
            out.kind = if alpha % 2 == 0 {
                Kind::SaddleNode
            } else {
                odd_kind(a)
            };
            out.semi = Some(SemiHyperbolic {
                lambda: nf.lambda.clone(),
                alpha,
                a: a.clone(),
                change,
                order,
            });
        }
    }
    out
}

/// Runs [`classify_semi_hyperbolic`] from the default order, doubling up to
/// [`MAX_SERIES_ORDER`] while `g` stays identically zero.
pub fn classify_semi_hyperbolic_auto(nf: &NormalForm) -> Classification {
    let mut order = DEFAULT_SERIES_ORDER;
    loop {
        let c = classify_semi_hyperbolic(nf, order);
        if c.kind != Kind::Degenerate || order >= MAX_SERIES_ORDER {
            return c;
        }
        order = (order * 2).min(MAX_SERIES_ORDER);
    }
}

/// Classifies the singular point `(x, y)` of `f`.
pub fn classify_point(f: &VectorField, x: &Rational, y: &Rational) -> Result<Classification> {
    if !f.is_singular_at(x, y) {
        return Err(Error::NotSingular(x.to_string(), y.to_string()));
    }
    let j = f.jacobian(x, y);
    let delta = j.det();
    let tau = j.trace();
    let mut out = if !delta.is_zero() {
        classify_nondegenerate(&delta, &tau)?
    } else if !tau.is_zero() {
        let nf = to_normal_form(&f.translate(x, y), &j)?;
        classify_semi_hyperbolic_auto(&nf)
    } else {
        let mut c = Classification::bare(Kind::Degenerate, delta, tau);
        c.diagnostic = Some("linear part is nilpotent or zero".into());
        c
    };
    out.eigen = Some(EigenData::of(&j));
    Ok(out)
}
