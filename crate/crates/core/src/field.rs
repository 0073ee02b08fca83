//! Planar polynomial vector fields `x' = P(x, y)`, `y' = Q(x, y)`.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{AffineMap, NumPoly, Poly2, Var};
use crate::rational::{self, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorField {
    pub p: Poly2,
    pub q: Poly2,
}

/// Parameters of the SIS system: infectivity `b`, recovery `c`, population
/// size `k` and proportional death rate `m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SisParams {
    #[serde(with = "crate::serde_util::rational")]
    pub b: Rational,
    #[serde(with = "crate::serde_util::rational")]
    pub c: Rational,
    #[serde(with = "crate::serde_util::rational")]
    pub k: Rational,
    #[serde(with = "crate::serde_util::rational")]
    pub m: Rational,
}

impl SisParams {
    pub fn new(b: Rational, c: Rational, k: Rational, m: Rational) -> Result<Self> {
        let p = SisParams { b, c, k, m };
        p.validate()?;
        Ok(p)
    }

    pub fn from_ints(b: i64, c: i64, k: i64, m: i64) -> Result<Self> {
        SisParams::new(
            rational::int(b),
            rational::int(c),
            rational::int(k),
            rational::int(m),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if self.b.is_zero() {
            return Err(Error::ZeroInfectivity);
        }
        if self.m.is_zero() {
            return Err(Error::ZeroDeathRate);
        }
        Ok(())
    }

    /// `bk - c - m`; vanishes exactly when the two steady states coalesce.
    pub fn excess(&self) -> Rational {
        &self.b * &self.k - &self.c - &self.m
    }
}

impl std::fmt::Display for SisParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "(b={}, c={}, k={}, m={})",
            self.b, self.c, self.k, self.m
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    pub a11: Rational,
    pub a12: Rational,
    pub a21: Rational,
    pub a22: Rational,
}

impl Matrix2 {
    pub fn new(a11: Rational, a12: Rational, a21: Rational, a22: Rational) -> Self {
        Matrix2 { a11, a12, a21, a22 }
    }

    pub fn det(&self) -> Rational {
        &self.a11 * &self.a22 - &self.a12 * &self.a21
    }

    pub fn trace(&self) -> Rational {
        &self.a11 + &self.a22
    }

    pub fn to_f64(&self) -> [[f64; 2]; 2] {
        [
            [rational::to_f64(&self.a11), rational::to_f64(&self.a12)],
            [rational::to_f64(&self.a21), rational::to_f64(&self.a22)],
        ]
    }
}

impl VectorField {
    pub fn new(p: Poly2, q: Poly2) -> Self {
        VectorField { p, q }
    }

    /// Degree of the field; the zero field reports 0.
    pub fn degree(&self) -> u32 {
        self.p
            .degree()
            .unwrap_or(0)
            .max(self.q.degree().unwrap_or(0))
    }

    pub fn jacobian(&self, x: &Rational, y: &Rational) -> Matrix2 {
        Matrix2::new(
            self.p.partial(Var::X).eval(x, y),
            self.p.partial(Var::Y).eval(x, y),
            self.q.partial(Var::X).eval(x, y),
            self.q.partial(Var::Y).eval(x, y),
        )
    }

    /// The field `G(x, y) = F(x + px, y + py)`, which has at the origin
    /// whatever `F` has at `(px, py)`.
    pub fn translate(&self, px: &Rational, py: &Rational) -> VectorField {
        let shift = AffineMap::translation(px.clone(), py.clone());
        VectorField::new(self.p.compose_affine(&shift), self.q.compose_affine(&shift))
    }

    pub fn is_singular_at(&self, x: &Rational, y: &Rational) -> bool {
        self.p.eval(x, y).is_zero() && self.q.eval(x, y).is_zero()
    }

    pub fn negated(&self) -> VectorField {
        VectorField::new(-&self.p, -&self.q)
    }

    pub fn to_numeric(&self) -> NumericField {
        let p = self.p.to_numeric();
        let q = self.q.to_numeric();
        NumericField {
            px: p.partial(Var::X),
            py: p.partial(Var::Y),
            qx: q.partial(Var::X),
            qy: q.partial(Var::Y),
            p,
            q,
        }
    }

    /// Newton-refined common zeros of `P` and `Q` seeded from a uniform grid.
    /// Only a numeric cross-check; exact classification never depends on it.
    pub fn finite_singular_points_numeric(&self, search: &NewtonSearch) -> Vec<[f64; 2]> {
        let nf = self.to_numeric();
        let n = search.grid.max(1);
        let [x0, x1, y0, y1] = search.bounds;
        let mut found: Vec<[f64; 2]> = Vec::new();
        for i in 0..=n {
            for j in 0..=n {
                let sx = x0 + (x1 - x0) * i as f64 / n as f64;
                let sy = y0 + (y1 - y0) * j as f64 / n as f64;
                let Some(pt) = nf.newton(sx, sy, search.tol, search.max_iter) else {
                    continue;
                };
                if pt[0] < x0 - search.dedup
                    || pt[0] > x1 + search.dedup
                    || pt[1] < y0 - search.dedup
                    || pt[1] > y1 + search.dedup
                {
                    continue;
                }
                if !found
                    .iter()
                    .any(|f| (f[0] - pt[0]).hypot(f[1] - pt[1]) < search.dedup)
                {
                    found.push(pt);
                }
            }
        }
        found.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
        found
    }
}

/// Build the SIS field `x' = -bxy - mx + cy + mk`, `y' = bxy - (m+c)y`.
pub fn make_sis_field(params: &SisParams) -> Result<VectorField> {
    params.validate()?;
    let SisParams { b, c, k, m } = params;
    let p = Poly2::from_terms([
        (-b.clone(), 1, 1),
        (-m.clone(), 1, 0),
        (c.clone(), 0, 1),
        (m * k, 0, 0),
    ]);
    let q = Poly2::from_terms([(b.clone(), 1, 1), (-(m + c), 0, 1)]);
    Ok(VectorField::new(p, q))
}

#[derive(Clone, Debug)]
pub struct NewtonSearch {
    /// `[xmin, xmax, ymin, ymax]`
    pub bounds: [f64; 4],
    pub grid: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub dedup: f64,
}

impl Default for NewtonSearch {
    fn default() -> Self {
        NewtonSearch {
            bounds: [-10.0, 10.0, -10.0, 10.0],
            grid: 20,
            tol: 1e-12,
            max_iter: 50,
            dedup: 1e-8,
        }
    }
}

/// Float evaluation of a field and its Jacobian.
#[derive(Clone, Debug)]
pub struct NumericField {
    p: NumPoly,
    q: NumPoly,
    px: NumPoly,
    py: NumPoly,
    qx: NumPoly,
    qy: NumPoly,
}

impl NumericField {
    pub fn eval(&self, x: f64, y: f64) -> [f64; 2] {
        [self.p.eval(x, y), self.q.eval(x, y)]
    }

    pub fn jacobian(&self, x: f64, y: f64) -> [[f64; 2]; 2] {
        [
            [self.px.eval(x, y), self.py.eval(x, y)],
            [self.qx.eval(x, y), self.qy.eval(x, y)],
        ]
    }

    fn newton(&self, mut x: f64, mut y: f64, tol: f64, max_iter: usize) -> Option<[f64; 2]> {
        for _ in 0..max_iter {
            let [f, g] = self.eval(x, y);
            let [[a, b], [c, d]] = self.jacobian(x, y);
            let det = a * d - b * c;
            if det == 0.0 || !det.is_finite() {
                return None;
            }
            let dx = (d * f - b * g) / det;
            let dy = (a * g - c * f) / det;
            x -= dx;
            y -= dy;
            if !x.is_finite() || !y.is_finite() {
                return None;
            }
            if dx.hypot(dy) <= tol * (1.0 + x.hypot(y)) {
                let [f, g] = self.eval(x, y);
                let scale = 1.0 + x.abs() + y.abs();
                return (f.hypot(g) <= 1e-8 * scale * scale).then_some([x, y]);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn pp(s: &str) -> Poly2 {
        s.parse().unwrap()
    }

    #[test]
    fn sis_field_construction() {
        let f = make_sis_field(&SisParams::from_ints(1, 1, 4, 1).unwrap()).unwrap();
        assert_eq!(f.p, pp("-x*y - x + y + 4"));
        assert_eq!(f.q, pp("x*y - 2*y"));
        assert_eq!(f.degree(), 2);
        let f = make_sis_field(&SisParams::from_ints(1, 1, 2, 1).unwrap()).unwrap();
        assert_eq!(f.p, pp("-x*y - x + y + 2"));
        assert_eq!(f.q, pp("x*y - 2*y"));
        assert_eq!(
            SisParams::from_ints(0, 1, 4, 1),
            Err(Error::ZeroInfectivity)
        );
        assert_eq!(SisParams::from_ints(1, 1, 4, 0), Err(Error::ZeroDeathRate));
    }

    #[test]
    fn jacobian_examples() {
        let f = make_sis_field(&SisParams::from_ints(1, 1, 2, 1).unwrap()).unwrap();
        let g = f.translate(&int(2), &int(0));
        assert_eq!(
            g.jacobian(&int(0), &int(0)),
            Matrix2::new(int(-1), int(-1), int(0), int(0))
        );
        let lin = VectorField::new(pp("x"), pp("y"));
        assert_eq!(
            lin.jacobian(&frac(3, 7), &int(-9)),
            Matrix2::new(int(1), int(0), int(0), int(1))
        );
        let f = make_sis_field(&SisParams::from_ints(1, 1, 4, 1).unwrap()).unwrap();
        assert_eq!(
            f.jacobian(&int(4), &int(0)),
            Matrix2::new(int(-1), int(-3), int(0), int(2))
        );
    }

    #[test]
    fn translate_examples() {
        let f = make_sis_field(&SisParams::from_ints(1, 1, 2, 1).unwrap()).unwrap();
        let g = f.translate(&int(2), &int(0));
        assert_eq!(g.p, pp("-x - y - x*y"));
        assert_eq!(g.q, pp("x*y"));
        assert_eq!(f.translate(&int(0), &int(0)), f);
        let f = make_sis_field(&SisParams::from_ints(1, 1, 4, 1).unwrap()).unwrap();
        assert_eq!(f.translate(&int(4), &int(0)).q, pp("2*y + x*y"));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(VectorField::new(pp("y"), pp("-x")).degree(), 1);
        assert_eq!(VectorField::new(Poly2::zero(), Poly2::zero()).degree(), 0);
    }

    #[test]
    fn numeric_finder_examples() {
        let f = make_sis_field(&SisParams::from_ints(1, 1, 4, 1).unwrap()).unwrap();
        let pts = f.finite_singular_points_numeric(&NewtonSearch::default());
        assert_eq!(pts.len(), 2);
        assert!((pts[0][0] - 2.0).abs() < 1e-10 && (pts[0][1] - 2.0).abs() < 1e-10);
        assert!((pts[1][0] - 4.0).abs() < 1e-10 && pts[1][1].abs() < 1e-10);

        let lin = VectorField::new(pp("x"), pp("y"));
        let pts = lin.finite_singular_points_numeric(&NewtonSearch::default());
        assert_eq!(pts.len(), 1);
        assert!(pts[0][0].abs() < 1e-12 && pts[0][1].abs() < 1e-12);

        let constant = VectorField::new(pp("1"), pp("1"));
        assert!(constant
            .finite_singular_points_numeric(&NewtonSearch::default())
            .is_empty());
    }
}
