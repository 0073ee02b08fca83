//! Invariant algebraic curves: `f = 0` with `P f_x + Q f_y = K f`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::poly::{Poly2, Var};
use crate::rational::Rational;
use crate::upoly::UPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantCurve {
    #[serde(with = "crate::serde_util::poly")]
    pub f: Poly2,
    #[serde(with = "crate::serde_util::poly")]
    pub cofactor: Poly2,
}

/// `P f_x + Q f_y`.
pub fn lie_derivative(field: &VectorField, f: &Poly2) -> Poly2 {
    &(&field.p * &f.partial(Var::X)) + &(&field.q * &f.partial(Var::Y))
}

/// The cofactor of `candidate`, if `candidate = 0` is invariant.
pub fn cofactor_of(field: &VectorField, candidate: &Poly2) -> Result<Option<Poly2>> {
    if candidate.is_constant() {
        return Err(Error::ConstantCandidate);
    }
    lie_derivative(field, candidate).divide_exact(candidate)
}

pub fn verify_invariant_line(field: &VectorField, candidate: &Poly2, cofactor: &Poly2) -> bool {
    (&lie_derivative(field, candidate) - &(cofactor * candidate)).is_zero()
}

/// Outcome of the degree-one search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LineSearch {
    pub lines: Vec<InvariantCurve>,
    /// Set when some normalization admits a continuum of invariant lines
    /// (for instance when `P` and `Q` share a linear factor); such families
    /// are not enumerated.
    pub continuum: bool,
}

/// All rational invariant lines `a0 + a1 x + a2 y = 0` of a quadratic field,
/// normalized so that the first nonzero of `(a1, a2)` is 1.
pub fn find_invariant_lines(field: &VectorField) -> Result<Vec<InvariantCurve>> {
    Ok(search_invariant_lines(field)?.lines)
}

pub fn search_invariant_lines(field: &VectorField) -> Result<LineSearch> {
    let n = field.degree();
    if n != 2 {
        return Err(Error::NotQuadratic(n));
    }
    let mut out = LineSearch::default();

    // Case a1 = 1: the line x = -a0 - a2 t, y = t. The unknowns (a0, a2)
    // are the polynomial variables (x, y) of the coefficient system.
    let a0 = Poly2::x();
    let a2 = Poly2::y();
    let t_x = |p: &Poly2| restrict_to_line(p, &(-&a0), &Poly2::zero(), &(-&a2), &Poly2::one());
    let residual_p = t_x(&field.p);
    let residual_q = t_x(&field.q);
    // a1 P + a2 Q restricted to the line, as a polynomial in t with
    // coefficients in (a0, a2).
    let system: Vec<Poly2> = (0..=2usize)
        .map(|d| &coefficient(&residual_p, d) + &(&a2 * &coefficient(&residual_q, d)))
        .collect();
    let (sols, cont) = solve_bivariate(&system);
    out.continuum |= cont;
    for (s0, s2) in sols {
        out.lines.push(line(s0, Rational::one(), s2));
    }

    // Case a1 = 0, a2 = 1: the line y = -a0, parametrized by x = t.
    let residual = restrict_to_line(
        &field.q,
        &Poly2::zero(),
        &(-&a0),
        &Poly2::one(),
        &Poly2::zero(),
    );
    let eqs: Vec<UPoly> = (0..=2usize)
        .map(|d| UPoly::from_x_part(&coefficient(&residual, d)))
        .collect();
    match common_rational_roots(&eqs) {
        None => out.continuum = true,
        Some(roots) => {
            for s0 in roots {
                out.lines.push(line(s0, Rational::zero(), Rational::one()));
            }
        }
    }

    let mut verified = Vec::new();
    for l in out.lines {
        let k = cofactor_of(field, &l.f)?
            .ok_or_else(|| Error::Inconsistent(format!("line {} failed re-verification", l.f)))?;
        if !verify_invariant_line(field, &l.f, &k) {
            return Err(Error::Inconsistent(format!(
                "cofactor identity fails for {}",
                l.f
            )));
        }
        verified.push(InvariantCurve {
            f: l.f,
            cofactor: k,
        });
    }
    verified.sort_by_key(|c| c.f.to_string());
    verified.dedup();
    out.lines = verified;
    Ok(out)
}

fn line(a0: Rational, a1: Rational, a2: Rational) -> InvariantCurve {
    InvariantCurve {
        f: Poly2::from_terms([(a0, 0, 0), (a1, 1, 0), (a2, 0, 1)]),
        cofactor: Poly2::zero(),
    }
}

/// Substitutes `x = bx + sx t`, `y = by + sy t` into `p`, where the base
/// point and slopes are polynomials in the unknowns `(x, y)` and `t` is kept
/// as a separate exponent. Returns a list of `(power of t, coefficient)`.
fn restrict_to_line(
    p: &Poly2,
    bx: &Poly2,
    by: &Poly2,
    sx: &Poly2,
    sy: &Poly2,
) -> Vec<(u32, Poly2)> {
    // Expand (bx + sx t)^i (by + sy t)^j binomially in t.
    let mut acc: Vec<Poly2> = vec![Poly2::zero(); p.degree().unwrap_or(0) as usize + 1];
    for (m, c) in p.terms() {
        let xs = binomial_in_t(bx, sx, m.x);
        let ys = binomial_in_t(by, sy, m.y);
        for (i, xi) in xs.iter().enumerate() {
            for (j, yj) in ys.iter().enumerate() {
                let term = (xi * yj).scale(c);
                acc[i + j] = &acc[i + j] + &term;
            }
        }
    }
    acc.into_iter()
        .enumerate()
        .map(|(d, p)| (d as u32, p))
        .collect()
}

fn binomial_in_t(base: &Poly2, slope: &Poly2, e: u32) -> Vec<Poly2> {
    // coefficient of t^r in (base + slope t)^e
    (0..=e)
        .map(|r| {
            let binom = (0..r).fold(Rational::one(), |acc, i| {
                acc * Rational::from_integer((e - i).into())
                    / Rational::from_integer((i + 1).into())
            });
            (&base.pow(e - r) * &slope.pow(r)).scale(&binom)
        })
        .collect()
}

fn coefficient(expansion: &[(u32, Poly2)], d: usize) -> Poly2 {
    expansion
        .iter()
        .find(|(e, _)| *e as usize == d)
        .map(|(_, p)| p.clone())
        .unwrap_or_default()
}

/// Common rational roots of univariate polynomials; `None` when all vanish
/// identically.
fn common_rational_roots(eqs: &[UPoly]) -> Option<Vec<Rational>> {
    let g = eqs.iter().fold(UPoly::zero(), |acc, e| acc.gcd(e));
    if g.is_zero() {
        None
    } else {
        Some(g.rational_roots())
    }
}

/// Rational common zeros `(x, y)` of a system of bivariate polynomials.
/// Returns the isolated solutions and whether a continuum was skipped.
fn solve_bivariate(system: &[Poly2]) -> (Vec<(Rational, Rational)>, bool) {
    let nonzero: Vec<&Poly2> = system.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return (Vec::new(), true);
    }
    // Polynomials free of x constrain y directly.
    let pure_y: Vec<UPoly> = nonzero
        .iter()
        .filter(|p| p.degree_in(Var::X) == Some(0))
        .map(|p| UPoly::from_x_part(&swap_vars(p)))
        .collect();
    let candidates_y: Option<Vec<Rational>> = if !pure_y.is_empty() {
        common_rational_roots(&pure_y)
    } else {
        let with_x: Vec<&&Poly2> = nonzero.iter().collect();
        let mut found = None;
        'outer: for i in 0..with_x.len() {
            for j in i + 1..with_x.len() {
                let r = resultant_in_x(with_x[i], with_x[j]);
                if !r.is_zero() {
                    found = Some(r.rational_roots());
                    break 'outer;
                }
            }
        }
        found
    };
    let Some(ys) = candidates_y else {
        return (Vec::new(), true);
    };
    let mut out = Vec::new();
    let mut continuum = false;
    for y in ys {
        let eqs: Vec<UPoly> = nonzero
            .iter()
            .map(|p| UPoly::from_x_part(&p.compose(&Poly2::x(), &Poly2::constant(y.clone()))))
            .collect();
        match common_rational_roots(&eqs) {
            None => continuum = true,
            Some(xs) => out.extend(xs.into_iter().map(|x| (x, y.clone()))),
        }
    }
    (out, continuum)
}

fn swap_vars(p: &Poly2) -> Poly2 {
    p.compose(&Poly2::y(), &Poly2::x())
}

/// Sylvester resultant of `p` and `q` with respect to `x`, as a univariate
/// polynomial in `y`.
fn resultant_in_x(p: &Poly2, q: &Poly2) -> UPoly {
    let coeffs_in_x = |p: &Poly2| -> Vec<Poly2> {
        let d = p.degree_in(Var::X).unwrap_or(0);
        (0..=d)
            .map(|i| {
                // coefficient of x^i as a polynomial in y, stored in x for UPoly
                Poly2::from_terms(
                    p.terms()
                        .filter(|(m, _)| m.x == i)
                        .map(|(m, c)| (c.clone(), m.y, 0)),
                )
            })
            .collect()
    };
    let a = coeffs_in_x(p);
    let b = coeffs_in_x(q);
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 && n == 0 {
        return UPoly::new(vec![Rational::one()]);
    }
    let size = m + n;
    let mut mat = vec![vec![Poly2::zero(); size]; size];
    for r in 0..n {
        for (i, c) in a.iter().rev().enumerate() {
            mat[r][r + i] = c.clone();
        }
    }
    for r in 0..m {
        for (i, c) in b.iter().rev().enumerate() {
            mat[n + r][r + i] = c.clone();
        }
    }
    UPoly::from_x_part(&determinant(mat))
}

fn determinant(mat: Vec<Vec<Poly2>>) -> Poly2 {
    let n = mat.len();
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = Poly2::zero();
    for col in 0..n {
        if mat[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly2>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = &mat[0][col] * &determinant(minor);
        acc = if col % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}
