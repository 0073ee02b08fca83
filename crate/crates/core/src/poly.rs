//! Bivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Monomial`], whose ordering is
//! graded lexicographic with `x > y`. Iteration therefore runs from the
//! constant term upward and the leading term is the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Exponent pair `x^x * y^y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0 };

    pub fn new(x: u32, y: u32) -> Self {
        Monomial { x, y }
    }

    pub fn degree(self) -> u32 {
        self.x + self.y
    }

    pub fn divides(self, other: Monomial) -> bool {
        self.x <= other.x && self.y <= other.y
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.x.cmp(&other.x))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly2 {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Poly2::term(c, 0, 0)
    }

    pub fn x() -> Self {
        Poly2::term(Rational::one(), 1, 0)
    }

    pub fn y() -> Self {
        Poly2::term(Rational::one(), 0, 1)
    }

    pub fn term(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Poly2::zero();
        p.add_term(Monomial::new(i, j), c);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, u32, u32)>,
    {
        let mut p = Poly2::zero();
        for (c, i, j) in terms {
            p.add_term(Monomial::new(i, j), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::ONE)
    }

    /// Total degree; `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// Lowest total degree among the nonzero terms.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).min()
    }

    pub fn degree_in(&self, var: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| match var {
                Var::X => m.x,
                Var::Y => m.y,
            })
            .max()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms
            .get(&Monomial::new(i, j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, &Rational)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<(Monomial, &Rational)> {
        self.terms.iter().next_back().map(|(m, c)| (*m, c))
    }

    pub fn scale(&self, c: &Rational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    fn mul_term(&self, m: Monomial, c: &Rational) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(t, v)| (Monomial::new(t.x + m.x, t.y + m.y), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut acc = Poly2::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial(&self, var: Var) -> Poly2 {
        let mut out = Poly2::zero();
        for (m, c) in &self.terms {
            match var {
                Var::X if m.x > 0 => {
                    out.add_term(Monomial::new(m.x - 1, m.y), c * rational::int(m.x as i64))
                }
                Var::Y if m.y > 0 => {
                    out.add_term(Monomial::new(m.x, m.y - 1), c * rational::int(m.y as i64))
                }
                _ => {}
            }
        }
        out
    }

    /// Multivariate division by a single divisor under graded-lex order.
    /// Returns `(quotient, remainder)` with `self = quotient * den + remainder`
    /// and no term of the remainder divisible by the leading monomial of `den`.
    pub fn div_rem(&self, den: &Poly2) -> Result<(Poly2, Poly2)> {
        let (lm, lc) = den.leading_term().ok_or(Error::DivisionByZero)?;
        let lc = lc.clone();
        let mut work = self.clone();
        let mut quot = Poly2::zero();
        let mut rem = Poly2::zero();
        while let Some((m, c)) = work.leading_term() {
            let c = c.clone();
            if lm.divides(m) {
                let qm = Monomial::new(m.x - lm.x, m.y - lm.y);
                let qc = &c / &lc;
                work = &work - &den.mul_term(qm, &qc);
                quot.add_term(qm, qc);
            } else {
                work.terms.remove(&m);
                rem.add_term(m, c);
            }
        }
        Ok((quot, rem))
    }

    /// Exact quotient `num / den`, or `None` when `den` does not divide `num`.
    pub fn divide_exact(&self, den: &Poly2) -> Result<Option<Poly2>> {
        let (q, r) = self.div_rem(den)?;
        Ok(if r.is_zero() { Some(q) } else { None })
    }

    /// Substitutes `x -> xs`, `y -> ys` and expands.
    pub fn compose(&self, xs: &Poly2, ys: &Poly2) -> Poly2 {
        let dx = self.degree_in(Var::X).unwrap_or(0);
        let dy = self.degree_in(Var::Y).unwrap_or(0);
        let xp = powers(xs, dx);
        let yp = powers(ys, dy);
        let mut out = Poly2::zero();
        for (m, c) in &self.terms {
            let t = (&xp[m.x as usize] * &yp[m.y as usize]).scale(c);
            out = &out + &t;
        }
        out
    }

    pub fn compose_affine(&self, map: &AffineMap) -> Poly2 {
        let (xs, ys) = map.as_polys();
        self.compose(&xs, &ys)
    }

    /// Drops every term of total degree above `max_degree`.
    pub fn truncate(&self, max_degree: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= max_degree)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            acc += c
                * num_traits::pow(x.clone(), m.x as usize)
                * num_traits::pow(y.clone(), m.y as usize);
        }
        acc
    }

    pub fn to_numeric(&self) -> NumPoly {
        NumPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.x as i32, m.y as i32, rational::to_f64(c)))
                .collect(),
        }
    }

    pub fn eval_f64(&self, x: f64, y: f64) -> f64 {
        self.to_numeric().eval(x, y)
    }
}

fn powers(p: &Poly2, n: u32) -> Vec<Poly2> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Poly2::one());
    for i in 0..n as usize {
        let next = &out[i] * p;
        out.push(next);
    }
    out
}

/// Float copy of a polynomial for fast numeric evaluation.
#[derive(Clone, Debug, Default)]
pub struct NumPoly {
    terms: Vec<(i32, i32, f64)>,
}

impl NumPoly {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms
            .iter()
            .map(|&(i, j, c)| c * x.powi(i) * y.powi(j))
            .sum()
    }

    pub fn partial(&self, var: Var) -> NumPoly {
        NumPoly {
            terms: self
                .terms
                .iter()
                .filter_map(|&(i, j, c)| match var {
                    Var::X if i > 0 => Some((i - 1, j, c * i as f64)),
                    Var::Y if j > 0 => Some((i, j - 1, c * j as f64)),
                    _ => None,
                })
                .collect(),
        }
    }
}

/// Affine substitution `(x, y) -> (a11 x + a12 y + s1, a21 x + a22 y + s2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: [[Rational; 2]; 2],
    pub shift: [Rational; 2],
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap::linear([
            [Rational::one(), Rational::zero()],
            [Rational::zero(), Rational::one()],
        ])
    }

    pub fn linear(m: [[Rational; 2]; 2]) -> Self {
        AffineMap {
            linear: m,
            shift: [Rational::zero(), Rational::zero()],
        }
    }

    pub fn translation(dx: Rational, dy: Rational) -> Self {
        AffineMap {
            shift: [dx, dy],
            ..AffineMap::identity()
        }
    }

    pub fn as_polys(&self) -> (Poly2, Poly2) {
        let row = |r: usize| {
            Poly2::from_terms([
                (self.linear[r][0].clone(), 1, 0),
                (self.linear[r][1].clone(), 0, 1),
                (self.shift[r].clone(), 0, 0),
            ])
        };
        (row(0), row(1))
    }

    pub fn apply(&self, x: &Rational, y: &Rational) -> (Rational, Rational) {
        let m = &self.linear;
        (
            &m[0][0] * x + &m[0][1] * y + &self.shift[0],
            &m[1][0] * x + &m[1][1] * y + &self.shift[1],
        )
    }
}

impl Add for &Poly2 {
    type Output = Poly2;
    fn add(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly2 {
    type Output = Poly2;
    fn sub(self, rhs: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul for &Poly2 {
    type Output = Poly2;
    fn mul(self, rhs: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(Monomial::new(ma.x + mb.x, ma.y + mb.y), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        Poly2 {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly2 {
            type Output = Poly2;
            fn $f(self, rhs: Poly2) -> Poly2 {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly2> for Poly2 {
            type Output = Poly2;
            fn $f(self, rhs: &Poly2) -> Poly2 {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly2 {
    type Output = Poly2;
    fn neg(self) -> Poly2 {
        -&self
    }
}

fn fmt_monomial(m: Monomial) -> String {
    let part = |v: &str, e: u32| match e {
        0 => None,
        1 => Some(v.to_string()),
        _ => Some(format!("{v}^{e}")),
    };
    [part("x", m.x), part("y", m.y)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// Renders by ascending degree, `x`-heavier terms first within a degree,
/// e.g. `4 - x + y - x*y`.
impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (m.degree(), std::cmp::Reverse(m.x)));
        for (idx, (m, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            let body = if *m == Monomial::ONE {
                mag.to_string()
            } else if mag.is_one() {
                fmt_monomial(*m)
            } else {
                format!("{}*{}", mag, fmt_monomial(*m))
            };
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for Poly2 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::ParsePolynomial(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut pieces: Vec<(bool, String)> = Vec::new();
        let mut neg = false;
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if ch == '+' || ch == '-' {
                if i > 0 {
                    if cur.is_empty() {
                        return Err(err());
                    }
                    pieces.push((neg, std::mem::take(&mut cur)));
                }
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(err());
        }
        pieces.push((neg, cur));

        let mut out = Poly2::zero();
        for (neg, body) in pieces {
            let mut coeff = Rational::one();
            let mut mono = Monomial::ONE;
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| err())?),
                    None => (factor, 1),
                };
                match base {
                    "x" => mono.x += exp,
                    "y" => mono.y += exp,
                    _ if factor.contains('^') => return Err(err()),
                    _ => coeff *= rational::parse_rational(base).map_err(|_| err())?,
                }
            }
            out.add_term(mono, if neg { -coeff } else { coeff });
        }
        Ok(out)
    }
}
