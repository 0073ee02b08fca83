//! Univariate rational polynomials: gcd, Sturm sequences and exact rational
//! root extraction. Used for equator singularities and the invariant-line
//! coefficient systems.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::Poly2;
use crate::rational::{self, Rational};

/// Coefficients in ascending powers, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UPoly {
    coeffs: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn zero() -> Self {
        UPoly::default()
    }

    /// Reads a bivariate polynomial that only involves `x`.
    /// Terms containing `y` are ignored.
    pub fn from_x_part(p: &Poly2) -> Self {
        let deg = p.degree().unwrap_or(0) as usize;
        let mut coeffs = vec![Rational::zero(); deg + 1];
        for (m, c) in p.terms() {
            if m.y == 0 {
                coeffs[m.x as usize] = c.clone();
            }
        }
        UPoly::new(coeffs)
    }

    pub fn to_poly2_in_x(&self) -> Poly2 {
        Poly2::from_terms(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), i as u32, 0)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rational::int(i as i64))
                .collect(),
        )
    }

    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead = d.lead().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let n = self.coeffs.len();
        if n <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); n - dd];
        for i in (0..n - dd).rev() {
            let q = &rem[i + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (UPoly::new(quot), UPoly::new(rem))
    }

    pub fn monic(&self) -> UPoly {
        match self.lead() {
            None => UPoly::zero(),
            Some(l) => {
                let l = l.clone();
                UPoly::new(self.coeffs.iter().map(|c| c / &l).collect())
            }
        }
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn squarefree(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        self.div_rem(&g).0.monic()
    }

    /// Scales to integer coefficients with content 1 and returns the
    /// absolute value of the leading integer coefficient.
    fn leading_integer(&self) -> BigInt {
        let denom_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(denom_lcm.clone())).to_integer())
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        (ints.last().unwrap() / content).abs()
    }

    /// Number of distinct real roots.
    pub fn real_root_count(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        let s = self.squarefree();
        if s.degree() == Some(0) {
            return 0;
        }
        let chain = sturm_chain(&s);
        let b = cauchy_bound(&s);
        sign_changes(&chain, &-b.clone()) - sign_changes(&chain, &b)
    }

    /// All distinct rational roots in increasing order. Irrational real roots
    /// are skipped; use [`UPoly::real_root_count`] to detect them.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let s = self.squarefree();
        if s.degree() == Some(0) {
            return Vec::new();
        }
        let chain = sturm_chain(&s);
        let bound = cauchy_bound(&s);
        let lead = s.leading_integer();
        // Two distinct rationals with denominators <= lead differ by at least
        // 1/lead^2, so an isolating interval narrower than that holds at most
        // one candidate.
        let width = Rational::new(BigInt::one(), &lead * &lead * BigInt::from(2));

        let mut roots = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
            if n == 0 {
                continue;
            }
            if s.eval(&hi).is_zero() {
                roots.push(hi.clone());
                if n == 1 {
                    continue;
                }
            } else if n == 1 && &hi - &lo < width {
                let cand = rational::simplest_between(&lo, &hi);
                if s.eval(&cand).is_zero() {
                    roots.push(cand);
                }
                continue;
            }
            let mid = (&lo + &hi) / rational::int(2);
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
        roots.sort();
        roots.dedup();
        roots
    }
}

fn sturm_chain(p: &UPoly) -> Vec<UPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(UPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
    }
    chain
}

fn sign_changes(chain: &[UPoly], t: &Rational) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| rational::sign(&p.eval(t)))
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn cauchy_bound(p: &UPoly) -> Rational {
    let lead = p.lead().unwrap().abs();
    let max = p.coeffs[..p.coeffs.len() - 1]
        .iter()
        .map(|c| c.abs() / &lead)
        .max()
        .unwrap_or_else(Rational::zero);
    max + Rational::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn up(cs: &[Rational]) -> UPoly {
        UPoly::new(cs.to_vec())
    }

    #[test]
    fn finds_simple_rational_roots() {
        // u + u^2
        let p = up(&[int(0), int(1), int(1)]);
        assert_eq!(p.rational_roots(), vec![int(-1), int(0)]);
        // (3u - 2)(u + 5)(2u - 7) = 6u^3 + 5u^2 - 111u + 70
        let p = up(&[int(70), int(-111), int(5), int(6)]);
        assert_eq!(p.rational_roots(), vec![int(-5), frac(2, 3), frac(7, 2)]);
    }

    #[test]
    fn skips_irrational_and_complex_roots() {
        // u^2 - 2
        let p = up(&[int(-2), int(0), int(1)]);
        assert!(p.rational_roots().is_empty());
        assert_eq!(p.real_root_count(), 2);
        // 1 + u^2
        let p = up(&[int(1), int(0), int(1)]);
        assert!(p.rational_roots().is_empty());
        assert_eq!(p.real_root_count(), 0);
        // (u^2 - 2)(u - 1/3)
        let p = up(&[int(-2), int(0), int(1)]);
        let q = p.div_rem(&up(&[int(1)])).0;
        let prod =
            UPoly::from_x_part(&(q.to_poly2_in_x() * up(&[frac(-1, 3), int(1)]).to_poly2_in_x()));
        assert_eq!(prod.rational_roots(), vec![frac(1, 3)]);
        assert_eq!(prod.real_root_count(), 3);
    }

    #[test]
    fn repeated_roots_are_reported_once() {
        // (u - 1)^2 (u + 1/2)
        let a = up(&[int(-1), int(1)]).to_poly2_in_x();
        let b = up(&[frac(1, 2), int(1)]).to_poly2_in_x();
        let p = UPoly::from_x_part(&(&(&a * &a) * &b));
        assert_eq!(p.rational_roots(), vec![frac(-1, 2), int(1)]);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let a = up(&[int(-1), int(0), int(1)]); // u^2 - 1
        let b = up(&[int(2), int(2)]); // 2u + 2
        assert_eq!(a.gcd(&b), up(&[int(1), int(1)]));
        assert!(UPoly::zero().gcd(&UPoly::zero()).is_zero());
    }
}
