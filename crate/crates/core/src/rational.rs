//! Exact rational scalars and their textual forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision fraction, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Extremely large numerators/denominators: go through the ratio of
        // magnitudes to avoid inf/inf.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses an integer, a fraction `p/q`, or a finite decimal such as `-0.35`
/// into an exact rational. Decimal input is never routed through floats.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = || Error::ParseRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }
    let (neg, body) = match t.as_bytes()[0] {
        b'-' => (true, &t[1..]),
        b'+' => (false, &t[1..]),
        _ => (false, t),
    };
    let (whole, fracpart) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && fracpart.is_empty() {
        return Err(err());
    }
    if !whole.bytes().all(|c| c.is_ascii_digit()) || !fracpart.bytes().all(|c| c.is_ascii_digit()) {
        return Err(err());
    }
    let digits = format!("{whole}{fracpart}");
    let n: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().map_err(|_| err())?
    };
    let d = num_traits::pow(BigInt::from(10), fracpart.len());
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

/// Largest integer not exceeding `r`.
pub fn floor(r: &Rational) -> Rational {
    r.floor()
}

/// The rational with the smallest denominator in the closed interval
/// `[lo, hi]` (ties broken toward smaller magnitude).
pub fn simplest_between(lo: &Rational, hi: &Rational) -> Rational {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Rational::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi, &-lo);
    }
    let fl = floor(lo);
    if &fl == lo {
        return fl;
    }
    let next = &fl + Rational::one();
    if &next <= hi {
        return next;
    }
    let inner = simplest_between(&(hi - &fl).recip(), &(lo - &fl).recip());
    fl + inner.recip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_input_shapes() {
        assert_eq!(parse_rational("4").unwrap(), int(4));
        assert_eq!(parse_rational("-3/6").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational("0.3").unwrap(), frac(3, 10));
        assert_eq!(parse_rational("-.25").unwrap(), frac(-1, 4));
        assert_eq!(parse_rational("2.").unwrap(), int(2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn decimal_boundary_is_exact() {
        // m = bk - c with decimal inputs: 0.3 = 0.1*6 - 0.3
        let b = parse_rational("0.1").unwrap();
        let k = parse_rational("6").unwrap();
        let c = parse_rational("0.3").unwrap();
        assert_eq!(b * k - c, parse_rational("0.3").unwrap());
    }

    #[test]
    fn simplest_rational_in_interval() {
        assert_eq!(simplest_between(&frac(1, 3), &frac(1, 2)), frac(1, 2));
        assert_eq!(simplest_between(&frac(3, 10), &frac(7, 20)), frac(1, 3));
        assert_eq!(simplest_between(&frac(-7, 20), &frac(-3, 10)), frac(-1, 3));
        assert_eq!(simplest_between(&frac(-1, 5), &frac(1, 5)), int(0));
        assert_eq!(simplest_between(&int(2), &int(2)), int(2));
    }
}
