//! Exact rational helpers. Every accept/reject decision in the crate goes
//! through these; no floating point is involved.

use std::cmp::Ordering;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Parses `p/q` or a bare integer into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::arg(format!("not a rational: {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::arg(format!("not a rational: {text:?}")))?;
    if den.is_zero() {
        return Err(Error::arg(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Renders a rational as `p/q` (always with an explicit denominator).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: u64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Compares `num/den` against `r` by cross-multiplication. `den` must be positive.
pub fn cmp_fraction(num: u64, den: u64, r: &Rational) -> Ordering {
    debug_assert!(den > 0);
    if let (Some(p), Some(q)) = (r.numer().to_i64(), r.denom().to_i64()) {
        // r is normalized with q > 0; u64 * u64 always fits in u128.
        if p < 0 {
            return Ordering::Greater;
        }
        let lhs = num as u128 * q as u128;
        let rhs = p as u128 * den as u128;
        return lhs.cmp(&rhs);
    }
    let lhs = BigInt::from(num) * r.denom();
    let rhs = r.numer() * BigInt::from(den);
    lhs.cmp(&rhs)
}

/// Smallest integer `>= r`.
pub fn ceil_to_u64(r: &Rational) -> Option<u64> {
    r.ceil().to_integer().to_u64()
}

/// Largest integer `<= r`.
pub fn floor_to_u64(r: &Rational) -> Option<u64> {
    r.floor().to_integer().to_u64()
}

/// Tests `base^exp >= bound` for non-negative `base`, positive `bound` and
/// a rational exponent `exp = a/b > 0`, exactly: `base^a >= bound^b`.
pub fn pow_ge(base: &Rational, exp: &Rational, bound: &Rational) -> bool {
    debug_assert!(exp.is_positive());
    let a = exp.numer().to_u32().expect("exponent numerator fits u32");
    let b = exp.denom().to_u32().expect("exponent denominator fits u32");
    Pow::pow(base.clone(), a) >= Pow::pow(bound.clone(), b)
}

/// Tests `base^exp <= bound` exactly, under the same conditions as [`pow_ge`].
pub fn pow_le(base: &Rational, exp: &Rational, bound: &Rational) -> bool {
    let a = exp.numer().to_u32().expect("exponent numerator fits u32");
    let b = exp.denom().to_u32().expect("exponent denominator fits u32");
    Pow::pow(base.clone(), a) <= Pow::pow(bound.clone(), b)
}

/// Returns a rational `r <= x^(1/c)` for `x > 0` and `0 < c <= 1`.
///
/// Exact when `1/c` is an integer. Otherwise the result is a dyadic
/// rational certified by `r^(c_num) <= x^(c_den)` checks in exact arithmetic.
pub fn root_lower_bound(x: &Rational, c: &Rational) -> Rational {
    let inv = c.recip();
    if inv.is_integer() {
        let m = inv.to_integer().to_u32().expect("1/c fits u32");
        return Pow::pow(x.clone(), m);
    }
    // x^(1/c) = x^(c_den / c_num); certify r^(c_num) <= x^(c_den).
    let c_num = c.numer().to_u32().expect("c numerator fits u32");
    let c_den = c.denom().to_u32().expect("c denominator fits u32");
    let target = Pow::pow(x.clone(), c_den);
    let approx = x.to_f64().unwrap_or(0.0).powf(inv.to_f64().unwrap_or(1.0));
    let scale = BigInt::one() << 64u32;
    let mut numer = BigInt::from((approx * 2f64.powi(64)).floor().max(0.0) as u128);
    let step = (&numer >> 40u32).max(BigInt::one());
    while numer.is_positive()
        && Pow::pow(Rational::new(numer.clone(), scale.clone()), c_num) > target
    {
        numer -= &step;
    }
    Rational::new(numer.max(BigInt::zero()), scale)
}

pub fn min(a: Rational, b: Rational) -> Rational {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/10").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational(" 2/4 ").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x/2").is_err());
        assert_eq!(format_rational(&ratio(6, 4)), "3/2");
        assert_eq!(format_rational(&int(1)), "1/1");
    }

    #[test]
    fn fraction_compare_is_exact() {
        let g = ratio(1, 3);
        assert_eq!(cmp_fraction(1, 3, &g), Ordering::Equal);
        assert_eq!(cmp_fraction(333_333, 1_000_000, &g), Ordering::Less);
        assert_eq!(cmp_fraction(333_334, 1_000_000, &g), Ordering::Greater);
        let huge = Rational::new(BigInt::from(1), BigInt::from(10u64).pow(30u32));
        assert_eq!(cmp_fraction(1, u64::MAX, &huge), Ordering::Greater);
        assert_eq!(cmp_fraction(0, 5, &huge), Ordering::Less);
    }

    #[test]
    fn integer_root_is_exact() {
        assert_eq!(
            root_lower_bound(&ratio(1, 40), &ratio(1, 2)),
            ratio(1, 1600)
        );
        assert_eq!(root_lower_bound(&ratio(1, 10), &int(1)), ratio(1, 10));
    }

    #[test]
    fn fractional_root_is_certified_lower_bound() {
        // (1/8)^(3/2) = 0.0441941738...
        let c = ratio(2, 3);
        let r = root_lower_bound(&ratio(1, 8), &c);
        assert!(Pow::pow(r.clone(), 2u32) <= Pow::pow(ratio(1, 8), 3u32));
        let approx = r.to_f64().unwrap();
        assert!((approx - 0.044_194_173_8).abs() < 1e-6, "{approx}");
    }

    #[test]
    fn pow_ge_exact() {
        // 40^(1/2) >= 6 but not >= 7
        assert!(pow_ge(&int(40), &ratio(1, 2), &int(6)));
        assert!(!pow_ge(&int(40), &ratio(1, 2), &int(7)));
        assert!(pow_ge(&int(1600), &ratio(1, 2), &int(40)));
    }
}
