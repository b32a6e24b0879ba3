use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::UniPoly;
use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// `num / den` as a [`Rational`]. Panics on a zero denominator.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a [`Rational`].
pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"` (optional sign on `p`).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(num, den))
}

// Integers above this bound are not trial-factored.
const FACTOR_LIMIT: u64 = 1_000_000_000_000;

fn divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > FACTOR_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    Some(small)
}

/// All distinct rational roots of `p`, in increasing order.
///
/// Uses the rational root theorem on the primitive integer multiple of `p`.
/// Returns `None` when the extreme coefficients are too large to factor by
/// trial division.
pub fn rational_roots(p: &UniPoly) -> Option<Vec<Rational>> {
    if p.is_zero() {
        return None;
    }
    let mut roots = Vec::new();
    // strip the factor x^k
    let coeffs = p.coeffs();
    let shift = coeffs.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        roots.push(Rational::zero());
    }
    let trimmed = UniPoly::new(coeffs[shift..].to_vec());
    if trimmed.degree().unwrap_or(0) == 0 {
        return Some(roots);
    }
    let ints = trimmed.integer_coeffs();
    let lead = divisors(ints.last().unwrap())?;
    let tail = divisors(&ints[0])?;
    for num in &tail {
        for den in &lead {
            if BigInt::from(*num).gcd(&BigInt::from(*den)) != BigInt::one() {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Rational::new(BigInt::from(*num) * sign, BigInt::from(*den));
                if trimmed.eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    Some(roots)
}
