use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BivarPoly, Rational, UniPoly};
use crate::error::{Error, Result};

/// Power series in `t` over `Q`, known modulo `t^prec`.
///
/// Always stores exactly `prec` coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(mut coeffs: Vec<Rational>, prec: usize) -> Self {
        coeffs.resize(prec, Rational::zero());
        Series { coeffs }
    }

    pub fn zero(prec: usize) -> Self {
        Self::new(Vec::new(), prec)
    }

    pub fn constant(c: Rational, prec: usize) -> Self {
        Self::new(vec![c], prec)
    }

    /// `c + t`
    pub fn shifted_var(c: Rational, prec: usize) -> Self {
        Self::new(vec![c, Rational::one()], prec)
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        Self::new(self.coeffs[..prec.min(self.prec())].to_vec(), prec.min(self.prec()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Index of the first nonzero coefficient, if any is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let p = self.prec().min(rhs.prec());
        Self::new((0..p).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(), p)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let p = self.prec().min(rhs.prec());
        Self::new((0..p).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(), p)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect(), self.prec())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let p = self.prec().min(rhs.prec());
        let mut out = vec![Rational::zero(); p];
        for (i, a) in self.coeffs.iter().enumerate().take(p) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(p - i) {
                out[i + j] += a * b;
            }
        }
        Self::new(out, p)
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inv(&self) -> Result<Self> {
        let p = self.prec();
        let c0 = self.coeff(0);
        if c0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c0inv = c0.recip();
        let mut out = vec![Rational::zero(); p];
        if p > 0 {
            out[0] = c0inv.clone();
        }
        for k in 1..p {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out[k] = -acc * &c0inv;
        }
        Ok(Self::new(out, p))
    }

    /// `d/dt`; loses one coefficient of precision.
    pub fn derivative(&self) -> Self {
        let p = self.prec().saturating_sub(1);
        Self::new(
            (1..self.prec())
                .map(|k| &self.coeffs[k] * Rational::from_integer(BigInt::from(k)))
                .collect(),
            p,
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(Rational::one(), self.prec()), |acc, _| acc.mul(self))
    }

    /// `p(s)` for a univariate polynomial `p`.
    pub fn eval_poly(p: &UniPoly, s: &Series) -> Series {
        p.coeffs()
            .iter()
            .rev()
            .fold(Series::zero(s.prec()), |acc, c| {
                acc.mul(s).add(&Series::constant(c.clone(), s.prec()))
            })
    }

    /// `f(sx, sy)` for a bivariate polynomial `f`.
    pub fn eval_bivar(f: &BivarPoly, sx: &Series, sy: &Series) -> Series {
        let p = sx.prec().min(sy.prec());
        let max_r = f.deg_x().unwrap_or(0);
        let max_s = f.deg_y().unwrap_or(0);
        let mut xp = vec![Series::constant(Rational::one(), p)];
        for _ in 0..max_r {
            let next = xp.last().unwrap().mul(sx);
            xp.push(next);
        }
        let mut yp = vec![Series::constant(Rational::one(), p)];
        for _ in 0..max_s {
            let next = yp.last().unwrap().mul(sy);
            yp.push(next);
        }
        f.terms().fold(Series::zero(p), |acc, (r, s, c)| {
            acc.add(&xp[r as usize].mul(&yp[s as usize]).scale(c))
        })
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = UniPoly::new(self.coeffs.clone());
        write!(f, "{} + O(t^{})", poly.fmt_var("t"), self.prec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{q, qi};

    #[test]
    fn inverse_of_one_minus_t() {
        let s = Series::new(vec![qi(1), qi(-1)], 6);
        let inv = s.inv().unwrap();
        assert_eq!(inv.coeffs(), &[qi(1), qi(1), qi(1), qi(1), qi(1), qi(1)]);
        assert_eq!(s.mul(&inv), Series::constant(qi(1), 6));
        assert!(Series::new(vec![qi(0), qi(1)], 3).inv().is_err());
    }

    #[test]
    fn eval_bivar_substitution() {
        // x = t, y = 1 + t^2/2 - t^4/8 on y^2 - x^2 - 1 vanishes through t^5
        let f = BivarPoly::parse("y^2 - x^2 - 1").unwrap();
        let sx = Series::shifted_var(qi(0), 5);
        let sy = Series::new(vec![qi(1), qi(0), q(1, 2), qi(0), q(-1, 8)], 5);
        assert!(Series::eval_bivar(&f, &sx, &sy).is_zero());
    }
}

/// Laurent series `sum_k coeffs[k] t^(start + k)`, known modulo
/// `t^(start + coeffs.len())`.
#[derive(Clone, PartialEq, Eq)]
pub struct Laurent {
    start: i64,
    coeffs: Vec<Rational>,
}

impl Laurent {
    pub fn new(start: i64, coeffs: Vec<Rational>) -> Self {
        Laurent { start, coeffs }
    }

    pub fn from_series(s: &Series) -> Self {
        Laurent {
            start: 0,
            coeffs: s.coeffs().to_vec(),
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    /// Exponent from which on the series is unknown.
    pub fn end(&self) -> i64 {
        self.start + self.coeffs.len() as i64
    }

    /// Coefficient of `t^e`, `None` beyond the known precision.
    pub fn coeff(&self, e: i64) -> Option<Rational> {
        if e >= self.end() {
            None
        } else if e < self.start {
            Some(Rational::zero())
        } else {
            Some(self.coeffs[(e - self.start) as usize].clone())
        }
    }

    /// First exponent with a nonzero known coefficient.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|k| self.start + k as i64)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let start = self.start.min(rhs.start);
        let end = self.end().min(rhs.end());
        let coeffs = (start..end)
            .map(|e| self.coeff(e).unwrap() + rhs.coeff(e).unwrap())
            .collect();
        Laurent { start, coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Laurent {
            start: self.start,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let a = Series::new(self.coeffs[..n].to_vec(), n);
        let b = Series::new(rhs.coeffs[..n].to_vec(), n);
        Laurent {
            start: self.start + rhs.start,
            coeffs: a.mul(&b).coeffs().to_vec(),
        }
    }

    /// `num / den` for power series; the result starts at `-val(den)`.
    pub fn quotient(num: &Series, den: &Series) -> Result<Self> {
        let v = den
            .valuation()
            .ok_or_else(|| Error::Internal("denominator series vanishes to working precision".into()))?;
        let shifted = Series::new(den.coeffs()[v..].to_vec(), den.prec() - v);
        let len = num.prec().min(shifted.prec());
        let q = num.truncate(len).mul(&shifted.truncate(len).inv()?);
        Ok(Laurent {
            start: -(v as i64),
            coeffs: q.coeffs().to_vec(),
        })
    }

    /// `d/dt`
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * Rational::from_integer(BigInt::from(self.start + k as i64)))
            .collect();
        Laurent {
            start: self.start - 1,
            coeffs,
        }
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("{c}*t^{}", self.start + k as i64))
            .collect();
        write!(f, "{} + O(t^{})", terms.join(" + "), self.end())
    }
}
