use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Element of `Q(x)`: a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFuncX {
    num: UniPoly,
    den: UniPoly,
}

impl RatFuncX {
    /// Builds `num / den`, reducing and normalizing. Errors on a zero
    /// denominator.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = UniPoly::gcd(&num, &den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lc = den.leading().expect("nonzero denominator").recip();
        RatFuncX {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFuncX {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Value at `x = at`; errors when `at` is a pole.
    pub fn eval(&self, at: &Rational) -> Result<Rational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(Error::Pole(format!("{self} has a pole at x = {at}")));
        }
        Ok(self.num.eval(at) / d)
    }

    pub fn derivative(&self) -> Self {
        let num = self.num.derivative() * self.den.clone() - self.num.clone() * self.den.derivative();
        Self::reduced(num, self.den.clone() * self.den.clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RatFuncX {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.fmt_var(var)
        } else {
            format!("({})/({})", self.num.fmt_var(var), self.den.fmt_var(var))
        }
    }
}

impl fmt::Debug for RatFuncX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl fmt::Display for RatFuncX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("x"))
    }
}

impl From<UniPoly> for RatFuncX {
    fn from(p: UniPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Zero for RatFuncX {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFuncX {
    fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }
}

impl<'a> Add<&'a RatFuncX> for &'a RatFuncX {
    type Output = RatFuncX;
    fn add(self, rhs: &RatFuncX) -> RatFuncX {
        if self.den == rhs.den {
            return RatFuncX::reduced(&self.num + &rhs.num, self.den.clone());
        }
        let g = UniPoly::gcd(&self.den, &rhs.den);
        if g.is_one() {
            // coprime denominators: the sum is already reduced
            let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
            if num.is_zero() {
                return RatFuncX::zero();
            }
            return RatFuncX {
                num,
                den: &self.den * &rhs.den,
            };
        }
        let a = self.den.div_rem(&g).0;
        let b = rhs.den.div_rem(&g).0;
        let num = &(&self.num * &b) + &(&rhs.num * &a);
        RatFuncX::reduced(num, &a * &rhs.den)
    }
}

impl Add for RatFuncX {
    type Output = RatFuncX;
    fn add(self, rhs: RatFuncX) -> RatFuncX {
        &self + &rhs
    }
}

impl<'a> Sub<&'a RatFuncX> for &'a RatFuncX {
    type Output = RatFuncX;
    fn sub(self, rhs: &RatFuncX) -> RatFuncX {
        self + &(-rhs.clone())
    }
}

impl Sub for RatFuncX {
    type Output = RatFuncX;
    fn sub(self, rhs: RatFuncX) -> RatFuncX {
        &self - &rhs
    }
}

impl<'a> Mul<&'a RatFuncX> for &'a RatFuncX {
    type Output = RatFuncX;
    fn mul(self, rhs: &RatFuncX) -> RatFuncX {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncX::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFuncX::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel so that the product of reduced factors stays reduced
        let g1 = UniPoly::gcd(&self.num, &rhs.den);
        let g2 = UniPoly::gcd(&rhs.num, &self.den);
        let num = &self.num.div_rem(&g1).0 * &rhs.num.div_rem(&g2).0;
        let den = &self.den.div_rem(&g2).0 * &rhs.den.div_rem(&g1).0;
        let lc = den.leading().expect("nonzero denominator").recip();
        RatFuncX {
            num: num.scale(&lc),
            den: den.scale(&lc),
        }
    }
}

impl Mul for RatFuncX {
    type Output = RatFuncX;
    fn mul(self, rhs: RatFuncX) -> RatFuncX {
        &self * &rhs
    }
}

impl Div for RatFuncX {
    type Output = RatFuncX;
    /// Panics on division by zero; use [`RatFuncX::inv`] for a checked
    /// version.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: RatFuncX) -> RatFuncX {
        let inv = rhs.inv().expect("rational function division by zero");
        &self * &inv
    }
}

impl Neg for RatFuncX {
    type Output = RatFuncX;
    fn neg(self) -> RatFuncX {
        RatFuncX {
            num: -self.num,
            den: self.den,
        }
    }
}
