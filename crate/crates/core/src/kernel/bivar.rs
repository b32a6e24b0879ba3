use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::unipoly::push_term;
use super::{Rational, UniPoly};
use crate::error::{Error, Result};

/// Sparse polynomial in `x, y` over `Q`: a map `(r, s) -> a_rs` for the term
/// `a_rs x^r y^s`. Zero coefficients are never stored, and the map keeps the
/// terms in lexicographic `(r, s)` order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivarPoly {
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (u32, u32, Rational)>,
    {
        let mut out = BTreeMap::new();
        for (r, s, c) in terms {
            let e = out.entry((r, s)).or_insert_with(Rational::zero);
            *e += c;
        }
        out.retain(|_, c: &mut Rational| !c.is_zero());
        BivarPoly { terms: out }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_terms([(0, 0, c)])
    }

    pub fn x() -> Self {
        Self::from_terms([(1, 0, Rational::one())])
    }

    pub fn y() -> Self {
        Self::from_terms([(0, 1, Rational::one())])
    }

    /// Embeds a polynomial in `x`.
    pub fn from_x_poly(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(r, c)| (r as u32, 0, c.clone())),
        )
    }

    /// Embeds a polynomial in `y`.
    pub fn from_y_poly(p: &UniPoly) -> Self {
        Self::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(s, c)| (0, s as u32, c.clone())),
        )
    }

    /// `sum_s coeffs[s](x) * y^s`
    pub fn from_y_coeffs(coeffs: &[UniPoly]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().flat_map(|(s, p)| {
            p.coeffs()
                .iter()
                .enumerate()
                .map(move |(r, c)| (r as u32, s as u32, c.clone()))
                .collect::<Vec<_>>()
        }))
    }

    /// Terms `(r, s, a_rs)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Rational)> {
        self.terms.iter().map(|(&(r, s), c)| (r, s, c))
    }

    pub fn coeff(&self, r: u32, s: u32) -> Rational {
        self.terms.get(&(r, s)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, s)| s).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(r, _)| r).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(r, s)| r + s).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    /// Coefficient of `y^s`, as a polynomial in `x`.
    pub fn y_coeff(&self, s: u32) -> UniPoly {
        let deg = self.deg_x().unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (&(r, t), a) in &self.terms {
            if t == s {
                c[r as usize] = a.clone();
            }
        }
        UniPoly::new(c)
    }

    /// All `y`-coefficients, `[c_0(x), ..., c_d(x)]`.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        match self.deg_y() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|s| self.y_coeff(s)).collect(),
        }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&(r, s), c)| {
            acc + c * pow(x, r) * pow(y, s)
        })
    }

    /// `F(x0, y)` as a polynomial in `y`.
    pub fn specialize_x(&self, x0: &Rational) -> UniPoly {
        let deg = self.deg_y().unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (&(r, s), a) in &self.terms {
            c[s as usize] += a * pow(x0, r);
        }
        UniPoly::new(c)
    }

    /// `F(x, y0)` as a polynomial in `x`.
    pub fn specialize_y(&self, y0: &Rational) -> UniPoly {
        let deg = self.deg_x().unwrap_or(0) as usize;
        let mut c = vec![Rational::zero(); deg + 1];
        for (&(r, s), a) in &self.terms {
            c[r as usize] += a * pow(y0, s);
        }
        UniPoly::new(c)
    }

    pub fn partial_x(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(r, _), _)| r > 0)
                .map(|(&(r, s), c)| (r - 1, s, c * Rational::from_integer(BigInt::from(r)))),
        )
    }

    pub fn partial_y(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, s), _)| s > 0)
                .map(|(&(r, s), c)| (r, s - 1, c * Rational::from_integer(BigInt::from(s)))),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms().map(|(r, s, a)| (r, s, a * c)))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Remainder of division by `modulus` as a polynomial in `y`.
    ///
    /// `modulus` must have a nonzero constant as its leading `y`-coefficient;
    /// the result has `y`-degree below that of `modulus`.
    pub fn reduce_mod(&self, modulus: &BivarPoly) -> Result<Self> {
        let d = modulus
            .deg_y()
            .ok_or_else(|| Error::InvalidInput("reduction modulo zero".into()))?;
        let lead = modulus.y_coeff(d);
        if !lead.is_constant() || lead.is_zero() {
            return Err(Error::InvalidInput(
                "reduction needs a constant leading y-coefficient".into(),
            ));
        }
        let lead_inv = lead.coeff(0).recip();
        let mcoeffs = modulus.y_coeffs();
        let mut coeffs = self.y_coeffs();
        while coeffs.len() > d as usize {
            let top = coeffs.len() - 1;
            let c = coeffs.pop().unwrap().scale(&lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - d as usize;
            for (j, m) in mcoeffs.iter().enumerate().take(d as usize) {
                coeffs[shift + j] = &coeffs[shift + j] - &(&c * m);
            }
        }
        Ok(Self::from_y_coeffs(&coeffs))
    }

    /// Parses an expression in `x`, `y`, integers, `+ - * / ^` and
    /// parentheses. Division is only allowed by constants.
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser {
            chars: src.chars().filter(|c| !c.is_whitespace()).collect(),
            pos: 0,
        };
        let out = p.expr()?;
        if p.pos != p.chars.len() {
            return Err(p.error("trailing input"));
        }
        Ok(out)
    }
}

fn pow(v: &Rational, k: u32) -> Rational {
    num_traits::pow(v.clone(), k as usize)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, what: &str) -> Error {
        let src: String = self.chars.iter().collect();
        Error::InvalidInput(format!("{what} at position {} in {src:?}", self.pos))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<BivarPoly> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            acc = if c == '+' { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BivarPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    acc = &acc * &f;
                }
                Some('/') => {
                    self.pos += 1;
                    let f = self.unary()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(self.error("division by a non-constant or zero"));
                    }
                    acc = acc.scale(&f.coeff(0, 0).recip());
                }
                Some(c) if c.is_ascii_digit() || c == 'x' || c == 'y' || c == '(' => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BivarPoly> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BivarPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let k: u32 = self.chars[start..self.pos]
                .iter()
                .collect::<String>()
                .parse()
                .map_err(|_| self.error("expected exponent"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<BivarPoly> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                Ok(BivarPoly::x())
            }
            Some('y') => {
                self.pos += 1;
                Ok(BivarPoly::y())
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let n: BigInt = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| self.error("bad integer"))?;
                Ok(BivarPoly::constant(Rational::from_integer(n)))
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        // highest total degree first reads more naturally
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.1)));
        for (r, s) in keys {
            let mono = [(r, "x"), (s, "y")]
                .iter()
                .filter(|(e, _)| *e > 0)
                .map(|&(e, v)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
                .collect::<Vec<_>>()
                .join("*");
            push_term(&mut out, &self.terms[&(r, s)], &mono);
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Zero for BivarPoly {
    fn zero() -> Self {
        BivarPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for BivarPoly {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl<'a> Add<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly::from_terms(
            self.terms()
                .chain(rhs.terms())
                .map(|(r, s, c)| (r, s, c.clone())),
        )
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: BivarPoly) -> BivarPoly {
        &self + &rhs
    }
}

impl<'a> Sub<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly::from_terms(
            self.terms()
                .map(|(r, s, c)| (r, s, c.clone()))
                .chain(rhs.terms().map(|(r, s, c)| (r, s, -c.clone()))),
        )
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: BivarPoly) -> BivarPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a BivarPoly> for &'a BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        BivarPoly::from_terms(self.terms().flat_map(|(r1, s1, a)| {
            rhs.terms()
                .map(move |(r2, s2, b)| (r1 + r2, s1 + s2, a * b))
                .collect::<Vec<_>>()
        }))
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly::from_terms(self.terms().map(|(r, s, c)| (r, s, -c.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{q, qi};

    #[test]
    fn parse_and_render() {
        let f = BivarPoly::parse("y^2 - x^2 - 1").unwrap();
        assert_eq!(f.coeff(0, 2), qi(1));
        assert_eq!(f.coeff(2, 0), qi(-1));
        assert_eq!(f.coeff(0, 0), qi(-1));
        assert_eq!(f.to_string(), "y^2 - x^2 - 1");
        let g = BivarPoly::parse("2x(y+1)/3").unwrap();
        assert_eq!(g.coeff(1, 1), q(2, 3));
        assert_eq!(g.coeff(1, 0), q(2, 3));
        assert!(BivarPoly::parse("x/y").is_err());
        assert!(BivarPoly::parse("x+").is_err());
    }

    #[test]
    fn partials() {
        let f = BivarPoly::parse("y^2 - x^3 - 1").unwrap();
        assert_eq!(f.partial_x(), BivarPoly::parse("-3x^2").unwrap());
        assert_eq!(f.partial_y(), BivarPoly::parse("2y").unwrap());
    }

    #[test]
    fn reduction_mod_monic() {
        let f = BivarPoly::parse("y^2 - x^2 - 1").unwrap();
        let y3 = BivarPoly::parse("y^3").unwrap();
        // y^3 = y (x^2 + 1)
        assert_eq!(y3.reduce_mod(&f).unwrap(), BivarPoly::parse("x^2 y + y").unwrap());
        assert!(f.reduce_mod(&f).unwrap().is_zero());
        let g = BivarPoly::parse("x y - 1").unwrap();
        assert!(y3.reduce_mod(&g).is_err());
    }

    #[test]
    fn specializations() {
        let f = BivarPoly::parse("y^2 - x^3 - 1").unwrap();
        assert_eq!(f.eval(&qi(2), &qi(3)), qi(0));
        assert_eq!(f.specialize_x(&qi(2)), UniPoly::new(vec![qi(-9), qi(0), qi(1)]));
        assert_eq!(f.specialize_y(&qi(0)), UniPoly::new(vec![qi(-1), qi(0), qi(0), qi(-1)]));
    }
}
