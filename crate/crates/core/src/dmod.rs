//! Differential operators on a tier-B curve as the skew polynomial ring
//! `K[z; d]`, where `z f = f z + d(f)` and `d = F_y d/dx - F_x d/dy`, and the
//! explicit left ideal attached to Calogero-Moser data.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cmspace::{CMData, CMKind};
use crate::error::{Error, Result};
use crate::funcfield::{FuncFieldElem, FunctionField};
use crate::kernel::{charpoly_adjugate, BivarPoly, RatFuncX, Rational, UniPoly};

/// `sum_k c_k z^k` with coefficients on the left.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewOperator {
    coeffs: Vec<FuncFieldElem>,
}

impl SkewOperator {
    pub fn zero() -> Self {
        SkewOperator { coeffs: vec![] }
    }

    /// Builds from coefficients indexed by the power of `z`, dropping
    /// trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<FuncFieldElem>) -> Self {
        while coeffs.last().is_some_and(FuncFieldElem::is_zero) {
            coeffs.pop();
        }
        SkewOperator { coeffs }
    }

    /// Order zero operator: multiplication by `c`.
    pub fn function(c: FuncFieldElem) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c z^k`
    pub fn monomial(ff: &FunctionField, c: FuncFieldElem, k: usize) -> Self {
        let mut coeffs = vec![ff.zero(); k];
        coeffs.push(c);
        Self::from_coeffs(coeffs)
    }

    pub fn z(ff: &FunctionField) -> Self {
        Self::monomial(ff, ff.one(), 1)
    }

    pub fn coeffs(&self) -> &[FuncFieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Order in `z`; `None` for the zero operator.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FuncFieldElem> {
        self.coeffs.last()
    }
}

impl fmt::Display for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("({c})*z"),
                _ => format!("({c})*z^{k}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for SkewOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_integer(acc)
}

pub fn skew_add(ff: &FunctionField, a: &SkewOperator, b: &SkewOperator) -> SkewOperator {
    let len = a.coeffs.len().max(b.coeffs.len());
    let zero = ff.zero();
    let coeffs = (0..len)
        .map(|k| {
            ff.add(
                a.coeffs.get(k).unwrap_or(&zero),
                b.coeffs.get(k).unwrap_or(&zero),
            )
        })
        .collect();
    SkewOperator::from_coeffs(coeffs)
}

pub fn skew_scale(ff: &FunctionField, a: &SkewOperator, c: &Rational) -> SkewOperator {
    let c = RatFuncX::constant(c.clone());
    SkewOperator::from_coeffs(a.coeffs.iter().map(|e| ff.scale(e, &c)).collect())
}

/// `d^0(f), ..., d^k(f)`
fn derivatives(ff: &FunctionField, f: &FuncFieldElem, k: usize) -> Vec<FuncFieldElem> {
    let mut out = Vec::with_capacity(k + 1);
    out.push(f.clone());
    for i in 0..k {
        let next = ff.derive(&out[i]);
        out.push(next);
    }
    out
}

/// Normal form of `z^k f` by the closed form
/// `z^k f = sum_m binom(k, m) d^(k-m)(f) z^m`.
pub fn z_pow_times(ff: &FunctionField, k: usize, f: &FuncFieldElem) -> SkewOperator {
    let ders = derivatives(ff, f, k);
    let coeffs = (0..=k)
        .map(|m| ff.scale(&ders[k - m], &RatFuncX::constant(binomial(k, m))))
        .collect();
    SkewOperator::from_coeffs(coeffs)
}

/// `z * a`, one commutation step per coefficient:
/// `z c z^k = c z^(k+1) + d(c) z^k`.
pub fn left_mul_z(ff: &FunctionField, a: &SkewOperator) -> SkewOperator {
    let mut coeffs = vec![ff.zero(); a.coeffs.len() + 1];
    for (k, c) in a.coeffs.iter().enumerate() {
        coeffs[k + 1] = ff.add(&coeffs[k + 1], c);
        coeffs[k] = ff.add(&coeffs[k], &ff.derive(c));
    }
    SkewOperator::from_coeffs(coeffs)
}

/// Normal-form product `a * b`.
pub fn skew_mul(ff: &FunctionField, a: &SkewOperator, b: &SkewOperator) -> SkewOperator {
    if a.is_zero() || b.is_zero() {
        return SkewOperator::zero();
    }
    let top = a.coeffs.len() - 1;
    let mut out = vec![ff.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (j, bj) in b.coeffs.iter().enumerate() {
        if bj.is_zero() {
            continue;
        }
        let ders = derivatives(ff, bj, top);
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            // a_i z^i b_j z^j = a_i sum_m binom(i, m) d^(i-m)(b_j) z^(m+j)
            for m in 0..=i {
                let c = ff.scale(&ff.mul(ai, &ders[i - m]), &RatFuncX::constant(binomial(i, m)));
                out[m + j] = ff.add(&out[m + j], &c);
            }
        }
    }
    SkewOperator::from_coeffs(out)
}

/// `sum_k c_k d^k(f)`
pub fn apply_to_function(ff: &FunctionField, l: &SkewOperator, f: &FuncFieldElem) -> FuncFieldElem {
    let ders = derivatives(ff, f, l.coeffs.len().saturating_sub(1));
    l.coeffs
        .iter()
        .zip(&ders)
        .fold(ff.zero(), |acc, (c, d)| ff.add(&acc, &ff.mul(c, d)))
}

/// Generators of the left ideal
/// `D det(X - x) + D det(Y - y) + D det(Z - z) kappa`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdealPresentation {
    pub gen_x: SkewOperator,
    pub gen_y: SkewOperator,
    pub gen_t: SkewOperator,
}

/// Builds the ideal generators from plane-curve data.
///
/// With `kappa = 1 + v^t (Z^t - z)^-1 (X - x)^-1 (Y - y)^-1 F(X, y) w^t`
/// the third generator is
///
/// ```text
/// det(Z - z) kappa = chi(z) + sum_{a,b} (V W)_ab adj(Z^t - z)_ab h_b,
/// h_b = G_b(y) / (x_b - x),   G_b(y) = F(x_b, y) / (y_b - y),
/// ```
///
/// after which each `z^m h_b` is brought to normal form. For bundles with
/// several dual-basis pairs the sum over pairs is folded into `V W`.
pub fn build_ideal_presentation(ff: &FunctionField, m: &CMData) -> Result<IdealPresentation> {
    if m.kind() != CMKind::PlaneCurve {
        return Err(Error::InvalidInput(
            "ideal presentations need plane-curve data".into(),
        ));
    }
    let curve = m.curve().expect("plane-curve data carries its curve");
    if curve.f() != ff.curve().f() {
        return Err(Error::InvalidInput(
            "CM data lives on a different curve".into(),
        ));
    }
    let n = m.n();
    let pts = m.points();

    let mut gen_x = ff.one();
    let mut gen_y = ff.one();
    for p in pts {
        let lx = BivarPoly::from_x_poly(&UniPoly::new(vec![p.x().clone(), -Rational::one()]));
        let ly = BivarPoly::from_y_poly(&UniPoly::new(vec![p.y().clone(), -Rational::one()]));
        gen_x = ff.mul(&gen_x, &ff.from_bivar(&lx));
        gen_y = ff.mul(&gen_y, &ff.from_bivar(&ly));
    }

    let ca = charpoly_adjugate(&m.zbar().transpose())?;
    let mut gen_t = SkewOperator::from_coeffs(
        ca.chi
            .coeffs()
            .iter()
            .map(|c| ff.from_rational(c.clone()))
            .collect(),
    );
    if n == 0 {
        gen_t = SkewOperator::function(ff.one());
    }
    let vw = m.vbar().try_mul(m.wbar())?;
    for (b, p) in pts.iter().enumerate() {
        let fb = curve.f().specialize_x(p.x());
        let (g, rem) = fb.div_rem(&UniPoly::new(vec![p.y().clone(), -Rational::one()]));
        if !rem.is_zero() {
            return Err(Error::PointCorruption(format!(
                "F(x_b, y) is not divisible by (y_b - y) at {p}"
            )));
        }
        let den = RatFuncX::new(
            UniPoly::one(),
            UniPoly::new(vec![p.x().clone(), -Rational::one()]),
        )?;
        let h = ff.scale(&ff.from_bivar(&BivarPoly::from_y_poly(&g)), &den);
        // P_b(z) = sum_a (V W)_ab adj_ab(z)
        let mut pb = UniPoly::zero();
        for a in 0..n {
            if !vw.get(a, b).is_zero() {
                pb = &pb + &ca.adj.get(a, b).scale(vw.get(a, b));
            }
        }
        for (k, c) in pb.coeffs().iter().enumerate() {
            if !c.is_zero() {
                gen_t = skew_add(ff, &gen_t, &skew_scale(ff, &z_pow_times(ff, k, &h), c));
            }
        }
    }
    Ok(IdealPresentation {
        gen_x: SkewOperator::function(gen_x),
        gen_y: SkewOperator::function(gen_y),
        gen_t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmspace::build_cm_trivial;
    use crate::curve::hyperbola;
    use crate::kernel::{q, qi};

    fn bp(s: &str) -> BivarPoly {
        BivarPoly::parse(s).unwrap()
    }

    fn op(ff: &FunctionField, cs: &[&str]) -> SkewOperator {
        SkewOperator::from_coeffs(cs.iter().map(|c| ff.from_bivar(&bp(c))).collect())
    }

    #[test]
    fn commutation_examples() {
        let ff = FunctionField::new(&hyperbola()).unwrap();
        let z = SkewOperator::z(&ff);
        let x = op(&ff, &["x"]);
        assert_eq!(skew_mul(&ff, &z, &x), op(&ff, &["2y", "x"]));
        let c = op(&ff, &["7"]);
        assert_eq!(skew_mul(&ff, &z, &c), op(&ff, &["0", "7"]));
        let z2 = skew_mul(&ff, &z, &z);
        assert_eq!(skew_mul(&ff, &z2, &x), op(&ff, &["4x", "4y", "x"]));
        assert_eq!(z_pow_times(&ff, 2, &ff.x()), op(&ff, &["4x", "4y", "x"]));
        assert_eq!(left_mul_z(&ff, &left_mul_z(&ff, &x)), op(&ff, &["4x", "4y", "x"]));
    }

    #[test]
    fn action_examples() {
        let ff = FunctionField::new(&hyperbola()).unwrap();
        let z = SkewOperator::z(&ff);
        assert_eq!(apply_to_function(&ff, &z, &ff.x()), ff.from_bivar(&bp("2y")));
        let z2 = skew_mul(&ff, &z, &z);
        assert_eq!(apply_to_function(&ff, &z2, &ff.x()), ff.from_bivar(&bp("4x")));
        let g = op(&ff, &["x + y^3"]);
        let f = ff.from_bivar(&bp("x*y"));
        assert_eq!(
            apply_to_function(&ff, &g, &f),
            ff.mul(&ff.from_bivar(&bp("x + y^3")), &f)
        );
    }

    #[test]
    fn unit_presentation_for_zero_points() {
        let c = hyperbola();
        let ff = FunctionField::new(&c).unwrap();
        let m = build_cm_trivial(&c, &[], &[]).unwrap();
        let pres = build_ideal_presentation(&ff, &m).unwrap();
        let one = SkewOperator::function(ff.one());
        assert_eq!(pres.gen_x, one);
        assert_eq!(pres.gen_y, one);
        assert_eq!(pres.gen_t, one);
    }

    #[test]
    fn single_point_golden() {
        let c = hyperbola();
        let ff = FunctionField::new(&c).unwrap();
        let p = c.point(q(3, 4), q(5, 4)).unwrap();
        let m = build_cm_trivial(&c, &[p], &[qi(0)]).unwrap();
        let pres = build_ideal_presentation(&ff, &m).unwrap();
        assert_eq!(pres.gen_x, op(&ff, &["3/4 - x"]));
        assert_eq!(pres.gen_y, op(&ff, &["5/4 - y"]));
        let num = ff.from_bivar(&bp("y + 5/4"));
        let den = ff.from_bivar(&bp("3/4 - x"));
        let expected = SkewOperator::from_coeffs(vec![
            ff.div(&num, &den).unwrap(),
            ff.from_rational(qi(-1)),
        ]);
        assert_eq!(pres.gen_t, expected);
    }

    #[test]
    fn leading_coefficient_of_gen_t() {
        let c = hyperbola();
        let ff = FunctionField::new(&c).unwrap();
        let pts = vec![
            c.point(q(3, 4), q(5, 4)).unwrap(),
            c.point(q(4, 3), q(5, 3)).unwrap(),
        ];
        let m = build_cm_trivial(&c, &pts, &[qi(0), qi(0)]).unwrap();
        let pres = build_ideal_presentation(&ff, &m).unwrap();
        assert_eq!(pres.gen_t.degree(), Some(2));
        assert_eq!(pres.gen_t.leading(), Some(&ff.one()));
    }
}
