//! Plane curves `F(x, y) = 0`, validated points, the canonical derivation
//! `d(x) = F_y, d(y) = -F_x`, and local branch expansions.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{qi, rational_roots, BivarPoly, Matrix, Rational, Series, UniPoly};

/// Which functionality a curve supports.
///
/// Tier B curves are monic in `y` and irreducible over `Q(x)`, so the
/// coordinate ring is a free `Q[x]`-module on `1, y, ..., y^(d-1)`; the
/// function-field and ideal machinery needs that. Tier A curves only get the
/// matrix constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    A,
    B,
}

/// Outcome of the global smoothness check done by [`PlaneCurve::new`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Smoothness {
    /// No singular point exists in the affine plane.
    Verified,
    /// The check could not rule out singular points; points are still checked
    /// one by one.
    Inconclusive(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneCurve {
    f: BivarPoly,
    fx: BivarPoly,
    fy: BivarPoly,
    deg_y: u32,
    monic_in_y: bool,
    tier: Tier,
    smoothness: Smoothness,
    notes: Vec<String>,
}

/// A smooth rational point of some [`PlaneCurve`]. Only
/// [`PlaneCurve::point`] constructs these.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurvePoint {
    x: Rational,
    y: Rational,
}

impl CurvePoint {
    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Local parameter of a [`JetExpansion`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalParam {
    /// `t = x - x_p`; the series gives `y(t)`.
    X,
    /// `t = y - y_p`; the series gives `x(t)`.
    Y,
}

/// Truncated expansion of the curve branch through a smooth point.
#[derive(Clone, Debug, PartialEq)]
pub struct JetExpansion {
    pub base: CurvePoint,
    pub param: LocalParam,
    /// The dependent coordinate as a series in `t`, modulo `t^order`.
    pub series: Series,
    pub order: usize,
}

impl JetExpansion {
    /// `x(t)` modulo `t^order`.
    pub fn x_series(&self) -> Series {
        match self.param {
            LocalParam::X => Series::shifted_var(self.base.x.clone(), self.order),
            LocalParam::Y => self.series.clone(),
        }
    }

    /// `y(t)` modulo `t^order`.
    pub fn y_series(&self) -> Series {
        match self.param {
            LocalParam::X => self.series.clone(),
            LocalParam::Y => Series::shifted_var(self.base.y.clone(), self.order),
        }
    }

    /// Taylor coefficients of `f` at the base point in the local parameter.
    pub fn expand(&self, f: &BivarPoly) -> Series {
        Series::eval_bivar(f, &self.x_series(), &self.y_series())
    }
}

/// Resultant of `f` and `g` with respect to `y`, as a polynomial in `x`.
pub fn resultant_y(f: &BivarPoly, g: &BivarPoly) -> UniPoly {
    let (Some(m), Some(n)) = (f.deg_y(), g.deg_y()) else {
        return UniPoly::zero();
    };
    let (m, n) = (m as usize, n as usize);
    if m == 0 && n == 0 {
        return UniPoly::one();
    }
    let fc = f.y_coeffs();
    let gc = g.y_coeffs();
    let size = m + n;
    // Sylvester matrix, highest y-power first in each row
    let syl = Matrix::from_fn(size, size, |i, j| {
        if i < n {
            j.checked_sub(i)
                .filter(|&k| k <= m)
                .map(|k| fc[m - k].clone())
                .unwrap_or_else(UniPoly::zero)
        } else {
            let i = i - n;
            j.checked_sub(i)
                .filter(|&k| k <= n)
                .map(|k| gc[n - k].clone())
                .unwrap_or_else(UniPoly::zero)
        }
    });
    syl.determinant().expect("Sylvester matrix is square")
}

impl PlaneCurve {
    /// Validates `f` and classifies the curve it defines.
    ///
    /// `f` is kept verbatim (never rescaled). A best-effort global smoothness
    /// check runs via resultants; a singular point it can exhibit is an error,
    /// an inconclusive check is only recorded.
    pub fn new(f: BivarPoly) -> Result<Self> {
        if f.is_constant() {
            return Err(Error::InvalidInput("F must be nonconstant".into()));
        }
        let fx = f.partial_x();
        let fy = f.partial_y();
        let deg_y = f.deg_y().unwrap_or(0);
        let lead = f.y_coeff(deg_y);
        let monic_in_y = deg_y >= 1 && lead.is_constant();
        let mut notes = Vec::new();

        let smoothness = check_smoothness(&f, &fx, &fy, deg_y)?;
        let tier = if monic_in_y {
            match certify_irreducible(&f, deg_y) {
                Ok(()) => Tier::B,
                Err(why) => {
                    notes.push(why);
                    Tier::A
                }
            }
        } else {
            notes.push("leading y-coefficient is not constant".into());
            Tier::A
        };
        Ok(PlaneCurve {
            f,
            fx,
            fy,
            deg_y,
            monic_in_y,
            tier,
            smoothness,
            notes,
        })
    }

    pub fn f(&self) -> &BivarPoly {
        &self.f
    }

    pub fn fx(&self) -> &BivarPoly {
        &self.fx
    }

    pub fn fy(&self) -> &BivarPoly {
        &self.fy
    }

    pub fn deg_y(&self) -> u32 {
        self.deg_y
    }

    pub fn monic_in_y(&self) -> bool {
        self.monic_in_y
    }

    pub fn tier(&self) -> Tier {
        self.tier
    }

    pub fn is_tier_b(&self) -> bool {
        self.tier == Tier::B
    }

    pub fn smoothness(&self) -> &Smoothness {
        &self.smoothness
    }

    /// Free-form remarks gathered during classification.
    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn require_tier_b(&self) -> Result<()> {
        if self.is_tier_b() {
            Ok(())
        } else {
            Err(Error::TierRequired)
        }
    }

    /// A point of the curve, checked for membership and smoothness.
    pub fn point(&self, x: Rational, y: Rational) -> Result<CurvePoint> {
        let value = self.f.eval(&x, &y);
        if !value.is_zero() {
            return Err(Error::NotOnCurve {
                x: x.to_string(),
                y: y.to_string(),
                value: value.to_string(),
            });
        }
        if self.fx.eval(&x, &y).is_zero() && self.fy.eval(&x, &y).is_zero() {
            return Err(Error::SingularPoint {
                x: x.to_string(),
                y: y.to_string(),
            });
        }
        Ok(CurvePoint { x, y })
    }

    /// Canonical representative of `g` modulo `F` (tier B only; other curves
    /// return `g` unchanged).
    pub fn reduce(&self, g: &BivarPoly) -> BivarPoly {
        if self.is_tier_b() {
            g.reduce_mod(&self.f).expect("tier B modulus has constant leading coefficient")
        } else {
            g.clone()
        }
    }

    /// `d(g) = g_x F_y - g_y F_x`, reduced modulo `F` on tier B curves.
    pub fn derive(&self, g: &BivarPoly) -> BivarPoly {
        let raw = &(&g.partial_x() * &self.fy) - &(&g.partial_y() * &self.fx);
        self.reduce(&raw)
    }

    /// Expansion of the branch through `p` modulo `t^order` by Newton
    /// iteration, doubling the precision each step.
    pub fn jet_expand(&self, p: &CurvePoint, order: usize) -> Result<JetExpansion> {
        if order == 0 {
            return Err(Error::InvalidInput("jet order must be at least 1".into()));
        }
        let param = if self.fy.eval(&p.x, &p.y).is_zero() {
            LocalParam::Y
        } else {
            LocalParam::X
        };
        let (start, dfdep) = match param {
            LocalParam::X => (p.y.clone(), &self.fy),
            LocalParam::Y => (p.x.clone(), &self.fx),
        };
        let mut dep = Series::constant(start, 1);
        let mut prec = 1;
        while prec < order {
            prec = (2 * prec).min(order);
            dep = Series::new(dep.coeffs().to_vec(), prec);
            let (sx, sy) = match param {
                LocalParam::X => (Series::shifted_var(p.x.clone(), prec), dep.clone()),
                LocalParam::Y => (dep.clone(), Series::shifted_var(p.y.clone(), prec)),
            };
            let value = Series::eval_bivar(&self.f, &sx, &sy);
            let slope = Series::eval_bivar(dfdep, &sx, &sy);
            dep = dep.sub(&value.mul(&slope.inv()?));
        }
        Ok(JetExpansion {
            base: p.clone(),
            param,
            series: Series::new(dep.coeffs().to_vec(), order),
            order,
        })
    }
}

impl fmt::Display for PlaneCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.f)
    }
}

fn check_smoothness(
    f: &BivarPoly,
    fx: &BivarPoly,
    fy: &BivarPoly,
    deg_y: u32,
) -> Result<Smoothness> {
    if deg_y == 0 {
        // union of vertical lines; singular iff a line is repeated
        let g = f.y_coeff(0);
        let common = UniPoly::gcd(&g, &g.derivative());
        if !common.is_constant() {
            return Err(Error::SingularCurve(format!(
                "repeated vertical line factor {common}"
            )));
        }
        return Ok(Smoothness::Verified);
    }

    let r1 = resultant_y(f, fy);
    if r1.is_zero() {
        return Err(Error::SingularCurve(
            "F has a repeated factor (Res_y(F, F_y) vanishes identically)".into(),
        ));
    }
    let Some(roots) = rational_roots(&r1) else {
        return Ok(Smoothness::Inconclusive(
            "Res_y(F, F_y) too large to search for rational roots".into(),
        ));
    };
    for x0 in &roots {
        let fy0 = fy.specialize_x(x0);
        let fx0 = fx.specialize_x(x0);
        let f0 = f.specialize_x(x0);
        let common = UniPoly::gcd(&UniPoly::gcd(&f0, &fy0), &fx0);
        if f0.is_zero() && fy0.is_zero() && fx0.is_zero() {
            return Err(Error::SingularCurve(format!(
                "the whole line x = {x0} is singular"
            )));
        }
        if !common.is_constant() {
            let at = rational_roots(&common)
                .and_then(|r| r.first().cloned())
                .map(|y0| format!("({x0}, {y0})"))
                .unwrap_or_else(|| format!("x = {x0}, y a root of {}", common.fmt_var("y")));
            return Err(Error::SingularCurve(format!("singular point at {at}")));
        }
    }

    let mut rest = r1;
    for x0 in &roots {
        let lin = UniPoly::from_roots(std::slice::from_ref(x0));
        while lin.divides(&rest) {
            rest = rest.div_rem(&lin).0;
        }
    }
    if rest.is_constant() {
        return Ok(Smoothness::Verified);
    }
    let r2 = resultant_y(f, fx);
    if !r2.is_zero() && UniPoly::gcd(&rest, &r2).is_constant() {
        return Ok(Smoothness::Verified);
    }
    Ok(Smoothness::Inconclusive(
        "could not exclude singular points with irrational coordinates".into(),
    ))
}

/// Certifies irreducibility over `Q(x)` of a curve monic in `y`.
///
/// A factorization over `Q(x)` of a monic polynomial descends to `Q[x][y]`
/// and survives specialization `x = x0` with degrees intact, so a
/// specialization without rational roots proves irreducibility when the
/// `y`-degree is at most 3.
fn certify_irreducible(f: &BivarPoly, deg_y: u32) -> std::result::Result<(), String> {
    match deg_y {
        1 => Ok(()),
        2 | 3 => {
            for k in 0..24i64 {
                let x0 = if k % 2 == 0 { qi(k / 2) } else { qi(-(k + 1) / 2) };
                let spec = f.specialize_x(&x0);
                if let Some(roots) = rational_roots(&spec) {
                    if roots.is_empty() {
                        return Ok(());
                    }
                }
            }
            Err("irreducibility over Q(x) not certified".into())
        }
        _ => Err(format!(
            "irreducibility over Q(x) is only certified up to y-degree 3 (got {deg_y})"
        )),
    }
}

/// The curve `y^2 - x^2 - 1 = 0`.
pub fn hyperbola() -> PlaneCurve {
    PlaneCurve::new(BivarPoly::parse("y^2 - x^2 - 1").unwrap()).unwrap()
}

/// The curve `y^2 - x^3 - 1 = 0`.
pub fn elliptic() -> PlaneCurve {
    PlaneCurve::new(BivarPoly::parse("y^2 - x^3 - 1").unwrap()).unwrap()
}
