//! The function field `K = Q(x)[y]/(F)` of a tier-B curve, its coordinate
//! ring `O = Q[x,y]/(F)`, and fractional ideals of `O` stored as
//! `Q[x]`-lattices in Hermite normal form.
//!
//! Elements of `K` are coordinate vectors over `Q(x)` in the basis
//! `1, y, ..., y^(d-1)` where `d = deg_y F`. An element lies in `O` exactly
//! when all its coordinates are polynomials.

use std::fmt;

use num_traits::{One, Zero};

use crate::curve::{CurvePoint, JetExpansion, PlaneCurve};
use crate::error::{Error, Result};
use crate::kernel::{hnf_qx, BivarPoly, Hnf, Laurent, Matrix, RatFuncX, Rational, Series, UniPoly};

/// Element of the function field, `sum_i coords[i] * y^i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FuncFieldElem {
    coords: Vec<RatFuncX>,
}

impl FuncFieldElem {
    pub fn coords(&self) -> &[RatFuncX] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// True when the element lies in the coordinate ring.
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(RatFuncX::is_polynomial)
    }

    /// Common monic denominator of the coordinates.
    pub fn denominator(&self) -> UniPoly {
        self.coords
            .iter()
            .fold(UniPoly::one(), |acc, c| lcm(&acc, c.den()))
    }
}

impl fmt::Display for FuncFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("({c})*y"),
                _ => format!("({c})*y^{i}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl fmt::Debug for FuncFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn lcm(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let g = UniPoly::gcd(a, b);
    (a * &b.div_rem(&g).0).monic()
}

/// Arithmetic context for the function field of a tier-B curve.
#[derive(Clone, Debug)]
pub struct FunctionField {
    curve: PlaneCurve,
    d: usize,
    /// `y^d = sum_j red[j] y^j` in `K`.
    red: Vec<UniPoly>,
    fx: FuncFieldElem,
    fy: FuncFieldElem,
}

impl FunctionField {
    pub fn new(curve: &PlaneCurve) -> Result<Self> {
        curve.require_tier_b()?;
        let d = curve.deg_y() as usize;
        let f = curve.f();
        let lc = f.y_coeff(d as u32).leading().expect("monic in y").clone();
        let red = (0..d)
            .map(|j| -f.y_coeff(j as u32).scale(&lc.recip()))
            .collect();
        let mut ff = FunctionField {
            curve: curve.clone(),
            d,
            red,
            fx: FuncFieldElem { coords: vec![] },
            fy: FuncFieldElem { coords: vec![] },
        };
        ff.fx = ff.from_bivar(curve.fx());
        ff.fy = ff.from_bivar(curve.fy());
        Ok(ff)
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    /// Degree `[K : Q(x)]`.
    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn elem(&self, coords: Vec<RatFuncX>) -> Result<FuncFieldElem> {
        if coords.len() != self.d {
            return Err(Error::Dimension(format!(
                "expected {} coordinates, got {}",
                self.d,
                coords.len()
            )));
        }
        Ok(FuncFieldElem { coords })
    }

    pub fn zero(&self) -> FuncFieldElem {
        FuncFieldElem {
            coords: vec![RatFuncX::zero(); self.d],
        }
    }

    pub fn one(&self) -> FuncFieldElem {
        self.from_ratfunc(RatFuncX::one())
    }

    pub fn from_rational(&self, c: Rational) -> FuncFieldElem {
        self.from_ratfunc(RatFuncX::constant(c))
    }

    pub fn from_ratfunc(&self, c: RatFuncX) -> FuncFieldElem {
        let mut e = self.zero();
        e.coords[0] = c;
        e
    }

    pub fn x(&self) -> FuncFieldElem {
        self.from_ratfunc(RatFuncX::from_poly(UniPoly::x()))
    }

    pub fn y(&self) -> FuncFieldElem {
        self.from_bivar(&BivarPoly::y())
    }

    /// Class of a polynomial `g(x, y)` modulo `F`.
    pub fn from_bivar(&self, g: &BivarPoly) -> FuncFieldElem {
        let r = self.curve.reduce(g);
        FuncFieldElem {
            coords: (0..self.d)
                .map(|j| RatFuncX::from_poly(r.y_coeff(j as u32)))
                .collect(),
        }
    }

    /// Canonical polynomial representative, when the element is integral.
    pub fn to_bivar(&self, a: &FuncFieldElem) -> Option<BivarPoly> {
        if !a.is_integral() {
            return None;
        }
        let cs: Vec<UniPoly> = a.coords.iter().map(|c| c.num().clone()).collect();
        Some(BivarPoly::from_y_coeffs(&cs))
    }

    pub fn add(&self, a: &FuncFieldElem, b: &FuncFieldElem) -> FuncFieldElem {
        FuncFieldElem {
            coords: a.coords.iter().zip(&b.coords).map(|(p, q)| p + q).collect(),
        }
    }

    pub fn sub(&self, a: &FuncFieldElem, b: &FuncFieldElem) -> FuncFieldElem {
        FuncFieldElem {
            coords: a.coords.iter().zip(&b.coords).map(|(p, q)| p - q).collect(),
        }
    }

    pub fn neg(&self, a: &FuncFieldElem) -> FuncFieldElem {
        FuncFieldElem {
            coords: a.coords.iter().map(|p| -p.clone()).collect(),
        }
    }

    pub fn scale(&self, a: &FuncFieldElem, c: &RatFuncX) -> FuncFieldElem {
        FuncFieldElem {
            coords: a.coords.iter().map(|p| p * c).collect(),
        }
    }

    pub fn mul(&self, a: &FuncFieldElem, b: &FuncFieldElem) -> FuncFieldElem {
        let d = self.d;
        let mut prod = vec![RatFuncX::zero(); 2 * d - 1];
        for (i, p) in a.coords.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in b.coords.iter().enumerate() {
                if !q.is_zero() {
                    prod[i + j] = &prod[i + j] + &(p * q);
                }
            }
        }
        for k in (d..2 * d - 1).rev() {
            let c = std::mem::replace(&mut prod[k], RatFuncX::zero());
            if c.is_zero() {
                continue;
            }
            for (j, r) in self.red.iter().enumerate() {
                if !r.is_zero() {
                    prod[k - d + j] = &prod[k - d + j] + &(&c * &RatFuncX::from_poly(r.clone()));
                }
            }
        }
        prod.truncate(d);
        FuncFieldElem { coords: prod }
    }

    pub fn pow(&self, a: &FuncFieldElem, k: u32) -> FuncFieldElem {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Matrix of multiplication by `a`: row `i` holds the coordinates of
    /// `y^i * a`.
    pub fn mult_matrix(&self, a: &FuncFieldElem) -> Matrix<RatFuncX> {
        let y = self.y();
        let mut rows = Vec::with_capacity(self.d);
        let mut cur = a.clone();
        for _ in 0..self.d {
            rows.push(cur.coords.clone());
            cur = self.mul(&cur, &y);
        }
        Matrix::from_rows(rows).expect("square by construction")
    }

    /// Norm from `K` down to `Q(x)`.
    pub fn norm(&self, a: &FuncFieldElem) -> RatFuncX {
        self.mult_matrix(a).determinant().expect("square")
    }

    pub fn inv(&self, a: &FuncFieldElem) -> Result<FuncFieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.mult_matrix(a).inverse()?;
        Ok(FuncFieldElem { coords: m.row_vec(0) })
    }

    pub fn div(&self, a: &FuncFieldElem, b: &FuncFieldElem) -> Result<FuncFieldElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// True when `a` is a unit of the coordinate ring.
    pub fn is_unit(&self, a: &FuncFieldElem) -> bool {
        a.is_integral() && self.inv(a).map(|b| b.is_integral()).unwrap_or(false)
    }

    /// The derivation `d = F_y d/dx - F_x d/dy`, extended to `K`.
    pub fn derive(&self, a: &FuncFieldElem) -> FuncFieldElem {
        let mut out = self.zero();
        let y = self.y();
        let mut ypow = self.one();
        let mut ypow_prev = self.zero();
        for (i, c) in a.coords.iter().enumerate() {
            if !c.is_zero() {
                let dc = c.derivative();
                let t1 = self.scale(&self.mul(&self.fy, &ypow), &dc);
                out = self.add(&out, &t1);
                if i > 0 {
                    let k = RatFuncX::constant(Rational::from_integer((i as i64).into()));
                    let t2 = self.scale(&self.mul(&self.fx, &ypow_prev), &(c * &k));
                    out = self.sub(&out, &t2);
                }
            }
            ypow_prev = ypow.clone();
            ypow = self.mul(&ypow, &y);
        }
        out
    }

    /// Laurent expansion of `a` along a jet. The result is known modulo
    /// `t^(order - v)` where `v` bounds the pole order of the coordinates.
    pub fn expand(&self, a: &FuncFieldElem, jet: &JetExpansion) -> Result<Laurent> {
        let sx = jet.x_series();
        let sy = jet.y_series();
        let mut ypow = Series::constant(Rational::one(), jet.order);
        let mut acc: Option<Laurent> = None;
        for c in &a.coords {
            if !c.is_zero() {
                let num = Series::eval_poly(c.num(), &sx).mul(&ypow);
                let den = Series::eval_poly(c.den(), &sx);
                let term = Laurent::quotient(&num, &den)?;
                acc = Some(match acc {
                    None => term,
                    Some(prev) => prev.add(&term),
                });
            }
            ypow = ypow.mul(&sy);
        }
        Ok(acc.unwrap_or_else(|| Laurent::new(0, vec![Rational::zero(); jet.order])))
    }

    /// Laurent expansion at `p` carrying at least `terms` known coefficients
    /// from the valuation on. Errors for the zero element.
    pub fn expand_at(&self, a: &FuncFieldElem, p: &CurvePoint, terms: usize) -> Result<Laurent> {
        if a.is_zero() {
            return Err(Error::InvalidInput("the zero element has no valuation".into()));
        }
        let mut order = terms.max(4) + 4;
        loop {
            let jet = self.curve.jet_expand(p, order)?;
            let s = self.expand(a, &jet)?;
            if let Some(v) = s.valuation() {
                if s.end() >= v + terms as i64 {
                    return Ok(s);
                }
            }
            if order > 1 << 14 {
                return Err(Error::Internal("local expansion did not stabilize".into()));
            }
            order *= 2;
        }
    }

    /// Order of vanishing of `a` at `p` (negative for poles).
    pub fn valuation_at(&self, a: &FuncFieldElem, p: &CurvePoint) -> Result<i64> {
        Ok(self
            .expand_at(a, p, 1)?
            .valuation()
            .expect("expand_at returns a nonzero expansion"))
    }

    /// Value of `a` at a point of the curve; errors at a pole.
    pub fn eval(&self, a: &FuncFieldElem, p: &CurvePoint) -> Result<Rational> {
        let direct: Result<Rational> = a.coords.iter().enumerate().try_fold(
            Rational::zero(),
            |acc, (i, c)| Ok(acc + c.eval(p.x())? * pow_q(p.y(), i)),
        );
        match direct {
            Ok(v) => Ok(v),
            Err(Error::Pole(_)) => {
                // a coordinate pole need not be a pole of the function
                let s = self.expand_at(a, p, 1)?;
                let v = s.valuation().expect("nonzero");
                if v < 0 {
                    Err(Error::Pole(format!("{a} has a pole of order {} at {p}", -v)))
                } else {
                    Ok(s.coeff(0).expect("known to the valuation"))
                }
            }
            Err(e) => Err(e),
        }
    }
}

fn pow_q(b: &Rational, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * b)
}

/// A nonzero fractional ideal of the coordinate ring.
///
/// Stored as `(1/denom) * L` where `L` is the row lattice of `hnf` over
/// `Q[x]`, `denom` is monic and coprime to the content of `L`. This form is
/// canonical, so two ideals are equal exactly when `denom` and `hnf` agree.
/// `generators`, when present, is a generating set over the coordinate ring
/// as supplied at construction.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    denom: UniPoly,
    hnf: Matrix<UniPoly>,
    generators: Vec<FuncFieldElem>,
}

impl PartialEq for IdealLattice {
    fn eq(&self, other: &Self) -> bool {
        self.denom == other.denom && self.hnf == other.hnf
    }
}

impl Eq for IdealLattice {}

impl IdealLattice {
    pub fn denom(&self) -> &UniPoly {
        &self.denom
    }

    pub fn hnf(&self) -> &Matrix<UniPoly> {
        &self.hnf
    }

    pub fn generators(&self) -> &[FuncFieldElem] {
        &self.generators
    }

    /// True when the ideal is contained in the coordinate ring.
    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    /// True for the unit ideal.
    pub fn is_unit_ideal(&self) -> bool {
        self.is_integral() && self.hnf == Matrix::identity(self.hnf.rows())
    }

    /// `Q[x]`-basis: the HNF rows divided by `denom`.
    pub fn basis(&self) -> Vec<FuncFieldElem> {
        let den = &self.denom;
        self.hnf
            .to_rows()
            .into_iter()
            .map(|row| FuncFieldElem {
                coords: row
                    .into_iter()
                    .map(|p| RatFuncX::new(p, den.clone()).expect("nonzero denominator"))
                    .collect(),
            })
            .collect()
    }

    /// Generators if recorded, the lattice basis otherwise.
    pub fn generators_or_basis(&self) -> Vec<FuncFieldElem> {
        if self.generators.is_empty() {
            self.basis()
        } else {
            self.generators.clone()
        }
    }

    /// Rebuilds from stored parts, checking the canonical form.
    pub fn from_parts(
        ff: &FunctionField,
        denom: UniPoly,
        hnf: Matrix<UniPoly>,
        generators: Vec<FuncFieldElem>,
    ) -> Result<Self> {
        let built = ff.lattice_from_rows(&denom, &hnf, generators)?;
        if built.denom != denom || built.hnf != hnf {
            return Err(Error::InvalidInput("ideal lattice is not in canonical form".into()));
        }
        Ok(built)
    }
}

/// Pairs `(v_i, w_i)` with `v_i` in `I`, `w_i` in `I^-1` and
/// `sum_i w_i v_i = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualBasis {
    pub v: Vec<FuncFieldElem>,
    pub w: Vec<FuncFieldElem>,
}

impl FunctionField {
    fn lattice_from_rows(
        &self,
        denom: &UniPoly,
        rows: &Matrix<UniPoly>,
        generators: Vec<FuncFieldElem>,
    ) -> Result<IdealLattice> {
        if rows.cols() != self.d {
            return Err(Error::Dimension(format!(
                "lattice rows must have {} entries",
                self.d
            )));
        }
        if denom.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let h = hnf_qx(rows).h;
        if h.rows() < self.d {
            return Err(Error::ZeroIdeal);
        }
        let lc_inv = denom.leading().expect("nonzero").recip();
        let denom = denom.scale(&lc_inv);
        let content = h
            .entries()
            .iter()
            .fold(denom.clone(), |acc, e| UniPoly::gcd(&acc, e));
        let new_denom = denom.div_rem(&content).0;
        let reduced = h.map(|e| e.div_rem(&content).0.scale(&lc_inv));
        let h = hnf_qx(&reduced).h;
        Ok(IdealLattice {
            denom: new_denom,
            hnf: h,
            generators,
        })
    }

    /// Lattice spanned over `Q[x]` by `elems`.
    fn lattice_from_span(
        &self,
        elems: &[FuncFieldElem],
        generators: Vec<FuncFieldElem>,
    ) -> Result<IdealLattice> {
        let denom = elems
            .iter()
            .fold(UniPoly::one(), |acc, e| lcm(&acc, &e.denominator()));
        let rows: Vec<Vec<UniPoly>> = elems
            .iter()
            .map(|e| {
                e.coords
                    .iter()
                    .map(|c| c.num() * &denom.div_rem(c.den()).0)
                    .collect()
            })
            .collect();
        if rows.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let m = Matrix::from_rows(rows)?;
        self.lattice_from_rows(&denom, &m, generators)
    }

    /// The coordinate ring itself.
    pub fn unit_ideal(&self) -> IdealLattice {
        IdealLattice {
            denom: UniPoly::one(),
            hnf: Matrix::identity(self.d),
            generators: vec![self.one()],
        }
    }

    /// The fractional ideal generated over the coordinate ring by `gens`.
    pub fn ideal_from_generators(&self, gens: &[FuncFieldElem]) -> Result<IdealLattice> {
        let mut kept: Vec<FuncFieldElem> = Vec::new();
        for g in gens {
            if g.coords.len() != self.d {
                return Err(Error::Dimension("generator has wrong length".into()));
            }
            if !g.is_zero() && !kept.contains(g) {
                kept.push(g.clone());
            }
        }
        if kept.is_empty() {
            return Err(Error::ZeroIdeal);
        }
        let y = self.y();
        let mut span = Vec::new();
        for g in &kept {
            let mut cur = g.clone();
            for _ in 0..self.d {
                span.push(cur.clone());
                cur = self.mul(&cur, &y);
            }
        }
        let ideal = self.lattice_from_span(&span, kept)?;
        for b in ideal.basis() {
            if !self.ideal_contains(&ideal, &self.mul(&b, &y)) {
                return Err(Error::Internal("lattice is not stable under y".into()));
            }
        }
        Ok(ideal)
    }

    pub fn ideal_contains(&self, ideal: &IdealLattice, a: &FuncFieldElem) -> bool {
        let scaled = self.scale(a, &RatFuncX::from_poly(ideal.denom.clone()));
        if !scaled.is_integral() {
            return false;
        }
        let v: Vec<UniPoly> = scaled.coords.iter().map(|c| c.num().clone()).collect();
        let hnf = Hnf {
            h: ideal.hnf.clone(),
            u: Matrix::identity(0),
            pivots: (0..self.d).collect(),
        };
        hnf.contains(&v)
    }

    /// `I * J`.
    pub fn ideal_mul(&self, a: &IdealLattice, b: &IdealLattice) -> Result<IdealLattice> {
        let mut prods = Vec::new();
        for p in a.basis() {
            for q in b.basis() {
                prods.push(self.mul(&p, &q));
            }
        }
        let mut gens = Vec::new();
        for p in &a.generators {
            for q in &b.generators {
                gens.push(self.mul(p, q));
            }
        }
        self.lattice_from_span(&prods, gens)
    }

    /// `h * I` for a nonzero element `h`.
    pub fn ideal_scale(&self, ideal: &IdealLattice, h: &FuncFieldElem) -> Result<IdealLattice> {
        if h.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let span: Vec<_> = ideal.basis().iter().map(|b| self.mul(b, h)).collect();
        let gens = ideal.generators.iter().map(|g| self.mul(g, h)).collect();
        self.lattice_from_span(&span, gens)
    }

    /// `I^-1 = (O : I)`, checked by `I * I^-1 = O`.
    pub fn ideal_inverse(&self, ideal: &IdealLattice) -> Result<IdealLattice> {
        let d = self.d;
        let h = &ideal.hnf;
        // a = det(H) lies in the integral lattice L and in Q[x]
        let a = (0..d).fold(UniPoly::one(), |acc, i| &acc * h.get(i, i));
        let a_poly = a.clone();
        let blocks: Vec<Matrix<RatFuncX>> = (0..d)
            .map(|k| {
                let b = FuncFieldElem {
                    coords: h.row(k).iter().cloned().map(RatFuncX::from_poly).collect(),
                };
                self.mult_matrix(&b)
            })
            .collect();
        let width = d * d + d;
        let mut rows = Vec::with_capacity(d + d * d);
        for i in 0..d {
            let mut row = Vec::with_capacity(width);
            for blk in &blocks {
                row.extend(blk.row(i).iter().map(|c| c.num().clone()));
            }
            row.extend((0..d).map(|j| if i == j { UniPoly::one() } else { UniPoly::zero() }));
            rows.push(row);
        }
        for j in 0..d * d {
            let mut row = vec![UniPoly::zero(); width];
            row[j] = a_poly.clone();
            rows.push(row);
        }
        let big = hnf_qx(&Matrix::from_rows(rows)?);
        let g_rows: Vec<Vec<UniPoly>> = big
            .h
            .to_rows()
            .into_iter()
            .zip(&big.pivots)
            .filter(|(_, &p)| p >= d * d)
            .map(|(r, _)| r[d * d..].to_vec())
            .collect();
        if g_rows.len() != d {
            return Err(Error::NonInvertible("colon lattice has the wrong rank".into()));
        }
        // I^-1 = D * (1/a) * G
        let gm = Matrix::from_rows(g_rows)?.map(|e| e * &ideal.denom);
        let inv = self.lattice_from_rows(&a, &gm, vec![])?;
        let check = self.ideal_mul(ideal, &inv)?;
        if !check.is_unit_ideal() {
            return Err(Error::NonInvertible("I * I^-1 is not the unit ideal".into()));
        }
        Ok(inv)
    }

    /// Elements `v_i` of `I` and `w_i` of `I^-1` with `sum w_i v_i = 1`.
    ///
    /// The `v_i` are the recorded generators of `I`. Products with a basis
    /// of `I^-1` are put in Hermite form; the transform row producing `1`
    /// gives the `w_i`. Pairs with `w_i = 0` are dropped.
    pub fn dual_basis(&self, ideal: &IdealLattice) -> Result<DualBasis> {
        let vs = ideal.generators_or_basis();
        let inv = self.ideal_inverse(ideal)?;
        let us = inv.basis();
        let mut rows = Vec::with_capacity(vs.len() * us.len());
        for v in &vs {
            for u in &us {
                let p = self.mul(v, u);
                if !p.is_integral() {
                    return Err(Error::Internal("product with the inverse left O".into()));
                }
                rows.push(p.coords.iter().map(|c| c.num().clone()).collect::<Vec<_>>());
            }
        }
        let hnf = hnf_qx(&Matrix::from_rows(rows)?);
        if !hnf.is_identity() {
            return Err(Error::NonInvertible("products do not generate O".into()));
        }
        let coeff = hnf.u.row(0);
        let mut v_out = Vec::new();
        let mut w_out = Vec::new();
        for (i, v) in vs.iter().enumerate() {
            let mut w = self.zero();
            for (k, u) in us.iter().enumerate() {
                let c = &coeff[i * us.len() + k];
                if !c.is_zero() {
                    w = self.add(&w, &self.scale(u, &RatFuncX::from_poly(c.clone())));
                }
            }
            if !w.is_zero() {
                v_out.push(v.clone());
                w_out.push(w);
            }
        }
        let total = v_out
            .iter()
            .zip(&w_out)
            .fold(self.zero(), |acc, (v, w)| self.add(&acc, &self.mul(w, v)));
        if total != self.one() {
            return Err(Error::Internal("dual basis does not sum to 1".into()));
        }
        Ok(DualBasis { v: v_out, w: w_out })
    }

    /// `phi(p, q) = sum_i v_i(p) w_i(q)`.
    pub fn phi_eval(&self, db: &DualBasis, p: &CurvePoint, q: &CurvePoint) -> Result<Rational> {
        db.v.iter().zip(&db.w).try_fold(Rational::zero(), |acc, (v, w)| {
            Ok(acc + self.eval(v, p)? * self.eval(w, q)?)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{elliptic, hyperbola};
    use crate::kernel::{q, qi};

    fn bp(s: &str) -> BivarPoly {
        BivarPoly::parse(s).unwrap()
    }

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| qi(v)).collect())
    }

    #[test]
    fn reduction_of_products() {
        let ff = FunctionField::new(&hyperbola()).unwrap();
        let y = ff.y();
        assert_eq!(ff.mul(&y, &y), ff.from_bivar(&bp("x^2 + 1")));
    }

    #[test]
    fn inverse_of_x_plus_y() {
        let ff = FunctionField::new(&hyperbola()).unwrap();
        let a = ff.from_bivar(&bp("x + y"));
        assert_eq!(ff.inv(&a).unwrap(), ff.from_bivar(&bp("y - x")));
        assert!(ff.is_unit(&a));
        assert!(!ff.is_unit(&ff.x()));
    }

    #[test]
    fn derivation_matches_polynomial_version() {
        let c = elliptic();
        let ff = FunctionField::new(&c).unwrap();
        for g in ["x*y", "y^3 + x", "x^4 - 2*x*y"] {
            let g = bp(g);
            assert_eq!(ff.derive(&ff.from_bivar(&g)), ff.from_bivar(&c.derive(&g)));
        }
        // Leibniz rule on a non-polynomial element
        let a = ff.inv(&ff.from_bivar(&bp("x + 1"))).unwrap();
        let b = ff.y();
        let lhs = ff.derive(&ff.mul(&a, &b));
        let rhs = ff.add(&ff.mul(&ff.derive(&a), &b), &ff.mul(&a, &ff.derive(&b)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn evaluation_through_removable_coordinate_poles() {
        let c = hyperbola();
        let ff = FunctionField::new(&c).unwrap();
        // (y - 1)/x = x/(y + 1) vanishes at (0, 1)
        let a = ff
            .div(&ff.from_bivar(&bp("y - 1")), &ff.x())
            .unwrap();
        let p = c.point(qi(0), qi(1)).unwrap();
        assert_eq!(ff.eval(&a, &p).unwrap(), qi(0));
        assert_eq!(ff.valuation_at(&a, &p).unwrap(), 1);
        let pole = ff.inv(&ff.x()).unwrap();
        assert!(matches!(ff.eval(&pole, &p), Err(Error::Pole(_))));
        assert_eq!(ff.valuation_at(&pole, &p).unwrap(), -1);
    }

    #[test]
    fn twisted_ideal_golden() {
        let c = elliptic();
        let ff = FunctionField::new(&c).unwrap();
        let i = ff
            .ideal_from_generators(&[ff.from_bivar(&bp("x + 1")), ff.y()])
            .unwrap();
        assert!(i.is_integral());
        assert_eq!(
            i.hnf(),
            &Matrix::from_rows(vec![vec![up(&[1, 1]), up(&[])], vec![up(&[]), up(&[1])]]).unwrap()
        );
        let inv = ff.ideal_inverse(&i).unwrap();
        assert_eq!(inv.denom(), &up(&[1, 1]));
        assert_eq!(
            inv.hnf(),
            &Matrix::from_rows(vec![vec![up(&[1, 1]), up(&[])], vec![up(&[]), up(&[1])]]).unwrap()
        );

        let db = ff.dual_basis(&i).unwrap();
        assert_eq!(db.v, vec![ff.from_bivar(&bp("x + 1")), ff.y()]);
        let w1 = ff.from_ratfunc(RatFuncX::from_poly(UniPoly::new(vec![q(2, 3), q(-1, 3)])));
        let w2 = ff.scale(&ff.y(), &RatFuncX::new(UniPoly::constant(q(1, 3)), up(&[1, 1])).unwrap());
        assert_eq!(db.w, vec![w1, w2]);

        let p1 = c.point(qi(0), qi(1)).unwrap();
        let p2 = c.point(qi(2), qi(3)).unwrap();
        assert_eq!(ff.phi_eval(&db, &p1, &p2).unwrap(), q(1, 3));
        assert_eq!(ff.phi_eval(&db, &p2, &p1).unwrap(), qi(3));
        assert_eq!(ff.phi_eval(&db, &p1, &p1).unwrap(), qi(1));
    }

    #[test]
    fn principal_and_unit_ideals() {
        let ff = FunctionField::new(&hyperbola()).unwrap();
        let o = ff.unit_ideal();
        assert!(o.is_unit_ideal());
        let db = ff.dual_basis(&o).unwrap();
        assert_eq!(db.v, vec![ff.one()]);
        assert_eq!(db.w, vec![ff.one()]);

        let u = ff.from_bivar(&bp("x + y"));
        let pr = ff.ideal_from_generators(std::slice::from_ref(&u)).unwrap();
        assert_eq!(pr, o);
        let db = ff.dual_basis(&pr).unwrap();
        assert_eq!(db.v, vec![u]);
        assert_eq!(db.w, vec![ff.from_bivar(&bp("y - x"))]);

        let xi = ff.ideal_from_generators(&[ff.x()]).unwrap();
        assert_ne!(xi, o);
        let inv = ff.ideal_inverse(&xi).unwrap();
        assert!(!inv.is_integral());
        assert!(ff.ideal_mul(&xi, &inv).unwrap().is_unit_ideal());
    }

    #[test]
    fn scaling_and_membership() {
        let ff = FunctionField::new(&elliptic()).unwrap();
        let i = ff
            .ideal_from_generators(&[ff.from_bivar(&bp("x + 1")), ff.y()])
            .unwrap();
        let h = ff.div(&ff.y(), &ff.from_bivar(&bp("x + 1"))).unwrap();
        let j = ff.ideal_scale(&i, &h).unwrap();
        let expected = ff
            .ideal_from_generators(&[ff.y(), ff.from_bivar(&bp("x^2 - x + 1"))])
            .unwrap();
        assert_eq!(j, expected);
        assert!(j.is_integral());
        assert!(ff.ideal_contains(&i, &ff.y()));
        assert!(!ff.ideal_contains(&i, &ff.one()));
        assert!(matches!(ff.ideal_from_generators(&[ff.zero()]), Err(Error::ZeroIdeal)));
    }

    #[test]
    fn tier_a_is_rejected() {
        let c = PlaneCurve::new(bp("x*y^2 + y + x")).unwrap();
        assert!(matches!(FunctionField::new(&c), Err(Error::TierRequired)));
    }
}
