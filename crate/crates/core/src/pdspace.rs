//! Finite-codimension subspaces `V` of the coordinate ring cut out by jet
//! functionals, their primary components `V_x`, the codimension identity
//! `dim O/V = sum_x dim O/V_x`, the divisor `sum_x d_x x`, and a bounded
//! search for differential operators mapping `V` into `O`.
//!
//! Every functional only sees jets of bounded order at finitely many points,
//! so `V` contains `prod_x m_x^(K_x)` and all computations happen in the
//! finite jet model `O / prod_x m_x^(K_x) = prod_x Q[t]/(t^(K_x))`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::curve::{CurvePoint, JetExpansion, LocalParam, PlaneCurve};
use crate::dmod::{apply_to_function, SkewOperator};
use crate::error::{Error, Result};
use crate::funcfield::{FuncFieldElem, FunctionField};
use crate::kernel::{lattice_reduce, BivarPoly, Hnf, Laurent, Matrix, RatFuncX, Rational, Series, UniPoly};

/// `f -> sum_j functional[j] * [t^j] f` at `point`, in the local parameter
/// chosen by the jet expansion there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCondition {
    pub point: CurvePoint,
    pub order: usize,
    pub functional: Vec<Rational>,
}

impl LocalCondition {
    pub fn new(point: CurvePoint, functional: Vec<Rational>) -> Result<Self> {
        if functional.is_empty() || functional.iter().all(Zero::is_zero) {
            return Err(Error::InvalidInput("a local condition needs a nonzero functional".into()));
        }
        Ok(LocalCondition {
            point,
            order: functional.len(),
            functional,
        })
    }

    /// `[t^j] f = 0`
    pub fn vanishing_coefficient(point: CurvePoint, j: usize) -> Self {
        let mut functional = vec![Rational::zero(); j + 1];
        functional[j] = Rational::one();
        LocalCondition {
            point,
            order: j + 1,
            functional,
        }
    }
}

/// A single functional that is the sum of local functionals at several
/// points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossCondition {
    pub terms: Vec<LocalCondition>,
}

/// `V = {f in O : every condition vanishes on f}`.
#[derive(Clone, Debug, PartialEq)]
pub struct PDSubspace {
    curve: PlaneCurve,
    conditions: Vec<LocalCondition>,
    cross: Vec<CrossCondition>,
}

impl PDSubspace {
    pub fn new(
        curve: &PlaneCurve,
        conditions: Vec<LocalCondition>,
        cross: Vec<CrossCondition>,
    ) -> Result<Self> {
        let all = conditions.iter().chain(cross.iter().flat_map(|c| c.terms.iter()));
        for c in all {
            curve.point(c.point.x().clone(), c.point.y().clone())?;
            if c.order != c.functional.len() || c.order == 0 {
                return Err(Error::InvalidInput(format!(
                    "condition at {} has order {} but {} coefficients",
                    c.point,
                    c.order,
                    c.functional.len()
                )));
            }
        }
        Ok(PDSubspace {
            curve: curve.clone(),
            conditions,
            cross,
        })
    }

    /// The whole coordinate ring.
    pub fn full(curve: &PlaneCurve) -> Self {
        PDSubspace {
            curve: curve.clone(),
            conditions: vec![],
            cross: vec![],
        }
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn conditions(&self) -> &[LocalCondition] {
        &self.conditions
    }

    pub fn cross(&self) -> &[CrossCondition] {
        &self.cross
    }

    fn all_conditions(&self) -> impl Iterator<Item = &LocalCondition> {
        self.conditions
            .iter()
            .chain(self.cross.iter().flat_map(|c| c.terms.iter()))
    }

    /// Points mentioned by any condition, sorted.
    pub fn support(&self) -> Vec<CurvePoint> {
        let mut pts: Vec<CurvePoint> = self.all_conditions().map(|c| c.point.clone()).collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// True when `f` lies in `V`.
    pub fn contains(&self, f: &BivarPoly) -> Result<bool> {
        for c in &self.conditions {
            if !eval_condition(&self.curve, c, f)?.is_zero() {
                return Ok(false);
            }
        }
        for cc in &self.cross {
            let mut total = Rational::zero();
            for c in &cc.terms {
                total += eval_condition(&self.curve, c, f)?;
            }
            if !total.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn eval_condition(curve: &PlaneCurve, c: &LocalCondition, f: &BivarPoly) -> Result<Rational> {
    let jet = curve.jet_expand(&c.point, c.order)?;
    let s = jet.expand(f);
    Ok(c.functional
        .iter()
        .zip(s.coeffs())
        .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
}

/// Global jet coordinates: the blocks `Q^(K_x)` side by side.
struct JetModel {
    points: Vec<CurvePoint>,
    orders: Vec<usize>,
    offsets: Vec<usize>,
    total: usize,
}

impl JetModel {
    fn new(v: &PDSubspace, extra: usize) -> Self {
        let points = v.support();
        let orders: Vec<usize> = points
            .iter()
            .map(|p| {
                let max = v
                    .all_conditions()
                    .filter(|c| &c.point == p)
                    .map(|c| c.order)
                    .max()
                    .unwrap_or(0);
                1 + max + extra
            })
            .collect();
        let mut offsets = Vec::with_capacity(orders.len());
        let mut total = 0;
        for k in &orders {
            offsets.push(total);
            total += k;
        }
        JetModel {
            points,
            orders,
            offsets,
            total,
        }
    }

    fn index(&self, p: &CurvePoint) -> usize {
        self.points.iter().position(|q| q == p).expect("support point")
    }

    fn embed(&self, c: &LocalCondition, row: &mut [Rational]) {
        let off = self.offsets[self.index(&c.point)];
        for (j, a) in c.functional.iter().enumerate() {
            row[off + j] += a;
        }
    }

    /// One row per condition.
    fn constraint_matrix(&self, v: &PDSubspace) -> Matrix<Rational> {
        let mut rows = Vec::new();
        for c in &v.conditions {
            let mut row = vec![Rational::zero(); self.total];
            self.embed(c, &mut row);
            rows.push(row);
        }
        for cc in &v.cross {
            let mut row = vec![Rational::zero(); self.total];
            for c in &cc.terms {
                self.embed(c, &mut row);
            }
            rows.push(row);
        }
        let r = rows.len();
        Matrix::from_fn(r, self.total, |i, j| rows[i][j].clone())
    }

    /// Basis of the image of `V` in the model.
    fn image_basis(&self, v: &PDSubspace) -> Vec<Vec<Rational>> {
        self.constraint_matrix(v).nullspace()
    }

    fn project(&self, w: &[Vec<Rational>], i: usize) -> Matrix<Rational> {
        let (off, k) = (self.offsets[i], self.orders[i]);
        Matrix::from_fn(w.len(), k, |r, j| w[r][off + j].clone())
    }
}

/// A primary component `V_x`: its codimension `d_x` and conditions at `x`
/// cutting it out.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimaryComponent {
    pub point: CurvePoint,
    pub codim: usize,
    pub conditions: Vec<LocalCondition>,
}

fn components_at(v: &PDSubspace, extra: usize) -> (JetModel, Vec<Vec<Rational>>, Vec<PrimaryComponent>) {
    let model = JetModel::new(v, extra);
    let w = model.image_basis(v);
    let mut out = Vec::new();
    for (i, p) in model.points.iter().enumerate() {
        let proj = model.project(&w, i);
        let rank = proj.rank();
        let codim = model.orders[i] - rank;
        if codim == 0 {
            continue;
        }
        let annihilator = if proj.rows() == 0 {
            (0..model.orders[i])
                .map(|j| {
                    let mut e = vec![Rational::zero(); model.orders[i]];
                    e[j] = Rational::one();
                    e
                })
                .collect()
        } else {
            proj.nullspace()
        };
        let conditions = annihilator
            .into_iter()
            .map(|f| LocalCondition::new(p.clone(), f).expect("annihilator vectors are nonzero"))
            .collect();
        out.push(PrimaryComponent {
            point: p.clone(),
            codim,
            conditions,
        });
    }
    (model, w, out)
}

/// Primary components with `d_x > 0`, computed in the jet model of order
/// `K_x = 1 + max order at x` and rechecked at `K_x + 1`.
pub fn primary_components(v: &PDSubspace) -> Result<Vec<PrimaryComponent>> {
    let (_, _, comps) = components_at(v, 0);
    let (_, _, again) = components_at(v, 1);
    let codims = |c: &[PrimaryComponent]| -> Vec<(CurvePoint, usize)> {
        c.iter().map(|c| (c.point.clone(), c.codim)).collect()
    };
    if codims(&comps) != codims(&again) {
        return Err(Error::Internal("jet model did not stabilize".into()));
    }
    Ok(comps)
}

/// Outcome of the codimension comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposability {
    /// `dim O/V`
    pub codim: usize,
    /// `sum_x dim O/V_x`
    pub local_sum: usize,
    pub components: Vec<PrimaryComponent>,
    pub decomposable: bool,
}

impl fmt::Display for Decomposability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.components {
            writeln!(f, "component at {}: codimension {}", c.point, c.codim)?;
        }
        let rel = if self.decomposable { "=" } else { "!=" };
        write!(
            f,
            "codim(V) = {} {} {} = sum of local codimensions; primary decomposable: {}",
            self.codim, rel, self.local_sum, self.decomposable
        )
    }
}

pub fn is_primary_decomposable(v: &PDSubspace) -> Result<Decomposability> {
    let components = primary_components(v)?;
    let model = JetModel::new(v, 0);
    let codim = model.constraint_matrix(v).rank();
    let local_sum = components.iter().map(|c| c.codim).sum();
    Ok(Decomposability {
        codim,
        local_sum,
        decomposable: codim == local_sum,
        components,
    })
}

/// Effective divisor `sum_x d_x x` with positive multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    support: BTreeMap<CurvePoint, usize>,
}

impl Divisor {
    pub fn new(entries: impl IntoIterator<Item = (CurvePoint, usize)>) -> Result<Self> {
        let mut d = Divisor::default();
        for (p, m) in entries {
            if m == 0 {
                return Err(Error::InvalidInput(format!("zero multiplicity at {p}")));
            }
            *d.support.entry(p).or_insert(0) += m;
        }
        Ok(d)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.support.values().sum()
    }

    pub fn mult(&self, p: &CurvePoint) -> usize {
        self.support.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&CurvePoint, &usize)> {
        self.support.iter()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, m) in &other.support {
            *out.support.entry(p.clone()).or_insert(0) += m;
        }
        out
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.support.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.support.iter().map(|(p, m)| format!("{m}*{p}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// `sum_x d_x x` for a primary decomposable `V`.
pub fn divisor_gamma(v: &PDSubspace) -> Result<Divisor> {
    let dec = is_primary_decomposable(v)?;
    if !dec.decomposable {
        return Err(Error::NotPrimaryDecomposable {
            codim: dec.codim,
            local_sum: dec.local_sum,
        });
    }
    Divisor::new(dec.components.into_iter().map(|c| (c.point, c.codim)))
}

/// `d(t)` along the branch: `F_y` when `t = x - x_p`, `-F_x` when
/// `t = y - y_p`.
fn local_derivation(curve: &PlaneCurve, jet: &JetExpansion) -> Series {
    match jet.param {
        LocalParam::X => jet.expand(curve.fy()),
        LocalParam::Y => jet.expand(curve.fx()).scale(&-Rational::one()),
    }
}

/// Coefficients of `t^e`, `e = -bound..-1`, in `c * g`.
fn principal_part(c: &Laurent, g: &Series, bound: usize) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); bound];
    if c.end() < 0 {
        return Err(Error::Internal("coefficient expansion too short".into()));
    }
    for i in c.start()..0 {
        let ci = c.coeff(i).expect("inside the known range");
        if ci.is_zero() {
            continue;
        }
        for e in i..0 {
            let idx = (e - i) as usize;
            if -e > bound as i64 {
                continue;
            }
            if idx >= g.prec() {
                return Err(Error::Internal("jet too short for the pole order".into()));
            }
            let slot = (bound as i64 + e) as usize;
            out[slot] += &ci * g.coeff(idx);
        }
    }
    Ok(out)
}

/// Basis of `{L = sum_{k <= order_bound} c_k z^k : L(V) in O}` where every
/// `c_k` has poles only at support points of `V`, of order at most
/// `pole_bound`, and coordinates of degree at most `degree_bound` (degree of
/// a rational function being `deg num - deg den`). Each returned operator is checked on global preimages of
/// a basis of the jet image of `V`.
pub fn bounded_ch_search(
    ff: &FunctionField,
    v: &PDSubspace,
    order_bound: usize,
    pole_bound: usize,
    degree_bound: usize,
) -> Result<Vec<SkewOperator>> {
    let curve = ff.curve();
    if curve.f() != v.curve().f() {
        return Err(Error::InvalidInput("subspace lives on a different curve".into()));
    }
    let dec = is_primary_decomposable(v)?;
    if !dec.decomposable {
        return Err(Error::NotPrimaryDecomposable {
            codim: dec.codim,
            local_sum: dec.local_sum,
        });
    }

    let support = v.support();
    let coeff_basis = pole_space(ff, &support, pole_bound, degree_bound)?;
    let candidates: Vec<(usize, usize)> = (0..=order_bound)
        .flat_map(|m| (0..coeff_basis.len()).map(move |c| (m, c)))
        .collect();

    // local jets of V at each support point, long enough for the poles
    let model = JetModel::new(v, 0);
    let w = model.image_basis(v);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    if pole_bound > 0 {
        for (pi, p) in model.points.iter().enumerate() {
            let kp = model.orders[pi];
            let big_k = kp.max(pole_bound + order_bound + 1);
            let jet = curve.jet_expand(p, big_k)?;
            let dt = local_derivation(curve, &jet);
            let mut local: Vec<Series> = model
                .project(&w, pi)
                .to_rows()
                .into_iter()
                .map(|r| Series::new(r, big_k))
                .collect();
            for j in kp..big_k {
                local.push(Series::new(
                    (0..=j).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect(),
                    big_k,
                ));
            }
            // d^m of each local jet
            let ders: Vec<Vec<Series>> = local
                .iter()
                .map(|s| {
                    let mut out = vec![s.clone()];
                    for _ in 0..order_bound {
                        let prev = out.last().unwrap();
                        let next = prev.derivative().mul(&dt.truncate(prev.prec().saturating_sub(1)));
                        out.push(next);
                    }
                    out
                })
                .collect();
            let expansions: Vec<Laurent> = coeff_basis
                .iter()
                .map(|c| ff.expand_at(c, p, 2 * pole_bound + 2))
                .collect::<Result<_>>()?;
            for d in &ders {
                let mut block = vec![vec![Rational::zero(); candidates.len()]; pole_bound];
                for (col, &(m, c)) in candidates.iter().enumerate() {
                    let pp = principal_part(&expansions[c], &d[m], pole_bound)?;
                    for (r, val) in pp.into_iter().enumerate() {
                        block[r][col] = val;
                    }
                }
                rows.extend(block);
            }
        }
    }
    let system = Matrix::from_fn(rows.len(), candidates.len(), |i, j| rows[i][j].clone());
    let (kernel_rref, _) = Matrix::from_rows(system.nullspace())
        .map(|m| m.rref())
        .unwrap_or_else(|_| (Matrix::zeros(0, candidates.len()), vec![]));

    let mut ops = Vec::new();
    for r in kernel_rref.to_rows() {
        if r.iter().all(Zero::is_zero) {
            continue;
        }
        let mut coeffs = vec![ff.zero(); order_bound + 1];
        for (lam, &(m, c)) in r.iter().zip(&candidates) {
            if !lam.is_zero() {
                let term = ff.scale(&coeff_basis[c], &RatFuncX::constant(lam.clone()));
                coeffs[m] = ff.add(&coeffs[m], &term);
            }
        }
        ops.push(SkewOperator::from_coeffs(coeffs));
    }

    let tests = global_test_functions(ff, v, &model, &w, pole_bound + order_bound + 1)?;
    for l in &ops {
        for f in &tests {
            if !apply_to_function(ff, l, f).is_integral() {
                return Err(Error::Internal(format!(
                    "operator {l} maps {f} outside the coordinate ring"
                )));
            }
        }
    }
    Ok(ops)
}

/// Q-basis of `{c in prod_p m_p^(-e) : deg c_i <= degree_bound for all
/// coordinates c_i}`, where the degree of a rational function is
/// `deg num - deg den`.
///
/// With `P = prod_a (x - a)^e` over the distinct x-coordinates `a` of the
/// support, `P c` lies in the integral lattice `P prod_p m_p^(-e)`; the
/// degree condition becomes `deg (P c)_i <= deg P + degree_bound`, and
/// membership is the vanishing of a Q-linear remainder.
fn pole_space(
    ff: &FunctionField,
    support: &[CurvePoint],
    e: usize,
    degree_bound: usize,
) -> Result<Vec<FuncFieldElem>> {
    let mut ideal = ff.unit_ideal();
    let mut p_poly = UniPoly::one();
    let mut xs: Vec<&Rational> = Vec::new();
    for p in support {
        let mp = maximal_ideal(ff, p)?;
        for _ in 0..e {
            ideal = ff.ideal_mul(&ideal, &mp)?;
        }
        if !xs.contains(&p.x()) {
            xs.push(p.x());
            let lin = UniPoly::new(vec![-p.x().clone(), Rational::one()]);
            p_poly = &p_poly * &lin.pow(e as u32);
        }
    }
    let lattice = ff.ideal_inverse(&ideal)?;
    let scaled = ff.ideal_scale(&lattice, &ff.from_ratfunc(RatFuncX::from_poly(p_poly.clone())))?;
    if !scaled.is_integral() {
        return Err(Error::Internal("scaled pole lattice is not integral".into()));
    }
    let d = ff.degree();
    let hnf = Hnf {
        h: scaled.hnf().clone(),
        u: Matrix::identity(0),
        pivots: (0..d).collect(),
    };
    let widths: Vec<usize> = (0..d)
        .map(|i| hnf.h.get(i, i).degree().expect("nonzero pivot"))
        .collect();
    let top = p_poly.degree().unwrap_or(0) + degree_bound;
    // remainder of every monomial x^i y^j, flattened
    let mut monos = Vec::new();
    let mut cols = Vec::new();
    for j in 0..d {
        for i in 0..=top {
            let mut v = vec![UniPoly::zero(); d];
            v[j] = UniPoly::monomial(Rational::one(), i);
            let (_, rem) = lattice_reduce(&hnf, &v);
            let mut flat = Vec::new();
            for (c, r) in rem.iter().enumerate() {
                let mut cs = r.coeffs().to_vec();
                cs.resize(widths[c], Rational::zero());
                flat.extend(cs);
            }
            monos.push((i, j));
            cols.push(flat);
        }
    }
    let rows = widths.iter().sum();
    let m = Matrix::from_fn(rows, cols.len(), |r, c| cols[c][r].clone());
    let inv_p = RatFuncX::new(UniPoly::one(), p_poly)?;
    let mut out = Vec::new();
    for k in m.nullspace() {
        let mut coords = vec![UniPoly::zero(); d];
        for (lam, &(i, j)) in k.iter().zip(&monos) {
            if !lam.is_zero() {
                coords[j] = &coords[j] + &UniPoly::monomial(lam.clone(), i);
            }
        }
        let g = ff.elem(coords.into_iter().map(RatFuncX::from_poly).collect())?;
        out.push(ff.scale(&g, &inv_p));
    }
    Ok(out)
}

/// `m_p = (x - x_p, y - y_p)`
pub fn maximal_ideal(ff: &FunctionField, p: &CurvePoint) -> Result<crate::funcfield::IdealLattice> {
    let gx = BivarPoly::from_x_poly(&UniPoly::new(vec![-p.x().clone(), Rational::one()]));
    let gy = BivarPoly::from_y_poly(&UniPoly::new(vec![-p.y().clone(), Rational::one()]));
    ff.ideal_from_generators(&[ff.from_bivar(&gx), ff.from_bivar(&gy)])
}

/// Elements of `V` whose jets span the image of `V` in the model of order
/// `max(K_x, min_order)` at every support point. Together with
/// `prod_x m_x^(min_order)` they span `V`.
fn global_test_functions(
    ff: &FunctionField,
    v: &PDSubspace,
    model: &JetModel,
    w: &[Vec<Rational>],
    min_order: usize,
) -> Result<Vec<FuncFieldElem>> {
    let curve = ff.curve();
    let orders: Vec<usize> = model.orders.iter().map(|&k| k.max(min_order)).collect();
    let total: usize = orders.iter().sum();
    let mut offsets = Vec::new();
    let mut acc = 0;
    for k in &orders {
        offsets.push(acc);
        acc += k;
    }
    let mut targets: Vec<Vec<Rational>> = Vec::new();
    for wv in w {
        let mut t = vec![Rational::zero(); total];
        for i in 0..orders.len() {
            for j in 0..model.orders[i] {
                t[offsets[i] + j] = wv[model.offsets[i] + j].clone();
            }
        }
        targets.push(t);
    }
    for i in 0..orders.len() {
        for j in model.orders[i]..orders[i] {
            let mut t = vec![Rational::zero(); total];
            t[offsets[i] + j] = Rational::one();
            targets.push(t);
        }
    }
    if targets.is_empty() {
        return Ok(vec![ff.one()]);
    }

    let jets: Vec<JetExpansion> = model
        .points
        .iter()
        .zip(&orders)
        .map(|(p, &k)| curve.jet_expand(p, k))
        .collect::<Result<_>>()?;
    let d = curve.deg_y();
    let mut monomials: Vec<BivarPoly> = Vec::new();
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    for deg in 0..=(4 * total + 8) {
        for j in 0..d.min(deg as u32 + 1) {
            let i = deg as u32 - j;
            let mono = BivarPoly::from_terms([(i, j, Rational::one())]);
            let mut col = Vec::with_capacity(total);
            for jet in &jets {
                col.extend(jet.expand(&mono).coeffs().iter().cloned());
            }
            monomials.push(mono);
            columns.push(col);
        }
        let m = Matrix::from_fn(total, columns.len(), |r, c| columns[c][r].clone());
        if m.rank() == total {
            let mut out = Vec::new();
            for t in &targets {
                let a = m.solve(t).expect("full rank");
                let f = a
                    .iter()
                    .zip(&monomials)
                    .filter(|(c, _)| !c.is_zero())
                    .fold(BivarPoly::zero(), |acc, (c, mono)| &acc + &mono.scale(c));
                if !v.contains(&f)? {
                    return Err(Error::Internal("interpolated function is not in V".into()));
                }
                out.push(ff.from_bivar(&f));
            }
            return Ok(out);
        }
    }
    Err(Error::Internal("could not interpolate the prescribed jets".into()))
}
