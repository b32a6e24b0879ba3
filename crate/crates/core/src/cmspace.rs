//! Points of Calogero-Moser spaces as explicit matrix data, the exact check
//! of their defining relations, the shift by a one-form and the logarithmic
//! derivative of units.
//!
//! For a plane curve the data is `(X, Y, Z, v_i, w_i)` with `X = diag(x_i)`,
//! `Y = diag(y_i)` and weight `(1, -n)`. Off the diagonal the Moser matrix is
//!
//! ```text
//! Z_ij = F(x_j, y_i) * phi(p_i, p_j) / ((x_i - x_j)(y_i - y_j))
//! ```
//!
//! with `phi = 1` for the trivial bundle.

use std::fmt;

use num_traits::{One, Zero};

use crate::curve::{CurvePoint, PlaneCurve};
use crate::error::{Error, Result};
use crate::funcfield::{DualBasis, FuncFieldElem, FunctionField};
use crate::kernel::{BivarPoly, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CMKind {
    PlaneCurve,
    /// The affine line presented through the one-vertex quiver relations
    /// `[X, Y] + v w = Id`, `w v = n`.
    QuiverLine,
}

impl CMKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CMKind::PlaneCurve => "plane_curve",
            CMKind::QuiverLine => "quiver_line",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "plane_curve" => Ok(CMKind::PlaneCurve),
            "quiver_line" => Ok(CMKind::QuiverLine),
            _ => Err(Error::InvalidInput(format!("unknown CM kind {s:?}"))),
        }
    }
}

/// Which evaluation of `F` enters the off-diagonal Moser entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoserConvention {
    /// `F(x_j, y_i)`; the relations hold.
    Adopted,
    /// `F(x_i, y_j)`; kept only to exhibit that the relations then fail.
    Transposed,
}

/// A point of `C_n(X, I)` as matrices over `Q`.
///
/// For [`CMKind::QuiverLine`] there is no curve, no points and no `Z`;
/// `zbar` is the empty matrix and `alphas` is empty.
#[derive(Clone, Debug, PartialEq)]
pub struct CMData {
    kind: CMKind,
    curve: Option<PlaneCurve>,
    points: Vec<CurvePoint>,
    alphas: Vec<Rational>,
    xbar: Matrix<Rational>,
    ybar: Matrix<Rational>,
    zbar: Matrix<Rational>,
    vbar: Matrix<Rational>,
    wbar: Matrix<Rational>,
    bundle: Option<DualBasis>,
}

impl CMData {
    pub fn n(&self) -> usize {
        self.xbar.rows()
    }

    pub fn kind(&self) -> CMKind {
        self.kind
    }

    pub fn curve(&self) -> Option<&PlaneCurve> {
        self.curve.as_ref()
    }

    pub fn points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    pub fn xbar(&self) -> &Matrix<Rational> {
        &self.xbar
    }

    pub fn ybar(&self) -> &Matrix<Rational> {
        &self.ybar
    }

    pub fn zbar(&self) -> &Matrix<Rational> {
        &self.zbar
    }

    /// `n x N`, columns `v_i`.
    pub fn vbar(&self) -> &Matrix<Rational> {
        &self.vbar
    }

    /// `N x n`, rows `w_i`.
    pub fn wbar(&self) -> &Matrix<Rational> {
        &self.wbar
    }

    pub fn bundle(&self) -> Option<&DualBasis> {
        self.bundle.as_ref()
    }

    /// `Id + sum_i v_i w_i`
    pub fn delta(&self) -> Matrix<Rational> {
        let vw = self.vbar.try_mul(&self.wbar).expect("shapes fixed at construction");
        Matrix::identity(self.n()).try_add(&vw).expect("square")
    }

    /// Plane-curve data from stored parts; `X` and `Y` are rebuilt from the
    /// points and the alphas are read off the diagonal of `Z`.
    pub fn from_plane_parts(
        curve: PlaneCurve,
        points: Vec<CurvePoint>,
        zbar: Matrix<Rational>,
        vbar: Matrix<Rational>,
        wbar: Matrix<Rational>,
        bundle: Option<DualBasis>,
    ) -> Result<Self> {
        let n = points.len();
        for p in &points {
            curve.point(p.x().clone(), p.y().clone())?;
        }
        if zbar.rows() != n || zbar.cols() != n {
            return Err(Error::Dimension(format!("Zbar must be {n}x{n}")));
        }
        if vbar.rows() != n || wbar.cols() != n || vbar.cols() != wbar.rows() {
            return Err(Error::Dimension(format!(
                "Vbar must be {n}xN and Wbar Nx{n} for a common N"
            )));
        }
        let xs: Vec<Rational> = points.iter().map(|p| p.x().clone()).collect();
        let ys: Vec<Rational> = points.iter().map(|p| p.y().clone()).collect();
        let alphas = (0..n).map(|i| zbar.get(i, i).clone()).collect();
        Ok(CMData {
            kind: CMKind::PlaneCurve,
            curve: Some(curve),
            points,
            alphas,
            xbar: Matrix::diagonal(&xs),
            ybar: Matrix::diagonal(&ys),
            zbar,
            vbar,
            wbar,
            bundle,
        })
    }

    /// Quiver-line data from stored parts.
    pub fn from_line_parts(
        xbar: Matrix<Rational>,
        ybar: Matrix<Rational>,
        vbar: Matrix<Rational>,
        wbar: Matrix<Rational>,
    ) -> Result<Self> {
        let n = xbar.rows();
        if !xbar.is_square() || ybar.rows() != n || !ybar.is_square() {
            return Err(Error::Dimension(format!("Xbar and Ybar must be {n}x{n}")));
        }
        if vbar.rows() != n || vbar.cols() != 1 || wbar.rows() != 1 || wbar.cols() != n {
            return Err(Error::Dimension(format!("Vbar must be {n}x1 and Wbar 1x{n}")));
        }
        Ok(CMData {
            kind: CMKind::QuiverLine,
            curve: None,
            points: vec![],
            alphas: vec![],
            xbar,
            ybar,
            zbar: Matrix::zeros(0, 0),
            vbar,
            wbar,
            bundle: None,
        })
    }

    /// Same data with `Z` replaced; the alphas follow the new diagonal.
    pub fn with_zbar(&self, zbar: Matrix<Rational>) -> Result<Self> {
        if zbar.rows() != self.zbar.rows() || zbar.cols() != self.zbar.cols() {
            return Err(Error::Dimension("replacement Zbar has the wrong shape".into()));
        }
        let mut out = self.clone();
        out.alphas = (0..zbar.rows()).map(|i| zbar.get(i, i).clone()).collect();
        out.zbar = zbar;
        Ok(out)
    }

    /// Relabels the points by `perm` (new index `i` takes old index
    /// `perm[i]`), conjugating every matrix accordingly.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let n = self.n();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidInput("not a permutation".into()));
        }
        let sq = |m: &Matrix<Rational>| {
            if m.rows() == 0 {
                m.clone()
            } else {
                Matrix::from_fn(n, n, |i, j| m.get(perm[i], perm[j]).clone())
            }
        };
        let mut out = self.clone();
        out.xbar = sq(&self.xbar);
        out.ybar = sq(&self.ybar);
        out.zbar = sq(&self.zbar);
        out.vbar = Matrix::from_fn(n, self.vbar.cols(), |i, k| self.vbar.get(perm[i], k).clone());
        out.wbar = Matrix::from_fn(self.wbar.rows(), n, |k, j| self.wbar.get(k, perm[j]).clone());
        if !self.points.is_empty() {
            out.points = perm.iter().map(|&p| self.points[p].clone()).collect();
            out.alphas = perm.iter().map(|&p| self.alphas[p].clone()).collect();
        }
        Ok(out)
    }
}

fn check_distinct(points: &[CurvePoint]) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        for q in &points[..i] {
            if p.x() == q.x() {
                return Err(Error::DegenerateConfiguration(format!(
                    "points {q} and {p} share the x-coordinate"
                )));
            }
            if p.y() == q.y() {
                return Err(Error::DegenerateConfiguration(format!(
                    "points {q} and {p} share the y-coordinate"
                )));
            }
        }
    }
    Ok(())
}

fn moser_matrix(
    curve: &PlaneCurve,
    points: &[CurvePoint],
    alphas: &[Rational],
    phi: impl Fn(usize, usize) -> Rational,
    convention: MoserConvention,
) -> Matrix<Rational> {
    let n = points.len();
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            return alphas[i].clone();
        }
        let (pi, pj) = (&points[i], &points[j]);
        let fval = match convention {
            MoserConvention::Adopted => curve.f().eval(pj.x(), pi.y()),
            MoserConvention::Transposed => curve.f().eval(pi.x(), pj.y()),
        };
        fval * phi(i, j) / ((pi.x() - pj.x()) * (pi.y() - pj.y()))
    })
}

fn check_alphas(points: &[CurvePoint], alphas: &[Rational]) -> Result<()> {
    if points.len() != alphas.len() {
        return Err(Error::Dimension(format!(
            "{} points but {} alphas",
            points.len(),
            alphas.len()
        )));
    }
    Ok(())
}

fn verified(data: CMData) -> Result<CMData> {
    let report = verify_relations(&data);
    if report.passed {
        Ok(data)
    } else {
        Err(Error::RelationFailure(format!(
            "builder output fails the relations:\n{report}"
        )))
    }
}

/// Trivial-bundle data with the adopted Moser convention, verified before
/// return.
pub fn build_cm_trivial(
    curve: &PlaneCurve,
    points: &[CurvePoint],
    alphas: &[Rational],
) -> Result<CMData> {
    build_cm_trivial_with(curve, points, alphas, MoserConvention::Adopted)
}

/// Trivial-bundle data with an explicit Moser convention. Only the adopted
/// convention is verified; the transposed one is returned as is.
pub fn build_cm_trivial_with(
    curve: &PlaneCurve,
    points: &[CurvePoint],
    alphas: &[Rational],
    convention: MoserConvention,
) -> Result<CMData> {
    check_alphas(points, alphas)?;
    check_distinct(points)?;
    let n = points.len();
    let zbar = moser_matrix(curve, points, alphas, |_, _| Rational::one(), convention);
    let vbar = Matrix::from_fn(n, 1, |_, _| Rational::one());
    let wbar = Matrix::from_fn(1, n, |_, _| -Rational::one());
    let data = CMData::from_plane_parts(curve.clone(), points.to_vec(), zbar, vbar, wbar, None)?;
    match convention {
        MoserConvention::Adopted => verified(data),
        MoserConvention::Transposed => Ok(data),
    }
}

/// Data twisted by the line bundle with dual basis `db`.
pub fn build_cm_twisted(
    ff: &FunctionField,
    db: &DualBasis,
    points: &[CurvePoint],
    alphas: &[Rational],
) -> Result<CMData> {
    check_alphas(points, alphas)?;
    check_distinct(points)?;
    let n = points.len();
    let big_n = db.v.len();
    let eval = |e: &FuncFieldElem, p: &CurvePoint| ff.eval(e, p);
    let mut vbar = Matrix::zeros(n, big_n);
    let mut wbar = Matrix::zeros(big_n, n);
    for (k, (v, w)) in db.v.iter().zip(&db.w).enumerate() {
        for (j, p) in points.iter().enumerate() {
            vbar.set(j, k, eval(v, p)?);
            wbar.set(k, j, -eval(w, p)?);
        }
    }
    // phi(p_i, p_j) = -(V W)_ij
    let vw = vbar.try_mul(&wbar)?;
    for (i, p) in points.iter().enumerate() {
        if *vw.get(i, i) != -Rational::one() {
            return Err(Error::Pole(format!(
                "phi({p}, {p}) != 1; the point lies on the zero locus of the ideal"
            )));
        }
    }
    let curve = ff.curve();
    let zbar = moser_matrix(
        curve,
        points,
        alphas,
        |i, j| -vw.get(i, j).clone(),
        MoserConvention::Adopted,
    );
    let data = CMData::from_plane_parts(
        curve.clone(),
        points.to_vec(),
        zbar,
        vbar,
        wbar,
        Some(db.clone()),
    )?;
    verified(data)
}

/// Data on the affine line: `X = diag(xs)`, `Y_ii = betas_i`,
/// `Y_ij = 1/(x_j - x_i)`, `v = w^t = (1, ..., 1)`.
pub fn build_cm_line(xs: &[Rational], betas: &[Rational]) -> Result<CMData> {
    if xs.len() != betas.len() {
        return Err(Error::Dimension(format!(
            "{} x-values but {} betas",
            xs.len(),
            betas.len()
        )));
    }
    for (i, a) in xs.iter().enumerate() {
        if xs[..i].contains(a) {
            return Err(Error::DegenerateConfiguration(format!("repeated x-value {a}")));
        }
    }
    let n = xs.len();
    let ybar = Matrix::from_fn(n, n, |i, j| {
        if i == j {
            betas[i].clone()
        } else {
            (&xs[j] - &xs[i]).recip()
        }
    });
    let data = CMData::from_line_parts(
        Matrix::diagonal(xs),
        ybar,
        Matrix::from_fn(n, 1, |_, _| Rational::one()),
        Matrix::from_fn(1, n, |_, _| Rational::one()),
    )?;
    verified(data)
}

/// Exact residuals of the defining relations.
#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport {
    pub kind: CMKind,
    /// Plane curve: `Delta - sum v_i w_i - Id`.
    /// Quiver line: `[X, Y] + v w - Id`.
    pub r0_first: Matrix<Rational>,
    /// Plane curve: `sum w_i v_i + n`. Quiver line: `w v - n`.
    pub r0_second: Rational,
    /// `[Z, X] - sum a_rs sum_k Y^(s-k-1) Delta Y^k X^r` (plane curve only).
    pub r1_residual: Matrix<Rational>,
    /// `[Z, Y] + sum a_rs sum_l Y^s X^(r-l-1) Delta X^l` (plane curve only).
    pub r2_residual: Matrix<Rational>,
    pub passed: bool,
}

impl fmt::Display for RelationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = |zero: bool| if zero { "ok" } else { "FAILED" };
        writeln!(f, "kind: {}", self.kind.as_str())?;
        match self.kind {
            CMKind::PlaneCurve => {
                writeln!(f, "Delta - sum v_i w_i = Id: {}", status(self.r0_first.is_zero()))?;
                writeln!(f, "sum w_i v_i = -n: {}", status(self.r0_second.is_zero()))?;
                writeln!(f, "[Z, X] relation: {}", status(self.r1_residual.is_zero()))?;
                if !self.r1_residual.is_zero() {
                    writeln!(f, "  residual {}", self.r1_residual)?;
                }
                writeln!(f, "[Z, Y] relation: {}", status(self.r2_residual.is_zero()))?;
                if !self.r2_residual.is_zero() {
                    writeln!(f, "  residual {}", self.r2_residual)?;
                }
            }
            CMKind::QuiverLine => {
                writeln!(f, "[X, Y] + v w = Id: {}", status(self.r0_first.is_zero()))?;
                writeln!(f, "w v = n: {}", status(self.r0_second.is_zero()))?;
            }
        }
        write!(f, "passed: {}", self.passed)
    }
}

/// Checks the defining relations exactly. Failures are reported, never
/// raised.
pub fn verify_relations(m: &CMData) -> RelationReport {
    match m.kind {
        CMKind::PlaneCurve => verify_plane(m),
        CMKind::QuiverLine => verify_line(m),
    }
}

fn verify_line(m: &CMData) -> RelationReport {
    let n = m.n();
    let vw = m.vbar.try_mul(&m.wbar).expect("shapes checked");
    let r0_first = m
        .xbar
        .commutator(&m.ybar)
        .and_then(|c| c.try_add(&vw))
        .and_then(|c| c.try_sub(&Matrix::identity(n)))
        .expect("square");
    let wv = m.wbar.try_mul(&m.vbar).expect("shapes checked").trace();
    let r0_second = wv - Rational::from_integer(n.into());
    let passed = r0_first.is_zero() && r0_second.is_zero();
    RelationReport {
        kind: CMKind::QuiverLine,
        r0_first,
        r0_second,
        r1_residual: Matrix::zeros(n, n),
        r2_residual: Matrix::zeros(n, n),
        passed,
    }
}

fn verify_plane(m: &CMData) -> RelationReport {
    let n = m.n();
    let curve = m.curve.as_ref().expect("plane-curve data carries its curve");
    let id = Matrix::<Rational>::identity(n);
    let vw = m.vbar.try_mul(&m.wbar).expect("shapes checked");
    let delta = id.try_add(&vw).expect("square");
    let r0_first = delta.try_sub(&vw).and_then(|d| d.try_sub(&id)).expect("square");
    let wv = m.wbar.try_mul(&m.vbar).expect("shapes checked").trace();
    let r0_second = wv + Rational::from_integer(n.into());

    let max_r = curve.f().deg_x().unwrap_or(0) as usize;
    let max_s = curve.f().deg_y().unwrap_or(0) as usize;
    let xp = powers(&m.xbar, max_r);
    let yp = powers(&m.ybar, max_s);
    let mut rhs1 = Matrix::zeros(n, n);
    let mut rhs2 = Matrix::zeros(n, n);
    for (r, s, a) in curve.f().terms() {
        let (r, s) = (r as usize, s as usize);
        for k in 0..s {
            let t = mul3(&yp[s - k - 1], &delta, &yp[k]).try_mul(&xp[r]).expect("square");
            rhs1 = rhs1.try_add(&t.scale(a)).expect("square");
        }
        for l in 0..r {
            let t = mul3(&yp[s], &xp[r - l - 1], &delta).try_mul(&xp[l]).expect("square");
            rhs2 = rhs2.try_sub(&t.scale(a)).expect("square");
        }
    }
    let r1_residual = m.zbar.commutator(&m.xbar).and_then(|c| c.try_sub(&rhs1)).expect("square");
    let r2_residual = m.zbar.commutator(&m.ybar).and_then(|c| c.try_sub(&rhs2)).expect("square");
    let passed = r0_first.is_zero()
        && r0_second.is_zero()
        && r1_residual.is_zero()
        && r2_residual.is_zero();
    RelationReport {
        kind: CMKind::PlaneCurve,
        r0_first,
        r0_second,
        r1_residual,
        r2_residual,
        passed,
    }
}

fn powers(m: &Matrix<Rational>, k: usize) -> Vec<Matrix<Rational>> {
    let mut out = vec![Matrix::identity(m.rows())];
    for i in 0..k {
        let next = out[i].try_mul(m).expect("square");
        out.push(next);
    }
    out
}

fn mul3(a: &Matrix<Rational>, b: &Matrix<Rational>, c: &Matrix<Rational>) -> Matrix<Rational> {
    a.try_mul(b).and_then(|ab| ab.try_mul(c)).expect("square")
}

/// The one-form `f dx + g dy`, stored reduced modulo `F`.
#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    pub f: BivarPoly,
    pub g: BivarPoly,
}

impl OneForm {
    pub fn new(curve: &PlaneCurve, f: &BivarPoly, g: &BivarPoly) -> Self {
        OneForm {
            f: curve.reduce(f),
            g: curve.reduce(g),
        }
    }

    pub fn zero() -> Self {
        OneForm {
            f: BivarPoly::zero(),
            g: BivarPoly::zero(),
        }
    }
}

/// Contraction of `omega` with the canonical vector field:
/// `f F_y - g F_x` modulo `F`.
pub fn pairing_omega_z(curve: &PlaneCurve, omega: &OneForm) -> BivarPoly {
    let raw = &(&omega.f * curve.fy()) - &(&omega.g * curve.fx());
    curve.reduce(&raw)
}

/// `Z -> Z - q(X, Y)` with `q` the contraction of `omega`.
pub fn sigma_shift(m: &CMData, omega: &OneForm) -> Result<CMData> {
    let Some(curve) = m.curve.as_ref() else {
        return Err(Error::InvalidInput(
            "the one-form action needs plane-curve data".into(),
        ));
    };
    let q = pairing_omega_z(curve, omega);
    let shift: Vec<Rational> = m.points.iter().map(|p| q.eval(p.x(), p.y())).collect();
    let z = m.zbar.try_sub(&Matrix::diagonal(&shift))?;
    m.with_zbar(z)
}

/// `u^-1 du` for a unit `u` of the coordinate ring.
pub fn dlog(ff: &FunctionField, u: &FuncFieldElem) -> Result<OneForm> {
    if !ff.is_unit(u) {
        return Err(Error::NotAUnit(format!("{u} is not a unit of the coordinate ring")));
    }
    let curve = ff.curve();
    let poly = ff.to_bivar(u).expect("units are integral");
    let inv = ff.inv(u)?;
    let part = |d: BivarPoly| -> BivarPoly {
        let e = ff.mul(&inv, &ff.from_bivar(&d));
        ff.to_bivar(&e).expect("product of integral elements")
    };
    let f = part(poly.partial_x());
    let g = part(poly.partial_y());
    Ok(OneForm::new(curve, &f, &g))
}
