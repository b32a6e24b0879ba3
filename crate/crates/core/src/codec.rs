//! JSON encoding of the core types.
//!
//! Rationals are strings `"p/q"` (integers as `"p"`); plain JSON integers are
//! accepted on input. Polynomials in `x` are ascending coefficient arrays,
//! bivariate polynomials are term lists `[{"r", "s", "c"}]` for `c x^r y^s`
//! (a string such as `"y^2 - x^3 - 1"` is also accepted on input), matrices
//! are `{"rows", "cols", "entries"}` with row-major entries.
//!
//! Decoders validate what they read: points must lie on the curve, shapes
//! must agree and stored canonical forms must be canonical.

use serde_json::{json, Map, Value};

use crate::cmspace::{CMData, CMKind, OneForm, RelationReport};
use crate::curve::{CurvePoint, PlaneCurve};
use crate::dmod::{IdealPresentation, SkewOperator};
use crate::error::{Error, Result};
use crate::funcfield::{DualBasis, FuncFieldElem, FunctionField, IdealLattice};
use crate::kernel::{parse_rational, BivarPoly, Matrix, RatFuncX, Rational, Ring, UniPoly};
use crate::pdspace::{CrossCondition, Decomposability, Divisor, LocalCondition, PDSubspace};

fn bad(msg: impl Into<String>) -> Error {
    Error::Json(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(format!("missing field {key:?}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| bad(format!("{what} must be an array")))
}

fn count(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|n| usize::try_from(n).ok())
        .ok_or_else(|| bad(format!("{what} must be a nonnegative integer")))
}

/// Parses a whole document, mapping syntax errors to [`Error::Json`].
pub fn parse_document(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|_| bad(format!("not a rational: {s:?}"))),
        Value::Number(n) if n.is_i64() || n.is_u64() => parse_rational(&n.to_string()),
        _ => Err(bad(format!("expected a rational string, got {v}"))),
    }
}

pub fn unipoly_to_json(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(rational_to_json).collect())
}

pub fn unipoly_from_json(v: &Value) -> Result<UniPoly> {
    let cs = array(v, "polynomial in x")?
        .iter()
        .map(rational_from_json)
        .collect::<Result<Vec<_>>>()?;
    Ok(UniPoly::new(cs))
}

pub fn bivar_to_json(f: &BivarPoly) -> Value {
    Value::Array(
        f.terms()
            .map(|(r, s, c)| json!({"r": r, "s": s, "c": rational_to_json(c)}))
            .collect(),
    )
}

pub fn bivar_from_json(v: &Value) -> Result<BivarPoly> {
    if let Value::String(s) = v {
        return BivarPoly::parse(s).map_err(|e| bad(format!("polynomial {s:?}: {e}")));
    }
    let mut terms = Vec::new();
    for t in array(v, "polynomial")? {
        let exp = |k: &str| -> Result<u32> {
            u32::try_from(count(field(t, k)?, k)?).map_err(|_| bad(format!("{k} too large")))
        };
        terms.push((exp("r")?, exp("s")?, rational_from_json(field(t, "c")?)?));
    }
    Ok(BivarPoly::from_terms(terms))
}

pub fn matrix_to_json<T: Ring>(m: &Matrix<T>, entry: impl Fn(&T) -> Value) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.entries().iter().map(entry).collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json<T: Ring>(v: &Value, entry: impl Fn(&Value) -> Result<T>) -> Result<Matrix<T>> {
    let rows = count(field(v, "rows")?, "rows")?;
    let cols = count(field(v, "cols")?, "cols")?;
    let entries = array(field(v, "entries")?, "entries")?
        .iter()
        .map(entry)
        .collect::<Result<Vec<_>>>()?;
    if entries.len() != rows * cols {
        return Err(bad(format!(
            "matrix is {rows}x{cols} but has {} entries",
            entries.len()
        )));
    }
    Matrix::new(rows, cols, entries)
}

pub fn qmatrix_to_json(m: &Matrix<Rational>) -> Value {
    matrix_to_json(m, rational_to_json)
}

pub fn qmatrix_from_json(v: &Value) -> Result<Matrix<Rational>> {
    matrix_from_json(v, rational_from_json)
}

pub fn curve_to_json(c: &PlaneCurve) -> Value {
    json!({"F": bivar_to_json(c.f())})
}

/// Accepts `{"F": ...}` or a bare polynomial.
pub fn curve_from_json(v: &Value) -> Result<PlaneCurve> {
    let f = match v.get("F") {
        Some(f) => bivar_from_json(f)?,
        None => bivar_from_json(v)?,
    };
    PlaneCurve::new(f)
}

pub fn point_to_json(p: &CurvePoint) -> Value {
    json!({"x": rational_to_json(p.x()), "y": rational_to_json(p.y())})
}

/// `{"x", "y"}` or a pair `[x, y]`.
pub fn point_from_json(curve: &PlaneCurve, v: &Value) -> Result<CurvePoint> {
    if let Some([x, y]) = v.as_array().map(Vec::as_slice) {
        return curve.point(rational_from_json(x)?, rational_from_json(y)?);
    }
    let x = rational_from_json(field(v, "x")?)?;
    let y = rational_from_json(field(v, "y")?)?;
    curve.point(x, y)
}

pub fn ratfunc_to_json(r: &RatFuncX) -> Value {
    json!({"num": unipoly_to_json(r.num()), "den": unipoly_to_json(r.den())})
}

pub fn ratfunc_from_json(v: &Value) -> Result<RatFuncX> {
    let num = unipoly_from_json(field(v, "num")?)?;
    let den = match v.get("den") {
        Some(d) => unipoly_from_json(d)?,
        None => UniPoly::constant(Rational::from_integer(1.into())),
    };
    RatFuncX::new(num, den)
}

/// Coordinates in the basis `1, y, ..., y^(d-1)`.
pub fn elem_to_json(a: &FuncFieldElem) -> Value {
    Value::Array(a.coords().iter().map(ratfunc_to_json).collect())
}

/// Coordinates in the power basis, or a polynomial string in `x, y`.
pub fn elem_from_json(ff: &FunctionField, v: &Value) -> Result<FuncFieldElem> {
    if let Some(s) = v.as_str() {
        return Ok(ff.from_bivar(&BivarPoly::parse(s)?));
    }
    let coords = array(v, "function field element")?
        .iter()
        .map(ratfunc_from_json)
        .collect::<Result<Vec<_>>>()?;
    ff.elem(coords)
}

fn elems_to_json(xs: &[FuncFieldElem]) -> Value {
    Value::Array(xs.iter().map(elem_to_json).collect())
}

fn elems_from_json(ff: &FunctionField, v: &Value, what: &str) -> Result<Vec<FuncFieldElem>> {
    array(v, what)?.iter().map(|e| elem_from_json(ff, e)).collect()
}

pub fn dual_basis_to_json(db: &DualBasis) -> Value {
    json!({"v": elems_to_json(&db.v), "w": elems_to_json(&db.w)})
}

pub fn dual_basis_from_json(ff: &FunctionField, v: &Value) -> Result<DualBasis> {
    let vs = elems_from_json(ff, field(v, "v")?, "v")?;
    let ws = elems_from_json(ff, field(v, "w")?, "w")?;
    if vs.len() != ws.len() || vs.is_empty() {
        return Err(bad("dual basis needs equally many v and w, at least one"));
    }
    let mut sum = ff.zero();
    for (a, b) in vs.iter().zip(&ws) {
        sum = ff.add(&sum, &ff.mul(b, a));
    }
    if sum != ff.one() {
        return Err(Error::InvalidInput("dual basis does not satisfy sum w_i v_i = 1".into()));
    }
    Ok(DualBasis { v: vs, w: ws })
}

pub fn ideal_to_json(ff: &FunctionField, ideal: &IdealLattice) -> Value {
    json!({
        "curve": curve_to_json(ff.curve()),
        "generators": elems_to_json(&ideal.generators_or_basis()),
        "denom": unipoly_to_json(ideal.denom()),
        "hnf": matrix_to_json(ideal.hnf(), unipoly_to_json),
    })
}

/// Rebuilds from `"generators"` when present; a stored `"denom"`/`"hnf"`
/// must then agree with the lattice they generate.
pub fn ideal_from_json(ff: &FunctionField, v: &Value) -> Result<IdealLattice> {
    let stored = match (v.get("denom"), v.get("hnf")) {
        (Some(d), Some(h)) => Some((unipoly_from_json(d)?, matrix_from_json(h, unipoly_from_json)?)),
        (None, None) => None,
        _ => return Err(bad("\"denom\" and \"hnf\" must appear together")),
    };
    let gens = match v.get("generators") {
        Some(g) => elems_from_json(ff, g, "generators")?,
        None => vec![],
    };
    if gens.is_empty() {
        let (denom, hnf) = stored.ok_or_else(|| bad("ideal needs generators or a lattice"))?;
        return IdealLattice::from_parts(ff, denom, hnf, vec![]);
    }
    let ideal = ff.ideal_from_generators(&gens)?;
    if let Some((denom, hnf)) = stored {
        if &denom != ideal.denom() || &hnf != ideal.hnf() {
            return Err(Error::InvalidInput(
                "stored lattice does not match the generators".into(),
            ));
        }
    }
    Ok(ideal)
}

pub fn cm_to_json(m: &CMData) -> Value {
    let mut o = Map::new();
    o.insert("n".into(), json!(m.n()));
    o.insert("kind".into(), json!(m.kind().as_str()));
    match m.kind() {
        CMKind::PlaneCurve => {
            let curve = m.curve().expect("plane-curve data has a curve");
            o.insert("curve".into(), curve_to_json(curve));
            o.insert("points".into(), Value::Array(m.points().iter().map(point_to_json).collect()));
            o.insert("alphas".into(), Value::Array(m.alphas().iter().map(rational_to_json).collect()));
            o.insert("Zbar".into(), qmatrix_to_json(m.zbar()));
        }
        CMKind::QuiverLine => {
            o.insert("Xbar".into(), qmatrix_to_json(m.xbar()));
            o.insert("Ybar".into(), qmatrix_to_json(m.ybar()));
        }
    }
    o.insert("Vbar".into(), qmatrix_to_json(m.vbar()));
    o.insert("Wbar".into(), qmatrix_to_json(m.wbar()));
    if let Some(db) = m.bundle() {
        o.insert("bundle".into(), dual_basis_to_json(db));
    }
    Value::Object(o)
}

pub fn cm_from_json(v: &Value) -> Result<CMData> {
    let kind = match v.get("kind") {
        Some(k) => CMKind::parse(k.as_str().ok_or_else(|| bad("kind must be a string"))?)?,
        None => CMKind::PlaneCurve,
    };
    let vbar = qmatrix_from_json(field(v, "Vbar")?)?;
    let wbar = qmatrix_from_json(field(v, "Wbar")?)?;
    let m = match kind {
        CMKind::QuiverLine => CMData::from_line_parts(
            qmatrix_from_json(field(v, "Xbar")?)?,
            qmatrix_from_json(field(v, "Ybar")?)?,
            vbar,
            wbar,
        )?,
        CMKind::PlaneCurve => {
            let curve = curve_from_json(field(v, "curve")?)?;
            let points = array(field(v, "points")?, "points")?
                .iter()
                .map(|p| point_from_json(&curve, p))
                .collect::<Result<Vec<_>>>()?;
            let zbar = qmatrix_from_json(field(v, "Zbar")?)?;
            let bundle = match v.get("bundle") {
                Some(b) if !b.is_null() => {
                    let ff = FunctionField::new(&curve)?;
                    Some(dual_basis_from_json(&ff, b)?)
                }
                _ => None,
            };
            let m = CMData::from_plane_parts(curve, points, zbar, vbar, wbar, bundle)?;
            if let Some(a) = v.get("alphas") {
                let alphas = array(a, "alphas")?
                    .iter()
                    .map(rational_from_json)
                    .collect::<Result<Vec<_>>>()?;
                if alphas != m.alphas() {
                    return Err(Error::InvalidInput(
                        "alphas do not match the diagonal of Zbar".into(),
                    ));
                }
            }
            m
        }
    };
    if let Some(n) = v.get("n") {
        if count(n, "n")? != m.n() {
            return Err(Error::Dimension(format!("n = {n} but the data has size {}", m.n())));
        }
    }
    Ok(m)
}

pub fn report_to_json(r: &RelationReport) -> Value {
    let mut o = json!({
        "kind": r.kind.as_str(),
        "passed": r.passed,
        "r0_first": qmatrix_to_json(&r.r0_first),
        "r0_second": rational_to_json(&r.r0_second),
    });
    if r.kind == CMKind::PlaneCurve {
        o["r1_residual"] = qmatrix_to_json(&r.r1_residual);
        o["r2_residual"] = qmatrix_to_json(&r.r2_residual);
    }
    o
}

pub fn one_form_to_json(w: &OneForm) -> Value {
    json!({"f": bivar_to_json(&w.f), "g": bivar_to_json(&w.g)})
}

pub fn one_form_from_json(curve: &PlaneCurve, v: &Value) -> Result<OneForm> {
    Ok(OneForm::new(
        curve,
        &bivar_from_json(field(v, "f")?)?,
        &bivar_from_json(field(v, "g")?)?,
    ))
}

pub fn operator_to_json(l: &SkewOperator) -> Value {
    Value::Array(
        l.coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| json!({"zpow": k, "coeff": elem_to_json(c)}))
            .collect(),
    )
}

pub fn operator_from_json(ff: &FunctionField, v: &Value) -> Result<SkewOperator> {
    let mut coeffs: Vec<FuncFieldElem> = Vec::new();
    for t in array(v, "operator")? {
        let k = count(field(t, "zpow")?, "zpow")?;
        let c = elem_from_json(ff, field(t, "coeff")?)?;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, ff.zero());
        }
        coeffs[k] = ff.add(&coeffs[k], &c);
    }
    Ok(SkewOperator::from_coeffs(coeffs))
}

pub fn presentation_to_json(ff: &FunctionField, p: &IdealPresentation) -> Value {
    json!({
        "curve": curve_to_json(ff.curve()),
        "gen_x": operator_to_json(&p.gen_x),
        "gen_y": operator_to_json(&p.gen_y),
        "gen_T": operator_to_json(&p.gen_t),
    })
}

pub fn presentation_from_json(ff: &FunctionField, v: &Value) -> Result<IdealPresentation> {
    Ok(IdealPresentation {
        gen_x: operator_from_json(ff, field(v, "gen_x")?)?,
        gen_y: operator_from_json(ff, field(v, "gen_y")?)?,
        gen_t: operator_from_json(ff, field(v, "gen_T")?)?,
    })
}

pub fn condition_to_json(c: &LocalCondition) -> Value {
    json!({
        "point": point_to_json(&c.point),
        "order": c.order,
        "functional": c.functional.iter().map(rational_to_json).collect::<Vec<_>>(),
    })
}

pub fn condition_from_json(curve: &PlaneCurve, v: &Value) -> Result<LocalCondition> {
    let point = point_from_json(curve, field(v, "point")?)?;
    let functional = array(field(v, "functional")?, "functional")?
        .iter()
        .map(rational_from_json)
        .collect::<Result<Vec<_>>>()?;
    if let Some(o) = v.get("order") {
        if count(o, "order")? != functional.len() {
            return Err(bad("order must equal the number of functional coefficients"));
        }
    }
    LocalCondition::new(point, functional)
}

fn conditions_to_json(cs: &[LocalCondition]) -> Value {
    Value::Array(cs.iter().map(condition_to_json).collect())
}

fn conditions_from_json(curve: &PlaneCurve, v: &Value) -> Result<Vec<LocalCondition>> {
    array(v, "conditions")?
        .iter()
        .map(|c| condition_from_json(curve, c))
        .collect()
}

/// `"cross"` is a list of condition lists; each list is one summed
/// functional.
pub fn pd_to_json(v: &PDSubspace) -> Value {
    json!({
        "curve": curve_to_json(v.curve()),
        "conditions": conditions_to_json(v.conditions()),
        "cross": v.cross().iter().map(|c| conditions_to_json(&c.terms)).collect::<Vec<_>>(),
    })
}

pub fn pd_from_json(v: &Value) -> Result<PDSubspace> {
    let curve = curve_from_json(field(v, "curve")?)?;
    let conditions = match v.get("conditions") {
        Some(c) => conditions_from_json(&curve, c)?,
        None => vec![],
    };
    let cross = match v.get("cross") {
        Some(c) => array(c, "cross")?
            .iter()
            .map(|t| {
                Ok(CrossCondition {
                    terms: conditions_from_json(&curve, t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?,
        None => vec![],
    };
    PDSubspace::new(&curve, conditions, cross)
}

pub fn divisor_to_json(d: &Divisor) -> Value {
    Value::Array(
        d.iter()
            .map(|(p, m)| json!({"point": point_to_json(p), "mult": m}))
            .collect(),
    )
}

pub fn divisor_from_json(curve: &PlaneCurve, v: &Value) -> Result<Divisor> {
    let entries = array(v, "divisor")?
        .iter()
        .map(|e| Ok((point_from_json(curve, field(e, "point")?)?, count(field(e, "mult")?, "mult")?)))
        .collect::<Result<Vec<_>>>()?;
    Divisor::new(entries)
}

pub fn decomposability_to_json(d: &Decomposability) -> Value {
    json!({
        "codim": d.codim,
        "local_sum": d.local_sum,
        "decomposable": d.decomposable,
        "components": d.components.iter().map(|c| json!({
            "point": point_to_json(&c.point),
            "codim": c.codim,
            "conditions": conditions_to_json(&c.conditions),
        })).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cmspace::{build_cm_line, build_cm_trivial, build_cm_twisted};
    use crate::curve::{elliptic, hyperbola};
    use crate::kernel::{q, qi};

    #[test]
    fn rationals() {
        assert_eq!(rational_to_json(&q(-3, 4)), json!("-3/4"));
        assert_eq!(rational_to_json(&qi(5)), json!("5"));
        assert_eq!(rational_from_json(&json!("6/8")).unwrap(), q(3, 4));
        assert_eq!(rational_from_json(&json!(7)).unwrap(), qi(7));
        assert!(rational_from_json(&json!("1/0")).is_err());
        assert!(rational_from_json(&json!(1.5)).is_err());
    }

    #[test]
    fn bivar_both_forms() {
        let f = BivarPoly::parse("y^2 - x^3 - 1").unwrap();
        assert_eq!(bivar_from_json(&bivar_to_json(&f)).unwrap(), f);
        assert_eq!(bivar_from_json(&json!("y^2 - x^3 - 1")).unwrap(), f);
    }

    #[test]
    fn matrix_shape_checked() {
        let v = json!({"rows": 2, "cols": 2, "entries": ["1", "2", "3"]});
        assert!(matches!(qmatrix_from_json(&v), Err(Error::Json(_))));
    }

    #[test]
    fn cm_round_trip() {
        let c = hyperbola();
        let pts = vec![c.point(qi(0), qi(1)).unwrap(), c.point(q(3, 4), q(5, 4)).unwrap()];
        let m = build_cm_trivial(&c, &pts, &[qi(1), qi(-2)]).unwrap();
        let back = cm_from_json(&cm_to_json(&m)).unwrap();
        assert_eq!(back.zbar(), m.zbar());
        assert_eq!(back.vbar(), m.vbar());
        assert_eq!(back.wbar(), m.wbar());
        assert_eq!(back.points(), m.points());

        let line = build_cm_line(&[qi(0), qi(1)], &[qi(2), qi(3)]).unwrap();
        let back = cm_from_json(&cm_to_json(&line)).unwrap();
        assert_eq!(back.xbar(), line.xbar());
        assert_eq!(back.ybar(), line.ybar());
    }

    #[test]
    fn cm_rejects_bad_alphas_and_points() {
        let c = hyperbola();
        let pts = vec![c.point(qi(0), qi(1)).unwrap()];
        let m = build_cm_trivial(&c, &pts, &[qi(1)]).unwrap();
        let mut v = cm_to_json(&m);
        v["alphas"] = json!(["2"]);
        assert!(cm_from_json(&v).is_err());
        let mut v = cm_to_json(&m);
        v["points"] = json!([{"x": "1", "y": "1"}]);
        assert!(matches!(cm_from_json(&v), Err(Error::NotOnCurve { .. })));
    }

    #[test]
    fn twisted_round_trip_keeps_bundle() {
        let c = hyperbola();
        let ff = FunctionField::new(&c).unwrap();
        let gens = vec![
            ff.from_bivar(&BivarPoly::parse("x + 1").unwrap()),
            ff.from_bivar(&BivarPoly::parse("y").unwrap()),
        ];
        let ideal = ff.ideal_from_generators(&gens).unwrap();
        let db = ff.dual_basis(&ideal).unwrap();
        let pts = vec![c.point(qi(0), qi(1)).unwrap()];
        let m = build_cm_twisted(&ff, &db, &pts, &[qi(0)]).unwrap();
        let back = cm_from_json(&cm_to_json(&m)).unwrap();
        assert_eq!(back.bundle(), m.bundle());
        assert_eq!(back.zbar(), m.zbar());

        let iv = ideal_to_json(&ff, &ideal);
        assert_eq!(ideal_from_json(&ff, &iv).unwrap(), ideal);
        let mut tampered = iv.clone();
        tampered["denom"] = json!(["1", "1"]);
        assert!(ideal_from_json(&ff, &tampered).is_err());
        let lattice_only = json!({"denom": iv["denom"], "hnf": iv["hnf"]});
        assert_eq!(ideal_from_json(&ff, &lattice_only).unwrap(), ideal);
    }

    #[test]
    fn operator_round_trip() {
        let ff = FunctionField::new(&elliptic()).unwrap();
        let l = SkewOperator::from_coeffs(vec![ff.y(), ff.zero(), ff.inv(&ff.x()).unwrap()]);
        let v = operator_to_json(&l);
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert_eq!(operator_from_json(&ff, &v).unwrap(), l);
    }

    #[test]
    fn pd_round_trip() {
        let c = hyperbola();
        let p = c.point(qi(0), qi(1)).unwrap();
        let r = c.point(qi(0), qi(-1)).unwrap();
        let v = PDSubspace::new(
            &c,
            vec![LocalCondition::vanishing_coefficient(p.clone(), 1)],
            vec![CrossCondition {
                terms: vec![
                    LocalCondition::vanishing_coefficient(p.clone(), 0),
                    LocalCondition::new(r.clone(), vec![qi(-1)]).unwrap(),
                ],
            }],
        )
        .unwrap();
        assert_eq!(pd_from_json(&pd_to_json(&v)).unwrap(), v);

        let d = Divisor::new([(p, 2), (r, 1)]).unwrap();
        assert_eq!(divisor_from_json(&c, &divisor_to_json(&d)).unwrap(), d);
    }
}
