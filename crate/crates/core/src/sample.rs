//! Seeded generators of admissible configurations for randomized checks.
//!
//! Everything draws from a caller-supplied [`Rng`], so a fixed seed gives a
//! fixed sequence of configurations.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use crate::cmspace::OneForm;
use crate::curve::{CurvePoint, PlaneCurve};
use crate::error::{Error, Result};
use crate::dmod::SkewOperator;
use crate::funcfield::{FuncFieldElem, FunctionField};
use crate::kernel::{q, rational_roots, BivarPoly, RatFuncX, Rational, UniPoly};
use crate::pdspace::{LocalCondition, PDSubspace};

/// `p/q` with `|p| <= num_bound` and `1 <= q <= den_bound`.
pub fn small_rational<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rational {
    q(rng.gen_range(-num_bound..=num_bound), rng.gen_range(1..=den_bound))
}

fn nonzero_rational<R: Rng>(rng: &mut R, num_bound: i64, den_bound: i64) -> Rational {
    loop {
        let r = small_rational(rng, num_bound, den_bound);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Point of `y^2 = x^2 + 1` with parameter `t != 0`:
/// `x = (t - 1/t)/2`, `y = (t + 1/t)/2`.
pub fn hyperbola_point(t: &Rational) -> (Rational, Rational) {
    let inv = t.recip();
    let half = q(1, 2);
    ((t - &inv) * &half, (t + &inv) * &half)
}

fn is_hyperbola(curve: &PlaneCurve) -> bool {
    *curve.f() == BivarPoly::parse("y^2 - x^2 - 1").expect("literal")
}

/// Rational points with small x found by solving `F(x0, y) = 0`.
fn point_pool(curve: &PlaneCurve) -> Vec<CurvePoint> {
    let mut out = Vec::new();
    for den in 1..=4i64 {
        for num in -12..=12i64 {
            let x0 = q(num, den);
            if *x0.denom() != num_bigint::BigInt::from(den) {
                continue;
            }
            let spec = curve.f().specialize_x(&x0);
            if spec.is_constant() {
                continue;
            }
            for y0 in rational_roots(&spec).unwrap_or_default() {
                if let Ok(p) = curve.point(x0.clone(), y0) {
                    out.push(p);
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `n` points with pairwise distinct x- and y-coordinates.
///
/// On the hyperbola the points come from the rational parametrization; on
/// other curves they are drawn from the small-height rational points, which
/// may be too few (an error then).
pub fn admissible_points<R: Rng>(rng: &mut R, curve: &PlaneCurve, n: usize) -> Result<Vec<CurvePoint>> {
    if is_hyperbola(curve) {
        let mut pts: Vec<CurvePoint> = Vec::with_capacity(n);
        while pts.len() < n {
            let t = nonzero_rational(rng, 9, 5);
            let (x, y) = hyperbola_point(&t);
            if pts.iter().any(|p| p.x() == &x || p.y() == &y) {
                continue;
            }
            pts.push(curve.point(x, y)?);
        }
        return Ok(pts);
    }
    admissible_from_pool(rng, &point_pool(curve), n, |_| true)
}

/// `n` admissible points among `pool` satisfying `keep`.
pub fn admissible_from_pool<R: Rng>(
    rng: &mut R,
    pool: &[CurvePoint],
    n: usize,
    keep: impl Fn(&CurvePoint) -> bool,
) -> Result<Vec<CurvePoint>> {
    let mut pool: Vec<&CurvePoint> = pool.iter().filter(|p| keep(p)).collect();
    for _ in 0..64 {
        pool.shuffle(rng);
        let mut pts: Vec<CurvePoint> = Vec::with_capacity(n);
        for p in &pool {
            if pts.len() == n {
                break;
            }
            if pts.iter().all(|r| r.x() != p.x() && r.y() != p.y()) {
                pts.push((*p).clone());
            }
        }
        if pts.len() == n {
            return Ok(pts);
        }
    }
    Err(Error::DegenerateConfiguration(format!(
        "no {n} points with distinct coordinates among the small rational points"
    )))
}

/// Small rational points of the curve (searched, not exhaustive).
pub fn rational_points(curve: &PlaneCurve) -> Vec<CurvePoint> {
    point_pool(curve)
}

pub fn random_alphas<R: Rng>(rng: &mut R, n: usize) -> Vec<Rational> {
    (0..n).map(|_| small_rational(rng, 9, 4)).collect()
}

/// Random polynomial of total degree at most `max_deg`.
pub fn random_bivar<R: Rng>(rng: &mut R, max_deg: u32, coeff_bound: i64) -> BivarPoly {
    let mut terms = Vec::new();
    for r in 0..=max_deg {
        for s in 0..=(max_deg - r) {
            if rng.gen_bool(0.5) {
                terms.push((r, s, small_rational(rng, coeff_bound, 3)));
            }
        }
    }
    BivarPoly::from_terms(terms)
}

pub fn random_one_form<R: Rng>(rng: &mut R, curve: &PlaneCurve) -> OneForm {
    let f = random_bivar(rng, 3, 5);
    let g = random_bivar(rng, 3, 5);
    OneForm::new(curve, &f, &g)
}

/// Random element of the function field, sometimes with a denominator
/// `(x - a)^k`.
pub fn random_elem<R: Rng>(rng: &mut R, ff: &FunctionField, max_deg: u32) -> FuncFieldElem {
    let f = ff.from_bivar(&random_bivar(rng, max_deg, 4));
    if rng.gen_bool(0.3) {
        let a = small_rational(rng, 3, 2);
        let k = rng.gen_range(1..=2u32);
        let den = UniPoly::new(vec![-a, Rational::one()]).pow(k);
        let inv = RatFuncX::new(UniPoly::one(), den).expect("nonzero");
        ff.scale(&f, &inv)
    } else {
        f
    }
}

pub fn random_operator<R: Rng>(
    rng: &mut R,
    ff: &FunctionField,
    max_order: usize,
    max_deg: u32,
) -> SkewOperator {
    let k = rng.gen_range(0..=max_order);
    SkewOperator::from_coeffs((0..=k).map(|_| random_elem(rng, ff, max_deg)).collect())
}

/// Point-local conditions at up to `max_points` points with orders up to
/// `max_order`, together with the multiplicity each point should receive.
///
/// At each point `m` functionals of order `max_order` are drawn in
/// echelon shape (nonzero pivots), so they are independent and cut out
/// codimension exactly `m`.
pub fn random_local_subspace<R: Rng>(
    rng: &mut R,
    curve: &PlaneCurve,
    max_points: usize,
    max_order: usize,
) -> Result<(PDSubspace, Vec<(CurvePoint, usize)>)> {
    let k = rng.gen_range(1..=max_points);
    let pts = admissible_points(rng, curve, k)?;
    let mut conditions = Vec::new();
    let mut expected = Vec::new();
    for p in pts {
        let m = rng.gen_range(1..=max_order);
        let order = max_order;
        let mut cols: Vec<usize> = (0..order).collect();
        cols.shuffle(rng);
        let mut pivots: Vec<usize> = cols[..m].to_vec();
        pivots.sort();
        for (row, &pc) in pivots.iter().enumerate() {
            let mut f = vec![Rational::zero(); order];
            f[pc] = nonzero_rational(rng, 5, 3);
            for (j, slot) in f.iter_mut().enumerate() {
                if j > pc && !pivots[row + 1..].contains(&j) {
                    *slot = small_rational(rng, 5, 3);
                }
            }
            conditions.push(LocalCondition::new(p.clone(), f)?);
        }
        expected.push((p, m));
    }
    conditions.shuffle(rng);
    Ok((PDSubspace::new(curve, conditions, vec![])?, expected))
}
