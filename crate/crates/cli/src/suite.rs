//! The acceptance suite: one deterministic check per criterion.
//!
//! Every randomized configuration comes from a ChaCha8 stream seeded with
//! `seed` mixed with the criterion number and a per-case counter, so a run is
//! reproducible from the seed alone. Criteria run in parallel; each is
//! independent and the results are reported in criterion order.

use std::fmt;
use std::time::{Duration, Instant};

use cmc_core::cmspace::{
    build_cm_trivial, build_cm_trivial_with, build_cm_twisted, dlog, sigma_shift,
    verify_relations, CMData, MoserConvention, OneForm,
};
use cmc_core::curve::{elliptic, hyperbola, CurvePoint, LocalParam, PlaneCurve};
use cmc_core::dmod::{
    build_ideal_presentation, left_mul_z, skew_mul, z_pow_times, SkewOperator,
};
use cmc_core::funcfield::{DualBasis, FunctionField};
use cmc_core::kernel::{q, qi, BivarPoly, Matrix, Rational, Series};
use cmc_core::pdspace::{
    divisor_gamma, is_primary_decomposable, primary_components, CrossCondition,
    LocalCondition, PDSubspace,
};
use cmc_core::sample;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

pub const DEFAULT_SEED: u64 = 20_240_611;

/// Result of one criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} [{tag}] {}: {}", self.id, self.title, self.detail)
    }
}

impl Outcome {
    pub fn to_json(&self) -> Value {
        json!({"id": self.id, "title": self.title, "passed": self.passed, "detail": self.detail})
    }
}

type Check = fn(u64) -> Result<String, String>;

const CRITERIA: [(u32, &str, Check); 10] = [
    (1, "relation suite", relation_suite),
    (2, "convention falsification", convention_falsification),
    (3, "twisted bundle", twisted_bundle),
    (4, "golden Moser matrix", golden_moser),
    (5, "skew-ring oracle", skew_ring_oracle),
    (6, "ideal presentation invariants", presentation_invariants),
    (7, "one-form action", one_form_action),
    (8, "primary decomposition", primary_decomposition),
    (9, "jets", jets),
    (10, "not certified at desk scale", not_certified),
];

pub fn criterion_ids() -> Vec<u32> {
    CRITERIA.iter().map(|c| c.0).collect()
}

/// Runs the selected criteria (all when `only` is empty) in parallel.
pub fn run(seed: u64, only: &[u32]) -> Vec<Outcome> {
    CRITERIA
        .par_iter()
        .filter(|c| only.is_empty() || only.contains(&c.0))
        .map(|&(id, title, check)| {
            let (passed, detail) = match std::panic::catch_unwind(|| check(seed)) {
                Ok(Ok(d)) => (true, d),
                Ok(Err(d)) => (false, d),
                Err(_) => (false, "check panicked".to_string()),
            };
            Outcome {
                id,
                title,
                passed,
                detail,
            }
        })
        .collect()
}

fn rng_for(seed: u64, criterion: u64, case: u64) -> ChaCha8Rng {
    let mixed = seed
        ^ criterion.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ case.wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    ChaCha8Rng::seed_from_u64(mixed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: cmc_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn bp(s: &str) -> BivarPoly {
    BivarPoly::parse(s).expect("literal polynomial")
}

fn point(c: &PlaneCurve, x: Rational, y: Rational) -> Result<CurvePoint, String> {
    core(c.point(x, y))
}

fn c1_golden() -> Result<(PlaneCurve, Vec<CurvePoint>), String> {
    let c = hyperbola();
    let pts = vec![point(&c, q(3, 4), q(5, 4))?, point(&c, q(4, 3), q(5, 3))?];
    Ok((c, pts))
}

fn random_config(
    rng: &mut ChaCha8Rng,
    curve: &PlaneCurve,
    n: usize,
) -> Result<CMData, String> {
    let pts = core(sample::admissible_points(rng, curve, n))?;
    let alphas = sample::random_alphas(rng, n);
    core(build_cm_trivial(curve, &pts, &alphas))
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn relation_suite(seed: u64) -> Result<String, String> {
    let start = Instant::now();
    let mut total = 0;
    for (ci, (curve, max_n)) in [(hyperbola(), 4usize), (elliptic(), 3)].iter().enumerate() {
        for n in 1..=*max_n {
            for k in 0..20u64 {
                let mut rng = rng_for(seed, 1, (ci as u64) << 32 | (n as u64) << 16 | k);
                let m = random_config(&mut rng, curve, n)?;
                let rep = verify_relations(&m);
                ensure(rep.passed, || format!("{curve}, n = {n}, case {k}:\n{rep}"))?;
                total += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || {
        format!("{total} configurations passed but took {}", secs(elapsed))
    })?;
    Ok(format!(
        "{total} seeded configurations (20 per curve and n), all residuals exactly zero, {}",
        secs(elapsed)
    ))
}

fn convention_falsification(_: u64) -> Result<String, String> {
    let (c, pts) = c1_golden()?;
    let zero = [qi(0), qi(0)];
    let adopted = core(build_cm_trivial_with(&c, &pts, &zero, MoserConvention::Adopted))?;
    let transposed = core(build_cm_trivial_with(&c, &pts, &zero, MoserConvention::Transposed))?;
    let ra = verify_relations(&adopted);
    let rt = verify_relations(&transposed);
    ensure(ra.passed, || format!("adopted convention fails:\n{ra}"))?;
    ensure(!rt.passed && !rt.r1_residual.is_zero(), || {
        "transposed convention unexpectedly satisfies the [Z, X] relation".into()
    })?;
    Ok(format!(
        "adopted passes; transposed fails with [Z, X] residual {}",
        rt.r1_residual
    ))
}

fn dual_sum(ff: &FunctionField, db: &DualBasis) -> cmc_core::funcfield::FuncFieldElem {
    db.v.iter()
        .zip(&db.w)
        .fold(ff.zero(), |acc, (v, w)| ff.add(&acc, &ff.mul(w, v)))
}

fn twisted_bundle(seed: u64) -> Result<String, String> {
    let c = elliptic();
    let ff = core(FunctionField::new(&c))?;
    let gens = [ff.from_bivar(&bp("x + 1")), ff.y()];
    let ideal = core(ff.ideal_from_generators(&gens))?;
    let db = core(ff.dual_basis(&ideal))?;
    ensure(dual_sum(&ff, &db) == ff.one(), || "sum w_i v_i != 1".into())?;

    // The representative (y, x^2 - x + 1) = (y/(x+1)) I does not vanish at
    // (-1, 0), which is the only rational affine point on the zero locus of I.
    let shifted = core(ff.ideal_from_generators(&[ff.y(), ff.from_bivar(&bp("x^2 - x + 1"))]))?;
    let h = core(ff.div(&ff.y(), &ff.from_bivar(&bp("x + 1"))))?;
    ensure(core(ff.ideal_scale(&ideal, &h))? == shifted, || {
        "(y, x^2 - x + 1) is not y/(x+1) times (x + 1, y)".into()
    })?;
    let db_shift = core(ff.dual_basis(&shifted))?;
    ensure(dual_sum(&ff, &db_shift) == ff.one(), || "sum w_i v_i != 1 for the shift".into())?;

    let all = sample::rational_points(&c);
    let regular: Vec<&CurvePoint> = all.iter().filter(|p| p.x() != &qi(-1)).collect();
    for p in &regular {
        let phi = core(ff.phi_eval(&db, p, p))?;
        ensure(phi.is_one(), || format!("phi({p}, {p}) = {phi} for I"))?;
    }
    for p in &all {
        let phi = core(ff.phi_eval(&db_shift, p, p))?;
        ensure(phi.is_one(), || format!("phi({p}, {p}) = {phi} for the shift"))?;
    }
    ensure(all.len() >= 5, || format!("only {} rational points found", all.len()))?;

    let mut runs = 0;
    for n in 1..=3usize {
        for k in 0..5u64 {
            let mut rng = rng_for(seed, 3, (n as u64) << 16 | k);
            let (bundle, pts) = if n < 3 {
                let pts = core(sample::admissible_from_pool(&mut rng, &all, n, |p| {
                    p.x() != &qi(-1)
                }))?;
                (&db, pts)
            } else {
                let pts = core(sample::admissible_from_pool(&mut rng, &all, n, |_| true))?;
                (&db_shift, pts)
            };
            let alphas = sample::random_alphas(&mut rng, n);
            let m = core(build_cm_twisted(&ff, bundle, &pts, &alphas))?;
            let rep = verify_relations(&m);
            ensure(rep.passed, || format!("twisted n = {n}:\n{rep}"))?;
            let vw = core(m.vbar().try_mul(m.wbar()))?;
            ensure((0..n).all(|i| vw.get(i, i) == &qi(-1)), || {
                format!("diagonal of sum v_i w_i is not -1: {vw}")
            })?;
            let wv = core(m.wbar().try_mul(m.vbar()))?.trace();
            ensure(wv == qi(-(n as i64)), || format!("sum w_i v_i = {wv}, expected -{n}"))?;
            runs += 1;
        }
    }

    // golden configuration, values recomputed from F and phi before comparing
    let p1 = point(&c, qi(0), qi(1))?;
    let p2 = point(&c, qi(2), qi(3))?;
    let m = core(build_cm_twisted(&ff, &db, &[p1.clone(), p2.clone()], &[qi(0), qi(0)]))?;
    let phi12 = core(ff.phi_eval(&db, &p1, &p2))?;
    let phi21 = core(ff.phi_eval(&db, &p2, &p1))?;
    let f = c.f();
    let diff = (p1.x() - p2.x()) * (p1.y() - p2.y());
    let z12 = f.eval(p2.x(), p1.y()) * &phi12 / &diff;
    let z21 = f.eval(p1.x(), p2.y()) * &phi21 / &diff;
    let vw = core(m.vbar().try_mul(m.wbar()))?;
    let oracle_vw = core(Matrix::from_rows(vec![
        vec![qi(-1), -phi12.clone()],
        vec![-phi21.clone(), qi(-1)],
    ]))?;
    ensure(vw == oracle_vw, || format!("sum v_i w_i = {vw}, oracle {oracle_vw}"))?;
    ensure(m.zbar().get(0, 1) == &z12 && m.zbar().get(1, 0) == &z21, || {
        format!("Z = {}, oracle Z12 = {z12}, Z21 = {z21}", m.zbar())
    })?;
    let golden = core(Matrix::from_rows(vec![
        vec![qi(-1), q(-1, 3)],
        vec![qi(-3), qi(-1)],
    ]))?;
    ensure(vw == golden, || format!("sum v_i w_i = {vw}"))?;
    ensure(z12 == q(-2, 3) && z21 == qi(6), || format!("Z12 = {z12}, Z21 = {z21}"))?;
    Ok(format!(
        "sum w_i v_i = 1 for I = (x+1, y) and (y, x^2-x+1); phi(p,p) = 1 at {} points for I and {} for the shift; \
         {runs} twisted configurations pass (n = 3 uses the shift); golden sum v_i w_i = {vw}, Z12 = {z12}, Z21 = {z21}",
        regular.len(),
        all.len()
    ))
}

fn golden_moser(_: u64) -> Result<String, String> {
    let (c, pts) = c1_golden()?;
    let m = core(build_cm_trivial(&c, &pts, &[qi(0), qi(0)]))?;
    let expected = core(Matrix::from_rows(vec![vec![qi(0), qi(-5)], vec![qi(5), qi(0)]]))?;
    ensure(m.zbar() == &expected, || format!("Z = {}", m.zbar()))?;
    Ok(format!("Z = {}", m.zbar()))
}

fn skew_ring_oracle(seed: u64) -> Result<String, String> {
    let ff = core(FunctionField::new(&hyperbola()))?;
    let mut rng = rng_for(seed, 5, 0);
    let mut checks = 0;
    for _ in 0..50 {
        let f = sample::random_elem(&mut rng, &ff, 3);
        let mut it = SkewOperator::function(f.clone());
        for k in 0..=6 {
            ensure(z_pow_times(&ff, k, &f) == it, || format!("z^{k} * ({f}) disagrees"))?;
            it = left_mul_z(&ff, &it);
            checks += 1;
        }
    }
    for _ in 0..50 {
        let a = sample::random_operator(&mut rng, &ff, 3, 2);
        let b = sample::random_operator(&mut rng, &ff, 3, 2);
        let c = sample::random_operator(&mut rng, &ff, 3, 2);
        let left = skew_mul(&ff, &skew_mul(&ff, &a, &b), &c);
        let right = skew_mul(&ff, &a, &skew_mul(&ff, &b, &c));
        ensure(left == right, || format!("(ab)c != a(bc) for a = {a}, b = {b}, c = {c}"))?;
    }
    Ok(format!(
        "binomial form equals iterated commutation in {checks} cases (50 f, k <= 6); 50 associative triples"
    ))
}

fn lin(c: Rational, var: &str) -> BivarPoly {
    // c - var
    &BivarPoly::constant(c) - &bp(var)
}

fn presentation_invariants(seed: u64) -> Result<String, String> {
    let c = hyperbola();
    let ff = core(FunctionField::new(&c))?;
    let one = SkewOperator::function(ff.one());
    let m0 = core(build_cm_trivial(&c, &[], &[]))?;
    let p0 = core(build_ideal_presentation(&ff, &m0))?;
    ensure(p0.gen_x == one && p0.gen_y == one && p0.gen_t == one, || {
        "n = 0 does not give the unit ideal".into()
    })?;

    let p = point(&c, q(3, 4), q(5, 4))?;
    let m1 = core(build_cm_trivial(&c, &[p], &[qi(0)]))?;
    let p1 = core(build_ideal_presentation(&ff, &m1))?;
    let gx = ff.from_bivar(&lin(q(3, 4), "x"));
    let gy = ff.from_bivar(&lin(q(5, 4), "y"));
    let h = core(ff.div(&ff.from_bivar(&bp("y + 5/4")), &gx))?;
    let gt = SkewOperator::from_coeffs(vec![h, ff.from_rational(qi(-1))]);
    ensure(p1.gen_x == SkewOperator::function(gx), || format!("gen_x = {}", p1.gen_x))?;
    ensure(p1.gen_y == SkewOperator::function(gy), || format!("gen_y = {}", p1.gen_y))?;
    ensure(p1.gen_t == gt, || format!("gen_T = {}", p1.gen_t))?;

    let sign = |n: usize| if n.is_multiple_of(2) { qi(1) } else { qi(-1) };
    let mut checked = 0;
    let el = elliptic();
    let ffe = core(FunctionField::new(&el))?;
    let shifted = core(ffe.ideal_from_generators(&[ffe.y(), ffe.from_bivar(&bp("x^2 - x + 1"))]))?;
    let db = core(ffe.dual_basis(&shifted))?;
    for case in 0..4u64 {
        for n in 0..=4usize {
            let mut rng = rng_for(seed, 6, case << 8 | n as u64);
            let mut datas = vec![(&ff, random_config(&mut rng, &c, n)?)];
            if n <= 3 {
                datas.push((&ffe, random_config(&mut rng, &el, n)?));
                let pts = core(sample::admissible_points(&mut rng, &el, n))?;
                let alphas = sample::random_alphas(&mut rng, n);
                if n > 0 {
                    datas.push((&ffe, core(build_cm_twisted(&ffe, &db, &pts, &alphas))?));
                }
            }
            for (field, m) in datas {
                let pres = core(build_ideal_presentation(field, &m))?;
                ensure(pres.gen_t.degree() == Some(n), || {
                    format!("gen_T has z-degree {:?}, expected {n}", pres.gen_t.degree())
                })?;
                let lead = pres.gen_t.leading().cloned().unwrap_or_else(|| field.zero());
                ensure(lead == field.from_rational(sign(n)), || {
                    format!("gen_T leading coefficient {lead} for n = {n}")
                })?;
                checked += 1;
            }
        }
    }

    let mut perms = 0;
    for n in 2..=4usize {
        let mut rng = rng_for(seed, 6, 1 << 20 | n as u64);
        let pts = core(sample::admissible_points(&mut rng, &c, n))?;
        let alphas = sample::random_alphas(&mut rng, n);
        let base = core(build_ideal_presentation(
            &ff,
            &core(build_cm_trivial(&c, &pts, &alphas))?,
        ))?;
        for _ in 0..3 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let pp: Vec<_> = perm.iter().map(|&i| pts[i].clone()).collect();
            let pa: Vec<_> = perm.iter().map(|&i| alphas[i].clone()).collect();
            let other = core(build_ideal_presentation(
                &ff,
                &core(build_cm_trivial(&c, &pp, &pa))?,
            ))?;
            ensure(other == base, || format!("presentation changes under permutation {perm:?}"))?;
            perms += 1;
        }
    }
    Ok(format!(
        "unit ideal at n = 0; n = 1 golden generators reproduced; degree n and leading (-1)^n for {checked} builder outputs (n <= 4); \
         {perms} permutations leave gen_T unchanged"
    ))
}

fn one_form_action(seed: u64) -> Result<String, String> {
    let mut configs = 0;
    let mut forms = 0;
    for (ci, (curve, max_n)) in [(hyperbola(), 3usize), (elliptic(), 3)].iter().enumerate() {
        for n in 1..=*max_n {
            let mut rng = rng_for(seed, 7, (ci as u64) << 16 | n as u64);
            let m = random_config(&mut rng, curve, n)?;
            for _ in 0..10 {
                let w = sample::random_one_form(&mut rng, curve);
                let shifted = core(sigma_shift(&m, &w))?;
                let rep = verify_relations(&shifted);
                ensure(rep.passed, || format!("shift breaks the relations:\n{rep}"))?;
                forms += 1;
            }
            configs += 1;
        }
    }
    let (c, pts) = c1_golden()?;
    let ff = core(FunctionField::new(&c))?;
    let m = core(build_cm_trivial(&c, &pts, &[qi(0), qi(0)]))?;
    let w = core(dlog(&ff, &ff.from_bivar(&bp("x + y"))))?;
    let shifted = core(sigma_shift(&m, &w))?;
    let diff = core(shifted.zbar().try_sub(m.zbar()))?;
    ensure(diff == Matrix::identity(2).scale(&qi(-2)), || {
        format!("dlog(x + y) shifts Z by {diff}")
    })?;
    let wc = core(dlog(&ff, &ff.from_rational(q(7, 3))))?;
    ensure(wc == OneForm::zero(), || "dlog of a constant is not zero".into())?;
    Ok(format!(
        "{forms} random one-forms over {configs} configurations preserve the relations; dlog(x + y) shifts Z by -2 Id; dlog(7/3) = 0"
    ))
}

fn primary_decomposition(seed: u64) -> Result<String, String> {
    let mut sets = 0;
    for (ci, curve) in [hyperbola(), elliptic()].iter().enumerate() {
        for k in 0..12u64 {
            let mut rng = rng_for(seed, 8, (ci as u64) << 16 | k);
            let (v, expected) = core(sample::random_local_subspace(&mut rng, curve, 3, 3))?;
            let dec = core(is_primary_decomposable(&v))?;
            let total: usize = expected.iter().map(|(_, m)| m).sum();
            ensure(dec.decomposable && dec.codim == total, || {
                format!("codim {} vs local sum {} (expected {total})", dec.codim, dec.local_sum)
            })?;
            let d = core(divisor_gamma(&v))?;
            for (p, m) in &expected {
                ensure(d.mult(p) == *m, || format!("gamma gives {} at {p}, expected {m}", d.mult(p)))?;
            }
            // recomputes d_x at K and K + 1 and rejects a mismatch
            core(primary_components(&v))?;
            sets += 1;
        }
    }
    let c = hyperbola();
    let p1 = point(&c, q(3, 4), q(5, 4))?;
    let p2 = point(&c, qi(0), qi(1))?;
    let cross = CrossCondition {
        terms: vec![
            core(LocalCondition::new(p1, vec![qi(1)]))?,
            core(LocalCondition::new(p2, vec![qi(-1)]))?,
        ],
    };
    let v = core(PDSubspace::new(&c, vec![], vec![cross]))?;
    let dec = core(is_primary_decomposable(&v))?;
    ensure(!dec.decomposable && dec.codim == 1 && dec.local_sum == 0, || {
        format!("cross example: {dec}")
    })?;
    ensure(divisor_gamma(&v).is_err(), || "gamma accepted a non-decomposable V".into())?;
    Ok(format!(
        "codim = sum d_x and gamma matches on {sets} random condition sets; stable at K and K+1; cross example flagged (1 != 0)"
    ))
}

fn jets(seed: u64) -> Result<String, String> {
    let mut rng = rng_for(seed, 9, 0);
    let c1 = hyperbola();
    let c2 = elliptic();
    let mut cases = vec![];
    for p in core(sample::admissible_points(&mut rng, &c1, 5))? {
        cases.push((c1.clone(), p));
    }
    for p in sample::rational_points(&c2) {
        cases.push((c2.clone(), p));
    }
    for (c, p) in &cases {
        for k in 1..=12 {
            let jet = core(c.jet_expand(p, k))?;
            ensure(jet.expand(c.f()).is_zero(), || format!("F(jet) != 0 mod t^{k} at {p} on {c}"))?;
        }
    }
    let j1 = core(c1.jet_expand(&point(&c1, qi(0), qi(1))?, 5))?;
    let j2 = core(c2.jet_expand(&point(&c2, qi(-1), qi(0))?, 5))?;
    let w1 = Series::new(vec![qi(1), qi(0), q(1, 2), qi(0), q(-1, 8)], 5);
    let w2 = Series::new(vec![qi(-1), qi(0), q(1, 3), qi(0), q(1, 9)], 5);
    ensure(j1.param == LocalParam::X && j1.series == w1, || format!("y(t) = {:?}", j1.series))?;
    ensure(j2.param == LocalParam::Y && j2.series == w2, || format!("x(t) = {:?}", j2.series))?;
    Ok(format!(
        "F vanishes mod t^k for k <= 12 at {} points on both curves; y = 1 + t^2/2 - t^4/8 and x = -1 + t^2/3 + t^4/9 reproduced",
        cases.len()
    ))
}

fn not_certified(seed: u64) -> Result<String, String> {
    // The builder is a map from n points and n alphas; check that it is
    // injective by reading the parameters back and rebuilding.
    let c = hyperbola();
    for n in 1..=4usize {
        let mut rng = rng_for(seed, 10, n as u64);
        let m = random_config(&mut rng, &c, n)?;
        let xs: Vec<Rational> = (0..n).map(|i| m.xbar().get(i, i).clone()).collect();
        let ys: Vec<Rational> = (0..n).map(|i| m.ybar().get(i, i).clone()).collect();
        let pts = xs
            .into_iter()
            .zip(ys)
            .map(|(x, y)| point(&c, x, y))
            .collect::<Result<Vec<_>, _>>()?;
        let alphas: Vec<Rational> = (0..n).map(|i| m.zbar().get(i, i).clone()).collect();
        let again = core(build_cm_trivial(&c, &pts, &alphas))?;
        ensure(again.zbar() == m.zbar(), || "parameters do not determine the data".into())?;
    }
    Ok("smoothness, irreducibility and dimension 2n of the space, and bijectivity and equivariance of the \
        classifying map, are NOT certified; only the 2n-parameter count of the builder (n points, n alphas, \
        recovered exactly from the data) is checked"
        .into())
}
