mod common;

use cmc_core::curve::LocalParam;
use cmc_core::funcfield::FunctionField;
use cmc_core::kernel::{q, qi, Series};
use cmc_core::pdspace::maximal_ideal;
use cmc_core::sample;
use common::*;
use proptest::prelude::*;

#[test]
fn jets_solve_the_curve_to_order_twelve() {
    let mut r = rng(7);
    let pts = c2_points();
    let hyp = sample::admissible_points(&mut r, &c1(), 6).unwrap();
    for k in 1..=12 {
        for p in &pts {
            let jet = c2().jet_expand(p, k).unwrap();
            assert!(jet.expand(c2().f()).is_zero(), "elliptic, k = {k}, p = {p}");
            assert_eq!(jet.series.prec(), k);
        }
        for p in &hyp {
            let jet = c1().jet_expand(p, k).unwrap();
            assert!(jet.expand(c1().f()).is_zero(), "hyperbola, k = {k}, p = {p}");
        }
    }
}

#[test]
fn worked_expansions() {
    let jet = c1().jet_expand(&c1().point(qi(0), qi(1)).unwrap(), 6).unwrap();
    assert_eq!(jet.param, LocalParam::X);
    assert_eq!(jet.series, Series::new(vec![qi(1), qi(0), q(1, 2), qi(0), q(-1, 8)], 6));
    let jet = c2().jet_expand(&c2().point(qi(-1), qi(0)).unwrap(), 6).unwrap();
    assert_eq!(jet.param, LocalParam::Y);
    assert_eq!(jet.series, Series::new(vec![qi(-1), qi(0), q(1, 3), qi(0), q(1, 9)], 6));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Along the branch `d(g) = F_y dg/dt` (t = x - x_p) or `-F_x dg/dt`
    /// (t = y - y_p).
    #[test]
    fn jets_agree_with_the_derivation(seed in any::<u64>(), elliptic in any::<bool>()) {
        let mut r = rng(seed);
        let curve = if elliptic { c2() } else { c1() };
        let pts = if elliptic { c2_points() } else { sample::admissible_points(&mut r, &curve, 3).unwrap() };
        let g = sample::random_bivar(&mut r, 4, 5);
        let dg = curve.derive(&g);
        for p in &pts {
            let k = 9;
            let jet = curve.jet_expand(p, k).unwrap();
            let lhs = jet.expand(&dg).truncate(k - 1);
            let factor = match jet.param {
                LocalParam::X => jet.expand(curve.fy()),
                LocalParam::Y => jet.expand(curve.fx()).scale(&qi(-1)),
            };
            let rhs = factor.truncate(k - 1).mul(&jet.expand(&g).derivative());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn field_arithmetic(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ff = FunctionField::new(&c2()).unwrap();
        let a = sample::random_elem(&mut r, &ff, 3);
        let b = sample::random_elem(&mut r, &ff, 3);
        let c = sample::random_elem(&mut r, &ff, 2);
        prop_assert_eq!(ff.mul(&ff.mul(&a, &b), &c), ff.mul(&a, &ff.mul(&b, &c)));
        prop_assert_eq!(ff.mul(&a, &ff.add(&b, &c)), ff.add(&ff.mul(&a, &b), &ff.mul(&a, &c)));
        let leibniz = ff.add(&ff.mul(&ff.derive(&a), &b), &ff.mul(&a, &ff.derive(&b)));
        prop_assert_eq!(ff.derive(&ff.mul(&a, &b)), leibniz);
        if !a.is_zero() {
            prop_assert_eq!(ff.mul(&a, &ff.inv(&a).unwrap()), ff.one());
        }
    }

    #[test]
    fn eval_matches_expansion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ff = FunctionField::new(&c1()).unwrap();
        let a = sample::random_elem(&mut r, &ff, 3);
        let p = &sample::admissible_points(&mut r, &c1(), 1).unwrap()[0];
        let e = ff.expand_at(&a, p, 4).unwrap();
        match ff.eval(&a, p) {
            Ok(v) => prop_assert_eq!(e.coeff(0).unwrap(), v),
            Err(_) => prop_assert!(e.valuation().unwrap() < 0),
        }
    }

}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn ideal_times_inverse_is_unit(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ff = FunctionField::new(&c1()).unwrap();
        let pts = sample::admissible_points(&mut r, &c1(), 2).unwrap();
        let m0 = maximal_ideal(&ff, &pts[0]).unwrap();
        let m1 = maximal_ideal(&ff, &pts[1]).unwrap();
        let prod = ff.ideal_mul(&ff.ideal_mul(&m0, &m0).unwrap(), &m1).unwrap();
        for i in [&m0, &prod] {
            let inv = ff.ideal_inverse(i).unwrap();
            prop_assert!(ff.ideal_mul(i, &inv).unwrap().is_unit_ideal());
            prop_assert!(!inv.is_integral());
            let db = ff.dual_basis(i).unwrap();
            for v in &db.v {
                prop_assert!(ff.ideal_contains(i, v));
            }
            for w in &db.w {
                prop_assert!(ff.ideal_contains(&inv, w));
            }
        }
    }
}

#[test]
fn twisted_dual_basis_and_phi() {
    let ff = FunctionField::new(&c2()).unwrap();
    let (i, db) = twisted_bundle(&ff);
    let mut sum = ff.zero();
    for (v, w) in db.v.iter().zip(&db.w) {
        sum = ff.add(&sum, &ff.mul(w, v));
    }
    assert_eq!(sum, ff.one());
    let inv = ff.ideal_inverse(&i).unwrap();
    assert!(ff.ideal_mul(&i, &inv).unwrap().is_unit_ideal());
    for p in c2_points().iter().filter(|p| p.x() != &qi(-1)) {
        assert_eq!(ff.phi_eval(&db, p, p).unwrap(), qi(1));
    }
    let (_, db2) = twisted_bundle_shifted(&ff);
    for p in c2_points() {
        assert_eq!(ff.phi_eval(&db2, &p, &p).unwrap(), qi(1));
    }
}

#[test]
fn phi_is_one_on_the_diagonal_at_many_points() {
    let ff = FunctionField::new(&c1()).unwrap();
    let p0 = c1().point(qi(0), qi(1)).unwrap();
    let m = maximal_ideal(&ff, &p0).unwrap();
    let db = ff.dual_basis(&m).unwrap();
    let mut r = rng(11);
    let pts = sample::admissible_points(&mut r, &c1(), 12).unwrap();
    let mut checked = 0;
    for p in pts.iter().filter(|p| **p != p0) {
        assert_eq!(ff.phi_eval(&db, p, p).unwrap(), qi(1));
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn powers_of_a_unit() {
    let ff = FunctionField::new(&c1()).unwrap();
    let u = ff.from_bivar(&bp("x + y"));
    let u_inv = ff.from_bivar(&bp("y - x"));
    for k in 0..=4 {
        let uk = ff.pow(&u, k);
        assert!(ff.is_unit(&uk));
        assert_eq!(ff.inv(&uk).unwrap(), ff.pow(&u_inv, k));
    }
    assert!(!ff.is_unit(&ff.x()));
    assert!(ff.ideal_from_generators(&[ff.pow(&u, 3)]).unwrap().is_unit_ideal());
}
