mod common;

use cmc_core::curve::PlaneCurve;
use cmc_core::dmod::apply_to_function;
use cmc_core::funcfield::FunctionField;
use cmc_core::kernel::{BivarPoly, Matrix, Rational};
use cmc_core::pdspace::{
    bounded_ch_search, divisor_gamma, is_primary_decomposable, primary_components,
    LocalCondition, PDSubspace,
};
use cmc_core::sample;
use common::*;
use num_traits::Zero;
use proptest::prelude::*;

fn curve_for(flag: bool) -> PlaneCurve {
    if flag {
        c2()
    } else {
        c1()
    }
}

/// Elements of `V` among polynomials of total degree `<= deg`, found by
/// solving the conditions directly on monomial jets.
fn members(v: &PDSubspace, deg: u32) -> Vec<BivarPoly> {
    let curve = v.curve();
    let monos: Vec<BivarPoly> = (0..=deg)
        .flat_map(|r| (0..=deg - r).map(move |s| (r, s)))
        .filter(|&(_, s)| s < curve.deg_y())
        .map(|(r, s)| BivarPoly::from_terms([(r, s, Rational::from_integer(1.into()))]))
        .collect();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut row_of = |conds: &[LocalCondition]| {
        let row = monos
            .iter()
            .map(|m| {
                conds.iter().fold(Rational::zero(), |acc, c| {
                    let jet = curve.jet_expand(&c.point, c.order).unwrap();
                    let e = jet.expand(m);
                    c.functional
                        .iter()
                        .enumerate()
                        .fold(acc, |a, (j, f)| a + f * e.coeff(j))
                })
            })
            .collect();
        rows.push(row);
    };
    for c in v.conditions() {
        row_of(std::slice::from_ref(c));
    }
    for c in v.cross() {
        row_of(&c.terms);
    }
    if rows.is_empty() {
        return monos;
    }
    let m = Matrix::from_rows(rows).unwrap();
    m.nullspace()
        .into_iter()
        .map(|k| {
            monos
                .iter()
                .zip(&k)
                .fold(BivarPoly::zero(), |acc, (mono, c)| &acc + &mono.scale(c))
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn codimension_identity(seed in any::<u64>(), elliptic in any::<bool>()) {
        let curve = curve_for(elliptic);
        let mut r = rng(seed);
        let (v, expected) = sample::random_local_subspace(&mut r, &curve, 3, 3).unwrap();
        let dec = is_primary_decomposable(&v).unwrap();
        let total: usize = expected.iter().map(|(_, m)| m).sum();
        prop_assert!(dec.decomposable);
        prop_assert_eq!(dec.codim, total);
        prop_assert_eq!(dec.local_sum, total);
        let d = divisor_gamma(&v).unwrap();
        for (p, m) in &expected {
            prop_assert_eq!(d.mult(p), *m);
        }
        prop_assert_eq!(d.degree(), total);
    }

    #[test]
    fn members_satisfy_the_conditions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (v, _) = sample::random_local_subspace(&mut r, &c1(), 2, 2).unwrap();
        for f in members(&v, 4) {
            prop_assert!(v.contains(&f).unwrap());
        }
    }

    #[test]
    fn components_are_local(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (v, _) = sample::random_local_subspace(&mut r, &c1(), 2, 3).unwrap();
        let before = primary_components(&v).unwrap();
        let support = v.support();
        let extra = loop {
            let p = sample::admissible_points(&mut r, &c1(), 1).unwrap().remove(0);
            if !support.contains(&p) {
                break p;
            }
        };
        let mut conds = v.conditions().to_vec();
        conds.push(LocalCondition::vanishing_coefficient(extra.clone(), 1));
        let w = PDSubspace::new(&c1(), conds, vec![]).unwrap();
        let after = primary_components(&w).unwrap();
        for c in &before {
            let same = after.iter().find(|a| a.point == c.point).unwrap();
            prop_assert_eq!(same.codim, c.codim);
        }
        prop_assert_eq!(after.len(), before.len() + 1);
    }

    #[test]
    fn gamma_is_additive(seed in any::<u64>(), elliptic in any::<bool>()) {
        let curve = curve_for(elliptic);
        let mut r = rng(seed);
        let (a, _) = sample::random_local_subspace(&mut r, &curve, 2, 3).unwrap();
        let (b, _) = sample::random_local_subspace(&mut r, &curve, 2, 3).unwrap();
        let sa = a.support();
        if b.support().iter().any(|p| sa.contains(p)) {
            return Ok(());
        }
        let mut conds = a.conditions().to_vec();
        conds.extend(b.conditions().iter().cloned());
        let ab = PDSubspace::new(&curve, conds, vec![]).unwrap();
        let sum = divisor_gamma(&a).unwrap().add(&divisor_gamma(&b).unwrap());
        prop_assert_eq!(divisor_gamma(&ab).unwrap(), sum);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn searched_operators_map_members_into_the_ring(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (v, _) = sample::random_local_subspace(&mut r, &c1(), 2, 2).unwrap();
        let ff = FunctionField::new(&c1()).unwrap();
        let ops = bounded_ch_search(&ff, &v, 1, 1, 1).unwrap();
        prop_assert!(!ops.is_empty());
        let fs = members(&v, 4);
        for l in &ops {
            for f in &fs {
                let g = apply_to_function(&ff, l, &ff.from_bivar(f));
                prop_assert!(g.is_integral(), "{} applied to {} gives {}", l, f, g);
            }
        }
    }
}
