mod common;

use cmc_core::cmspace::{build_cm_trivial, build_cm_twisted, CMData};
use cmc_core::dmod::{
    apply_to_function, build_ideal_presentation, left_mul_z, skew_mul, z_pow_times, SkewOperator,
};
use cmc_core::funcfield::FunctionField;
use cmc_core::kernel::qi;
use cmc_core::sample;
use common::*;
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn sign(n: usize) -> cmc_core::kernel::Rational {
    if n.is_multiple_of(2) {
        qi(1)
    } else {
        qi(-1)
    }
}

fn check_gen_t(ff: &FunctionField, m: &CMData) {
    let pres = build_ideal_presentation(ff, m).unwrap();
    let n = m.n();
    assert_eq!(pres.gen_t.degree(), Some(n));
    assert_eq!(pres.gen_t.leading().unwrap(), &ff.from_rational(sign(n)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn binomial_rule_matches_iteration(seed in any::<u64>(), k in 0usize..=6) {
        let mut r = rng(seed);
        let ff = FunctionField::new(&c1()).unwrap();
        let f = sample::random_elem(&mut r, &ff, 3);
        let mut it = SkewOperator::function(f.clone());
        for _ in 0..k {
            it = left_mul_z(&ff, &it);
        }
        prop_assert_eq!(z_pow_times(&ff, k, &f), it);
    }

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ff = FunctionField::new(&c1()).unwrap();
        let a = sample::random_operator(&mut r, &ff, 3, 2);
        let b = sample::random_operator(&mut r, &ff, 3, 2);
        let c = sample::random_operator(&mut r, &ff, 3, 2);
        let left = skew_mul(&ff, &skew_mul(&ff, &a, &b), &c);
        let right = skew_mul(&ff, &a, &skew_mul(&ff, &b, &c));
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn filtration_and_symbols(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ff = FunctionField::new(&c2()).unwrap();
        let a = sample::random_operator(&mut r, &ff, 3, 2);
        let b = sample::random_operator(&mut r, &ff, 3, 2);
        let ab = skew_mul(&ff, &a, &b);
        match (a.degree(), b.degree()) {
            (Some(da), Some(db)) => {
                prop_assert_eq!(ab.degree(), Some(da + db));
                let sym = ff.mul(a.leading().unwrap(), b.leading().unwrap());
                prop_assert_eq!(ab.leading().unwrap(), &sym);
            }
            _ => prop_assert!(ab.is_zero()),
        }
    }

    #[test]
    fn action_is_compatible(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ff = FunctionField::new(&c1()).unwrap();
        let a = sample::random_operator(&mut r, &ff, 2, 2);
        let b = sample::random_operator(&mut r, &ff, 2, 2);
        let f = sample::random_elem(&mut r, &ff, 3);
        let lhs = apply_to_function(&ff, &skew_mul(&ff, &a, &b), &f);
        let rhs = apply_to_function(&ff, &a, &apply_to_function(&ff, &b, &f));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn presentation_is_label_free(seed in any::<u64>(), n in 1usize..=4) {
        let mut r = rng(seed);
        let ff = FunctionField::new(&c1()).unwrap();
        let pts = sample::admissible_points(&mut r, &c1(), n).unwrap();
        let alphas = sample::random_alphas(&mut r, n);
        let m = build_cm_trivial(&c1(), &pts, &alphas).unwrap();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut r);
        let pp: Vec<_> = perm.iter().map(|&i| pts[i].clone()).collect();
        let pa: Vec<_> = perm.iter().map(|&i| alphas[i].clone()).collect();
        let mp = build_cm_trivial(&c1(), &pp, &pa).unwrap();
        let a = build_ideal_presentation(&ff, &m).unwrap();
        let b = build_ideal_presentation(&ff, &mp).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn gen_t_degree_and_sign_for_builder_outputs() {
    let mut r = rng(5);
    for (curve, max_n) in [(c1(), 4usize), (c2(), 3)] {
        let ff = FunctionField::new(&curve).unwrap();
        for n in 0..=max_n {
            for _ in 0..3 {
                let pts = sample::admissible_points(&mut r, &curve, n).unwrap();
                let alphas = sample::random_alphas(&mut r, n);
                check_gen_t(&ff, &build_cm_trivial(&curve, &pts, &alphas).unwrap());
            }
        }
    }
    let ff = FunctionField::new(&c2()).unwrap();
    let (_, db) = twisted_bundle_shifted(&ff);
    for n in 1..=3 {
        let pts = sample::admissible_points(&mut r, &c2(), n).unwrap();
        let alphas = sample::random_alphas(&mut r, n);
        check_gen_t(&ff, &build_cm_twisted(&ff, &db, &pts, &alphas).unwrap());
    }
}
