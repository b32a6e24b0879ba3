use cmc_core::kernel::{charpoly_adjugate, hnf_qx, q, qi, Matrix, Rational, UniPoly};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=3).prop_map(|(n, d)| q(n, d))
}

fn square(max: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(rat(), n * n).prop_map(move |e| Matrix::new(n, n, e).unwrap())
    })
}

fn poly() -> impl Strategy<Value = UniPoly> {
    prop::collection::vec(-4i64..=4, 0..4).prop_map(|cs| UniPoly::new(cs.into_iter().map(qi).collect()))
}

fn poly_matrix() -> impl Strategy<Value = Matrix<UniPoly>> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(r, c)| {
        prop::collection::vec(poly(), r * c).prop_map(move |e| Matrix::new(r, c, e).unwrap())
    })
}

fn eval_matrix(m: &Matrix<UniPoly>, z: &Rational) -> Matrix<Rational> {
    m.map(|p| p.eval(z))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn charpoly_adjugate_identity(m in square(5), z in rat()) {
        let n = m.rows();
        let ca = charpoly_adjugate(&m).unwrap();
        prop_assert_eq!(ca.chi.degree(), Some(n));
        let shifted = m.try_sub(&Matrix::identity(n).scale(&z)).unwrap();
        let chi = ca.chi.eval(&z);
        prop_assert_eq!(&chi, &shifted.determinant().unwrap());
        let adj = eval_matrix(&ca.adj, &z);
        let prod = shifted.try_mul(&adj).unwrap();
        prop_assert_eq!(prod, Matrix::identity(n).scale(&chi));
    }

    #[test]
    fn cayley_hamilton(m in square(5)) {
        let ca = charpoly_adjugate(&m).unwrap();
        let n = m.rows();
        let mut acc = Matrix::<Rational>::zeros(n, n);
        let mut pow = Matrix::identity(n);
        for c in ca.chi.coeffs() {
            acc = acc.try_add(&pow.scale(c)).unwrap();
            pow = pow.try_mul(&m).unwrap();
        }
        prop_assert!(acc.is_zero());
    }

    #[test]
    fn inverse_and_nullspace(m in square(4)) {
        let n = m.rows();
        let det = m.determinant().unwrap();
        if det.is_zero() {
            prop_assert!(m.inverse().is_err());
            let ker = m.nullspace();
            prop_assert_eq!(ker.len(), n - m.rank());
            for k in ker {
                let col = Matrix::new(n, 1, k).unwrap();
                prop_assert!(m.try_mul(&col).unwrap().is_zero());
            }
        } else {
            let inv = m.inverse().unwrap();
            prop_assert_eq!(m.try_mul(&inv).unwrap(), Matrix::identity(n));
            prop_assert_eq!(m.rank(), n);
        }
    }

    #[test]
    fn hnf_is_idempotent_and_spans(m in poly_matrix()) {
        let h = hnf_qx(&m);
        let again = hnf_qx(&h.h);
        prop_assert_eq!(&again.h, &h.h);
        let um = h.u.try_mul(&m).unwrap();
        for (i, row) in um.to_rows().into_iter().enumerate() {
            if i < h.rank() {
                prop_assert_eq!(row.as_slice(), h.h.row(i));
            } else {
                prop_assert!(row.iter().all(Zero::is_zero));
            }
        }
        // U is unimodular: its determinant is a nonzero constant.
        let d = h.u.determinant().unwrap();
        prop_assert!(!d.is_zero() && d.is_constant());
        for (i, &c) in h.pivots.iter().enumerate() {
            prop_assert!(h.h.get(i, c).is_monic());
        }
    }
}

#[test]
fn empty_charpoly() {
    let ca = charpoly_adjugate(&Matrix::<Rational>::zeros(0, 0)).unwrap();
    assert_eq!(ca.chi, UniPoly::one());
}
