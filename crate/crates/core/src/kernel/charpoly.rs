use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Matrix, Rational, UniPoly};
use crate::error::{Error, Result};

/// `det(M - z Id)` together with `adj(M - z Id)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharpolyAdjugate {
    pub chi: UniPoly,
    pub adj: Matrix<UniPoly>,
}

/// Characteristic polynomial in the convention `det(M - z Id)` and the
/// adjugate of `M - z Id`, computed together by the Faddeev-LeVerrier
/// recursion. For `n = 0` this is `(1, [])`.
pub fn charpoly_adjugate(m: &Matrix<Rational>) -> Result<CharpolyAdjugate> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "characteristic polynomial of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    // p(l) = det(l Id - M) = sum c[k] l^k, adj(l Id - M) = sum_{k=1}^{n} B_k l^{n-k}
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut b: Vec<Matrix<Rational>> = Vec::with_capacity(n);
    let mut prev = Matrix::<Rational>::zeros(n, n);
    for k in 1..=n {
        let bk = m
            .try_mul(&prev)?
            .try_add(&Matrix::identity(n).scale(&c[n + 1 - k]))?;
        let tr = m.try_mul(&bk)?.trace();
        c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        b.push(bk.clone());
        prev = bk;
    }

    // det(M - z) = (-1)^n p(z), adj(M - z) = (-1)^(n-1) adj(z - M)
    let sign_chi = if n.is_multiple_of(2) { Rational::one() } else { -Rational::one() };
    let chi = UniPoly::new(c).scale(&sign_chi);
    let sign_adj = -sign_chi;
    let adj = Matrix::from_fn(n, n, |i, j| {
        let coeffs: Vec<Rational> = (0..n)
            .map(|deg| b[n - 1 - deg].get(i, j) * &sign_adj)
            .collect();
        UniPoly::new(coeffs)
    });
    Ok(CharpolyAdjugate { chi, adj })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::qi;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| qi(v)).collect()).collect())
            .unwrap()
    }

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| qi(v)).collect())
    }

    #[test]
    fn one_by_one_zero() {
        let out = charpoly_adjugate(&m(&[&[0]])).unwrap();
        assert_eq!(out.chi, p(&[0, -1]));
        assert_eq!(out.adj, Matrix::from_rows(vec![vec![p(&[1])]]).unwrap());
    }

    #[test]
    fn rotation_block() {
        let out = charpoly_adjugate(&m(&[&[0, -5], &[5, 0]])).unwrap();
        assert_eq!(out.chi, p(&[25, 0, 1]));
        let expected = Matrix::from_rows(vec![
            vec![p(&[0, -1]), p(&[5])],
            vec![p(&[-5]), p(&[0, -1])],
        ])
        .unwrap();
        assert_eq!(out.adj, expected);
    }

    #[test]
    fn identity_two() {
        let out = charpoly_adjugate(&Matrix::identity(2)).unwrap();
        assert_eq!(out.chi, p(&[1, -2, 1]));
        let d = p(&[1, -1]);
        let expected = Matrix::from_rows(vec![vec![d.clone(), p(&[])], vec![p(&[]), d]]).unwrap();
        assert_eq!(out.adj, expected);
    }

    #[test]
    fn empty_and_non_square() {
        let out = charpoly_adjugate(&Matrix::zeros(0, 0)).unwrap();
        assert_eq!(out.chi, UniPoly::one());
        assert!(charpoly_adjugate(&Matrix::zeros(2, 3)).is_err());
    }
}
