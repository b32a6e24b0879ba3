use num_traits::Zero;

use super::{Matrix, UniPoly};

/// Hermite normal form of a row lattice over `Q[x]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hnf {
    /// Nonzero rows of `U * M`, in echelon form with monic pivots and entries
    /// above each pivot reduced below the pivot degree.
    pub h: Matrix<UniPoly>,
    /// Unimodular transform; the first `rank` rows of `U * M` equal `h`, the
    /// remaining rows of `U * M` are zero.
    pub u: Matrix<UniPoly>,
    /// Pivot column of each row of `h`.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-style Hermite normal form over the Euclidean domain `Q[x]`.
///
/// Rows of `m` are lattice generators; the row span is preserved. Each column
/// is cleared below its pivot with the 2x2 unimodular step built from the
/// extended Euclidean algorithm.
pub fn hnf_qx(m: &Matrix<UniPoly>) -> Hnf {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut u = Matrix::<UniPoly>::identity(rows);
    let mut pivots = Vec::new();
    let mut r = 0;

    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(first) = (r..rows).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, first);
        u.swap_rows(r, first);
        for i in r + 1..rows {
            if a.get(i, c).is_zero() {
                continue;
            }
            let pa = a.get(r, c).clone();
            let pb = a.get(i, c).clone();
            let (g, s, t) = UniPoly::ext_gcd(&pa, &pb);
            let (ag, _) = pa.div_rem(&g);
            let (bg, _) = pb.div_rem(&g);
            combine_rows(&mut a, r, i, &s, &t, &-bg.clone(), &ag);
            combine_rows(&mut u, r, i, &s, &t, &-bg, &ag);
        }
        let lc = a.get(r, c).leading().expect("pivot is nonzero").recip();
        scale_row(&mut a, r, &lc);
        scale_row(&mut u, r, &lc);
        for k in 0..r {
            if a.get(k, c).is_zero() {
                continue;
            }
            let (quo, _) = a.get(k, c).div_rem(a.get(r, c));
            if quo.is_zero() {
                continue;
            }
            axpy_row(&mut a, k, r, &quo);
            axpy_row(&mut u, k, r, &quo);
        }
        pivots.push(c);
        r += 1;
    }

    let h = Matrix::from_fn(r, cols, |i, j| a.get(i, j).clone());
    Hnf { h, u, pivots }
}

/// `(row_a, row_b) <- (s*row_a + t*row_b, p*row_a + q*row_b)`
fn combine_rows(
    m: &mut Matrix<UniPoly>,
    ra: usize,
    rb: usize,
    s: &UniPoly,
    t: &UniPoly,
    p: &UniPoly,
    q: &UniPoly,
) {
    for j in 0..m.cols() {
        let x = m.get(ra, j).clone();
        let y = m.get(rb, j).clone();
        m.set(ra, j, &(s * &x) + &(t * &y));
        m.set(rb, j, &(p * &x) + &(q * &y));
    }
}

fn scale_row(m: &mut Matrix<UniPoly>, r: usize, c: &super::Rational) {
    for j in 0..m.cols() {
        let v = m.get(r, j).scale(c);
        m.set(r, j, v);
    }
}

/// `row_k <- row_k - quo * row_r`
fn axpy_row(m: &mut Matrix<UniPoly>, k: usize, r: usize, quo: &UniPoly) {
    for j in 0..m.cols() {
        let v = m.get(k, j) - &(quo * m.get(r, j));
        m.set(k, j, v);
    }
}

/// Reduces `v` modulo the row lattice of an HNF.
///
/// Returns the coefficients consumed for each HNF row and the remainder; `v`
/// lies in the lattice iff the remainder is zero. The map `v -> remainder` is
/// `Q`-linear.
pub fn lattice_reduce(hnf: &Hnf, v: &[UniPoly]) -> (Vec<UniPoly>, Vec<UniPoly>) {
    let mut rem = v.to_vec();
    let mut coeffs = Vec::with_capacity(hnf.rank());
    for (i, &c) in hnf.pivots.iter().enumerate() {
        let (quo, _) = rem[c].div_rem(hnf.h.get(i, c));
        if !quo.is_zero() {
            for (j, e) in rem.iter_mut().enumerate() {
                *e = &*e - &(&quo * hnf.h.get(i, j));
            }
        }
        coeffs.push(quo);
    }
    (coeffs, rem)
}

impl Hnf {
    /// True when the lattice is all of `Q[x]^cols`.
    pub fn is_identity(&self) -> bool {
        self.h.is_square() && self.h == Matrix::identity(self.h.rows())
    }

    /// True when `v` lies in the row lattice.
    pub fn contains(&self, v: &[UniPoly]) -> bool {
        lattice_reduce(self, v).1.iter().all(Zero::is_zero)
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::qi;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| qi(v)).collect())
    }

    fn mat(rows: Vec<Vec<UniPoly>>) -> Matrix<UniPoly> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn identity_is_fixed() {
        let id = Matrix::<UniPoly>::identity(3);
        let out = hnf_qx(&id);
        assert_eq!(out.h, id);
        assert_eq!(out.u, id);
    }

    #[test]
    fn gcd_collapse_and_zero_rows_dropped() {
        let m = mat(vec![
            vec![p(&[1, 1]), p(&[])],
            vec![p(&[1, 0, 0, 1]), p(&[])],
            vec![p(&[]), p(&[1])],
            vec![p(&[]), p(&[1, 1])],
        ]);
        let out = hnf_qx(&m);
        assert_eq!(out.h, mat(vec![vec![p(&[1, 1]), p(&[])], vec![p(&[]), p(&[1])]]));
        let um = out.u.try_mul(&m).unwrap();
        for i in 0..4 {
            for j in 0..2 {
                let expect = if i < 2 { out.h.get(i, j).clone() } else { UniPoly::zero() };
                assert_eq!(um.get(i, j), &expect);
            }
        }

        let m = mat(vec![vec![p(&[-1, 0, 1]), p(&[])], vec![p(&[-1, 1]), p(&[])]]);
        assert_eq!(hnf_qx(&m).h, mat(vec![vec![p(&[-1, 1]), p(&[])]]));
    }

    #[test]
    fn entries_above_pivots_are_reduced() {
        let m = mat(vec![
            vec![p(&[0, 1]), p(&[3, 0, 1])],
            vec![p(&[]), p(&[0, 2])],
        ]);
        let out = hnf_qx(&m);
        // pivot x in column 1 reduces x^2 + 3 to 3
        assert_eq!(out.h, mat(vec![vec![p(&[0, 1]), p(&[3])], vec![p(&[]), p(&[0, 1])]]));
        assert!(out.contains(&[p(&[0, 2]), p(&[6, 0, 2])]));
        assert!(!out.contains(&[p(&[1]), p(&[])]));
    }
}
