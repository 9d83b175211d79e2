use itertools::Itertools;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{determinant, pfaffian, Matrix};
use crate::ring::Ring;

/// `n x n` matrix with 2 above the diagonal, 1 on it and 0 below.
pub fn upper_triangular_u<R: Ring>(n: usize) -> Matrix<R> {
    Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => R::from_i64(2),
        std::cmp::Ordering::Equal => R::one(),
        std::cmp::Ordering::Greater => R::zero(),
    })
}

/// `n x n` skew matrix with 1 above the diagonal and -1 below.
pub fn skew_e<R: Ring>(n: usize) -> Matrix<R> {
    Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => R::one(),
        std::cmp::Ordering::Equal => R::zero(),
        std::cmp::Ordering::Greater => -R::one(),
    })
}

/// Adds `x` to every entry.
pub fn shift_all<R: Ring>(a: &Matrix<R>, x: &R) -> Matrix<R> {
    a.map(|v| v.clone() + x.clone())
}

fn check_wide<R: Ring>(z: &Matrix<R>) -> Result<()> {
    if z.rows() > z.cols() {
        return Err(Error::TooManyRows { rows: z.rows(), cols: z.cols() });
    }
    Ok(())
}

/// Sum of all maximal (`m x m`) minors of an `m x n` matrix with `m <= n`.
pub fn sum_max_minors<R: Ring>(z: &Matrix<R>, exec: Execution) -> Result<R> {
    check_wide(z)?;
    let subsets: Vec<Vec<usize>> = (0..z.cols()).combinations(z.rows()).collect();
    let minors = exec.map(subsets, |cols| R::determinant(&z.select_columns(&cols)));
    Ok(minors.into_iter().fold(R::zero(), |acc, x| acc + x))
}

/// For odd `m`, borders `z` with a new first row and column that are zero
/// except for a 1 in the corner.
fn phantom_border<R: Ring>(z: &Matrix<R>) -> Matrix<R> {
    Matrix::from_fn(z.rows() + 1, z.cols() + 1, |i, j| match (i, j) {
        (0, 0) => R::one(),
        (0, _) | (_, 0) => R::zero(),
        _ => z.get(i - 1, j - 1).clone(),
    })
}

/// The same sum computed as a single Pfaffian of `Z E Z^T`.
pub fn sigma_via_pfaffian<R: Ring>(z: &Matrix<R>) -> Result<R> {
    check_wide(z)?;
    let z = if z.rows() % 2 == 1 { phantom_border(z) } else { z.clone() };
    let e = skew_e::<R>(z.cols());
    pfaffian(&z.mul(&e)?.mul(&z.transpose())?)
}

/// `(det Z U Z^T, det Z U^T Z^T)`, each equal to the square of the minor sum.
pub fn sigma_squared_det<R: Ring>(z: &Matrix<R>) -> Result<(R, R)> {
    check_wide(z)?;
    let u = upper_triangular_u::<R>(z.cols());
    let zt = z.transpose();
    let upper = determinant(&z.mul(&u)?.mul(&zt)?)?;
    let lower = determinant(&z.mul(&u.transpose())?.mul(&zt)?)?;
    Ok((upper, lower))
}

/// Checks that `det [[Z A Z^T, H], [-H^T, B]]` is unchanged when `x` is added
/// to every entry of the skew matrix `A`.
pub fn lemma_2_2_check<R: Ring>(z: &Matrix<R>, a: &Matrix<R>, h: &Matrix<R>, b: &Matrix<R>, x: &R) -> Result<bool> {
    for (name, m) in [("A", a), ("B", b)] {
        if let Some((i, j)) = m.skew_violation() {
            return Err(Error::Dimension(format!("{name} is not skew-symmetric at ({i}, {j})")));
        }
    }
    if a.rows() != z.cols() || h.rows() != z.rows() || b.rows() != h.cols() {
        return Err(Error::Dimension("Z, A, H, B sizes do not fit together".into()));
    }
    if (z.rows() + b.rows()) % 2 == 1 {
        return Err(Error::Dimension("total order must be even".into()));
    }
    let neg_ht = h.transpose().map(|v| -v.clone());
    let zt = z.transpose();
    let plain = z.mul(a)?.mul(&zt)?.block(h, &neg_ht, b)?;
    let shifted = z.mul(&shift_all(a, x))?.mul(&zt)?.block(h, &neg_ht, b)?;
    Ok(determinant(&plain)? == determinant(&shifted)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{QtPoly, Rational};
    use proptest::prelude::*;

    type M = Matrix<Rational>;

    fn ints(rows: &[&[i64]]) -> M {
        Matrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn structured_matrices() {
        assert_eq!(upper_triangular_u::<Rational>(1), ints(&[&[1]]));
        assert_eq!(upper_triangular_u::<Rational>(2), ints(&[&[1, 2], &[0, 1]]));
        assert_eq!(upper_triangular_u::<Rational>(3), ints(&[&[1, 2, 2], &[0, 1, 2], &[0, 0, 1]]));
        assert_eq!(skew_e::<Rational>(2), ints(&[&[0, 1], &[-1, 0]]));
        assert_eq!(skew_e::<Rational>(3), ints(&[&[0, 1, 1], &[-1, 0, 1], &[-1, -1, 0]]));
        assert_eq!(shift_all(&M::zeros(2, 2), &Rational::one()), ints(&[&[1, 1], &[1, 1]]));
        assert_eq!(shift_all(&skew_e(2), &Rational::one()), ints(&[&[1, 2], &[0, 1]]));
        assert_eq!(shift_all(&skew_e(3), &Rational::one()), upper_triangular_u(3));
    }

    #[test]
    fn minor_sums_small() {
        let z = ints(&[&[1, 1]]);
        let seq = Execution::Sequential;
        assert_eq!(sum_max_minors(&z, seq).unwrap(), Rational::from(2));
        assert_eq!(sum_max_minors(&M::zeros(0, 3), seq).unwrap(), Rational::one());
        let sq = ints(&[&[2, 1], &[5, 4]]);
        assert_eq!(sum_max_minors(&sq, seq).unwrap(), Rational::from(3));
        assert!(matches!(sum_max_minors(&ints(&[&[1], &[2]]), seq), Err(Error::TooManyRows { .. })));
    }

    #[test]
    fn pfaffian_route_small() {
        let z = ints(&[&[1, 1]]);
        let bordered = phantom_border(&z);
        let product = bordered.mul(&skew_e(3)).unwrap().mul(&bordered.transpose()).unwrap();
        assert_eq!(product, ints(&[&[0, 2], &[-2, 0]]));
        assert_eq!(sigma_via_pfaffian(&z).unwrap(), Rational::from(2));
        assert_eq!(sigma_via_pfaffian(&M::identity(2)).unwrap(), Rational::one());
        assert_eq!(sigma_via_pfaffian(&M::zeros(0, 4)).unwrap(), Rational::one());
    }

    #[test]
    fn squared_det_small() {
        let four = Rational::from(4);
        assert_eq!(sigma_squared_det(&ints(&[&[1, 1]])).unwrap(), (four.clone(), four));
        let sq = ints(&[&[2, 1], &[5, 4]]);
        let nine = Rational::from(9);
        assert_eq!(sigma_squared_det(&sq).unwrap(), (nine.clone(), nine));
    }

    #[test]
    fn polynomial_entries() {
        let z = Matrix::<QtPoly>::new(
            2,
            3,
            ["q", "1", "t", "0", "q*t", "1 + q"].iter().map(|s| s.parse().unwrap()).collect(),
        )
        .unwrap();
        let sigma = sum_max_minors(&z, Execution::Sequential).unwrap();
        assert_eq!(sigma_via_pfaffian(&z).unwrap(), sigma);
        let (upper, lower) = sigma_squared_det(&z).unwrap();
        assert_eq!(upper, &sigma * &sigma);
        assert_eq!(lower, &sigma * &sigma);
    }

    #[test]
    fn lemma_instances() {
        let x = Rational::from(7);
        let none = M::zeros(2, 0);
        assert!(lemma_2_2_check(&M::identity(2), &skew_e(2), &none, &M::zeros(0, 0), &x).unwrap());

        let z = ints(&[&[1, -2, 3], &[0, 2, 1]]);
        let x = Rational::new(-5, 3).unwrap();
        assert!(lemma_2_2_check(&z, &skew_e(3), &none, &M::zeros(0, 0), &x).unwrap());

        let z = ints(&[&[3, -1]]);
        let h = ints(&[&[2]]);
        assert!(lemma_2_2_check(&z, &skew_e(2), &h, &M::zeros(1, 1), &Rational::from(2)).unwrap());

        assert!(lemma_2_2_check(&z, &skew_e(2), &M::zeros(1, 0), &M::zeros(0, 0), &x).is_err());
    }

    fn int_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = M> {
        (1..=max_rows, 0..=max_cols, prop::collection::vec(-3i64..=3, max_rows * max_cols))
            .prop_filter("m <= n", move |(m, extra, _)| *m + *extra <= max_cols)
            .prop_map(move |(m, extra, v)| {
                let n = m + extra;
                Matrix::from_fn(m, n, |i, j| Rational::from(v[i * max_cols + j]))
            })
    }

    proptest! {
        #[test]
        fn three_routes_agree(z in int_matrix(4, 6)) {
            let sigma = sum_max_minors(&z, Execution::Sequential).unwrap();
            prop_assert_eq!(sum_max_minors(&z, Execution::Parallel).unwrap(), sigma.clone());
            prop_assert_eq!(sigma_via_pfaffian(&z).unwrap(), sigma.clone());
            let sq = &sigma * &sigma;
            prop_assert_eq!(sigma_squared_det(&z).unwrap(), (sq.clone(), sq));
        }

        #[test]
        fn lemma_holds_for_random_blocks(
            z in int_matrix(3, 4),
            upper in prop::collection::vec(-3i64..=3, 6),
            hv in prop::collection::vec(-3i64..=3, 9),
            x in -5i64..=5,
        ) {
            let n = z.cols();
            let mut a = M::zeros(n, n);
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    a.set(i, j, Rational::from(upper[k % 6]));
                    a.set(j, i, Rational::from(-upper[k % 6]));
                    k += 1;
                }
            }
            let kk = z.rows() % 2;
            let h = Matrix::from_fn(z.rows(), kk, |i, j| Rational::from(hv[i * 3 + j]));
            let b = M::zeros(kk, kk);
            prop_assert!(lemma_2_2_check(&z, &a, &h, &b, &Rational::from(x)).unwrap());
        }
    }
}
