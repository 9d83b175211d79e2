use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::{Rational, Ring};

/// Determinant of a square matrix (1 for the 0x0 matrix).
pub fn determinant<R: Ring>(m: &Matrix<R>) -> Result<R> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(R::determinant(m))
}

/// Division-free determinant by dynamic programming over used-column subsets.
///
/// Row `r` picks a column `j` not yet used; the permutation picks up one
/// inversion for every already-used column to the right of `j`.
pub fn det_subset_dp<R: Ring>(m: &Matrix<R>) -> R {
    let n = m.rows();
    assert!(m.is_square() && n < usize::BITS as usize, "det_subset_dp needs a small square matrix");
    let full = (1usize << n) - 1;
    let mut dp: Vec<Option<R>> = vec![None; 1 << n];
    dp[0] = Some(R::one());
    for mask in 0..full {
        let Some(acc) = dp[mask].take() else { continue };
        let r = mask.count_ones() as usize;
        for j in 0..n {
            if mask & (1 << j) != 0 || m.get(r, j).is_zero() {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let mut term = acc.clone() * m.get(r, j).clone();
            if above % 2 == 1 {
                term = -term;
            }
            let slot = &mut dp[mask | (1 << j)];
            *slot = Some(match slot.take() {
                Some(prev) => prev + term,
                None => term,
            });
        }
    }
    dp[full].take().unwrap_or_else(R::zero)
}

/// Fraction-free Bareiss elimination after scaling each row to integers.
pub fn det_bareiss(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    assert!(m.is_square(), "det_bareiss needs a square matrix");
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let row = m.row(i);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            scale *= l;
            ints
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if negate {
        det = -det;
    }
    Rational::new(det, scale).expect("row scales are positive")
}
