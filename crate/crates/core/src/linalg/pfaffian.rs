use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ring::Ring;

/// Largest order for which [`pfaffian`] sums over perfect matchings directly.
pub const ONE_FACTOR_MAX_ORDER: usize = 10;

/// A perfect matching of `{0, ..., 2m-1}`, stored as pairs `(i, j)` with `i < j`
/// sorted by first element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFactor {
    pairs: Vec<(usize, usize)>,
}

impl OneFactor {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let order = pairs.len() * 2;
        let mut seen = vec![false; order];
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
            for x in [p.0, p.1] {
                if x >= order || seen[x] {
                    return Err(Error::Dimension(format!("{pairs:?} is not a perfect matching")));
                }
                seen[x] = true;
            }
        }
        pairs.sort_unstable();
        Ok(OneFactor { pairs })
    }

    /// Every perfect matching of `order` points, in lexicographic order.
    pub fn all(order: usize) -> Vec<OneFactor> {
        fn rec(free: &mut Vec<usize>, cur: &mut Vec<(usize, usize)>, out: &mut Vec<OneFactor>) {
            if free.is_empty() {
                out.push(OneFactor { pairs: cur.clone() });
                return;
            }
            let first = free.remove(0);
            for idx in 0..free.len() {
                let partner = free.remove(idx);
                cur.push((first, partner));
                rec(free, cur, out);
                cur.pop();
                free.insert(idx, partner);
            }
            free.insert(0, first);
        }
        assert!(order.is_multiple_of(2), "perfect matchings need an even number of points");
        let mut out = Vec::new();
        rec(&mut (0..order).collect(), &mut Vec::new(), &mut out);
        out
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Number of pairs of arcs `(a, b)`, `(c, d)` with `a < c < b < d`.
    pub fn crossings(&self) -> usize {
        let mut count = 0;
        for (x, &(a, b)) in self.pairs.iter().enumerate() {
            for &(c, d) in &self.pairs[x + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn sign(&self) -> i64 {
        if self.crossings().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

fn check_skew<R: Ring>(a: &Matrix<R>) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if let Some((i, j)) = a.skew_violation() {
        return Err(Error::NotSkew { i, j });
    }
    if a.rows() % 2 == 1 {
        return Err(Error::OddOrder(a.rows()));
    }
    Ok(())
}

/// Pfaffian of an even-order skew-symmetric matrix (1 for the 0x0 matrix).
pub fn pfaffian<R: Ring>(a: &Matrix<R>) -> Result<R> {
    check_skew(a)?;
    if a.rows() <= ONE_FACTOR_MAX_ORDER {
        Ok(one_factor_sum(a))
    } else {
        Ok(row_expansion(a))
    }
}

/// Pfaffian as the signed sum over all perfect matchings.
pub fn pfaffian_one_factors<R: Ring>(a: &Matrix<R>) -> Result<R> {
    check_skew(a)?;
    Ok(one_factor_sum(a))
}

/// Pfaffian by recursive expansion along the first row.
pub fn pfaffian_row_expansion<R: Ring>(a: &Matrix<R>) -> Result<R> {
    check_skew(a)?;
    Ok(row_expansion(a))
}

fn one_factor_sum<R: Ring>(a: &Matrix<R>) -> R {
    OneFactor::all(a.rows()).iter().fold(R::zero(), |acc, f| {
        let term = f.pairs().iter().fold(R::one(), |p, &(i, j)| p * a.get(i, j).clone());
        if f.sign() > 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

fn row_expansion<R: Ring>(a: &Matrix<R>) -> R {
    fn rec<R: Ring>(a: &Matrix<R>, idx: &[usize]) -> R {
        if idx.is_empty() {
            return R::one();
        }
        let mut acc = R::zero();
        for t in 1..idx.len() {
            let entry = a.get(idx[0], idx[t]);
            if entry.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().copied().filter(|&x| x != idx[t]).collect();
            let term = entry.clone() * rec(a, &rest);
            acc = if t % 2 == 1 { acc + term } else { acc - term };
        }
        acc
    }
    rec(a, &(0..a.rows()).collect::<Vec<_>>())
}
