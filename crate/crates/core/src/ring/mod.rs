//! Exact scalars: big rationals and sparse `(q, t)` polynomials.

mod poly;
mod rational;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::Error;
use crate::linalg::{self, Matrix};

pub use poly::{qbinomial, qint, QBinomials, QtPoly};
pub use rational::Rational;

/// Commutative ring of exact scalars usable as matrix entries and edge weights.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + FromStr<Err = Error>
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(n: i64) -> Self;

    /// Determinant of a square matrix; the default needs no division.
    fn determinant(m: &Matrix<Self>) -> Self {
        linalg::det_subset_dp(m)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::zero()
    }

    fn one() -> Self {
        Rational::one()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }

    fn determinant(m: &Matrix<Self>) -> Self {
        linalg::det_bareiss(m)
    }
}

impl Ring for QtPoly {
    fn zero() -> Self {
        QtPoly::zero()
    }

    fn one() -> Self {
        QtPoly::one()
    }

    fn is_zero(&self) -> bool {
        QtPoly::is_zero(self)
    }

    fn from_i64(n: i64) -> Self {
        QtPoly::from(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rational() -> impl Strategy<Value = Rational> {
        (-20i64..20, 1i64..8).prop_map(|(n, d)| Rational::new(n, d).unwrap())
    }

    fn poly() -> impl Strategy<Value = QtPoly> {
        prop::collection::vec((rational(), 0u32..4, 0u32..3), 0..5)
            .prop_map(|terms| terms.into_iter().map(|(c, a, b)| QtPoly::monomial(c, a, b)).sum())
    }

    proptest! {
        #[test]
        fn rational_ring_laws(a in rational(), b in rational(), c in rational()) {
            prop_assert_eq!((&a + &b) + c.clone(), a.clone() + (b.clone() + c.clone()));
            prop_assert_eq!(&a * &(&b + &c), &a * &b + &a * &c);
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn poly_ring_laws(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn poly_text_round_trips(a in poly()) {
            let text = a.to_string();
            let back: QtPoly = text.parse().unwrap();
            prop_assert_eq!(back.to_string(), text);
            prop_assert_eq!(back, a);
        }

        #[test]
        fn qbinomial_symmetry_and_pascal(n in 0i64..12, k in 0i64..12) {
            prop_assume!(k <= n);
            prop_assert_eq!(qbinomial(n, k), qbinomial(n, n - k));
            if n > 0 {
                let pascal = qbinomial(n - 1, k - 1)
                    + &QtPoly::qt(k as u32, 0) * &qbinomial(n - 1, k);
                prop_assert_eq!(qbinomial(n, k), pascal);
            }
            let at_one = qbinomial(n, k).evaluate(&Rational::one(), &Rational::one());
            let ordinary = (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1));
            prop_assert_eq!(at_one, Rational::from(ordinary));
        }
    }
}
