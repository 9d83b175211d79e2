//! Exact dense linear algebra over any [`Ring`](crate::ring::Ring).

mod det;
mod matrix;
mod pfaffian;
mod sigma;

pub use det::{det_bareiss, det_subset_dp, determinant};
pub(crate) use matrix::parse_scalar;
pub use matrix::Matrix;
pub use pfaffian::{pfaffian, pfaffian_one_factors, pfaffian_row_expansion, OneFactor, ONE_FACTOR_MAX_ORDER};
pub use sigma::{
    lemma_2_2_check, shift_all, sigma_squared_det, sigma_via_pfaffian, skew_e, sum_max_minors, upper_triangular_u,
};
