//! Exact verification toolkit for nonintersecting lattice paths on reflected
//! graphs, Pfaffian sums of maximal minors, free-boundary lozenge tilings and
//! shifted plane partitions.
//!
//! Every quantity is computed exactly (big rationals or `(q, t)` polynomials)
//! and most identities can be checked two ways: by a closed determinant or
//! Pfaffian formula, and by brute-force enumeration.

pub mod budget;
pub mod dag;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod lozenge;
pub mod partitions;
pub mod reflect;
pub mod ring;
pub mod suite;

pub use error::{Error, Result};
pub use exec::Execution;
