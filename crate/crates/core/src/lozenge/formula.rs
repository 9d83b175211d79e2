use num_bigint::BigInt;
use num_integer::binomial;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::linalg::{determinant, sum_max_minors, upper_triangular_u, Matrix};
use crate::lozenge::build::{
    build_a, build_a_tilde, build_hexagon_with_holes, build_punctured_hexagon, hexagon_alias_shape,
    punctured_alias_shape,
};
use crate::lozenge::symmetry::{count_symmetric_tilings, SymmetryMode};
use crate::lozenge::tiler::Tiler;
use crate::partitions::{index_set, StrictPartition};
use crate::ring::Rational;

/// Path counts from the starts kept after removing `removed` to the `m + k`
/// ends: entry `(i, j)` is `C(lambda_i - 1 + m + i - j, m + i - j)`, 1-based.
pub fn region_path_matrix(m: u32, shape: &StrictPartition, removed: &[usize]) -> Result<Matrix<Rational>> {
    let removed = index_set(removed, shape.len())?;
    let rows: Vec<usize> = (1..=shape.len()).filter(|i| !removed.contains(i)).collect();
    let cols = m as usize + shape.len();
    Ok(Matrix::from_fn(rows.len(), cols, |r, c| {
        let (i, j) = (rows[r] as i64, c as i64 + 1);
        let steps = m as i64 + i - j;
        if steps < 0 {
            return Rational::zero();
        }
        let top = shape.parts()[rows[r] - 1] as i64 - 1 + steps;
        Rational::from(binomial(BigInt::from(top), BigInt::from(steps)))
    }))
}

/// Free-boundary tiling count of the half-region, as a sum of maximal minors.
pub fn mf_a_via_formula(m: u32, shape: &StrictPartition, removed: &[usize], exec: Execution) -> Result<Rational> {
    sum_max_minors(&region_path_matrix(m, shape, removed)?, exec)
}

/// Weighted tiling count of the two-sided region: `det[M (U/2) M^T]`.
pub fn m_a_tilde_via_formula(m: u32, shape: &StrictPartition, removed: &[usize]) -> Result<Rational> {
    let z = region_path_matrix(m, shape, removed)?;
    let half_u = upper_triangular_u::<Rational>(z.cols()).map(|v| v * &Rational::half());
    determinant(&z.mul(&half_u)?.mul(&z.transpose())?)
}

/// All four evaluations at one `(m, lambda, I)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem31Report {
    pub half_formula: Rational,
    pub half_tiler: Rational,
    pub full_formula: Rational,
    pub full_tiler: Rational,
    /// `k - |I|`.
    pub surviving: usize,
}

impl Theorem31Report {
    pub fn routes_agree(&self) -> bool {
        self.half_formula == self.half_tiler && self.full_formula == self.full_tiler
    }

    pub fn identity_holds(&self) -> bool {
        let scale = Rational::from(2).pow(self.surviving as u32);
        self.half_formula.pow(2) == &scale * &self.full_formula && self.half_tiler.pow(2) == &scale * &self.full_tiler
    }

    pub fn holds(&self) -> bool {
        self.routes_agree() && self.identity_holds()
    }
}

pub fn verify_theorem_3_1(
    m: u32,
    shape: &StrictPartition,
    removed: &[usize],
    exec: Execution,
    budget: &Budget,
) -> Result<Theorem31Report> {
    let surviving = shape.len() - index_set(removed, shape.len())?.len();
    let half = build_a(m, shape, removed)?;
    let full = build_a_tilde(m, shape, removed)?;
    Ok(Theorem31Report {
        half_formula: mf_a_via_formula(m, shape, removed, exec)?,
        half_tiler: Tiler::new(&half)?.weighted_count(exec, budget)?,
        full_formula: m_a_tilde_via_formula(m, shape, removed)?,
        full_tiler: Tiler::new(&full)?.weighted_count(exec, budget)?,
        surviving,
    })
}

fn staircase_product(m: u32, n: u32, k: u32) -> Result<Rational> {
    if k > n {
        return Err(Error::Partition(format!("need k <= n, got n={n}, k={k}")));
    }
    let m = m as i64;
    let mut value = Rational::one();
    for j in 1..=n as i64 {
        for i in 1..=j {
            value *= Rational::new(m + i + j - 1, i + j - 1)?;
        }
    }
    for j in 1..=k as i64 {
        for i in 1..=j {
            value *= Rational::new(m + i + j, i + j)?;
        }
    }
    Ok(value)
}

/// Product formula for the free-boundary count of the double-staircase half-region.
pub fn double_staircase_count(m: u32, n: u32, k: u32) -> Result<Rational> {
    staircase_product(m, n, k)
}

/// The square of [`double_staircase_count`] divided by `2^n`.
pub fn product_formula_4_1(m: u32, n: u32, k: u32) -> Result<Rational> {
    let p = staircase_product(m, n, k)?;
    Ok(p.pow(2) * Rational::new(1, BigInt::from(2).pow(n))?)
}

/// Which family of symmetric hexagons.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HexagonFamily {
    /// Sides `2m, n, n, 2m, n, n`.
    Holes,
    /// Sides `2m, 2n-1, ...` with a central hole of side `2x - 1`.
    Punctured { x: u32 },
}

/// Symmetric tiling counts of one hexagon and the free-boundary count the
/// quarter region reduces to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem42Report {
    pub central: u64,
    pub both: u64,
    pub quarter_formula: Rational,
}

impl Theorem42Report {
    pub fn holds(&self) -> bool {
        self.central == self.both * self.both
    }

    pub fn quarter_matches(&self) -> bool {
        self.quarter_formula == Rational::from(self.both as i64)
    }
}

pub fn verify_theorem_4_2(
    m: u32,
    n: u32,
    labels: &[usize],
    family: HexagonFamily,
    budget: &Budget,
) -> Result<Theorem42Report> {
    let (region, shape) = match family {
        HexagonFamily::Holes => (build_hexagon_with_holes(m, n, labels)?, hexagon_alias_shape(n)),
        HexagonFamily::Punctured { x } => (build_punctured_hexagon(m, n, x, labels)?, punctured_alias_shape(n, x)),
    };
    Ok(Theorem42Report {
        central: count_symmetric_tilings(&region, SymmetryMode::Central, budget)?,
        both: count_symmetric_tilings(&region, SymmetryMode::Both, budget)?,
        quarter_formula: mf_a_via_formula(m, &shape, labels, Execution::Sequential)?,
    })
}
