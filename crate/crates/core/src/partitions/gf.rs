use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::budget::Budget;
use crate::error::Result;
use crate::exec::Execution;
use crate::linalg::{determinant, upper_triangular_u, Matrix};
use crate::lozenge::{build_a_tilde, count_tilings_bruteforce, m_a_tilde_via_formula};
use crate::partitions::{bar_lambda, enumerate_spp, for_each_symmetric_pp, ShiftedPlanePartition, StrictPartition};
use crate::ring::{QBinomials, QtPoly, Rational};

/// `q^(off-diagonal sum) * t^(diagonal sum)`.
pub fn qt_weight(spp: &ShiftedPlanePartition) -> QtPoly {
    QtPoly::qt(spp.off_diagonal_sum(), spp.diagonal_sum())
}

fn polynomial_from_counts(counts: BTreeMap<(u32, u32), u64>) -> QtPoly {
    counts.into_iter().map(|((a, b), c)| QtPoly::monomial(Rational::from(c as i64), a, b)).sum()
}

/// Sum of `qt_weight` over all shifted plane partitions of `shape` bounded by `m`.
pub fn qt_gf_bruteforce(m: u32, shape: &StrictPartition) -> Result<QtPoly> {
    let mut counts = BTreeMap::new();
    for spp in enumerate_spp(m, shape) {
        let spp = spp?;
        *counts.entry((spp.off_diagonal_sum(), spp.diagonal_sum())).or_insert(0u64) += 1;
    }
    Ok(polynomial_from_counts(counts))
}

/// `Σ q^|π|` over the same shifted plane partitions.
pub fn spp_volume_bruteforce(m: u32, shape: &StrictPartition) -> Result<QtPoly> {
    let mut counts = BTreeMap::new();
    for spp in enumerate_spp(m, shape) {
        *counts.entry((spp?.volume(), 0)).or_insert(0u64) += 1;
    }
    Ok(polynomial_from_counts(counts))
}

/// `Σ q^|π|` over symmetric plane partitions of the symmetrized shape bounded by `m`.
pub fn pp_sym_volume_bruteforce(m: u32, shape: &StrictPartition) -> Result<QtPoly> {
    let budget = Budget::from_env("symmetric plane partitions");
    let mut counts = BTreeMap::new();
    for_each_symmetric_pp(m, &bar_lambda(shape), &budget, |pp| {
        *counts.entry((pp.volume(), 0)).or_insert(0u64) += 1;
        ControlFlow::Continue(())
    })?;
    Ok(polynomial_from_counts(counts))
}

/// The `k x (m + k)` matrix with entries `t^(m+i-j) [lambda_i - 1 + m + i - j, m + i - j]_q`
/// (1-based `i, j`), zero when `m + i - j < 0`.
pub fn qt_path_matrix(m: u32, shape: &StrictPartition) -> Matrix<QtPoly> {
    let k = shape.len();
    let mut binomials = QBinomials::new();
    Matrix::from_fn(k, m as usize + k, |i, j| {
        let steps = m as i64 + i as i64 - j as i64;
        if steps < 0 {
            return QtPoly::zero();
        }
        let top = shape.parts()[i] as i64 - 1 + steps;
        &QtPoly::qt(0, steps as u32) * &binomials.get(top, steps)
    })
}

fn squared_sigma(z: &Matrix<QtPoly>) -> Result<QtPoly> {
    let u = upper_triangular_u::<QtPoly>(z.cols());
    determinant(&z.mul(&u)?.mul(&z.transpose())?)
}

/// `det[M(q,t) U M(q,t)^T]`, the square of the `(q, t)` generating function.
pub fn qt_gf_determinant(m: u32, shape: &StrictPartition) -> Result<QtPoly> {
    squared_sigma(&qt_path_matrix(m, shape))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VolumeKind {
    /// Shifted plane partitions: `(q, t) -> (q, q)`.
    Shifted,
    /// Symmetric plane partitions of the symmetrized shape: `(q, t) -> (q^2, q)`.
    Symmetric,
}

/// Squared volume generating function, from the determinant with a specialized path matrix.
pub fn volume_gf(m: u32, shape: &StrictPartition, kind: VolumeKind) -> Result<QtPoly> {
    let (q_image, t_image) = match kind {
        VolumeKind::Shifted => (QtPoly::q(), QtPoly::q()),
        VolumeKind::Symmetric => (QtPoly::qt(2, 0), QtPoly::q()),
    };
    let z = qt_path_matrix(m, shape).map(|p| p.substitute(&q_image, &t_image));
    squared_sigma(&z)
}

/// Generating function of up/left lattice paths from `(a, b)` to `(c, d)` where
/// a unit step up along `x` weighs `q^x t`.
pub fn lattice_gf_closed_form(a: i64, b: i64, c: i64, d: i64) -> Result<QtPoly> {
    if c > a || b > d {
        return Ok(QtPoly::zero());
    }
    let ups = d - b;
    let lefts = a - c;
    Ok(&QtPoly::try_qt(c * ups, ups)? * &crate::ring::qbinomial(lefts + ups, ups))
}

/// Both sides of the plane-partition identity at one `(m, lambda)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem43Report {
    pub shifted_count: u64,
    pub symmetric_count: u64,
    pub tiler: Rational,
    pub formula: Rational,
    pub parts: usize,
}

impl Theorem43Report {
    pub fn holds(&self) -> bool {
        let scale = Rational::from(2).pow(self.parts as u32);
        let shifted_sq = Rational::from(self.shifted_count as i64).pow(2);
        let symmetric_sq = Rational::from(self.symmetric_count as i64).pow(2);
        shifted_sq == symmetric_sq && shifted_sq == &scale * &self.tiler && shifted_sq == &scale * &self.formula
    }
}

/// Counts shifted and symmetric plane partitions by enumeration and the
/// weighted tilings of the two-sided region by tiler and by formula.
pub fn verify_theorem_4_3(m: u32, shape: &StrictPartition, exec: Execution) -> Result<Theorem43Report> {
    let shifted_count = enumerate_spp(m, shape).try_fold(0u64, |n, p| p.map(|_| n + 1))?;
    let budget = Budget::from_env("symmetric plane partitions");
    let mut symmetric_count = 0u64;
    for_each_symmetric_pp(m, &bar_lambda(shape), &budget, |_| {
        symmetric_count += 1;
        ControlFlow::Continue(())
    })?;
    let region = build_a_tilde(m, shape, &[])?;
    let tiler = count_tilings_bruteforce(&region, exec)?;
    let formula = m_a_tilde_via_formula(m, shape, &[])?;
    Ok(Theorem43Report { shifted_count, symmetric_count, tiler, formula, parts: shape.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dag::lattice::{qt_lattice, vertex_name};
    use crate::dag::path_gf;
    use proptest::prelude::*;

    fn sp(parts: &[u32]) -> StrictPartition {
        StrictPartition::new(parts.to_vec()).unwrap()
    }

    fn poly(s: &str) -> QtPoly {
        s.parse().unwrap()
    }

    #[test]
    fn weights() {
        let zero = ShiftedPlanePartition::zero(sp(&[2, 1]));
        assert_eq!(qt_weight(&zero), QtPoly::one());
        let one = ShiftedPlanePartition::new(sp(&[1]), vec![vec![1]]).unwrap();
        assert_eq!(qt_weight(&one), QtPoly::t());
        let pair = ShiftedPlanePartition::new(sp(&[2]), vec![vec![1, 1]]).unwrap();
        assert_eq!(qt_weight(&pair), poly("q*t"));
    }

    #[test]
    fn brute_force_generating_functions() {
        assert_eq!(qt_gf_bruteforce(1, &sp(&[1])).unwrap(), poly("1 + t"));
        assert_eq!(qt_gf_bruteforce(0, &sp(&[3, 2])).unwrap(), QtPoly::one());
        assert_eq!(qt_gf_bruteforce(1, &sp(&[2])).unwrap(), poly("1 + t + q*t"));
    }

    #[test]
    fn determinant_generating_functions() {
        let z = qt_path_matrix(1, &sp(&[1]));
        assert_eq!(z.entries(), &[QtPoly::t(), QtPoly::one()]);
        assert_eq!(qt_gf_determinant(1, &sp(&[1])).unwrap(), poly("(1 + t)^2"));
        assert_eq!(qt_gf_determinant(1, &sp(&[1])).unwrap().to_string(), "1 + 2*t + t^2");
        assert_eq!(qt_gf_determinant(0, &sp(&[2, 1])).unwrap(), QtPoly::one());
        assert_eq!(qt_gf_determinant(1, &sp(&[2])).unwrap(), poly("(1 + t + q*t)^2"));
    }

    #[test]
    fn volume_specializations() {
        let one = sp(&[1]);
        assert_eq!(volume_gf(1, &one, VolumeKind::Shifted).unwrap(), poly("(1 + q)^2"));
        assert_eq!(volume_gf(1, &one, VolumeKind::Symmetric).unwrap(), poly("(1 + q)^2"));
        for kind in [VolumeKind::Shifted, VolumeKind::Symmetric] {
            assert_eq!(volume_gf(0, &sp(&[3, 1]), kind).unwrap(), QtPoly::one());
        }
        assert_eq!(pp_sym_volume_bruteforce(1, &one).unwrap(), poly("1 + q"));
        let shape = sp(&[2, 1]);
        let sym = pp_sym_volume_bruteforce(2, &shape).unwrap();
        assert_eq!(volume_gf(2, &shape, VolumeKind::Symmetric).unwrap(), &sym * &sym);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(lattice_gf_closed_form(3, 2, 3, 2).unwrap(), QtPoly::one());
        assert_eq!(lattice_gf_closed_form(1, 0, 0, 1).unwrap(), poly("t*(1 + q)"));
        assert_eq!(lattice_gf_closed_form(2, 1, 2, 4).unwrap(), QtPoly::qt(6, 3));
        assert_eq!(lattice_gf_closed_form(0, 0, 1, 1).unwrap(), QtPoly::zero());
        assert_eq!(lattice_gf_closed_form(0, 2, 0, 1).unwrap(), QtPoly::zero());
    }

    #[test]
    fn closed_form_matches_lattice_paths() {
        let g = qt_lattice(5, 5).unwrap();
        for a in 0..=5 {
            for d in 0..=5 {
                let dp = path_gf(&g, &vertex_name(a, 0), &vertex_name(0, d)).unwrap();
                assert_eq!(lattice_gf_closed_form(a, 0, 0, d).unwrap(), dp, "a={a} d={d}");
            }
        }
    }

    #[test]
    fn theorem_4_3_small_cases() {
        let seq = Execution::Sequential;
        let r = verify_theorem_4_3(0, &sp(&[1]), seq).unwrap();
        assert_eq!((r.shifted_count, r.tiler.to_string()), (1, "1/2".into()));
        assert!(r.holds());
        let r = verify_theorem_4_3(1, &sp(&[1]), seq).unwrap();
        assert_eq!((r.shifted_count, r.symmetric_count, r.tiler.to_string()), (2, 2, "2".into()));
        assert!(r.holds());
        let r = verify_theorem_4_3(1, &sp(&[2]), seq).unwrap();
        assert_eq!((r.shifted_count, r.formula.to_string()), (3, "9/2".into()));
        assert!(r.holds());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn determinant_is_square_of_enumeration(idx in 0usize..15, m in 0u32..=2) {
            let shape = StrictPartition::all_bounded(4, 3)[idx].clone();
            let gf = qt_gf_bruteforce(m, &shape).unwrap();
            prop_assert_eq!(qt_gf_determinant(m, &shape).unwrap(), &gf * &gf);
            let vol = spp_volume_bruteforce(m, &shape).unwrap();
            prop_assert_eq!(gf.substitute(&QtPoly::q(), &QtPoly::q()), vol.clone());
            prop_assert_eq!(volume_gf(m, &shape, VolumeKind::Shifted).unwrap(), &vol * &vol);
        }

        #[test]
        fn closed_form_recurrence(a in -1i64..=5, b in 0i64..=5, c in 0i64..=3, d in 0i64..=5) {
            prop_assume!((a, b) != (c, d));
            let lhs = lattice_gf_closed_form(a, b, c, d).unwrap();
            let up = lattice_gf_closed_form(a, b + 1, c, d).unwrap();
            let left = lattice_gf_closed_form(a - 1, b, c, d).unwrap();
            let step = if a >= 0 { QtPoly::qt(a as u32, 1) } else { QtPoly::zero() };
            prop_assert_eq!(lhs, &(&step * &up) + &left);
        }
    }
}
