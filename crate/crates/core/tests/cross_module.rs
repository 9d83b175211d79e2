//! Checks that tie several modules together: regions built by `lozenge`
//! against formulas from `partitions` and `linalg`, reflected graphs against
//! path matrices, and the suite runner end to end.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tiling_reflect::budget::Budget;
use tiling_reflect::dag::lattice::{random_boundary_instance, GridLayout};
use tiling_reflect::dag::{path_matrix, reflection_det, signed_sum};
use tiling_reflect::linalg::{sigma_squared_det, sum_max_minors};
use tiling_reflect::lozenge::{
    build_a, build_a_tilde, build_hexagon_with_holes, count_symmetric_tilings, double_across_free_boundary,
    mf_a_via_formula, Region, SymmetryMode, Tiler,
};
use tiling_reflect::partitions::{verify_theorem_4_3, StrictPartition};
use tiling_reflect::reflect::{verify_reflection_principle, ReflectionInput};
use tiling_reflect::ring::Rational;
use tiling_reflect::suite::{run_suite, RunOptions, SizeBudget, Suite};
use tiling_reflect::Execution;

fn budget() -> Budget {
    Budget::new("test", 50_000_000)
}

fn sp(parts: &[u32]) -> StrictPartition {
    StrictPartition::new(parts.to_vec()).unwrap()
}

#[test]
fn small_worked_examples() {
    let hex = build_hexagon_with_holes(1, 1, &[]).unwrap();
    assert_eq!(Tiler::new(&hex).unwrap().count(Execution::Parallel, &budget()).unwrap(), 3);
    let a = build_a(1, &sp(&[2]), &[]).unwrap();
    assert_eq!(Tiler::new(&a).unwrap().weighted_count(Execution::Sequential, &budget()).unwrap(), Rational::from(3));
    let half = build_a_tilde(0, &sp(&[1]), &[]).unwrap();
    assert_eq!(Tiler::new(&half).unwrap().weighted_count(Execution::Sequential, &budget()).unwrap(), Rational::half());
}

#[test]
fn region_json_survives_a_round_trip() {
    let region = build_a_tilde(2, &sp(&[4, 2, 1]), &[2]).unwrap();
    let text = serde_json::to_string(&region.to_json()).unwrap();
    let back = Region::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, region);
    let count = |r: &Region| Tiler::new(r).unwrap().weighted_count(Execution::Sequential, &budget()).unwrap();
    assert_eq!(count(&back), count(&region));
}

#[test]
fn plane_partition_examples() {
    for (m, parts, shifted) in [(0, &[1][..], 1), (1, &[1], 2), (1, &[2], 3)] {
        let r = verify_theorem_4_3(m, &sp(parts), Execution::Parallel).unwrap();
        assert_eq!(r.shifted_count, shifted);
        assert!(r.holds(), "{r:?}");
    }
}

#[test]
fn tiny_suites_pass_for_several_seeds() {
    for seed in 1..=3 {
        let report = run_suite(Suite::All, &RunOptions { size: SizeBudget::Tiny, seed, ..RunOptions::default() });
        assert!(report.all_pass(), "{}", report.to_text());
        assert_eq!(report.exit_status(), 0);
    }
}

#[test]
fn reflection_det_matches_path_matrix_minors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for m in 1..=3 {
        let layout = GridLayout { width: 4, height: 4, m, n: m + 1, reversed: false, sinks: false };
        let inst = random_boundary_instance(&mut rng, layout).unwrap();
        let minors = sum_max_minors(&path_matrix(&inst.dag, &inst.spec).unwrap(), Execution::Sequential).unwrap();
        let signed = signed_sum(&inst.dag, &inst.spec, Execution::Sequential).unwrap();
        assert_eq!(minors, signed);
        let (upper, _) = reflection_det(&inst.dag, &inst.spec).unwrap();
        assert_eq!(upper, signed.pow(2));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn doubling_matches_free_boundary_formula(idx in 0usize..7, m in 0u32..=2, mask in 0u32..4) {
        let shape = StrictPartition::all_bounded(3, 2)[idx].clone();
        let removed: Vec<usize> = (1..=shape.len()).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        let a = build_a(m, &shape, &removed).unwrap();
        let doubled = double_across_free_boundary(&a).unwrap();
        let mirrored = count_symmetric_tilings(&doubled, SymmetryMode::Vertical, &budget()).unwrap();
        let formula = mf_a_via_formula(m, &shape, &removed, Execution::Sequential).unwrap();
        prop_assert_eq!(Rational::from(mirrored as i64), formula);
    }

    #[test]
    fn execution_modes_agree(seed in 0u64..1000, m in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let layout = GridLayout { width: 3, height: 3, m, n: m + 1, reversed: seed % 2 == 0, sinks: true };
        let inst = random_boundary_instance(&mut rng, layout).unwrap();
        let z = path_matrix(&inst.dag, &inst.spec).unwrap();
        prop_assert_eq!(
            sum_max_minors(&z, Execution::Parallel).unwrap(),
            sum_max_minors(&z, Execution::Sequential).unwrap()
        );
        let (upper, lower) = sigma_squared_det(&z).unwrap();
        prop_assert_eq!(&upper, &lower);
        let input = ReflectionInput::new(inst.dag, inst.spec).unwrap();
        let par = verify_reflection_principle(&input, Execution::Parallel).unwrap();
        let seq = verify_reflection_principle(&input, Execution::Sequential).unwrap();
        prop_assert!(par.passes());
        prop_assert_eq!(par, seq);
    }
}
