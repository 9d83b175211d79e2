//! Sequential against rayon-backed evaluation on the hot paths: maximal-minor
//! sums, signed path sums, the weighted tiler and a whole verification suite.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tiling_reflect::budget::Budget;
use tiling_reflect::dag::lattice::{random_boundary_instance, GridLayout};
use tiling_reflect::dag::signed_sum;
use tiling_reflect::linalg::{sum_max_minors, Matrix};
use tiling_reflect::lozenge::{build_a_tilde, Tiler};
use tiling_reflect::partitions::StrictPartition;
use tiling_reflect::ring::Rational;
use tiling_reflect::suite::{run_suite, RunOptions, SizeBudget, Suite};
use tiling_reflect::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn minors(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let z = Matrix::from_fn(6, 14, |_, _| Rational::from(rng.random_range(-3i64..=3)));
    let mut group = c.benchmark_group("sum_max_minors 6x14");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| sum_max_minors(black_box(&z), exec).unwrap()));
    }
    group.finish();
}

fn signed_sums(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let layout = GridLayout { width: 5, height: 5, m: 3, n: 5, reversed: true, sinks: false };
    let inst = random_boundary_instance(&mut rng, layout).unwrap();
    let mut group = c.benchmark_group("signed_sum 5x5 grid m=3 n=5");
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| signed_sum(black_box(&inst.dag), &inst.spec, exec).unwrap()));
    }
    group.finish();
}

fn tiler(c: &mut Criterion) {
    let mut group = c.benchmark_group("weighted tiler");
    group.sample_size(10);
    for (m, parts) in [(2u32, vec![4u32, 3, 2]), (3, vec![5, 3, 1])] {
        let shape = StrictPartition::new(parts).unwrap();
        let region = build_a_tilde(m, &shape, &[]).unwrap();
        let tiler = Tiler::new(&region).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("m={m} {shape}")), &tiler, |b, t| {
                b.iter(|| t.weighted_count(exec, &Budget::new("bench", u64::MAX)).unwrap())
            });
        }
    }
    group.finish();
}

fn suite(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify --suite all --size-budget small");
    group.sample_size(10);
    for (name, exec) in MODES {
        let options = RunOptions { size: SizeBudget::Small, exec, ..RunOptions::default() };
        group.bench_function(name, |b| b.iter(|| run_suite(Suite::All, black_box(&options))));
    }
    group.finish();
}

criterion_group!(benches, minors, signed_sums, tiler, suite);
criterion_main!(benches);
