//! Job lists for each section. Instances are drawn here, sequentially, so the
//! list only depends on the seed; the jobs themselves are pure.

use std::fmt::Display;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::budget::Budget;
use crate::dag::lattice::{qt_lattice, random_boundary_instance, vertex_name, GridInstance, GridLayout};
use crate::dag::{is_compatible_with, path_gf, signed_sum_with};
use crate::error::Result;
use crate::exec::Execution;
use crate::linalg::{
    determinant, lemma_2_2_check, pfaffian, pfaffian_one_factors, pfaffian_row_expansion, sigma_squared_det,
    sigma_via_pfaffian, sum_max_minors, Matrix,
};
use crate::lozenge::{
    build_a, build_a_tilde, build_hexagon_with_holes, build_punctured_hexagon, count_symmetric_tilings,
    count_symmetric_tilings_by_filter, double_across_free_boundary, double_staircase_count, m_a_tilde_via_formula,
    product_formula_4_1, verify_theorem_3_1, verify_theorem_4_2, HexagonFamily, SymmetryMode, Tiler,
};
use crate::partitions::{
    lattice_gf_closed_form, pp_sym_volume_bruteforce, qt_gf_bruteforce, qt_gf_determinant, spp_volume_bruteforce,
    verify_theorem_4_3, volume_gf, StrictPartition, VolumeKind,
};
use crate::reflect::{verify_reflection_principle, ReflectionInput};
use crate::ring::{QtPoly, Rational};
use crate::suite::SizeBudget;

/// What a job reports: both sides as canonical text, and whether they agree.
pub(crate) struct Outcome {
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl Outcome {
    fn same<T: PartialEq + Display>(lhs: &T, rhs: &T) -> Outcome {
        Outcome { lhs: lhs.to_string(), rhs: rhs.to_string(), pass: lhs == rhs }
    }
}

type Run = Box<dyn Fn() -> Result<Outcome> + Send + Sync>;

pub(crate) struct Job {
    pub name: String,
    pub run: Run,
}

fn job(name: impl Into<String>, run: impl Fn() -> Result<Outcome> + Send + Sync + 'static) -> Job {
    Job { name: name.into(), run: Box::new(run) }
}

fn budget() -> Budget {
    Budget::from_env("suite check")
}

fn pick(size: SizeBudget, tiny: usize, small: usize, full: usize) -> usize {
    match size {
        SizeBudget::Tiny => tiny,
        SizeBudget::Small => small,
        SizeBudget::Full => full,
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> Matrix<Rational> {
    Matrix::from_fn(rows, cols, |_, _| Rational::from(rng.random_range(-3i64..=3)))
}

fn random_skew(rng: &mut ChaCha8Rng, order: usize) -> Matrix<Rational> {
    let mut a = Matrix::zeros(order, order);
    for i in 0..order {
        for j in i + 1..order {
            let v = Rational::from(rng.random_range(-3i64..=3));
            a.set(j, i, -v.clone());
            a.set(i, j, v);
        }
    }
    a
}

fn partition_label(shape: &StrictPartition, removed: &[usize]) -> String {
    let set: Vec<String> = removed.iter().map(|i| i.to_string()).collect();
    format!("lambda={shape} I={{{}}}", set.join(","))
}

fn subsets(k: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << k).map(move |mask| (1..=k).filter(|i| mask >> (i - 1) & 1 == 1).collect())
}

pub(crate) fn sigma(rng: &mut ChaCha8Rng, size: SizeBudget) -> Vec<Job> {
    (0..pick(size, 20, 60, 200))
        .map(|i| {
            let m = rng.random_range(1..=4);
            let n = rng.random_range(m..=7);
            let z = random_matrix(rng, m, n);
            job(format!("sigma/{i:03} {m}x{n}"), move || {
                let minors = sum_max_minors(&z, Execution::Sequential)?;
                let via_pfaffian = sigma_via_pfaffian(&z)?;
                let (upper, lower) = sigma_squared_det(&z)?;
                let square = minors.pow(2);
                Ok(Outcome {
                    lhs: format!("sigma {minors}, squared ({square}, {square})"),
                    rhs: format!("sigma {via_pfaffian}, squared ({upper}, {lower})"),
                    pass: minors == via_pfaffian && square == upper && square == lower,
                })
            })
        })
        .collect()
}

pub(crate) fn pfaffians(rng: &mut ChaCha8Rng, size: SizeBudget) -> Vec<Job> {
    (0..pick(size, 10, 30, 100))
        .map(|i| {
            let order = 2 * rng.random_range(1..=4usize);
            let a = random_skew(rng, order);
            job(format!("pfaffian/{i:03} order {order}"), move || {
                let pf = pfaffian(&a)?;
                let by_factors = pfaffian_one_factors(&a)?;
                let by_rows = pfaffian_row_expansion(&a)?;
                let det = determinant(&a)?;
                let square = pf.pow(2);
                Ok(Outcome {
                    lhs: format!("pf^2 {square}, pf {pf}, {pf}"),
                    rhs: format!("det {det}, pf {by_factors}, {by_rows}"),
                    pass: square == det && pf == by_factors && pf == by_rows,
                })
            })
        })
        .collect()
}

pub(crate) fn lemma(rng: &mut ChaCha8Rng, size: SizeBudget) -> Vec<Job> {
    (0..pick(size, 4, 10, 20))
        .map(|i| {
            let m = rng.random_range(1..=3usize);
            let n = rng.random_range(m..=5);
            let extra = if m % 2 == 0 { 2 * rng.random_range(1..=2) } else { 2 * rng.random_range(0..=1) + 1 };
            let z = random_matrix(rng, m, n);
            let a = random_skew(rng, n);
            let h = random_matrix(rng, m, extra);
            let b = random_skew(rng, extra);
            let shift = Rational::from(rng.random_range(1i64..=3));
            job(format!("lemma/{i:03} {m}x{n}+{extra}"), move || {
                let unchanged = lemma_2_2_check(&z, &a, &h, &b, &shift)?;
                Ok(Outcome { lhs: format!("unchanged {unchanged}"), rhs: "unchanged true".into(), pass: unchanged })
            })
        })
        .collect()
}

fn grid_instance(
    rng: &mut ChaCha8Rng,
    m: usize,
    max_n: usize,
    size_range: (i64, i64),
    reversed: bool,
    sinks: bool,
) -> Result<GridInstance> {
    let width = rng.random_range(size_range.0..=size_range.1);
    let height = rng.random_range(size_range.0..=size_range.1);
    let n = rng.random_range(m..=max_n);
    random_boundary_instance(rng, GridLayout { width, height, m, n, reversed, sinks })
}

fn instance_label(inst: &GridInstance) -> String {
    let order = if inst.reversed { " reversed" } else { "" };
    format!("m={} n={}{order}", inst.spec.m(), inst.spec.n())
}

pub(crate) fn reflection_dets(rng: &mut ChaCha8Rng, size: SizeBudget) -> Vec<Job> {
    let count = pick(size, 6, 15, 40);
    let mut instances = Vec::with_capacity(count);
    for i in 0..count {
        let reversed = i % 3 == 2;
        let m = if reversed { rng.random_range(2..=3) } else { rng.random_range(1..=3) };
        instances.push(grid_instance(rng, m, 5, (3, 5), reversed, false));
    }
    let mut jobs: Vec<Job> = instances
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, inst)| {
            let label = inst.as_ref().map(instance_label).unwrap_or_else(|e| e.to_string());
            job(format!("reflection-det/{i:03} {label}"), move || {
                let inst = inst.clone()?;
                let signed = signed_sum_with(&inst.dag, &inst.spec, Execution::Sequential, &budget())?;
                let (upper, lower) = crate::dag::reflection_det(&inst.dag, &inst.spec)?;
                let square = signed.pow(2);
                Ok(Outcome {
                    lhs: format!("({square}, {square})"),
                    rhs: format!("({upper}, {lower})"),
                    pass: square == upper && square == lower,
                })
            })
        })
        .collect();
    jobs.push(job("reflection-det/non-compatible instances", move || {
        let mut incompatible = 0;
        for inst in &instances {
            let inst = inst.clone()?;
            if !is_compatible_with(&inst.dag, &inst.spec, &budget())? {
                incompatible += 1;
            }
        }
        Ok(Outcome { lhs: format!("{incompatible} found"), rhs: "at least 1".into(), pass: incompatible >= 1 })
    }));
    jobs
}

pub(crate) fn reflection_principle(rng: &mut ChaCha8Rng, size: SizeBudget) -> Vec<Job> {
    (0..pick(size, 4, 10, 24))
        .map(|i| {
            let m = 1 + i % 3;
            let inst = grid_instance(rng, m, 4, (3, 4), i % 4 == 3, true);
            let label = inst.as_ref().map(instance_label).unwrap_or_else(|e| e.to_string());
            job(format!("reflection-principle/{i:03} {label}"), move || {
                let inst = inst.clone()?;
                let input = ReflectionInput::new(inst.dag, inst.spec)?;
                let report = verify_reflection_principle(&input, Execution::Sequential)?;
                let mut lhs = format!("({}, {})", report.squared, report.squared);
                let mut rhs = format!("({}, {})", report.bar, report.tilde);
                if let Some((s, b, t)) = &report.unsigned {
                    lhs.push_str(&format!("; identity ({s}, {s})"));
                    rhs.push_str(&format!("; identity ({b}, {t})"));
                }
                Ok(Outcome { lhs, rhs, pass: report.passes() })
            })
        })
        .collect()
}

pub(crate) fn half_regions(size: SizeBudget) -> Vec<Job> {
    let (max_part, max_parts, max_m) = match size {
        SizeBudget::Tiny => (2, 2, 1),
        SizeBudget::Small => (3, 3, 2),
        SizeBudget::Full => (4, 3, 2),
    };
    let mut jobs = Vec::new();
    for shape in StrictPartition::all_bounded(max_part, max_parts) {
        for m in 0..=max_m {
            for removed in subsets(shape.len()) {
                let shape = shape.clone();
                jobs.push(job(format!("half-regions/m={m} {}", partition_label(&shape, &removed)), move || {
                    let r = verify_theorem_3_1(m, &shape, &removed, Execution::Sequential, &budget())?;
                    Ok(Outcome {
                        lhs: format!("free {} / {}, squared {}", r.half_formula, r.half_tiler, r.half_formula.pow(2)),
                        rhs: format!(
                            "weighted {} / {}, scaled {}",
                            r.full_formula,
                            r.full_tiler,
                            Rational::from(2).pow(r.surviving as u32) * &r.full_formula
                        ),
                        pass: r.holds(),
                    })
                }));
            }
        }
    }
    jobs
}

pub(crate) fn product(_size: SizeBudget) -> Vec<Job> {
    let mut jobs = Vec::new();
    for m in 0..=3u32 {
        for n in 0..=3u32 {
            for k in 0..=n {
                jobs.push(job(format!("product/m={m} n={n} k={k}"), move || {
                    let shape = StrictPartition::double_staircase(n, k)?;
                    Ok(Outcome::same(&m_a_tilde_via_formula(m, &shape, &[])?, &product_formula_4_1(m, n, k)?))
                }));
            }
        }
    }
    jobs
}

pub(crate) fn staircase(size: SizeBudget) -> Vec<Job> {
    let mut cases = vec![(1, 1, 0), (1, 1, 1), (2, 2, 1)];
    if size != SizeBudget::Tiny {
        cases.extend([(1, 3, 2), (2, 2, 2)]);
    }
    let mut jobs = Vec::new();
    for (m, n, k) in cases {
        jobs.push(job(format!("staircase/free m={m} n={n} k={k}"), move || {
            let region = build_a(m, &StrictPartition::double_staircase(n, k)?, &[])?;
            let tiled = Tiler::new(&region)?.weighted_count(Execution::Sequential, &budget())?;
            Ok(Outcome::same(&tiled, &double_staircase_count(m, n, k)?))
        }));
        jobs.push(job(format!("staircase/weighted m={m} n={n} k={k}"), move || {
            let region = build_a_tilde(m, &StrictPartition::double_staircase(n, k)?, &[])?;
            let tiled = Tiler::new(&region)?.weighted_count(Execution::Sequential, &budget())?;
            Ok(Outcome::same(&tiled, &product_formula_4_1(m, n, k)?))
        }));
    }
    jobs
}

pub(crate) fn doubling(size: SizeBudget) -> Vec<Job> {
    let mut cases: Vec<(u32, Vec<u32>, Vec<usize>)> =
        vec![(1, vec![2], vec![]), (1, vec![1], vec![]), (2, vec![2, 1], vec![2])];
    if size != SizeBudget::Tiny {
        cases.extend([(2, vec![3, 1], vec![]), (1, vec![3, 2], vec![1])]);
    }
    cases
        .into_iter()
        .map(|(m, parts, removed)| {
            let shape = StrictPartition::new(parts);
            let label = match &shape {
                Ok(s) => partition_label(s, &removed),
                Err(e) => e.to_string(),
            };
            job(format!("doubling/m={m} {label}"), move || {
                let region = build_a(m, shape.as_ref().map_err(Clone::clone)?, &removed)?;
                let free = Tiler::new(&region)?.count(Execution::Sequential, &budget())?;
                let doubled = double_across_free_boundary(&region)?;
                let mirrored = count_symmetric_tilings(&doubled, SymmetryMode::Vertical, &budget())?;
                Ok(Outcome::same(&mirrored, &free))
            })
        })
        .collect()
}

fn hexagon_label(m: u32, n: u32, family: HexagonFamily, labels: &[usize]) -> String {
    let set: Vec<String> = labels.iter().map(|i| i.to_string()).collect();
    match family {
        HexagonFamily::Holes => format!("holes m={m} n={n} K={{{}}}", set.join(",")),
        HexagonFamily::Punctured { x } => format!("punctured m={m} n={n} x={x} K={{{}}}", set.join(",")),
    }
}

pub(crate) fn hexagons(size: SizeBudget) -> Vec<Job> {
    use HexagonFamily::{Holes, Punctured};
    let mut cases: Vec<(u32, u32, HexagonFamily, Vec<usize>)> =
        vec![(1, 2, Holes, vec![]), (1, 2, Holes, vec![1]), (1, 2, Punctured { x: 1 }, vec![])];
    if size != SizeBudget::Tiny {
        cases.extend([(1, 3, Holes, vec![]), (1, 3, Holes, vec![1])]);
    }
    if size == SizeBudget::Full {
        cases.extend([(2, 2, Holes, vec![]), (2, 2, Holes, vec![1])]);
    }
    let mut jobs = Vec::new();
    for (m, n, family, labels) in cases {
        let label = hexagon_label(m, n, family, &labels);
        let shared = labels.clone();
        jobs.push(job(format!("hexagons/orbits {label}"), move || {
            let r = verify_theorem_4_2(m, n, &shared, family, &budget())?;
            Ok(Outcome { lhs: r.central.to_string(), rhs: format!("{}^2", r.both), pass: r.holds() })
        }));
        let shared = labels.clone();
        jobs.push(job(format!("hexagons/filtered {label}"), move || {
            let region = match family {
                Holes => build_hexagon_with_holes(m, n, &shared)?,
                Punctured { x } => build_punctured_hexagon(m, n, x, &shared)?,
            };
            let central = count_symmetric_tilings_by_filter(&region, SymmetryMode::Central, &budget())?;
            let both = count_symmetric_tilings_by_filter(&region, SymmetryMode::Both, &budget())?;
            Ok(Outcome { lhs: central.to_string(), rhs: format!("{both}^2"), pass: central == both * both })
        }));
        jobs.push(job(format!("hexagons/quarter {label}"), move || {
            let r = verify_theorem_4_2(m, n, &labels, family, &budget())?;
            Ok(Outcome { lhs: r.both.to_string(), rhs: r.quarter_formula.to_string(), pass: r.quarter_matches() })
        }));
    }
    jobs
}

pub(crate) fn qt_gf(size: SizeBudget) -> Vec<Job> {
    let (max_part, max_parts, max_m) = match size {
        SizeBudget::Tiny => (2, 2, 1),
        SizeBudget::Small => (3, 3, 2),
        SizeBudget::Full => (4, 3, 3),
    };
    let mut jobs = vec![job("qt-gf/known m=1 lambda=(1)", || {
        let expected: QtPoly = "(1 + t)^2".parse()?;
        Ok(Outcome::same(&qt_gf_determinant(1, &StrictPartition::new(vec![1])?)?, &expected))
    })];
    for shape in StrictPartition::all_bounded(max_part, max_parts) {
        for m in 0..=max_m {
            let s = shape.clone();
            jobs.push(job(format!("qt-gf/qt m={m} lambda={shape}"), move || {
                let counted = qt_gf_bruteforce(m, &s)?;
                Ok(Outcome::same(&qt_gf_determinant(m, &s)?, &(&counted * &counted)))
            }));
            let s = shape.clone();
            jobs.push(job(format!("qt-gf/shifted-volume m={m} lambda={shape}"), move || {
                let counted = spp_volume_bruteforce(m, &s)?;
                Ok(Outcome::same(&volume_gf(m, &s, VolumeKind::Shifted)?, &(&counted * &counted)))
            }));
            let s = shape.clone();
            jobs.push(job(format!("qt-gf/symmetric-volume m={m} lambda={shape}"), move || {
                let counted = pp_sym_volume_bruteforce(m, &s)?;
                Ok(Outcome::same(&volume_gf(m, &s, VolumeKind::Symmetric)?, &(&counted * &counted)))
            }));
        }
    }
    jobs
}

pub(crate) fn plane_partitions(size: SizeBudget) -> Vec<Job> {
    let (max_part, max_parts, max_m) = match size {
        SizeBudget::Tiny => (2, 2, 1),
        SizeBudget::Small => (3, 2, 2),
        SizeBudget::Full => (3, 3, 2),
    };
    let mut jobs = Vec::new();
    for shape in StrictPartition::all_bounded(max_part, max_parts) {
        for m in 0..=max_m {
            let s = shape.clone();
            jobs.push(job(format!("plane-partitions/m={m} lambda={shape}"), move || {
                let r = verify_theorem_4_3(m, &s, Execution::Sequential)?;
                let scale = Rational::from(2).pow(r.parts as u32);
                Ok(Outcome {
                    lhs: format!("{}^2, {}^2", r.shifted_count, r.symmetric_count),
                    rhs: format!("2^{} * ({} tiler, {} formula)", r.parts, &scale * &r.tiler, &scale * &r.formula),
                    pass: r.holds(),
                })
            }));
        }
    }
    jobs
}

pub(crate) fn lattice_gf(_size: SizeBudget) -> Vec<Job> {
    let lattice = std::sync::Arc::new(qt_lattice(5, 5));
    let mut jobs = Vec::new();
    for a in 0..=5i64 {
        for d in 0..=5i64 {
            let lattice = lattice.clone();
            jobs.push(job(format!("lattice-gf/paths a={a} d={d}"), move || {
                let g = lattice.as_ref().as_ref().map_err(Clone::clone)?;
                let dp = path_gf(g, &vertex_name(a, 0), &vertex_name(0, d))?;
                Ok(Outcome::same(&lattice_gf_closed_form(a, 0, 0, d)?, &dp))
            }));
        }
    }
    jobs.push(job("lattice-gf/first-step recurrence 0<=a,b,c,d<=5", || {
        let gf = lattice_gf_closed_form;
        let (mut total, mut holding) = (0, 0);
        for a in 0..=5 {
            for b in 0..=5 {
                for c in 0..=5 {
                    for d in 0..=5 {
                        if (a, b) == (c, d) {
                            continue;
                        }
                        total += 1;
                        let step = QtPoly::try_qt(a, 1)?;
                        let rest = &(&step * &gf(a, b + 1, c, d)?) + &gf(a - 1, b, c, d)?;
                        if gf(a, b, c, d)? == rest {
                            holding += 1;
                        }
                    }
                }
            }
        }
        Ok(Outcome { lhs: format!("{holding} of {total}"), rhs: format!("{total} of {total}"), pass: holding == total })
    }));
    jobs
}
