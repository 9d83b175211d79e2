use std::fmt::Display;
use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use thiserror::Error;

use tiling_reflect::budget::Budget;
use tiling_reflect::dag::{enumerate_nonintersecting, path_gf, path_matrix, EndpointSpec, WeightedDag};
use tiling_reflect::linalg::{pfaffian, pfaffian_one_factors, Matrix};
use tiling_reflect::lozenge::{
    build_a, build_a_tilde, build_hexagon_with_holes, build_punctured_hexagon, count_symmetric_tilings,
    m_a_tilde_via_formula, mf_a_via_formula, product_formula_4_1, render_svg, verify_theorem_3_1, Region, SymmetryMode,
    Tiler,
};
use tiling_reflect::partitions::{
    pp_sym_volume_bruteforce, qt_gf_bruteforce, qt_gf_determinant, spp_volume_bruteforce, volume_gf, StrictPartition,
    VolumeKind,
};
use tiling_reflect::reflect::{build_gsym, verify_reflection_principle, ReflectionInput, Variant};
use tiling_reflect::ring::{QtPoly, Rational};
use tiling_reflect::suite::{run_suite, RunOptions, SizeBudget, Suite};
use tiling_reflect::Execution;

use crate::args::*;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags or malformed input files.
    #[error("{0}")]
    Usage(String),
    /// Two methods disagreed.
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Failed(String),
}

impl From<tiling_reflect::Error> for CliError {
    fn from(e: tiling_reflect::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// What to print and the exit status.
pub struct Output {
    pub stdout: String,
    pub status: u8,
}

impl Output {
    fn ok(text: impl Display) -> Output {
        Output { stdout: format!("{text}\n"), status: 0 }
    }
}

fn usage(e: impl Display) -> CliError {
    CliError::Usage(e.to_string())
}

pub fn run(cli: Cli) -> CliResult<Output> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::default() };
    match cli.command {
        Command::Verify(a) => verify(a, exec),
        Command::Compute(c) => compute(c, exec),
        Command::Reflect(c) => reflect(c, exec),
        Command::Tile(c) => tile(c, exec),
        Command::Spp(SppCommand::Gf(a)) => spp_gf(&a),
    }
}

fn verify(a: VerifyArgs, exec: Execution) -> CliResult<Output> {
    let suite = match a.suite {
        SuiteName::Reflection => Suite::Reflection,
        SuiteName::Sigma => Suite::Sigma,
        SuiteName::Tilings => Suite::Tilings,
        SuiteName::Hexagons => Suite::Hexagons,
        SuiteName::Spp => Suite::Spp,
        SuiteName::All => Suite::All,
    };
    let size = match a.size_budget {
        Size::Tiny => SizeBudget::Tiny,
        Size::Small => SizeBudget::Small,
        Size::Full => SizeBudget::Full,
    };
    let report = run_suite(suite, &RunOptions { size, seed: a.seed, exec, timings: a.timings });
    let stdout = match a.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv()?,
    };
    Ok(Output { stdout, status: report.exit_status() as u8 })
}

/// Runs the selected methods; `both` fails unless they agree.
fn by_method<T: PartialEq + Display>(
    method: Method,
    formula: impl FnOnce() -> CliResult<T>,
    oracle: impl FnOnce() -> CliResult<T>,
) -> CliResult<T> {
    match method {
        Method::Formula => formula(),
        Method::Oracle => oracle(),
        Method::Both => {
            let (f, o) = (formula()?, oracle()?);
            if f == o {
                Ok(f)
            } else {
                Err(CliError::Mismatch(format!("formula gives {f} but oracle gives {o}")))
            }
        }
    }
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| usage(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column())))
}

fn write_or_print(out: Option<&Path>, text: String) -> CliResult<Output> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Failed(format!("{}: {e}", path.display())))?;
            Ok(Output { stdout: String::new(), status: 0 })
        }
        None => Ok(Output { stdout: text, status: 0 }),
    }
}

fn read_graph(path: &Path) -> CliResult<(WeightedDag<QtPoly>, Option<EndpointSpec>)> {
    WeightedDag::from_json(&read_json(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_shape(text: &str) -> CliResult<StrictPartition> {
    text.parse().map_err(|e| usage(format!("--shape: {e}")))
}

fn compute(c: ComputeCommand, exec: Execution) -> CliResult<Output> {
    match c {
        ComputeCommand::PathGf(a) => {
            let (g, spec) = read_graph(&a.graph)?;
            if let (Some(from), Some(to)) = (&a.from, &a.to) {
                let value = by_method(
                    a.method,
                    || Ok(path_gf(&g, from, to)?),
                    || Ok(enumerate_nonintersecting(&g, &EndpointSpec::new([from.as_str()], [to.as_str()])?, &[0])?),
                )?;
                return Ok(Output::ok(value));
            }
            let spec = spec.ok_or_else(|| usage("give --from/--to or put starts/ends in the graph file"))?;
            let matrix = path_matrix(&g, &spec)?;
            Ok(Output::ok(serde_json::to_string(&matrix.to_json()).expect("json")))
        }
        ComputeCommand::Pfaffian(a) => {
            let value = match (&a.matrix, &a.entries) {
                (Some(path), _) => read_json(path)?,
                (None, Some(text)) => serde_json::from_str(text).map_err(|e| usage(format!("--entries: {e}")))?,
                (None, None) => return Err(usage("give --matrix or --entries")),
            };
            let matrix = Matrix::<QtPoly>::from_json(&value).map_err(usage)?;
            let value = by_method(a.method, || Ok(pfaffian(&matrix)?), || Ok(pfaffian_one_factors(&matrix)?))?;
            Ok(Output::ok(value))
        }
        ComputeCommand::TilingCount(a) => {
            let region = load_region(&a.region)?;
            let formula = || -> CliResult<Rational> {
                let r = &a.region;
                let shape = parse_shape(&r.shape)?;
                match r.family {
                    Some(Family::A) => Ok(mf_a_via_formula(r.m, &shape, &r.removed, exec)?),
                    Some(Family::ATilde) => Ok(m_a_tilde_via_formula(r.m, &shape, &r.removed)?),
                    _ => Err(usage("a formula is only available for --family a or a-tilde")),
                }
            };
            let oracle = || -> CliResult<Rational> {
                Ok(Tiler::new(&region)?.weighted_count(exec, &Budget::from_env("tilings"))?)
            };
            Ok(Output::ok(by_method(a.method, formula, oracle)?))
        }
        ComputeCommand::SppGf(a) => spp_gf(&a),
        ComputeCommand::Product41(a) => {
            let value = by_method(
                a.method,
                || Ok(product_formula_4_1(a.m, a.n, a.k)?),
                || {
                    let region = build_a_tilde(a.m, &StrictPartition::double_staircase(a.n, a.k)?, &[])?;
                    Ok(Tiler::new(&region)?.weighted_count(exec, &Budget::from_env("tilings"))?)
                },
            )?;
            Ok(Output::ok(value))
        }
    }
}

fn spp_gf(a: &SppGfArgs) -> CliResult<Output> {
    let shape = parse_shape(&a.shape)?;
    let m = a.m;
    let det = || -> CliResult<QtPoly> {
        Ok(match a.mode {
            SppMode::Qt => qt_gf_determinant(m, &shape)?,
            SppMode::QSpp => volume_gf(m, &shape, VolumeKind::Shifted)?,
            SppMode::QSym => volume_gf(m, &shape, VolumeKind::Symmetric)?,
        })
    };
    let counted = || -> CliResult<QtPoly> {
        let single = match a.mode {
            SppMode::Qt => qt_gf_bruteforce(m, &shape)?,
            SppMode::QSpp => spp_volume_bruteforce(m, &shape)?,
            SppMode::QSym => pp_sym_volume_bruteforce(m, &shape)?,
        };
        Ok(&single * &single)
    };
    let method = match a.method {
        SppMethod::Det => Method::Formula,
        SppMethod::Enum => Method::Oracle,
        SppMethod::Both => Method::Both,
    };
    Ok(Output::ok(by_method(method, det, counted)?))
}

fn load_region(a: &RegionArgs) -> CliResult<Region> {
    if let Some(path) = &a.region {
        return Region::from_json(&read_json(path)?).map_err(|e| usage(format!("{}: {e}", path.display())));
    }
    let family = a.family.ok_or_else(|| usage("give --region or --family"))?;
    let built = match family {
        Family::A => build_a(a.m, &parse_shape(&a.shape)?, &a.removed),
        Family::ATilde => build_a_tilde(a.m, &parse_shape(&a.shape)?, &a.removed),
        Family::Hexagon => build_hexagon_with_holes(a.m, a.n, &a.removed),
        Family::Punctured => build_punctured_hexagon(a.m, a.n, a.x, &a.removed),
    };
    built.map_err(usage)
}

fn reflect(c: ReflectCommand, exec: Execution) -> CliResult<Output> {
    let input = |path: &Path| -> CliResult<ReflectionInput<QtPoly>> {
        let (g, spec) = read_graph(path)?;
        let spec = spec.ok_or_else(|| usage(format!("{}: graph needs starts and ends", path.display())))?;
        ReflectionInput::new(g, spec).map_err(usage)
    };
    match c {
        ReflectCommand::Build(a) => {
            let variant = match a.variant {
                VariantName::Bar => Variant::Bar,
                VariantName::Tilde => Variant::Tilde,
            };
            let reflected = build_gsym(&input(&a.graph)?, variant)?;
            let mut text = serde_json::to_string_pretty(&reflected.dag.to_json(Some(&reflected.spec))).expect("json");
            text.push('\n');
            write_or_print(a.out.as_deref(), text)
        }
        ReflectCommand::Verify(a) => {
            let report = verify_reflection_principle(&input(&a.graph)?, exec)?;
            let mut text = format!(
                "squared signed sum: {}\nbar: {}\ntilde: {}\ncompatible: {}\n",
                report.squared, report.bar, report.tilde, report.compatible
            );
            if let Some((s, b, t)) = &report.unsigned {
                text.push_str(&format!("identity permutation: {s}, {b}, {t}\n"));
            }
            text.push_str(if report.passes() { "PASS\n" } else { "FAIL\n" });
            Ok(Output { stdout: text, status: if report.passes() { 0 } else { 1 } })
        }
    }
}

fn tile(c: TileCommand, exec: Execution) -> CliResult<Output> {
    match c {
        TileCommand::Build(a) => {
            let region = load_region(&a.region)?;
            let mut text = serde_json::to_string(&region.to_json()).expect("json");
            text.push('\n');
            write_or_print(a.out.as_deref(), text)
        }
        TileCommand::Count(a) => {
            let region = load_region(&a.region)?;
            let budget = Budget::from_env("tilings");
            let text = match a.symmetry {
                None => Tiler::new(&region)?.weighted_count(exec, &budget)?.to_string(),
                Some(s) => {
                    let mode = match s {
                        Symmetry::Central => SymmetryMode::Central,
                        Symmetry::Vertical => SymmetryMode::Vertical,
                        Symmetry::Both => SymmetryMode::Both,
                    };
                    count_symmetric_tilings(&region, mode, &budget)?.to_string()
                }
            };
            Ok(Output::ok(text))
        }
        TileCommand::Verify(a) => {
            let shape = parse_shape(&a.shape)?;
            let r = verify_theorem_3_1(a.m, &shape, &a.removed, exec, &Budget::from_env("tilings"))?;
            let text = format!(
                "free boundary: formula {}, tiler {}\nweighted: formula {}, tiler {}\nsquare of free count = 2^{} * weighted count\n{}\n",
                r.half_formula,
                r.half_tiler,
                r.full_formula,
                r.full_tiler,
                r.surviving,
                if r.holds() { "PASS" } else { "FAIL" }
            );
            Ok(Output { stdout: text, status: if r.holds() { 0 } else { 1 } })
        }
        TileCommand::Render(a) => {
            let region = load_region(&a.region)?;
            let tiling = match a.sample_tiling {
                Some(seed) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let tiles = Tiler::new(&region)?.sample(&mut rng, &Budget::from_env("tilings"))?;
                    Some(tiles.ok_or_else(|| CliError::Failed("region has no tiling".into()))?)
                }
                None => None,
            };
            write_or_print(a.out.as_deref(), render_svg(&region, tiling.as_deref()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_reports_a_mismatch() {
        let agree = by_method(Method::Both, || Ok(2), || Ok(2));
        assert_eq!(agree.unwrap(), 2);
        let differ = by_method(Method::Both, || Ok(2), || Ok(3));
        assert!(matches!(differ, Err(CliError::Mismatch(msg)) if msg.contains('2') && msg.contains('3')));
        assert_eq!(by_method(Method::Oracle, || Err(usage("unused")), || Ok(5)).unwrap(), 5);
    }

    #[test]
    fn shapes_must_be_strict() {
        assert!(matches!(parse_shape("2,2"), Err(CliError::Usage(_))));
        assert_eq!(parse_shape("3,1").unwrap().parts(), &[3, 1]);
    }
}
