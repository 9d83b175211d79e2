//! Seeded verification suites: every identity in the crate checked on batches
//! of exact instances, with the outcome collected into a [`RunReport`].
//!
//! Instances are generated up front from the seed, then evaluated in parallel
//! or sequentially; the report is always in generation order, so two runs with
//! the same seed and size print the same bytes (unless timings are requested).

mod report;
mod sections;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::exec::Execution;

pub use report::{Check, RunReport};

use sections::{Job, Outcome};

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 1;

/// Named groups of sections, as selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Reflection,
    Sigma,
    Tilings,
    Hexagons,
    Spp,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["reflection", "sigma", "tilings", "hexagons", "spp", "all"];

    pub fn sections(self) -> &'static [Section] {
        use Section::*;
        match self {
            Suite::Sigma => &[Sigma, Pfaffian, Lemma],
            Suite::Reflection => &[ReflectionDet, ReflectionPrinciple],
            Suite::Tilings => &[HalfRegions, Product, Staircase, Doubling],
            Suite::Hexagons => &[Hexagons],
            Suite::Spp => &[QtGf, PlanePartitions, LatticeGf],
            Suite::All => &Section::ALL,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::Reflection, Suite::Sigma, Suite::Tilings, Suite::Hexagons, Suite::Spp, Suite::All]
            .iter()
            .position(|s| s == self)
            .expect("listed");
        f.write_str(Suite::NAMES[i])
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "reflection" => Ok(Suite::Reflection),
            "sigma" => Ok(Suite::Sigma),
            "tilings" => Ok(Suite::Tilings),
            "hexagons" => Ok(Suite::Hexagons),
            "spp" => Ok(Suite::Spp),
            "all" => Ok(Suite::All),
            _ => Err(Error::Parse(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", ")))),
        }
    }
}

/// How many instances each section draws.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum SizeBudget {
    Tiny,
    #[default]
    Small,
    /// The full acceptance scale.
    Full,
}

impl fmt::Display for SizeBudget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeBudget::Tiny => "tiny",
            SizeBudget::Small => "small",
            SizeBudget::Full => "full",
        })
    }
}

impl FromStr for SizeBudget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "tiny" => Ok(SizeBudget::Tiny),
            "small" => Ok(SizeBudget::Small),
            "full" => Ok(SizeBudget::Full),
            _ => Err(Error::Parse(format!("unknown size budget {s:?}; expected tiny, small or full"))),
        }
    }
}

/// One batch of checks. Each section has its own random stream, so its
/// instances do not depend on which other sections run alongside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Section {
    Sigma,
    Pfaffian,
    Lemma,
    ReflectionDet,
    ReflectionPrinciple,
    HalfRegions,
    Product,
    Staircase,
    Doubling,
    Hexagons,
    QtGf,
    PlanePartitions,
    LatticeGf,
}

impl Section {
    pub const ALL: [Section; 13] = [
        Section::Sigma,
        Section::Pfaffian,
        Section::Lemma,
        Section::ReflectionDet,
        Section::ReflectionPrinciple,
        Section::HalfRegions,
        Section::Product,
        Section::Staircase,
        Section::Doubling,
        Section::Hexagons,
        Section::QtGf,
        Section::PlanePartitions,
        Section::LatticeGf,
    ];

    fn stream(self) -> u64 {
        Section::ALL.iter().position(|&s| s == self).expect("listed") as u64
    }

    fn jobs(self, seed: u64, size: SizeBudget) -> Vec<Job> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(self.stream());
        match self {
            Section::Sigma => sections::sigma(&mut rng, size),
            Section::Pfaffian => sections::pfaffians(&mut rng, size),
            Section::Lemma => sections::lemma(&mut rng, size),
            Section::ReflectionDet => sections::reflection_dets(&mut rng, size),
            Section::ReflectionPrinciple => sections::reflection_principle(&mut rng, size),
            Section::HalfRegions => sections::half_regions(size),
            Section::Product => sections::product(size),
            Section::Staircase => sections::staircase(size),
            Section::Doubling => sections::doubling(size),
            Section::Hexagons => sections::hexagons(size),
            Section::QtGf => sections::qt_gf(size),
            Section::PlanePartitions => sections::plane_partitions(size),
            Section::LatticeGf => sections::lattice_gf(size),
        }
    }
}

/// Knobs shared by every run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub size: SizeBudget,
    pub seed: u64,
    pub exec: Execution,
    /// Record wall time per check. Off by default since it makes output non-reproducible.
    pub timings: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { size: SizeBudget::default(), seed: DEFAULT_SEED, exec: Execution::default(), timings: false }
    }
}

pub fn run_suite(suite: Suite, options: &RunOptions) -> RunReport {
    let command = format!("verify --suite {suite} --size-budget {} --seed {}", options.size, options.seed);
    run_sections(suite.sections(), options, command)
}

/// Runs the given sections in order. Errors and budget exhaustion turn into
/// failing checks; the run always completes.
pub fn run_sections(sections: &[Section], options: &RunOptions, command: String) -> RunReport {
    let jobs: Vec<Job> = sections.iter().flat_map(|s| s.jobs(options.seed, options.size)).collect();
    let timings = options.timings;
    let checks = options.exec.map(jobs, |job| {
        let start = Instant::now();
        let outcome = (job.run)().unwrap_or_else(|e| Outcome { lhs: "error".into(), rhs: e.to_string(), pass: false });
        let wall_ms = timings.then(|| start.elapsed().as_secs_f64() * 1000.0);
        Check { name: job.name, lhs: outcome.lhs, rhs: outcome.rhs, pass: outcome.pass, wall_ms }
    });
    RunReport { command, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny(seed: u64, exec: Execution) -> RunOptions {
        RunOptions { size: SizeBudget::Tiny, seed, exec, timings: false }
    }

    #[test]
    fn names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(name.parse::<Suite>().unwrap().to_string(), name);
        }
        assert!("everything".parse::<Suite>().is_err());
        for name in ["tiny", "small", "full"] {
            assert_eq!(name.parse::<SizeBudget>().unwrap().to_string(), name);
        }
    }

    #[test]
    fn all_covers_every_section_once() {
        let mut listed: Vec<Section> = [Suite::Reflection, Suite::Sigma, Suite::Tilings, Suite::Hexagons, Suite::Spp]
            .iter()
            .flat_map(|s| s.sections().iter().copied())
            .collect();
        listed.sort_by_key(|s| s.stream());
        assert_eq!(listed, Section::ALL);
    }

    #[test]
    fn tiny_sigma_suite_passes_and_is_reproducible() {
        let first = run_suite(Suite::Sigma, &tiny(3, Execution::Parallel));
        assert!(first.all_pass(), "{}", first.to_text());
        assert_eq!(first, run_suite(Suite::Sigma, &tiny(3, Execution::Sequential)));
        assert_ne!(first.to_text(), run_suite(Suite::Sigma, &tiny(4, Execution::Sequential)).to_text());
    }

    #[test]
    fn sections_use_independent_streams() {
        let alone = run_sections(&[Section::Pfaffian], &tiny(9, Execution::Sequential), String::new());
        let together =
            run_sections(&[Section::Sigma, Section::Pfaffian], &tiny(9, Execution::Sequential), String::new());
        assert_eq!(&together.checks[together.checks.len() - alone.checks.len()..], &alone.checks[..]);
    }

    #[test]
    fn timings_are_opt_in() {
        let mut options = tiny(1, Execution::Sequential);
        assert!(run_suite(Suite::Hexagons, &options).checks.iter().all(|c| c.wall_ms.is_none()));
        options.timings = true;
        assert!(run_suite(Suite::Hexagons, &options).checks.iter().all(|c| c.wall_ms.is_some()));
    }
}
