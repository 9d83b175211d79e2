use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "tiling-reflect",
    version,
    about = "Exact checks for reflected path systems, Pfaffians, lozenge tilings and shifted plane partitions"
)]
pub struct Cli {
    /// Evaluate independent jobs one at a time instead of on the rayon pool.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite and print a report.
    Verify(VerifyArgs),
    /// Compute a single exact value.
    #[command(subcommand)]
    Compute(ComputeCommand),
    /// Graph reflection.
    #[command(subcommand)]
    Reflect(ReflectCommand),
    /// Lozenge regions: build, count, verify, render.
    #[command(subcommand)]
    Tile(TileCommand),
    /// Shifted plane partition generating functions.
    #[command(subcommand)]
    Spp(SppCommand),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Reflection,
    Sigma,
    Tilings,
    Hexagons,
    Spp,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Size {
    Tiny,
    Small,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub suite: SuiteName,
    #[arg(long, value_enum, default_value = "small")]
    pub size_budget: Size,
    #[arg(long, default_value_t = tiling_reflect::suite::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Record per-check wall time (makes the report non-reproducible).
    #[arg(long)]
    pub timings: bool,
}

/// Formula versus brute-force oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Formula,
    Oracle,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SppMethod {
    Det,
    Enum,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SppMode {
    Qt,
    QSpp,
    QSym,
}

#[derive(Debug, Subcommand)]
pub enum ComputeCommand {
    /// Path generating function between two vertices, or the path matrix of the file's endpoints.
    PathGf(PathGfArgs),
    /// Pfaffian of a skew-symmetric matrix.
    Pfaffian(PfaffianArgs),
    /// Weighted tiling count of a region.
    TilingCount(TilingCountArgs),
    /// Shifted plane partition generating function.
    SppGf(SppGfArgs),
    /// Product formula for the double-staircase two-sided region.
    #[command(name = "product-4-1")]
    Product41(ProductArgs),
}

#[derive(Debug, Args)]
pub struct PathGfArgs {
    /// Graph JSON: vertices, edges with weights, optional starts/ends.
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, requires = "to")]
    pub from: Option<String>,
    #[arg(long, requires = "from")]
    pub to: Option<String>,
    #[arg(long, value_enum, default_value = "formula")]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct PfaffianArgs {
    /// JSON file holding an array of rows.
    #[arg(long, conflicts_with = "entries", required_unless_present = "entries")]
    pub matrix: Option<PathBuf>,
    /// The same array of rows given inline.
    #[arg(long)]
    pub entries: Option<String>,
    #[arg(long, value_enum, default_value = "formula")]
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Stacked hooks with a free boundary.
    A,
    /// Two-sided region with half-weighted lozenges.
    ATilde,
    /// Hexagon with removed triangle pairs.
    Hexagon,
    /// Hexagon with a central rhombic hole.
    Punctured,
}

/// A region given as JSON, or built from family parameters.
#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long, conflicts_with = "family", required_unless_present = "family")]
    pub region: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<Family>,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Hexagon side parameter.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Hole parameter of the punctured hexagon.
    #[arg(long, default_value_t = 1)]
    pub x: u32,
    /// Strict partition, e.g. 9,7,6,3,2.
    #[arg(long, default_value = "")]
    pub shape: String,
    /// Removed hook or triangle labels, 1-based, e.g. 2,4.
    #[arg(long, value_delimiter = ',')]
    pub removed: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct TilingCountArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    /// `formula` is only available for the stacked-hook families.
    #[arg(long, value_enum, default_value = "oracle")]
    pub method: Method,
}

#[derive(Debug, Args)]
pub struct SppGfArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub shape: String,
    #[arg(long, value_enum, default_value = "qt")]
    pub mode: SppMode,
    #[arg(long, value_enum, default_value = "det")]
    pub method: SppMethod,
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: u32,
    #[arg(long, value_enum, default_value = "formula")]
    pub method: Method,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantName {
    Bar,
    Tilde,
}

#[derive(Debug, Subcommand)]
pub enum ReflectCommand {
    /// Build the doubled graph; writes graph JSON with the new endpoints.
    Build(ReflectBuildArgs),
    /// Check the reflection identity on a graph file.
    Verify(ReflectVerifyArgs),
}

#[derive(Debug, Args)]
pub struct ReflectBuildArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_enum)]
    pub variant: VariantName,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ReflectVerifyArgs {
    #[arg(long)]
    pub graph: PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Symmetry {
    Central,
    Vertical,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum TileCommand {
    /// Write the JSON of a built region.
    Build(TileBuildArgs),
    /// Weighted tiling count, or the number of symmetric tilings.
    Count(TileCountArgs),
    /// Compare formulas and tilers for the stacked-hook regions.
    Verify(TileVerifyArgs),
    /// Draw a region as SVG, optionally with a sampled tiling.
    Render(TileRenderArgs),
}

#[derive(Debug, Args)]
pub struct TileBuildArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TileCountArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    #[arg(long, value_enum)]
    pub symmetry: Option<Symmetry>,
}

#[derive(Debug, Args)]
pub struct TileVerifyArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub shape: String,
    #[arg(long, value_delimiter = ',')]
    pub removed: Vec<usize>,
}

#[derive(Debug, Args)]
pub struct TileRenderArgs {
    #[command(flatten)]
    pub region: RegionArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Draw one tiling chosen by a seeded random search.
    #[arg(long)]
    pub sample_tiling: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum SppCommand {
    /// Generating function as canonical polynomial text.
    Gf(SppGfArgs),
}
