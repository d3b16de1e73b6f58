//! Command implementations behind the `biplab` binary: batch verification
//! of skeleton-poset structure, interval topology, move graphs, and bridge
//! decompositions, with deterministic JSON/CSV reports.

pub mod commands;
pub mod export;
pub mod ingest;
pub mod report;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use biplab_core::symgroup::{all_permutations, Permutation};
use biplab_core::{build_bip_poset, build_generic_poset, SkeletonPoset};

use report::Report;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage error: {0}")]
    Usage(String),
    #[error("io error: {0}")]
    Io(String),
}

#[derive(Debug, Parser)]
#[command(
    name = "biplab",
    version,
    about = "Verification laboratory for 1-skeleton posets of Bruhat interval polytopes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structural checks: Hasse property, lattice, directional simplicity,
    /// join = pseudojoin, distinct joins, non-revisiting, edge lengths.
    VerifyStructure(StructureArgs),
    /// Interval topology: Möbius and Euler agreement with the face
    /// criterion, plus mod-2 Betti patterns under the face cap.
    VerifyTopology(TopologyArgs),
    /// Move graphs of saturated chains: connectivity, vertex connectivity,
    /// polygon histograms, star-path replay.
    MoveGraph(MoveGraphArgs),
    /// Bridge decompositions of Grassmannian permutations: trip round
    /// trips, atom/support identification, move-graph connectivity.
    Bcfw(BcfwArgs),
}

/// Subject scope shared by most commands: either Bruhat interval posets
/// (from --n or --w) or a generic polytope with a cost vector.
#[derive(Debug, Args, Serialize, Clone)]
pub struct ScopeArgs {
    /// Verify every permutation in S_n.
    #[arg(long, conflicts_with_all = ["w", "vertices"])]
    pub n: Option<usize>,
    /// Verify specific permutations (one-line notation, repeatable).
    #[arg(long, num_args = 1.., conflicts_with = "vertices")]
    pub w: Vec<String>,
    /// Vertex file for a generic polytope (`label: p/q p/q ...` per line).
    #[arg(long, requires = "cost")]
    pub vertices: Option<PathBuf>,
    /// Cost vector for --vertices, e.g. `1,2,4` or `1/2,3`.
    #[arg(long)]
    pub cost: Option<String>,
}

#[derive(Debug, Args, Serialize, Clone)]
pub struct CommonArgs {
    /// Write the report here instead of stdout.
    #[arg(long)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads for batch verification (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Seed for sampled checks; fixed seed gives byte-identical reports.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Include wall-clock timings in the report (breaks byte-for-byte
    /// reproducibility across runs).
    #[arg(long, default_value_t = false)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args, Serialize)]
pub struct StructureArgs {
    #[command(flatten)]
    pub scope: ScopeArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Export the (single) subject's poset as JSON to this path.
    #[arg(long)]
    pub export_poset: Option<PathBuf>,
    /// Include meet/join tables in the poset export.
    #[arg(long, default_value_t = false)]
    pub export_tables: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct TopologyArgs {
    #[command(flatten)]
    pub scope: ScopeArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Restrict to the single interval [u, v] (requires --v).
    #[arg(long, requires = "v")]
    pub u: Option<String>,
    #[arg(long, requires = "u")]
    pub v: Option<String>,
    /// Cap on order-complex faces for Betti computations.
    #[arg(long, default_value_t = 200_000)]
    pub max_complex_faces: usize,
    /// Cross-validate the lattice face criterion against the geometric
    /// face oracle (exhaustive up to this many intervals, sampled beyond).
    #[arg(long, default_value_t = false)]
    pub cross_validate_faces: bool,
    /// Sample size per subject for the geometric cross-validation when the
    /// interval count exceeds it.
    #[arg(long, default_value_t = 400)]
    pub face_samples: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct MoveGraphArgs {
    #[command(flatten)]
    pub scope: ScopeArgs,
    #[command(flatten)]
    pub common: CommonArgs,
    /// Shorthand for the full permutahedron: equivalent to --w n,n-1,..,1.
    #[arg(long, conflicts_with_all = ["n", "w", "vertices"])]
    pub permutahedron: Option<usize>,
    /// Restrict to the single interval [u, v] (requires --v).
    #[arg(long, requires = "v")]
    pub u: Option<String>,
    #[arg(long, requires = "u")]
    pub v: Option<String>,
    /// Cap on maximal chains per interval.
    #[arg(long, default_value_t = 50_000)]
    pub max_chains: usize,
    /// Write the move graph (single subject, full or given interval) as DOT.
    #[arg(long)]
    pub dot: Option<PathBuf>,
    /// Write the move graph (single subject, full or given interval) as JSON.
    #[arg(long)]
    pub export_graph: Option<PathBuf>,
    /// Replay star paths between sampled chain pairs and check the shared
    /// vertices stay fixed.
    #[arg(long, default_value_t = false)]
    pub star_replay: bool,
    /// Sample size for --star-replay chain pairs per interval.
    #[arg(long, default_value_t = 50)]
    pub star_samples: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct BcfwArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// A Grassmannian permutation in one-line notation (repeatable).
    #[arg(long, num_args = 1.., conflicts_with = "all_grassmannian")]
    pub w: Vec<String>,
    /// Verify every Grassmannian permutation in S_n.
    #[arg(long, requires = "n")]
    pub all_grassmannian: bool,
    #[arg(long)]
    pub n: Option<usize>,
    /// Cap on maximal chains per permutation.
    #[arg(long, default_value_t = 50_000)]
    pub max_chains: usize,
    /// Include per-chain bridge sequences in the report.
    #[arg(long, default_value_t = false)]
    pub emit_bridges: bool,
    /// Include the plabic rotation system of the first chain per subject.
    #[arg(long, default_value_t = false)]
    pub emit_plabic: bool,
}

/// A named poset under verification.
pub struct Subject {
    pub name: String,
    pub poset: SkeletonPoset,
}

fn parse_perm(s: &str) -> Result<Permutation, CliError> {
    s.parse()
        .map_err(|e| CliError::Usage(format!("bad permutation {s:?}: {e}")))
}

/// Resolves the scope into constructed posets, sorted by subject name.
pub fn resolve_subjects(scope: &ScopeArgs) -> Result<Vec<Subject>, CliError> {
    let mut subjects = Vec::new();
    if let Some(path) = &scope.vertices {
        let cost = ingest::parse_cost(
            scope
                .cost
                .as_deref()
                .ok_or_else(|| CliError::Usage("--vertices requires --cost".into()))?,
        )?;
        let poly = ingest::read_vertex_file(path)?;
        let name = format!(
            "file={}",
            path.file_name()
                .map(|f| f.to_string_lossy().into_owned())
                .unwrap_or_else(|| path.display().to_string())
        );
        let poset =
            build_generic_poset(poly, cost).map_err(|e| CliError::Usage(e.to_string()))?;
        subjects.push(Subject { name, poset });
        return Ok(subjects);
    }
    let mut perms: Vec<Permutation> = Vec::new();
    if let Some(n) = scope.n {
        if n == 0 || n > 8 {
            return Err(CliError::Usage("--n must be between 1 and 8".into()));
        }
        perms.extend(all_permutations(n));
    }
    for w in &scope.w {
        perms.push(parse_perm(w)?);
    }
    if perms.is_empty() {
        return Err(CliError::Usage(
            "nothing to verify: pass --n, --w, or --vertices".into(),
        ));
    }
    perms.sort();
    perms.dedup();
    use rayon::prelude::*;
    let mut subjects: Vec<Subject> = perms
        .par_iter()
        .map(|w| {
            let poset = build_bip_poset(w).expect("interval poset construction");
            Subject {
                name: format!("w={w}"),
                poset,
            }
        })
        .collect();
    subjects.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(subjects)
}

fn config_json<T: Serialize>(args: &T) -> serde_json::Value {
    serde_json::to_value(args).expect("config serializes")
}

fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    if jobs == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(f)
}

/// Runs a parsed command and produces its report.
pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::VerifyStructure(args) => in_pool(args.common.jobs, || {
            commands::structure::run(args)
        }),
        Command::VerifyTopology(args) => in_pool(args.common.jobs, || {
            commands::topology::run(args)
        }),
        Command::MoveGraph(args) => in_pool(args.common.jobs, || {
            commands::movegraph::run(args)
        }),
        Command::Bcfw(args) => in_pool(args.common.jobs, || commands::bcfw::run(args)),
    }
}

/// Serializes a report in the requested format.
pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}
