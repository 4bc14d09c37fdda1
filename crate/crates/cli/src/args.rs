use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kissing",
    version,
    about = "Bounds and configurations for kissing and spherical-code problems"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper bounds on spherical codes.
    #[command(subcommand)]
    Bound(BoundCmd),
    /// Inspect, verify and test named or user-supplied configurations.
    #[command(subcommand)]
    Config(ConfigCmd),
    /// Maximize the minimal angle of N points on the 2-sphere.
    Tammes(TammesArgs),
    /// Two-distance sets and graph representation numbers.
    #[command(subcommand)]
    Twodist(TwodistCmd),
    /// Cited reference constants.
    #[command(subcommand)]
    Tables(TablesCmd),
}

#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct Angle {
    /// Angle in degrees.
    #[arg(long = "angle-deg", allow_negative_numbers = true)]
    pub deg: Option<f64>,
    /// Angle in radians.
    #[arg(long = "angle-rad", allow_negative_numbers = true)]
    pub rad: Option<f64>,
}

impl Angle {
    pub fn radians(&self) -> f64 {
        match (self.deg, self.rad) {
            (Some(d), _) => d.to_radians(),
            (_, Some(r)) => r,
            (None, None) => unreachable!("clap enforces one angle flag"),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum BoundCmd {
    /// Delsarte linear-programming bound on A(n, φ).
    Lp(LpArgs),
    /// Fejes Tóth bound on A(3, φ).
    Ft(FtArgs),
}

#[derive(Debug, Args)]
pub struct LpArgs {
    /// Ambient dimension n (points on S^{n-1}).
    #[arg(long)]
    pub dim: usize,
    #[command(flatten)]
    pub angle: Angle,
    /// Polynomial degree.
    #[arg(long, default_value_t = 11)]
    pub degree: usize,
    /// Initial grid size; defaults to max(40·degree, 200).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Write the certificate as JSON to this path.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FtArgs {
    #[command(flatten)]
    pub angle: Angle,
}

#[derive(Debug, Clone, Args)]
pub struct Source {
    /// Named configuration (triangle, tetrahedron, octahedron, cube,
    /// icosahedron, 24cell, 600cell, e8roots).
    #[arg(long, conflicts_with = "file")]
    pub name: Option<String>,
    /// JSON file {"dim": n, "points": [[...], ...]}; `-` or no source reads stdin.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConfigCmd {
    /// Print the points.
    Show(Source),
    /// Check that all pairwise angles are at least the given angle.
    Verify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        angle: Angle,
    },
    /// Decide whether the contact graph is irreducible.
    Rigidity {
        #[command(flatten)]
        source: Source,
        /// Contact tolerance in radians.
        #[arg(long, default_value_t = kissing_core::rigidity::CONTACT_TOL)]
        tol: f64,
    },
    /// Print the contact graph.
    Contacts {
        #[command(flatten)]
        source: Source,
        /// Contact tolerance in radians.
        #[arg(long, default_value_t = kissing_core::rigidity::CONTACT_TOL)]
        tol: f64,
    },
}

#[derive(Debug, Args)]
pub struct TammesArgs {
    /// Number of points.
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 20)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Ascent iterations per continuation stage.
    #[arg(long, default_value_t = kissing_core::rigidity::DEFAULT_ITERS)]
    pub iters: usize,
    /// Worker threads for restarts (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Subcommand)]
pub enum TwodistCmd {
    /// Γ_n, p(n) and Σ_n = Γ_n - p(n).
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Representation number of a graph given as "n m" then m lines "u v".
    Dim2 {
        /// Graph file; `-` reads stdin.
        #[arg(long)]
        graph: PathBuf,
    },
    /// dim2 for every graph on n vertices, as CSV.
    Census {
        #[arg(long)]
        n: usize,
        /// CSV destination; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum TablesCmd {
    /// Known values and published bounds with citations.
    Reference,
}
