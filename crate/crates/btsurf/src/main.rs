use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use btsurf::run;

/// Exact detection of surfaces in triangulated 3-manifolds through
/// lattice classes over the rational function field.
#[derive(Parser)]
#[command(name = "btsurf", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a triangulation and, optionally, a normal surface.
    Validate {
        triangulation: PathBuf,
        #[arg(long)]
        surface: Option<PathBuf>,
    },
    /// Build the cover determined by a permutation representation.
    Cover {
        triangulation: PathBuf,
        permutations: PathBuf,
        #[arg(long)]
        surface: Option<PathBuf>,
        /// Write the covering triangulation here.
        #[arg(long)]
        out_tri: Option<PathBuf>,
    },
    /// Count components of surface and complement preimages in a cover.
    Corollary {
        triangulation: PathBuf,
        surface: PathBuf,
        coorientation: PathBuf,
        permutations: PathBuf,
    },
    /// Run the detection pipeline: heights, equivariance, distance
    /// classification, and dual surface extraction.
    Detect {
        triangulation: PathBuf,
        surface: PathBuf,
        coorientation: PathBuf,
        permutations: PathBuf,
        /// Override the intersection homomorphism (psi v1 file).
        #[arg(long)]
        psi: Option<PathBuf>,
        /// Extra words to check (words v1 file).
        #[arg(long)]
        words: Option<PathBuf>,
        /// Base corner fixing the height gauge.
        #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(..4))]
        gauge: u8,
        /// Seed for the sampled-word checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the trace table of the induced representation.
    Character {
        triangulation: PathBuf,
        surface: PathBuf,
        coorientation: PathBuf,
        permutations: PathBuf,
        #[arg(long)]
        psi: Option<PathBuf>,
        #[arg(long)]
        words: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Query the lattice-class combinatorics directly.
    Building {
        #[command(subcommand)]
        op: BuildingOp,
    },
}

#[derive(Subcommand)]
enum BuildingOp {
    /// Graph distance between two lattice classes.
    Dist {
        /// Basis matrix (`t,0;0,t^-1`) or `L(n)` / `L'(n)`.
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Whether two classes span an edge.
    Adjacent {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Type of a vertex: valuation of the determinant mod n.
    Type {
        #[arg(long)]
        a: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate {
            triangulation,
            surface,
        } => run::validate(triangulation, surface.as_deref()),
        Command::Cover {
            triangulation,
            permutations,
            surface,
            out_tri,
        } => run::cover(
            triangulation,
            permutations,
            surface.as_deref(),
            out_tri.as_deref(),
        ),
        Command::Corollary {
            triangulation,
            surface,
            coorientation,
            permutations,
        } => run::corollary(triangulation, surface, coorientation, permutations),
        Command::Detect {
            triangulation,
            surface,
            coorientation,
            permutations,
            psi,
            words,
            gauge,
            seed,
        } => run::detect(
            triangulation,
            surface,
            coorientation,
            permutations,
            psi.as_deref(),
            words.as_deref(),
            *gauge,
            *seed,
        ),
        Command::Character {
            triangulation,
            surface,
            coorientation,
            permutations,
            psi,
            words,
            seed,
        } => run::character(
            triangulation,
            surface,
            coorientation,
            permutations,
            psi.as_deref(),
            words.as_deref(),
            *seed,
        ),
        Command::Building { op } => match op {
            BuildingOp::Dist { a, b } => run::building("dist", a, Some(b)),
            BuildingOp::Adjacent { a, b } => run::building("adjacent", a, Some(b)),
            BuildingOp::Type { a } => run::building("type", a, None),
        },
    };
    match result {
        Ok(report) => match run::finish(&report, cli.report.as_ref()) {
            Ok(code) => ExitCode::from(code as u8),
            Err(e) => {
                eprintln!("error: {}", e);
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(1)
        }
    }
}
