//! `approach`: decide, build and inspect arrangements of approaching
//! pseudo-lines from the command line.
//!
//! Exit codes: 0 success or realizable, 2 a mathematical negative (not
//! realizable, invalid sequence, counterexample), 1 usage or input error.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "approach", version, about = "Approaching pseudo-line arrangements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    Full,
    Reduced,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Side {
    Top,
    Bottom,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Filter {
    All,
    Approaching,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check a .perms file as an allowable sequence (or, with --sub, as
    /// snapshots of one).
    Validate {
        input: PathBuf,
        #[arg(long)]
        sub: bool,
    },
    /// Decide whether some approaching arrangement shows the snapshots in
    /// order; writes a witness .arr.json or a .cert.json.
    Decide {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
        /// Ask for a strictly approaching witness with this gap.
        #[arg(long)]
        gap: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Realize a complete allowable sequence exactly (same sweep).
    Realize {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "reduced")]
        mode: Mode,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Re-verify a .cert.json infeasibility certificate.
    Verify { input: PathBuf },
    /// Sweep an arrangement into its allowable sequence.
    Sweep {
        input: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Dual arrangement of a generalized configuration (.cfg.json).
    Dual {
        input: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Primal configuration of a strictly approaching, simple arrangement.
    Primal {
        input: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Add one pseudo-line: through two points, as a convex combination of
    /// neighbours, or beyond an extreme line.
    Extend {
        input: PathBuf,
        /// Point `x,y` (with --q).
        #[arg(long, requires = "q")]
        p: Option<String>,
        #[arg(long, requires = "p")]
        q: Option<String>,
        /// Insert between lines i and i+1 (1-based) with --lambda.
        #[arg(long, requires = "lambda")]
        between: Option<usize>,
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long, value_enum, requires = "delta")]
        extreme: Option<Side>,
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Find a triangle bounded by lines of both colors.
    Bichromatic {
        input: PathBuf,
        /// Also render the arrangement with the triangle highlighted.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// List the triangular cells and compare with n - 2.
    Triangles { input: PathBuf },
    /// Triangle-flip graph on commutation classes of simple sequences.
    Flipgraph {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "approaching")]
        filter: Filter,
        /// Adjacency list output.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Generate an arrangement or sequence.
    Generate {
        #[command(subcommand)]
        what: Generate,
    },
    /// Search for non-realizable three-snapshot candidates.
    Search {
        #[command(subcommand)]
        what: Search,
    },
    /// Render an arrangement as SVG.
    Render {
        input: PathBuf,
        #[arg(long, short)]
        out: Option<PathBuf>,
        #[arg(long)]
        crossings: bool,
        #[arg(long)]
        triangles: bool,
    },
}

#[derive(Subcommand)]
pub enum Generate {
    /// Lines through the origin.
    Pencil {
        #[arg(long)]
        n: usize,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Random strictly approaching polygonal arrangement.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        columns: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Color lines red and blue at random.
        #[arg(long)]
        colored: bool,
        /// Straight lines instead of polygonal ones.
        #[arg(long)]
        lines: bool,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Member of the 2^Θ(n²) family, one bit per designated crossing.
    Bits {
        #[arg(long)]
        n: usize,
        /// Bits as a 0/1 string; random from --seed when absent.
        #[arg(long)]
        bits: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Member of the superfactorial family.
    Superfactorial {
        #[arg(long)]
        n: usize,
        /// Permutations separated by ';', e.g. "3 1 2;2 1" for n = 4.
        /// Identities when absent.
        #[arg(long)]
        choices: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// The non-Pappus allowable sequence (.perms).
    Nonpappus {
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
pub enum Search {
    /// Decide every (id, π₁, π₂) with inv(π₁) ⊊ inv(π₂).
    Triples {
        #[arg(long, default_value_t = 6)]
        n: usize,
        /// Maximum number of candidates to decide.
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
        /// Witness list output.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Directory for one .cert.json per witness.
        #[arg(long)]
        cert_dir: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
