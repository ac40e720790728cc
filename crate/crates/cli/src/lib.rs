//! Argument model and dispatch for the `linkforge` binary. [`run`] is the
//! whole program minus process concerns, so it can be driven from tests.

pub mod artifact;
mod commands;

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use linkforge::invariants::DEFAULT_ORACLE_CAP;
use serde::Serialize;

pub use commands::run;

#[derive(Parser, Debug, Clone)]
#[command(
    name = "linkforge",
    version,
    about = "Spatial-graph linking and knotting experiments"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Input artifact (JSON).
    #[arg(short, long, global = true)]
    pub input: Option<PathBuf>,
    /// Where to write the artifact; stdout when omitted.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
    /// Seed for every random choice the command makes.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, default_value_t = 10)]
    pub trials: usize,
    #[arg(short = 'n', long = "n", global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub alpha: Option<u64>,
    #[arg(long = "lambda", global = true)]
    pub lambda: Option<u64>,
    /// Source of linking numbers for constructions.
    #[arg(long, global = true, value_enum, default_value_t = Mode::Geometric)]
    pub mode: Mode,
    /// Largest twist multiplicity expanded into literal crossings.
    #[arg(long, global = true, default_value_t = 1 << 16, value_parser = clap::value_parser!(u64).range(1..))]
    pub expansion_cap: u64,
    /// Largest crossing count handed to the skein oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub oracle_cap: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Geometric,
    Synthetic,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Generate embeddings and fixtures.
    #[command(subcommand)]
    Gen(GenCmd),
    /// Linking numbers and a₂.
    #[command(subcommand)]
    Invariant(InvariantCmd),
    /// Linking patterns and containment queries.
    #[command(subcommand)]
    Pattern(PatternCmd),
    /// Run one of the cycle constructions.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Randomized and exhaustive invariant checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand, Debug, Clone)]
pub enum GenCmd {
    /// Random integer embedding of `K<n>` or `D4`.
    Random {
        #[arg(long, default_value = "K6")]
        graph: String,
        #[arg(long, default_value_t = 16)]
        bits: u32,
    },
    /// `c` curves on a torus, pairwise linked `--lambda` times.
    Torus {
        #[arg(long)]
        c: usize,
        #[arg(long)]
        segments: Option<usize>,
    },
    /// Separated keyrings; components are the rings, then the keys ring by ring.
    Keyring {
        #[arg(long, default_value_t = 1)]
        rings: usize,
        #[arg(long)]
        keys: usize,
    },
    /// Twisted diagram of the input embedding's graph.
    Twisted,
    /// One of the built-in fixtures.
    Fixture {
        #[arg(value_enum)]
        name: FixtureName,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FixtureName {
    Trefoil,
    FigureEight,
    Hopf,
    DoubleClasp,
    Triangles,
}

#[derive(Subcommand, Debug, Clone)]
pub enum InvariantCmd {
    /// Linking number of two components.
    Lk {
        #[arg(long, default_value = "0,1")]
        pair: Selection,
    },
    /// a₂ of one component.
    A2 {
        #[arg(long, default_value_t = 0)]
        component: usize,
        /// Cross-check against the skein oracle.
        #[arg(long)]
        skein: bool,
    },
    /// Pairwise linking numbers of all components.
    Matrix,
}

#[derive(Subcommand, Debug, Clone)]
pub enum PatternCmd {
    /// Linking pattern of the input link.
    Extract {
        #[arg(long, value_enum, default_value_t = PatternKind::Integer)]
        kind: PatternKind,
        #[arg(long)]
        vertex_weights: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Containment query on a pattern file; exit 1 when absent.
    Query {
        #[arg(long, value_enum)]
        shape: Shape,
        /// Partition size for `multipartite`.
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        min_edge_weight: u64,
        #[arg(long, default_value_t = 0)]
        min_vertex_weight: u64,
        #[arg(long, default_value_t = 0)]
        min_q_weight: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PatternKind {
    Integer,
    Mod2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Complete,
    CompleteOdd,
    Bipartite,
    Multipartite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Counts {
    ClosedForm,
    Relaxed,
}

#[derive(Subcommand, Debug, Clone)]
pub enum ConstructCmd {
    /// Merge J's into one cycle odd-linked with many X's.
    Multimerge {
        #[arg(long)]
        j: Option<Selection>,
        #[arg(long)]
        x: Option<Selection>,
    },
    /// Join J's and L's into one cycle linked strongly with every X and Y.
    Multijoin {
        #[arg(long)]
        j: Selection,
        #[arg(long)]
        l: Selection,
        #[arg(long)]
        x: Selection,
        #[arg(long)]
        y: Selection,
        #[arg(long, value_enum, default_value_t = Counts::ClosedForm)]
        counts: Counts,
    },
    /// `K_{n,n}` mod-2 pattern from keyrings.
    Bipartite,
    /// One step of the complete-pattern build.
    Complete {
        #[arg(long)]
        p1: Selection,
        #[arg(long)]
        p2: Selection,
        #[arg(long)]
        q: Option<Selection>,
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = Counts::ClosedForm)]
        counts: Counts,
    },
    /// W′ and the C's of a D₄ with every Hamiltonian cycle linked with the A's.
    Wprime {
        #[arg(long, default_value = "0")]
        a: Selection,
        /// All other components when omitted.
        #[arg(long)]
        b: Option<Selection>,
    },
    /// A knot with large |a₂| linked with every A.
    KnotExtract {
        #[arg(long, default_value = "0")]
        a: Selection,
        #[arg(long)]
        b: Option<Selection>,
    },
    /// `n` knots, pairwise linked and each with large |a₂|.
    Lotsknots {
        #[arg(long)]
        components: Option<Selection>,
        #[arg(long, value_enum, default_value_t = Counts::Relaxed)]
        counts: Counts,
    },
    /// Lotsknots with λ derived from α.
    Driver {
        #[arg(long)]
        components: Option<Selection>,
        #[arg(long, value_enum, default_value_t = Counts::Relaxed)]
        counts: Counts,
    },
    /// `n` components whose pairwise lk share one sign.
    Ramsey {
        #[arg(long)]
        components: Option<Selection>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum VerifyCmd {
    /// Σ ω over disjoint triangle pairs of random K₆ embeddings is odd.
    Cg6 {
        #[arg(long, default_value_t = 16)]
        bits: u32,
    },
    /// Σ a₂ over Hamiltonian cycles of random K₇ embeddings is odd.
    Cg7 {
        #[arg(long, default_value_t = 16)]
        bits: u32,
    },
    /// Σ|a₂| ≥ |lk(C₁,C₃)·lk(C₂,C₄)| on random D₄ embeddings and the double clasp.
    Ty {
        #[arg(long, default_value_t = 16)]
        bits: u32,
    },
    /// Twisted embedding links every disjoint cycle pair at least λ times.
    Prop2 {
        #[arg(long, default_value_t = 16)]
        bits: u32,
        /// Also compare against the literal expansion.
        #[arg(long)]
        literal: bool,
    },
    /// Every oriented triple of disjoint cycles has a positive pair.
    Cor3,
}

/// Component indices: `3`, `0..6`, `1,4,7` or mixtures like `0..3,9`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection(pub Vec<usize>);

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            if let Some((a, b)) = part.split_once("..") {
                let a: usize = a
                    .parse()
                    .map_err(|_| format!("bad range start in {part:?}"))?;
                let b: usize = b
                    .parse()
                    .map_err(|_| format!("bad range end in {part:?}"))?;
                if b < a {
                    return Err(format!("empty range {part:?}"));
                }
                out.extend(a..b);
            } else {
                out.push(part.parse().map_err(|_| format!("bad index {part:?}"))?);
            }
        }
        Ok(Selection(out))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// What a run produced: the artifact text and a one-line summary.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub artifact: Option<String>,
    pub summary: serde_json::Value,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] linkforge::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    /// Errors that report a failed check rather than bad input.
    pub fn status(&self) -> Status {
        use linkforge::Error as E;
        match self {
            CliError::Core(
                E::TyViolation { .. } | E::NoWitness(_) | E::NotFound | E::PatternNotComplete(..),
            ) => Status::Fail,
            _ => Status::Error,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "USAGE",
            CliError::Core(e) => e.code(),
            CliError::Io { .. } => "IO",
        }
    }
}
