//! `weilstar`: configure a ring, run enumerations and verification suites,
//! and emit reports.
//!
//! Exit status: 0 when every check passes, 1 on a verification failure, 2 on
//! an invalid configuration.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weilstar::config::{OutputFormat, RingSpec, RunConfig};
use weilstar::field::FieldSpec;
use weilstar::ring::Involution;

#[derive(Parser, Debug)]
#[command(name = "weilstar", version, about = "Weil representations of SL_*(2,A) over finite involutive rings")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
pub struct Opts {
    /// Characteristic of the base field.
    #[arg(long, global = true, default_value_t = 3)]
    pub p: u32,
    /// Degree of the base field over F_p.
    #[arg(long, global = true, default_value_t = 1)]
    pub e: usize,
    /// Monic modulus for F_q, low-to-high coefficients, comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    /// Truncation degree of A_m = F_q[x]/(x^m).
    #[arg(long, global = true, default_value_t = 1)]
    pub m: usize,
    #[arg(long, global = true, value_enum, default_value_t = InvolutionArg::NegateX)]
    pub involution: InvolutionArg,
    #[arg(long, global = true, value_enum, default_value_t = RingArg::Truncated)]
    pub ring: RingArg,
    /// Matrix size for the matrix and doubling rings.
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    #[arg(long, global = true, default_value_t = 100)]
    pub samples: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    pub output: FormatArg,
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Directory for cached Lagrangian tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum InvolutionArg {
    NegateX,
    Identity,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Truncated,
    Matrix,
    Doubling,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Bruhat,
    Geometric,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Ring facts.
    Ring {
        #[command(subcommand)]
        cmd: RingCmd,
    },
    /// SL_*(2,A): enumeration, relations, normal forms.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Lagrangians of W = A ⊕ A.
    Lagrangians {
        #[command(subcommand)]
        cmd: LagrangianCmd,
    },
    /// The connection on the Lagrangian bundle.
    Connection {
        #[command(subcommand)]
        cmd: ConnectionCmd,
    },
    /// Weil representations.
    Weil {
        #[command(subcommand)]
        cmd: WeilCmd,
    },
    /// The geometric 2-cocycle.
    Cocycle {
        #[command(subcommand)]
        cmd: CocycleCmd,
    },
    /// Characters of the Weil representations.
    Character {
        #[command(subcommand)]
        cmd: CharacterCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum RingCmd {
    Info,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    /// Breadth-first closure of the Bruhat generators.
    Enumerate {
        #[arg(long, default_value_t = 200_000)]
        limit: usize,
    },
    VerifyRelations,
    /// Bruhat normal form of a matrix given as a JSON list of four
    /// coordinate lists, row-major, e.g. '[[1],[0],[1],[1]]'.
    NormalForm { matrix: String },
}

#[derive(Subcommand, Debug)]
pub enum LagrangianCmd {
    Enumerate,
}

#[derive(Subcommand, Debug)]
pub enum ConnectionCmd {
    /// Properties a) to e); exhaustive by default when m = 1.
    Verify {
        #[arg(long)]
        exhaustive: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum WeilCmd {
    /// Build one construction and check its defining properties.
    Build {
        #[arg(long, value_enum, default_value_t = MethodArg::Bruhat)]
        method: MethodArg,
        /// Also emit the operator of this matrix (same literal as normal-form).
        #[arg(long)]
        element: Option<String>,
    },
    /// Compare the two constructions.
    Compare,
}

#[derive(Subcommand, Debug)]
pub enum CocycleCmd {
    Table,
}

#[derive(Subcommand, Debug)]
pub enum CharacterCmd {
    Table {
        #[arg(long, default_value_t = 5_000)]
        limit: usize,
    },
}

impl Opts {
    pub fn config(&self) -> RunConfig {
        let field = FieldSpec { p: self.p, e: self.e, modulus: self.modulus.clone() };
        let ring = match self.ring {
            RingArg::Truncated => RingSpec::TruncatedPoly {
                field,
                m: self.m,
                involution: match self.involution {
                    InvolutionArg::NegateX => Involution::NegateX,
                    InvolutionArg::Identity => Involution::Identity,
                },
            },
            RingArg::Matrix => RingSpec::MatrixRing { field, n: self.n },
            RingArg::Doubling => RingSpec::Doubling { field, n: self.n },
        };
        RunConfig {
            ring,
            seed: self.seed,
            samples: self.samples,
            tolerance: self.tolerance,
            output: match self.output {
                FormatArg::Json => OutputFormat::Json,
                FormatArg::Csv => OutputFormat::Csv,
                FormatArg::Text => OutputFormat::Text,
            },
            cache_dir: self.cache_dir.clone(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    commands::run(&cli)
}
