use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use tracecat::fpcm::CategoryFlag;

#[derive(Debug, Clone, Parser)]
#[command(name = "tracecat", version, about = "Trace monoids, state spaces and weak asynchronous systems")]
pub struct Cli {
    /// Document bundle to read (`-` for stdin).
    #[arg(long, short, global = true)]
    pub input: Option<PathBuf>,
    /// Category for monoid and space constructions. System commands always work over fpcm-par.
    #[arg(long, global = true, value_enum, default_value_t = Category::FpcmPar)]
    pub category: Category,
    /// Saturation bound for colimits.
    #[arg(long, global = true, default_value_t = 8)]
    pub bound: usize,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Name of the main result document.
    #[arg(long, global = true, default_value = "result")]
    pub name: String,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Category {
    Fpcm,
    FpcmPar,
}

impl From<Category> for CategoryFlag {
    fn from(c: Category) -> Self {
        match c {
            Category::Fpcm => CategoryFlag::Fpcm,
            Category::FpcmPar => CategoryFlag::FpcmPar,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Lexicographic normal forms of words.
    Normalize {
        monoid: String,
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Whether two words denote the same trace.
    Equiv { monoid: String, left: String, right: String },
    /// Validity and independence preservation of a homomorphism.
    HomCheck { hom: String },
    #[command(subcommand)]
    Monoid(MonoidCommand),
    /// Right adjoint of a finite monoid given by its multiplication table.
    Radjoint { table: String },
    #[command(subcommand)]
    Space(SpaceCommand),
    #[command(subcommand)]
    Asys(AsysCommand),
    /// Isomorphism of two monoids or two state spaces.
    IsoCheck { left: String, right: String },
}

#[derive(Debug, Clone, Subcommand)]
pub enum MonoidCommand {
    Product {
        #[arg(required = true)]
        monoids: Vec<String>,
    },
    Coproduct {
        #[arg(required = true)]
        monoids: Vec<String>,
    },
    Equalize { f: String, g: String },
    Coequalize { f: String, g: String },
    Limit { diagram: String },
    Colimit { diagram: String },
}

#[derive(Debug, Clone, Subcommand)]
pub enum SpaceCommand {
    Product {
        #[arg(required = true)]
        spaces: Vec<String>,
    },
    Equalize { f: String, g: String },
    Limit { diagram: String },
    Colimit { diagram: String },
}

#[derive(Debug, Clone, Subcommand)]
pub enum AsysCommand {
    /// Determinism and diamond diagnostics.
    Validate { system: String },
    Classify { system: String },
    MorphismCheck { morphism: String },
    PolygonalCheck { morphism: String },
    Product {
        #[arg(required = true)]
        systems: Vec<String>,
    },
    Limit { diagram: String },
    Colimit { diagram: String },
    /// Restriction to the reachable states.
    Reach { system: String },
    /// Canonical traces from the initial state with their end states.
    Unfold {
        system: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
}
