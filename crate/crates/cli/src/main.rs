mod check;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

#[derive(Parser)]
#[command(name = "cubhop", version, about = "Cubical sets, W-constructions of lattices and pointed obstruction data")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CubeOp {
    Standard,
    Boundary,
    Horn,
    Tensor,
    Product,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a category or lattice file and summarize it.
    Validate { file: PathBuf },
    /// List the morphisms between two objects.
    Homset {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// The mapping complex W(U, V).
    W {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, conflicts_with = "counts")]
        cells: bool,
        #[arg(long)]
        counts: bool,
    },
    /// Triangulation of W(U, V).
    Triangulate {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Integral homology of W(U, V), or of a cubical set file (`-` reads stdin).
    Homology {
        file: PathBuf,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
        /// Use the pointed relative model of a pointed category.
        #[arg(long)]
        pointed: bool,
    },
    /// Maximal reduced null sequences of a pointed lattice.
    Jgamma { file: PathBuf },
    /// The obstruction domain of a pointed lattice.
    Domain { file: PathBuf },
    /// Run every invariant check for a lattice.
    Check { file: PathBuf },
    /// Build a standard cubical set. Horn takes `n axis sign` with a 1-based
    /// axis; tensor and product take two operands, each a dimension or a file.
    Cube {
        #[arg(long, value_enum)]
        op: CubeOp,
        #[arg(long, num_args = 1.., required = true)]
        args: Vec<String>,
    },
    /// Evaluate the triple bracket of a chain-complex diagram.
    Toda { file: PathBuf },
}

/// A failed command: exit status, diagnostic for stderr and an optional
/// JSON report for stdout.
pub struct Failure {
    pub code: u8,
    pub message: String,
    pub report: Option<Value>,
}

impl Failure {
    pub fn malformed(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into(), report: None }
    }

    pub fn axiom(message: impl Into<String>, report: Value) -> Self {
        Failure { code: 3, message: message.into(), report: Some(report) }
    }

    pub fn internal(message: impl Into<String>, report: Option<Value>) -> Self {
        Failure { code: 4, message: message.into(), report }
    }
}

pub enum Output {
    Json(Value),
    Text(String),
}

fn run(cli: Cli) -> Result<Output, Failure> {
    use commands as c;
    match cli.cmd {
        Cmd::Validate { file } => c::validate(&file),
        Cmd::Homset { file, from, to } => c::homset(&file, &from, &to),
        Cmd::W { file, from, to, cells, counts } => c::w(&file, &from, &to, cells, counts),
        Cmd::Triangulate { file, from, to, format } => c::triangulate_cmd(&file, &from, &to, format),
        Cmd::Homology { file, from, to, pointed } => c::homology(&file, from.as_deref().zip(to.as_deref()), pointed),
        Cmd::Jgamma { file } => c::jgamma(&file),
        Cmd::Domain { file } => c::domain(&file),
        Cmd::Check { file } => check::run(&file),
        Cmd::Cube { op, args } => c::cube(op, &args),
        Cmd::Toda { file } => c::toda(&file),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Output::Json(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Output::Text(s)) => {
            print!("{s}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            if let Some(r) = f.report {
                println!("{r}");
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
