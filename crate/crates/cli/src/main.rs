//! `germlab`: exact invariants of polynomial map germs from JSON documents.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use germlab::GermError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }
}

impl From<GermError> for CliError {
    fn from(e: GermError) -> Self {
        let code = match &e {
            GermError::InvalidInput(_) | GermError::NotSingular(_) => 2,
            GermError::NotFinite(_) => 3,
            GermError::NotPrincipal(_)
            | GermError::NotDistinguishable(_)
            | GermError::ValidationFailed(_)
            | GermError::CleanFiberViolation(_)
            | GermError::HypothesisFails(_)
            | GermError::Indeterminate(_)
            | GermError::Degenerate(_) => 4,
            GermError::Internal(_) => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

#[derive(Parser)]
#[command(name = "germlab", version, about = "Multiplicities, Łojasiewicz exponents and Newton polygons of finite map germs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Local multiplicity m0 and the leading ideal of a local standard basis.
    Multiplicity { file: PathBuf },
    /// l0 and the exponents o_f(z_j) of the coordinates.
    Exponent { file: PathBuf },
    /// Minimal and characteristic polynomial of h relative to the germ.
    Charpoly {
        file: PathBuf,
        #[arg(long)]
        h: String,
        /// Fixed w-adic truncation for the Hensel path.
        #[arg(long)]
        truncation: Option<u32>,
    },
    /// Newton polygon N(f, h).
    Polygon {
        file: PathBuf,
        #[arg(long)]
        h: String,
    },
    /// ord(f∘φ)/ord(φ) for an arc "p1,...,pn" in s (default: the document's arcs).
    Arc {
        file: PathBuf,
        #[arg(long)]
        arc: Option<String>,
    },
    /// Semicontinuity checks on a deformation family.
    Deform {
        file: PathBuf,
        /// Points separated by ';', coordinates by ','.
        #[arg(long)]
        samples: Option<String>,
        #[arg(long)]
        h: Vec<String>,
        /// Draw this many random nonzero rational samples (needs --seed).
        #[arg(long, requires = "seed")]
        random_samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Rank hypothesis and l0 comparison along a family.
    Prop23 {
        file: PathBuf,
        #[arg(long)]
        samples: Option<String>,
    },
}

fn read(file: &PathBuf) -> Result<input::InputDocument, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::invalid(format!("cannot read {}: {e}", file.display())))?;
    input::parse_input(&text)
}

fn run(cli: Cli) -> Result<serde_json::Value, CliError> {
    match cli.command {
        Command::Multiplicity { file } => commands::multiplicity(&read(&file)?),
        Command::Exponent { file } => commands::exponent(&read(&file)?),
        Command::Charpoly { file, h, truncation } => commands::charpoly(&read(&file)?, &h, truncation),
        Command::Polygon { file, h } => commands::polygon(&read(&file)?, &h),
        Command::Arc { file, arc } => commands::arc(&read(&file)?, arc.as_deref()),
        Command::Deform { file, samples, h, random_samples, seed } => {
            let doc = read(&file)?;
            let samples = commands::choose_samples(&doc, samples.as_deref(), random_samples.zip(seed))?;
            commands::deform(&doc, samples, &h)
        }
        Command::Prop23 { file, samples } => {
            let doc = read(&file)?;
            let samples = commands::choose_samples(&doc, samples.as_deref(), None)?;
            commands::prop23(&doc, samples)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("values serialize");
            // a closed pipe is not an error of the computation
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
