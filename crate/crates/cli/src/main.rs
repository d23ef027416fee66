use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "trivolve",
    version,
    about = "Verify involutions and trivolutions on finite-dimensional algebras"
)]
pub struct Cli {
    /// Entrywise equality tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Pivot threshold for rank decisions.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub rank_tolerance: f64,
    #[arg(long, global = true, env = "TRIVOLVE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a map as not a star map, an involution or a proper trivolution.
    Check {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Canonical decomposition A = I ⊕ B, τ = ρ∘p.
    Decompose {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        map: PathBuf,
    },
    /// Factor τ through an involutive algebra. The second map is the
    /// involution J on ker τ (echelon coordinates); it defaults to
    /// coordinate conjugation there.
    Factor {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, required = true)]
        map: Vec<PathBuf>,
    },
    /// Block structure of a homomorphism π: (A₁, τ₁) → (A₂, τ₂).
    /// Give two algebras and the maps τ₁, τ₂, π in that order.
    Hom {
        #[arg(long, required = true)]
        algebra: Vec<PathBuf>,
        #[arg(long, required = true)]
        map: Vec<PathBuf>,
    },
    /// Trivolution extensions to the unitization.
    Extend {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Verify one specific extension: λ₀ as `[re, im]`.
        #[arg(long, requires = "x0")]
        lambda0: Option<String>,
        /// ... and x₀ as `[[re, im], ...]`.
        #[arg(long, requires = "lambda0")]
        x0: Option<String>,
    },
    /// Spectra of x and τ(x) and the spectral inclusion certificate.
    Spectra {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Element coordinates as `[[re, im], ...]`.
        #[arg(long)]
        element: String,
    },
    /// Arens products on X*, and the extension of an involution θ to X*.
    Arens {
        #[arg(long)]
        algebra: PathBuf,
        /// Optional involution θ to extend.
        #[arg(long)]
        map: Option<PathBuf>,
        /// Basis of X ⊆ A* as rows `[[[re, im], ...], ...]`; defaults to A*.
        #[arg(long)]
        dual: Option<PathBuf>,
    },
    /// Topologically invariant means for characters and the uniqueness
    /// obstruction under the involution extended from θ.
    Tim {
        #[arg(long)]
        algebra: PathBuf,
        /// Involution θ on A; its extension to X* is the star of the check.
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        dual: Option<PathBuf>,
        /// Character as dual coordinates `[[re, im], ...]`; defaults to
        /// every character found.
        #[arg(long)]
        character: Option<String>,
    },
    /// Enumerate a structured family of trivolutions.
    Search {
        #[arg(long)]
        algebra: PathBuf,
        /// indicator, indicator-identity, group or pairs.
        #[arg(long)]
        family: String,
        /// For `pairs`: alternating p and ρ map files.
        #[arg(long)]
        map: Vec<PathBuf>,
    },
    /// The full property battery over built-in instances.
    Suite,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = commands::run(&cli);
    let text = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    let written = match &cli.out {
        Some(path) => {
            std::fs::write(path, text.as_bytes()).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(msg) = written {
        eprintln!("{msg}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_code())
}

impl Cli {
    fn tolerance(&self) -> trivolve_core::Tolerance {
        trivolve_core::Tolerance {
            eps: self.tolerance,
            rank: self.rank_tolerance,
        }
    }
}
