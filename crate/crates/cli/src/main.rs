//! `verlinde-kit`: command-line access to alcoves, fusion rings, Kac
//! characters, cubic Dirac families and spectral flow.
//!
//! Exit codes: 0 success, 2 validation error, 3 numeric-invariant failure.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "verlinde-kit", version, about = "Level-k representation theory of loop groups at desk scale")]
pub struct Cli {
    /// Worker threads for parallel grids (VERLINDE_KIT_JOBS takes precedence).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write to this file (atomically) instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct AlgebraLevel {
    /// Series letter and rank, e.g. A2, B3, G2.
    #[arg(long)]
    pub algebra: String,
    /// Level k (no default).
    #[arg(long)]
    pub level: i64,
}

#[derive(Args, Debug)]
pub struct AlgebraWeight {
    #[arg(long)]
    pub algebra: String,
    /// Dominant weight in fundamental-weight coordinates, e.g. 1,0.
    #[arg(long, value_delimiter = ',', required = true)]
    pub weight: Vec<i64>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Level-k alcove: dominant weights λ with ⟨λ, θ⟩ ≤ k, i.e. the
    /// irreducible positive-energy representations at level k.
    Alcove {
        #[command(flatten)]
        al: AlgebraLevel,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Alcove of a twisted loop group: weights λ of the invariant algebra
    /// with ⟨λ, θ̲⟩ ≤ k/r, with the lattice parity rule for type A_{2ℓ}.
    TwistedAlcove {
        #[command(flatten)]
        al: AlgebraLevel,
        /// Order r of the diagram automorphism (2, or 3 for D4).
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Fusion product of two level-k representations (Kac–Walton), the
    /// product on K-theory induced by tensoring with a representation.
    Fuse {
        #[command(flatten)]
        al: AlgebraLevel,
        #[arg(long, value_delimiter = ',', required = true)]
        left: Vec<i64>,
        #[arg(long, value_delimiter = ',', required = true)]
        right: Vec<i64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// All fusion coefficients N_{λμ}^ν of the level-k Verlinde ring.
    FusionTable {
        #[command(flatten)]
        al: AlgebraLevel,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare Kac–Walton fusion with the Verlinde formula from the S-matrix.
    VerifyFusion {
        #[command(flatten)]
        al: AlgebraLevel,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Modular S-matrix at shifted level k + h∨ as a Weyl-alternating sum.
    Smatrix {
        #[command(flatten)]
        al: AlgebraLevel,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Kac character Tr(q g | H_λ): numerator over the Weyl–Kac
    /// denominator Δ(g; q), as a truncated q-series.
    Char {
        #[command(flatten)]
        al: AlgebraLevel,
        #[arg(long, value_delimiter = ',', required = true)]
        weight: Vec<i64>,
        /// Keep terms q^e with e ≤ cutoff (a nonnegative integer).
        #[arg(long)]
        cutoff: i64,
        /// Torus element as ω_i(x) mod 1, e.g. 1/4,0 (default: identity).
        #[arg(long, value_delimiter = ',', value_parser = commands::parse_rational)]
        angles: Option<Vec<verlinde_kit::Q>>,
        #[arg(long, value_enum, default_value = "character")]
        part: commands::SeriesPart,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cubic Dirac operator on V_λ* ⊗ S: residuals of {D, ψ^b} = 2T_b,
    /// [D, T_b] = 0 and D² = −⟨λ+ρ, λ+ρ⟩.
    DiracCheck {
        #[command(flatten)]
        aw: AlgebraWeight,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Kernel of the family D_μ = D + iψ(μ) over a sample grid in 𝔤*,
    /// compared with the coadjoint orbit of λ+ρ.
    OrbitScan {
        #[command(flatten)]
        aw: AlgebraWeight,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Thom deformation εD + iψ(μ) at μ = s·(λ+ρ): invertible for all
    /// ε ∈ [0, 1] unless μ lies on the orbit.
    Thom {
        #[command(flatten)]
        aw: AlgebraWeight,
        #[arg(long, default_value_t = 1.5)]
        scale: f64,
        #[arg(long, default_value_t = 21)]
        steps: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Lie algebra cohomology H^q(𝔫̄; V_λ) via harmonic forms: dimensions
    /// and 𝔱-weights w(−λ−ρ)+ρ.
    Kostant {
        #[command(flatten)]
        aw: AlgebraWeight,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Spectral flow of d/dθ + iξ on the circle, or the class census
    /// |Π*/κ(Π)| of a torus twisting κ with its rank-1 flows.
    SpectralFlow {
        /// Torus rank (omit with --kappa for the circle).
        #[arg(long)]
        rank: Option<usize>,
        /// κ rows separated by ';', entries by ',', e.g. 2,0;0,3.
        #[arg(long)]
        kappa: Option<String>,
        /// Class λ for the rank-1 twisted flow.
        #[arg(long, default_value_t = 0)]
        lambda: i64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        to: f64,
        #[arg(long, default_value_t = 201)]
        samples: usize,
        #[arg(long, default_value_t = verlinde_kit::spectral::DEFAULT_MODES)]
        modes: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Cartan matrix, roots, ρ, θ, h∨ and the basic inner product.
    RootData {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn configure_threads(jobs: Option<usize>) -> Result<(), String> {
    let env = std::env::var("VERLINDE_KIT_JOBS").ok();
    let jobs = match env {
        Some(v) => Some(v.trim().parse::<usize>().map_err(|_| format!("VERLINDE_KIT_JOBS must be a positive integer, got {v:?}"))?),
        None => jobs,
    };
    if let Some(n) = jobs {
        if n == 0 {
            return Err("--jobs must be at least 1".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads(cli.jobs) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
