//! `spodet`: characters, kernels, determinant identities and edge limits from the command line.
//!
//! Every run prints one JSON report on stdout; `--out` additionally writes the
//! tabular part as CSV. Exit codes: 0 success, 1 usage error, 2 verification failure.

mod args;
mod commands;
mod output;
mod selftest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::output::Failure;

#[derive(Parser, Debug, Serialize)]
#[command(name = "spodet", version, about = "Symplectic/orthogonal Schur measures: identities and edge limits")]
pub struct Cli {
    /// Worker threads for the internal parallel loops (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the tabular part of the report as CSV to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Evaluate s_λ, sp_λ or o_λ at a specialization.
    Char(CharArgs),
    /// One kernel entry K(a, b) by series and/or contour quadrature.
    Kernel(KernelArgs),
    /// Closed-form normalization against the enumerated sum of weights.
    MeasureCheck(MeasureArgs),
    /// Check one identity.
    #[command(subcommand)]
    Verify(Verify),
    /// Toeplitz+Hankel determinants against their strong Szegő limit.
    Szego(SzegoArgs),
    /// Discrete edge gap probabilities against the continuum Fredholm determinants.
    Edge(EdgeArgs),
    /// GUE Tracy–Widom distribution F₂ on a grid.
    Tw2(ContinuumArgs),
    /// det(1 - 𝒜±) on a grid.
    F21(F21Args),
    /// Fast run of the invariant suite.
    Selftest,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verify {
    /// Truncated Cauchy sum against the closed product.
    Cauchy(CauchyArgs),
    /// Toeplitz+Hankel determinant against the restricted sum of measure weights.
    Gessel(GesselArgs),
    /// Toeplitz+Hankel determinant against normalization times a discrete Fredholm determinant.
    Bo(BoArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum CharKindArg {
    Schur,
    Sp,
    O,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SpOArg {
    Sp,
    O,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum MethodArg {
    Series,
    Quadrature,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum FredholmMethodArg {
    Series,
    Quadrature,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(ValueEnum, Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ModelArg {
    Psp,
    Po,
    Pa,
    Pb,
}

#[derive(Args, Debug, Serialize)]
pub struct CharArgs {
    #[arg(long, value_enum)]
    pub kind: CharKindArg,
    /// Parts, e.g. `3,1`; empty for the empty partition.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Specialization, e.g. `plancherel:0.5`, `vars:0.2,0.3`, `dvars:0.9`.
    #[arg(long)]
    pub rho: String,
}

#[derive(Args, Debug, Serialize)]
pub struct MeasureSpecArgs {
    #[arg(long, value_enum)]
    pub kind: SpOArg,
    #[arg(long)]
    pub rho_plus: String,
    #[arg(long)]
    pub rho_minus: String,
}

#[derive(Args, Debug, Serialize)]
pub struct KernelArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub measure: MeasureSpecArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub a: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, value_enum, default_value = "both")]
    pub method: MethodArg,
    /// Radius of the z-circle (default: chosen from the analyticity annulus).
    #[arg(long, requires = "r_w")]
    pub r_z: Option<f64>,
    #[arg(long, requires = "r_z")]
    pub r_w: Option<f64>,
    /// Initial trapezoidal nodes per circle (a power of two; doubled until stable).
    #[arg(long, default_value_t = 512)]
    pub nodes: usize,
    /// Largest accepted |series - quadrature|.
    #[arg(long, default_value = "1e-9", value_parser = args::positive)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct MeasureArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub measure: MeasureSpecArgs,
    #[arg(long, default_value_t = 12)]
    pub max_weight: usize,
    /// Largest accepted |Z - sum| when no tail bound is available.
    #[arg(long, default_value = "1e-8", value_parser = args::positive)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct CauchyArgs {
    #[arg(long, value_enum)]
    pub kind: SpOArg,
    /// Variables entering as x and 1/x.
    #[arg(long, allow_hyphen_values = true)]
    pub xs: String,
    #[arg(long, allow_hyphen_values = true)]
    pub ys: String,
    /// Largest accepted relative deviation.
    #[arg(long, default_value = "1e-8", value_parser = args::positive)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct SymbolArgs {
    /// Logarithmic coefficients ρ⁺_1, ρ⁺_2, … of the symbol.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub rho_plus_coeffs: String,
    /// Logarithmic coefficients ρ⁻_1, ρ⁻_2, … of the symbol.
    #[arg(long, allow_hyphen_values = true, default_value = "")]
    pub rho_minus_coeffs: String,
}

#[derive(Args, Debug, Serialize)]
pub struct GesselArgs {
    /// Determinant kind 1-4.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
    pub kind: u8,
    #[command(flatten)]
    #[serde(flatten)]
    pub symbol: SymbolArgs,
    #[arg(long, default_value_t = 3)]
    pub size: usize,
    #[arg(long, default_value_t = 12)]
    pub max_weight: usize,
    #[arg(long, default_value = "1e-8", value_parser = args::positive)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct BoArgs {
    #[arg(long, value_enum)]
    pub kind: SpOArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub symbol: SymbolArgs,
    #[arg(long, default_value_t = 2)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "series")]
    pub method: FredholmMethodArg,
    #[arg(long, default_value = "1e-8", value_parser = args::positive)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct SzegoArgs {
    /// Determinant kinds 1-4, comma separated.
    #[arg(long, default_value = "1,2", value_delimiter = ',', value_parser = clap::value_parser!(u8).range(1..=4))]
    pub kind: Vec<u8>,
    #[command(flatten)]
    #[serde(flatten)]
    pub symbol: SymbolArgs,
    /// `a..b`, `a:b:step` or a comma list.
    #[arg(long, default_value = "1..10")]
    pub sizes: String,
    /// Largest accepted deviation at the largest size.
    #[arg(long, default_value = "1e-10", value_parser = args::positive)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct EdgeArgs {
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Increasing θ values, comma separated.
    #[arg(long, default_value = "15,30,60")]
    pub theta: String,
    /// Scaled thresholds, comma separated.
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub s: String,
}

#[derive(Args, Debug, Serialize)]
pub struct ContinuumArgs {
    /// `start:stop:step`.
    #[arg(long, allow_hyphen_values = true, default_value = "-6:4:0.25")]
    pub s_grid: String,
    /// Nyström interval length L.
    #[arg(long, default_value_t = 12.0)]
    pub length: f64,
    /// Nyström Gauss–Legendre nodes n.
    #[arg(long, default_value_t = 40)]
    pub nodes: usize,
    /// Largest accepted change under (L, n) → (L + 4, 2n).
    #[arg(long, default_value = "1e-8", value_parser = args::positive)]
    pub tol: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct F21Args {
    #[arg(long, value_enum)]
    pub sign: SignArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub grid: ContinuumArgs,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(&cli) {
        Ok(outcome) => match output::emit(&cli, &outcome) {
            Ok(()) if outcome.pass => ExitCode::SUCCESS,
            Ok(()) => ExitCode::from(2),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Numerical(e)) => {
            eprintln!("verification failed: {e:#}");
            ExitCode::from(2)
        }
    }
}
