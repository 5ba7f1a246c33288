//! The `nestrad` command line: argument model, dispatch and exit codes.
//!
//! | code | meaning |
//! |------|---------|
//! | 0 | converged, reduced or verified |
//! | 1 | usage error |
//! | 2 | honest numerical failure (non-convergence, domain) |
//! | 3 | reduction failed |
//! | 4 | I/O error |

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nestrad_core::{BranchPolicy, Damping, IterConfig, RationalIndex, C64};

mod commands;
pub mod parse;
pub mod report;
mod solve;

pub use report::SCHEMA_VERSION;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILED: i32 = 2;
pub const EXIT_REDUCTION: i32 = 3;
pub const EXIT_IO: i32 = 4;

pub const SEED_ENV: &str = "NESTRAD_SEED";

#[derive(Debug, Parser)]
#[command(name = "nestrad", version, about = "Nested-radical polynomial solvers with oracle checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one equation and report the root, residual and oracle match.
    Solve(SolveArgs),
    /// Tschirnhaus-reduce a polynomial to its low-term shape.
    Reduce(ReduceArgs),
    /// Map convergence over a grid of initial iterates.
    Basin(BasinArgs),
    /// Check the icosahedral identity between R(q) and j(τ).
    VerifyModular(ModularArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    QuadNest,
    EulerSeries,
    EulerNest,
    QuinticBr,
    QuinticNest,
    Septic,
    Octic,
    Nonic,
    Auto,
    H7,
    H7Printed,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Policy {
    #[default]
    Real,
    Principal,
}

impl Policy {
    fn branch(self) -> BranchPolicy {
        match self {
            Self::Real => BranchPolicy::RealPreferring,
            Self::Principal => BranchPolicy::Principal,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Self::Real => "real-preferring",
            Self::Principal => "principal",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct IterArgs {
    /// Convergence and residual tolerance.
    #[arg(long, default_value_t = 1e-13)]
    pub tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_iter: usize,
    /// Initial iterate, e.g. `0.5-1i`.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub u0: Option<C64>,
    #[arg(long, value_enum, default_value_t = Policy::Real)]
    pub policy: Policy,
    /// Plain iteration without adaptive damping.
    #[arg(long)]
    pub no_damping: bool,
    /// Seed for reduction starts; overrides NESTRAD_SEED.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl IterArgs {
    fn config(&self) -> Result<IterConfig, String> {
        let cfg = IterConfig {
            tol: self.tol,
            max_iter: self.max_iter,
            policy: self.policy.branch(),
            u0: self.u0,
            damping: if self.no_damping { Damping::Off } else { Damping::Adaptive },
            ..IterConfig::default()
        };
        cfg.validate().map_err(|e| e.to_string())?;
        Ok(cfg)
    }
}

/// Equation coefficients. Which flags apply depends on `--method`.
#[derive(Debug, Clone, Args)]
pub struct EquationArgs {
    #[arg(long, value_enum)]
    pub method: Method,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub a: Option<C64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub b: Option<C64>,
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub c: Option<C64>,
    /// Inner exponent of the quadratic power form, e.g. `1` or `5/3`.
    #[arg(long, value_parser = parse::rational)]
    pub mu: Option<RationalIndex>,
    #[arg(long, value_parser = parse::rational)]
    pub nu: Option<RationalIndex>,
    /// Trinomial exponents of `a·q·x^p + x^q = 1`.
    #[arg(long, value_parser = parse::rational)]
    pub p: Option<RationalIndex>,
    #[arg(long, value_parser = parse::rational)]
    pub q: Option<RationalIndex>,
    /// Power of the root returned by the Euler series.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Bring–Jerrard `x⁵ + A·x + B = 0`.
    #[arg(long = "A", value_parser = parse::complex, allow_hyphen_values = true)]
    pub big_a: Option<C64>,
    #[arg(long = "B", value_parser = parse::complex, allow_hyphen_values = true)]
    pub big_b: Option<C64>,
    /// Comma list: septic `a,b,c,d`, octic `a,…,e`, nonic `a,…,f`, h7 `a,b,c,d`.
    #[arg(long, value_parser = parse::complex_list, allow_hyphen_values = true)]
    pub coeffs: Option<parse::Coeffs>,
    /// Polynomial coefficients, highest degree first, for `--method auto`.
    #[arg(long, value_parser = parse::complex_list, allow_hyphen_values = true)]
    pub poly: Option<parse::Coeffs>,
    /// Right-hand side of a resolvent equation.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub u: Option<C64>,
    /// Constant of the printed resolvent variant.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    pub constant: Option<C64>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub equation: EquationArgs,
    #[command(flatten)]
    pub iter: IterArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Shape {
    Quintic,
    Sextic,
    Septic,
    Octic,
    Nonic,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    /// Polynomial coefficients, highest degree first.
    #[arg(long, value_parser = parse::complex_list, allow_hyphen_values = true)]
    pub poly: parse::Coeffs,
    /// Target shape; defaults to the one matching the degree.
    #[arg(long, value_enum)]
    pub shape: Option<Shape>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of seeded Newton starts.
    #[arg(long, default_value_t = 16)]
    pub starts: usize,
}

#[derive(Debug, Args)]
pub struct BasinArgs {
    #[command(flatten)]
    pub equation: EquationArgs,
    #[command(flatten)]
    pub iter: IterArgs,
    /// Real range of initial iterates, `lo,hi`.
    #[arg(long, value_parser = parse::range, allow_hyphen_values = true, default_value = "-10,10")]
    pub re: (f64, f64),
    #[arg(long, value_parser = parse::range, allow_hyphen_values = true, default_value = "-10,10")]
    pub im: (f64, f64),
    #[arg(long, default_value_t = 256)]
    pub nx: usize,
    #[arg(long, default_value_t = 256)]
    pub ny: usize,
    /// CSV output path.
    #[arg(long)]
    pub csv: std::path::PathBuf,
    /// Optional PGM image path.
    #[arg(long)]
    pub pgm: Option<std::path::PathBuf>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum NomeArg {
    #[default]
    Full,
    Half,
}

#[derive(Debug, Args)]
pub struct ModularArgs {
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true, default_value = "i")]
    pub tau: C64,
    /// Eisenstein truncation orders to run, comma separated.
    #[arg(long, value_parser = parse::usize_list, default_value = "20")]
    pub nmax: parse::Orders,
    #[arg(long, default_value_t = 60)]
    pub cf_depth: usize,
    #[arg(long, value_enum, default_value_t = NomeArg::Full)]
    pub nome: NomeArg,
    /// Relative identity residual accepted as a pass.
    #[arg(long, default_value_t = 1e-6)]
    pub identity_tol: f64,
    #[command(flatten)]
    pub iter: IterArgs,
}

/// Exit code plus captured output streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(msg: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}\n", msg.into()) }
    }

    fn json<T: serde::Serialize>(code: i32, value: &T) -> Self {
        match serde_json::to_string_pretty(value) {
            Ok(s) => Self { code, stdout: s + "\n", stderr: String::new() },
            Err(e) => Self { code: EXIT_IO, stdout: String::new(), stderr: format!("error: {e}\n") },
        }
    }
}

/// Seed precedence: `--seed`, then the environment, then 0.
fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match env {
        Some(v) => v.trim().parse().map_err(|_| format!("{SEED_ENV}=`{v}` is not an unsigned integer")),
        None => Ok(0),
    }
}

/// Runs the CLI on `args` (program name first). `env_seed` is the value of
/// `NESTRAD_SEED`, passed in so runs stay reproducible under test.
pub fn run<I, T>(args: I, env_seed: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text },
            };
        }
    };
    let seed_flag = match &cli.command {
        Command::Solve(a) => a.iter.seed,
        Command::Reduce(a) => a.seed,
        Command::Basin(a) => a.iter.seed,
        Command::VerifyModular(a) => a.iter.seed,
    };
    let seed = match resolve_seed(seed_flag, env_seed) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    match &cli.command {
        Command::Solve(a) => solve::cmd_solve(a, seed),
        Command::Reduce(a) => commands::cmd_reduce(a, seed),
        Command::Basin(a) => commands::cmd_basin(a),
        Command::VerifyModular(a) => commands::cmd_verify_modular(a),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_precedence() {
        assert_eq!(resolve_seed(None, None), Ok(0));
        assert_eq!(resolve_seed(None, Some("7")), Ok(7));
        assert_eq!(resolve_seed(Some(3), Some("7")), Ok(3));
        assert!(resolve_seed(None, Some("x")).is_err());
    }

    #[test]
    fn help_is_not_an_error() {
        let out = run(["nestrad", "--help"], None);
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("verify-modular"));
    }
}
