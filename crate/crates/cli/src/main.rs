mod commands;
mod output;
mod parse;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hyperfns::{KType, Space, C64};
use parse::{ComplexList, Grid};

/// Exit status for malformed invocations (BSD EX_USAGE).
const EXIT_USAGE: u8 = 64;
const EXIT_DOMAIN: u8 = 1;
const EXIT_VERIFY: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "hyperfns", version, about = "Eisenstein integrals and spherical Fourier analysis on SO_e(p,q)/SO_e(p-1,q)")]
struct Cli {
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for grid sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct SpaceArgs {
    #[arg(long)]
    p: u32,
    #[arg(long)]
    q: u32,
    /// K-type (k, l); omit both for the K-invariant case.
    #[arg(long, requires = "l", allow_hyphen_values = true)]
    k: Option<i32>,
    #[arg(long, requires = "k", allow_hyphen_values = true)]
    l: Option<i32>,
}

impl SpaceArgs {
    fn resolve(&self) -> Result<(Space, Option<KType>), String> {
        let space = Space::new(self.p, self.q).map_err(|e| e.to_string())?;
        let ktype = match (self.k, self.l) {
            (Some(k), Some(l)) => {
                let kt = KType::new(k, l);
                kt.validate(&space).map_err(|e| e.to_string())?;
                Some(kt)
            }
            _ => None,
        };
        Ok((space, ktype))
    }
}

#[derive(Args, Debug, Clone)]
struct LambdaSet {
    /// Spectral parameter "re,im"; repeatable.
    #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
    lambda: Vec<C64>,
    /// Grid of real parts, crossed with --im.
    #[arg(long, value_parser = parse::grid, requires = "im", allow_hyphen_values = true)]
    re: Option<Grid>,
    /// Grid of imaginary parts, crossed with --re.
    #[arg(long, value_parser = parse::grid, requires = "re", allow_hyphen_values = true)]
    im: Option<Grid>,
}

impl LambdaSet {
    fn points(&self) -> Result<Vec<C64>, String> {
        let mut pts = self.lambda.clone();
        if let (Some(re), Some(im)) = (&self.re, &self.im) {
            for &x in &re.0 {
                for &y in &im.0 {
                    pts.push(C64::new(x, y));
                }
            }
        }
        if pts.is_empty() {
            return Err("give --lambda or both --re and --im".into());
        }
        Ok(pts)
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    /// Series for large parameters, closed form otherwise.
    Auto,
    Closed,
    Series,
    Both,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Gamma,
    GammaTilde,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ProfileKind {
    SmoothBump,
    PolynomialBump,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Harness {
    Plancherel,
    Hy,
    Rl,
    Pw,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eisenstein integral E°_w(λ, η)(t) on a t grid.
    Eval {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        lambda: C64,
        #[arg(long, value_parser = parse::grid, allow_hyphen_values = true)]
        t: Grid,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// η as "re,im;re,im" (one entry per orbit); defaults to all ones.
        #[arg(long, value_parser = parse::complex_list, allow_hyphen_values = true)]
        eta: Option<ComplexList>,
        /// Orbit sign, + or -.
        #[arg(long, default_value = "+")]
        orbit: String,
        /// Evaluate p_R(λ)E°(λ) instead, with limits at poles.
        #[arg(long = "R")]
        big_r: Option<f64>,
    },
    /// Series coefficients Γ_m(λ) or Γ̃_m(λ), m = 0..=n_max.
    Coeffs {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        lambda: C64,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Kind::Gamma)]
        kind: Kind,
    },
    /// The c-function c(λ).
    Cfun {
        #[command(flatten)]
        space: SpaceArgs,
        #[command(flatten)]
        lambdas: LambdaSet,
    },
    /// Pole and zero catalogs, and p_R if --R is given.
    Poles {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long = "R")]
        big_r: Option<f64>,
        /// Real window listed in CSV output.
        #[arg(long, default_value = "-10:10", value_parser = parse_window, allow_hyphen_values = true)]
        window: (f64, f64),
    },
    /// Boundedness class of p_R(λ₀)E°(λ₀) on (0, ∞).
    Classify {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long = "R")]
        big_r: f64,
        #[arg(long, value_parser = parse::complex, allow_hyphen_values = true)]
        lambda: C64,
    },
    /// Fourier transform of a radial bump, or one of the inequality harnesses.
    Fourier {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum, default_value_t = ProfileKind::SmoothBump)]
        profile: ProfileKind,
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 2.0)]
        b: f64,
        #[command(flatten)]
        lambdas: LambdaSet,
        #[arg(long, value_parser = parse::complex_list, allow_hyphen_values = true)]
        eta: Option<ComplexList>,
        /// Regularized transform p_R(−λ)ℱf(λ); also R for the hy and pw harnesses.
        #[arg(long = "R")]
        big_r: Option<f64>,
        #[arg(long, value_enum)]
        harness: Option<Harness>,
        /// Exponent r for the hy and rl harnesses.
        #[arg(long, default_value_t = 2.0)]
        r: f64,
        /// Real λ₀ for the hy and rl harnesses.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        lambda0: f64,
        #[arg(long, default_value_t = 200.0)]
        xi_max: f64,
        /// Heights ξ for the rl harness.
        #[arg(long, value_parser = parse::grid, default_value = "1:128:128")]
        heights: Grid,
        /// Polynomial weight exponent for the pw harness.
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Absolute quadrature target.
        #[arg(long, default_value_t = 1e-12)]
        target: f64,
    },
    /// Run invariant suites; exit 2 if any check fails.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, requires = "q")]
        p: Option<u32>,
        #[arg(long, requires = "p")]
        q: Option<u32>,
        #[arg(long, requires = "l", allow_hyphen_values = true)]
        k: Option<i32>,
        #[arg(long, requires = "k", allow_hyphen_values = true)]
        l: Option<i32>,
        #[arg(long, default_value_t = hyperfns::verify::DEFAULT_SEED)]
        seed: u64,
    },
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let a: f64 = a.trim().parse().map_err(|_| format!("bad number in {s:?}"))?;
    let b: f64 = b.trim().parse().map_err(|_| format!("bad number in {s:?}"))?;
    if !(a < b) {
        return Err(format!("empty window {s:?}"));
    }
    Ok((a, b))
}

/// Why a command stopped.
pub enum Failure {
    Usage(String),
    Domain(String),
    Verify(Vec<String>),
}

impl From<hyperfns::Error> for Failure {
    fn from(e: hyperfns::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Domain(format!("output: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DOMAIN)
        }
        Err(Failure::Verify(failed)) => {
            eprintln!("verification failed: {}", failed.join(", "));
            ExitCode::from(EXIT_VERIFY)
        }
    }
}
