use std::path::PathBuf;
use std::str::FromStr;

use biext_core::degeneration::{
    DEFAULT_FAY_OMEGA0, DEFAULT_FAY_V, DEFAULT_K_MAX, DEFAULT_K_MIN, DEFAULT_TAU1, DEFAULT_TAU2,
    DEFAULT_X_COUNT, DEFAULT_X_MAX, DEFAULT_X_MIN,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(
    name = "biext",
    version,
    about = "Exact and numerical checks for the biextension metric on M_g"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Central charge of the separating twist sigma_h.
    Tau {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        h: u32,
    },
    /// q(u, v) for two lifts read from Wedge3 JSON files.
    Qform {
        #[arg(long)]
        u: PathBuf,
        #[arg(long)]
        v: PathBuf,
    },
    /// Dimensions of Sp-invariants of the third exterior power mod p.
    Invariants {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        p: u64,
        #[arg(long, value_enum, default_value_t = SideArg::Both)]
        side: SideArg,
    },
    /// Check C(2g,3) = 2g(g-1) + 8 C(g,3).
    Dimid {
        #[arg(long)]
        g: u32,
    },
    /// beta_1 along t = e^{-x}, with the asymptotic fit.
    Beta1Sweep(XWindow),
    /// beta_2 along a degenerating genus-2 family.
    Beta2Sweep(Beta2Args),
    /// Fit a log|t| + b loglog(1/|t|) + c to a sample CSV.
    Fit {
        #[arg(long)]
        input: PathBuf,
        /// Drop the log|t| term.
        #[arg(long)]
        no_log: bool,
        /// Drop the loglog term.
        #[arg(long)]
        no_loglog: bool,
        /// Drop the constant term.
        #[arg(long)]
        no_const: bool,
    },
    /// Chern class of the biextension bundle.
    Chern {
        #[arg(long)]
        g: u32,
    },
    /// delta_0 coefficient from the hyperelliptic relation.
    SolveR0 {
        #[arg(long)]
        g: u32,
    },
    /// Boundary asymptotics of 3g times the Faltings delta invariant.
    Faltings {
        #[arg(long)]
        g: u32,
        /// Separating boundary component; delta_0 when omitted.
        #[arg(long)]
        h: Option<u32>,
    },
    /// Whether d(beta_g) and d(delta_g) are linearly independent.
    Incommensurable {
        #[arg(long)]
        g: u32,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Invariants,
    CoinvariantDual,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathArg {
    Fay,
    Reducible,
}

#[derive(Debug, Clone, Args)]
pub struct XWindow {
    /// Smallest x = log(1/t).
    #[arg(long, default_value_t = DEFAULT_X_MIN)]
    pub x_min: f64,
    /// Largest x = log(1/t).
    #[arg(long, default_value_t = DEFAULT_X_MAX)]
    pub x_max: f64,
    /// Number of log-spaced x values.
    #[arg(long, default_value_t = DEFAULT_X_COUNT)]
    pub count: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Beta2Args {
    #[arg(long, value_enum)]
    pub path: PathArg,
    #[command(flatten)]
    pub window: XWindow,
    /// Fay path: the genus-1 block, as "re,im".
    #[arg(long, default_value_t = ComplexArg(DEFAULT_FAY_OMEGA0))]
    pub omega0: ComplexArg,
    /// Fay path: the off-diagonal entry, as "re,im".
    #[arg(long, default_value_t = ComplexArg(DEFAULT_FAY_V))]
    pub v: ComplexArg,
    /// Reducible path: first diagonal entry.
    #[arg(long, default_value_t = ComplexArg(DEFAULT_TAU1))]
    pub tau1: ComplexArg,
    /// Reducible path: second diagonal entry.
    #[arg(long, default_value_t = ComplexArg(DEFAULT_TAU2))]
    pub tau2: ComplexArg,
    /// Reducible path: t runs over 10^-k for k from k-min to k-max.
    #[arg(long, default_value_t = DEFAULT_K_MIN)]
    pub k_min: u32,
    #[arg(long, default_value_t = DEFAULT_K_MAX)]
    pub k_max: u32,
    /// Reducible path: samples per decade.
    #[arg(long, default_value_t = 1)]
    pub per_decade: u32,
}

/// A complex number written `re,im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexArg(pub Complex64);

impl FromStr for ComplexArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (re, im) = s
            .split_once(',')
            .ok_or_else(|| format!("expected re,im but got {s:?}"))?;
        let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
        Ok(ComplexArg(Complex64::new(parse(re)?, parse(im)?)))
    }
}

impl std::fmt::Display for ComplexArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}
