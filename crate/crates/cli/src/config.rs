//! Command-line parsing and validation into a [`RunConfig`].

use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use surgeul_core::alexander::parse_coeff_list;
use surgeul_core::selftest::{DEFAULT_CASES, DEFAULT_SEED};
use surgeul_core::{AlexanderPoly, SurgerySlope};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "surgeul",
    version,
    about = "Renormalized Euler characteristics and L-space obstructions for rational surgeries on knots"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print Eul(S^3_{p/q}(K), l) and its ingredients for every label.
    Table(TableArgs),
    /// Print the correction terms of p/q surgery on the unknot.
    Lens(LensArgs),
    /// Test candidate correction terms against the L-space surgery obstruction.
    Obstruct(ObstructArgs),
    /// Check the torsion-coefficient windows (p/q > 1) or the small-slope column (p/q <= 1).
    Verify(VerifyArgs),
    /// Run the randomized invariant suite.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct KnotArgs {
    /// Alexander coefficients a0,a1,...,ag of the symmetrized polynomial.
    #[arg(long, allow_hyphen_values = true, value_name = "A0,A1,...")]
    pub knot: Option<String>,
    /// Use the (a,b) torus knot.
    #[arg(long, value_name = "A,B")]
    pub torus_knot: Option<String>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub knot: KnotArgs,
    /// Accept coefficient lists with Delta(1) != 1.
    #[arg(long)]
    pub unchecked: bool,
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: i64,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Add a rounded decimal column with this many digits.
    #[arg(long, value_name = "DIGITS")]
    pub decimal: Option<usize>,
}

#[derive(Debug, Args)]
pub struct LensArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: i64,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    #[arg(long, value_name = "DIGITS")]
    pub decimal: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ObstructArgs {
    /// JSON file of the form {"d": ["num/den", ...]} with p entries in label order.
    #[arg(long)]
    pub d_file: PathBuf,
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: i64,
    /// Also require the extracted torsion coefficients to be nonnegative.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub knot: KnotArgs,
    #[arg(long)]
    pub unchecked: bool,
    /// A value or an inclusive range LO..HI.
    #[arg(long, allow_hyphen_values = true)]
    pub p: String,
    /// A value or an inclusive range LO..HI.
    #[arg(long, allow_hyphen_values = true)]
    pub q: String,
    /// Inclusive range of n, as A,B.
    #[arg(long, allow_hyphen_values = true, default_value = "-3,3")]
    pub n_range: String,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Overrides SURGEUL_SEED and the built-in default.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_CASES)]
    pub cases: usize,
}

/// A validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RunConfig {
    Table {
        knot: AlexanderPoly,
        slope: SurgerySlope,
        format: Format,
        decimal: Option<usize>,
    },
    Lens {
        slope: SurgerySlope,
        format: Format,
        decimal: Option<usize>,
    },
    Obstruct {
        d_file: PathBuf,
        slope: SurgerySlope,
        strict: bool,
        format: Format,
    },
    Verify {
        knot: AlexanderPoly,
        p: RangeInclusive<i64>,
        q: RangeInclusive<i64>,
        n: RangeInclusive<i64>,
        format: Format,
    },
    Selftest {
        seed: u64,
        cases: usize,
    },
}

impl RunConfig {
    /// `env_seed` is the value of `SURGEUL_SEED`, if set.
    pub fn from_cli(cli: Cli, env_seed: Option<&str>) -> Result<Self, CliError> {
        Ok(match cli.command {
            Command::Table(a) => RunConfig::Table {
                knot: knot_from(&a.knot, a.unchecked)?,
                slope: SurgerySlope::new(a.p, a.q)?,
                format: a.format,
                decimal: a.decimal,
            },
            Command::Lens(a) => RunConfig::Lens {
                slope: SurgerySlope::new(a.p, a.q)?,
                format: a.format,
                decimal: a.decimal,
            },
            Command::Obstruct(a) => RunConfig::Obstruct {
                d_file: a.d_file,
                slope: SurgerySlope::new(a.p, a.q)?,
                strict: a.strict,
                format: a.format,
            },
            Command::Verify(a) => {
                let (n_lo, n_hi) = parse_pair(&a.n_range, "--n-range")?;
                if n_lo > n_hi {
                    return Err(CliError::Usage(format!("empty --n-range {}", a.n_range)));
                }
                let p = parse_range(&a.p, "--p")?;
                if *p.start() < 1 {
                    return Err(CliError::Usage("--p must be >= 1".into()));
                }
                if a.format == Format::Csv {
                    return Err(CliError::Usage("verify supports --format json or pretty".into()));
                }
                RunConfig::Verify {
                    knot: knot_from(&a.knot, a.unchecked)?,
                    p,
                    q: parse_range(&a.q, "--q")?,
                    n: n_lo..=n_hi,
                    format: a.format,
                }
            }
            Command::Selftest(a) => {
                let seed = match (a.seed, env_seed) {
                    (Some(seed), _) => seed,
                    (None, Some(env)) => env.trim().parse().map_err(|_| {
                        CliError::Usage(format!("SURGEUL_SEED is not an unsigned integer: {env:?}"))
                    })?,
                    (None, None) => DEFAULT_SEED,
                };
                RunConfig::Selftest { seed, cases: a.cases }
            }
        })
    }
}

fn knot_from(args: &KnotArgs, unchecked: bool) -> Result<AlexanderPoly, CliError> {
    match (&args.knot, &args.torus_knot) {
        (Some(list), None) => {
            let coeffs = parse_coeff_list(list)?;
            Ok(if unchecked {
                AlexanderPoly::new_unchecked(coeffs)?
            } else {
                AlexanderPoly::new(coeffs)?
            })
        }
        (None, Some(pair)) => {
            let (a, b) = parse_pair(pair, "--torus-knot")?;
            Ok(AlexanderPoly::torus_knot(a, b)?)
        }
        _ => Err(CliError::Usage("give exactly one of --knot or --torus-knot".into())),
    }
}

fn parse_pair(s: &str, flag: &str) -> Result<(i64, i64), CliError> {
    let bad = || CliError::Usage(format!("{flag} expects two integers A,B, got {s:?}"));
    let (a, b) = s.split_once(',').ok_or_else(bad)?;
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn parse_range(s: &str, flag: &str) -> Result<RangeInclusive<i64>, CliError> {
    let bad = || CliError::Usage(format!("{flag} expects N or LO..HI, got {s:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (
            lo.trim().parse().map_err(|_| bad())?,
            hi.trim().parse().map_err(|_| bad())?,
        ),
        None => {
            let v: i64 = s.trim().parse().map_err(|_| bad())?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}
