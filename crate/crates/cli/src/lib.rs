//! Library side of the `surgeul` command-line tool: argument handling,
//! dispatch to `surgeul-core`, and output formatting.

pub mod config;
pub mod output;

use std::path::PathBuf;

use surgeul_core::obstruction::{lspace_obstruction, small_slope_check, verify_theorem12};
use surgeul_core::selftest::{run_selftest, SelfTestConfig};
use surgeul_core::{
    eul_table, AlexanderPoly, LensTable, ObstructionOptions, Rational, SurgerySlope,
};

pub use config::{Cli, Format, RunConfig};
use output::{DFile, DValue, LensJson, ObstructionJson, TableJson, VerifyEntry, VerifyJson};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] surgeul_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
}

/// Result of a successful invocation. `status` is 0 on success and 1 when a
/// check or obstruction fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { status: 0, stdout }
    }

    fn checked(passed: bool, stdout: String) -> Self {
        Outcome { status: if passed { 0 } else { 1 }, stdout }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    match config {
        RunConfig::Table { knot, slope, format, decimal } => {
            let view = TableJson::new(&eul_table(knot, slope), *decimal);
            Ok(Outcome::ok(match format {
                Format::Json => to_json(&view),
                Format::Csv => view.to_csv(),
                Format::Pretty => view.to_pretty(),
            }))
        }
        RunConfig::Lens { slope, format, decimal } => {
            let view = LensJson::new(&LensTable::new(slope.lens_params()), *decimal);
            Ok(Outcome::ok(match format {
                Format::Json => to_json(&view),
                Format::Csv => view.to_csv(),
                Format::Pretty => view.to_pretty(),
            }))
        }
        RunConfig::Obstruct { d_file, slope, strict, format } => {
            let d = read_d_file(d_file)?;
            let options = ObstructionOptions { strict: *strict, ..Default::default() };
            let report = lspace_obstruction(&d, slope, options)?;
            let view = ObstructionJson::new(slope.p(), slope.q(), &report);
            Ok(Outcome::checked(
                report.passed(),
                match format {
                    Format::Json => to_json(&view),
                    Format::Csv => view.to_csv(),
                    Format::Pretty => view.to_pretty(),
                },
            ))
        }
        RunConfig::Verify { knot, p, q, n, format } => {
            let single = p.start() == p.end() && q.start() == q.end();
            let mut results = Vec::new();
            for pv in p.clone() {
                for qv in q.clone() {
                    let Ok(slope) = SurgerySlope::new(pv, qv) else {
                        if single {
                            SurgerySlope::new(pv, qv)?;
                        }
                        continue;
                    };
                    verify_slope(knot, &slope, n.clone(), single, &mut results)?;
                }
            }
            let view = VerifyJson::new(knot.coeffs().to_vec(), results);
            let passed = view.failed == 0 && view.passed > 0;
            Ok(Outcome::checked(
                passed,
                match format {
                    Format::Json => to_json(&view),
                    _ => view.to_pretty(),
                },
            ))
        }
        RunConfig::Selftest { seed, cases } => {
            let report = run_selftest(&SelfTestConfig {
                seed: *seed,
                cases: *cases,
                ..Default::default()
            });
            Ok(Outcome::checked(report.all_passed(), report.to_string()))
        }
    }
}

/// Runs the check appropriate to the slope. Precondition failures are fatal
/// for a single slope and recorded as skips in a sweep.
fn verify_slope(
    knot: &AlexanderPoly,
    slope: &SurgerySlope,
    n: std::ops::RangeInclusive<i64>,
    single: bool,
    results: &mut Vec<VerifyEntry>,
) -> Result<(), CliError> {
    let (p, q) = (slope.p(), slope.q());
    let skip_or_fail = |e: surgeul_core::Error, results: &mut Vec<VerifyEntry>| match e {
        surgeul_core::Error::Precondition(reason) if !single => {
            results.push(VerifyEntry::Skipped { p, q, reason });
            Ok(())
        }
        e => Err(CliError::Core(e)),
    };
    if q > 0 && p > q {
        for n in n {
            match verify_theorem12(knot, slope, n) {
                Ok(report) => results.push(VerifyEntry::theorem(p, q, &report)),
                Err(e) => return skip_or_fail(e, results),
            }
        }
    } else {
        match small_slope_check(knot, slope) {
            Ok(report) => results.push(VerifyEntry::small_slope(p, q, &report)),
            Err(e) => return skip_or_fail(e, results),
        }
    }
    Ok(())
}

fn read_d_file(path: &PathBuf) -> Result<Vec<Rational>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let file: DFile = serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.clone(),
        source,
    })?;
    file.d
        .into_iter()
        .map(|v| match v {
            DValue::Int(i) => Ok(Rational::from(i)),
            DValue::Text(s) => Ok(s.parse::<Rational>()?),
        })
        .collect()
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable view");
    s.push('\n');
    s
}
