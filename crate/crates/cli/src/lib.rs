//! Command-line front end for `permcode`.
//!
//! [`run`] parses an argument vector, executes one subcommand and returns
//! the exit status together with everything that would be printed, so the
//! binary is a thin wrapper and tests can drive commands in-process.
//!
//! Exit status: 0 on success (for `verify`, only if every identity holds),
//! 1 on domain or usage errors and failed identities, 2 when an engine
//! capacity or oracle budget is exceeded.

pub mod args;
pub mod cache;
pub mod output;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;
use num_bigint::BigInt;
use num_rational::BigRational;
use permcode::bounds::{bound_crossover, bound_report, code_bounds, dominance, omega_excess};
use permcode::codes::{exact_max_code, greedy_code, ScanOrder};
use permcode::identities::{sweep_bm, sweep_conjecture, sweep_lemma, sweep_telescoping};
use permcode::omega::{omega_closed_form, omega_factor, omega_shifted_form};
use permcode::permanent::{ball_volume, choose_engine, volume_with, Engine};
use permcode::structmat::{build_band_matrix, build_klove_matrix, build_omega_matrix};

use crate::args::{Cli, Command, EngineArg, Family, Method, OrderArg, Verify};
use crate::cache::VolumeCache;
use crate::output::{CodeReport, CrossoverReport, OmegaPoly, OmegaValue, VolumeReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_CAPACITY: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

enum Failure {
    Core(permcode::Error),
    Usage(String),
}

impl From<permcode::Error> for Failure {
    fn from(e: permcode::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<cache::CacheError> for Failure {
    fn from(e: cache::CacheError) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses an exact integer or `p/q` literal.
pub fn parse_exact(text: &str) -> Result<BigRational, String> {
    let parsed = match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p
                .trim()
                .parse()
                .map_err(|e| format!("bad numerator in `{text}`: {e}"))?;
            let q: BigInt = q
                .trim()
                .parse()
                .map_err(|e| format!("bad denominator in `{text}`: {e}"))?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in `{text}`"));
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(
            text.trim()
                .parse()
                .map_err(|e| format!("bad integer `{text}`: {e}"))?,
        ),
    };
    Ok(parsed)
}

fn exact_text(v: &BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome::fail(EXIT_DOMAIN, text),
            };
        }
    };

    let result = match cli.config.workers {
        Some(w) => match rayon::ThreadPoolBuilder::new()
            .num_threads(w as usize)
            .build()
        {
            Ok(pool) => pool.install(|| execute(&cli)),
            Err(e) => Err(Failure::Usage(format!("cannot start {w} workers: {e}"))),
        },
        None => execute(&cli),
    };

    match result {
        Ok(outcome) => outcome,
        Err(Failure::Core(e)) => {
            let code = if e.is_resource_limit() {
                EXIT_CAPACITY
            } else {
                EXIT_DOMAIN
            };
            Outcome::fail(code, format!("error: {e}\n"))
        }
        Err(Failure::Usage(msg)) => Outcome::fail(EXIT_DOMAIN, format!("error: {msg}\n")),
    }
}

fn execute(cli: &Cli) -> Result<Outcome, Failure> {
    let format = cli.config.format;
    let budget = cli.config.budget;
    let text = match &cli.command {
        Command::Matrix { family, d, n, x } => {
            let x = x
                .as_deref()
                .map(parse_exact)
                .transpose()
                .map_err(Failure::Usage)?;
            let need_n =
                || n.ok_or_else(|| Failure::Usage("--n is required for this family".into()));
            let (rows, numeric) = match family {
                Family::Band => (stringify(build_band_matrix(*d, need_n()?).to_rows()), true),
                Family::Klove => (
                    stringify(build_klove_matrix(*d, need_n()?)?.to_rows()),
                    true,
                ),
                Family::Omega => {
                    let a = build_omega_matrix(*d)?;
                    match x {
                        Some(x) => {
                            let rows = a.map(|p| exact_text(&p.eval(&x))).to_rows();
                            let numeric =
                                x.is_integer() && x >= BigRational::from_integer(0.into());
                            (rows, numeric)
                        }
                        None => (a.map(ToString::to_string).to_rows(), false),
                    }
                }
            };
            output::matrix(&rows, numeric, format)
        }

        Command::Volume {
            d,
            n,
            engine,
            all_engines,
        } => {
            let (d, n) = (*d, *n);
            let reports = if *all_engines {
                Engine::ALL
                    .iter()
                    .map(|&e| {
                        Ok(VolumeReport {
                            d,
                            n,
                            engine: Some(e),
                            volume: volume_with(e, d, n, budget)?,
                        })
                    })
                    .collect::<Result<Vec<_>, Failure>>()?
            } else if let Some(engine) = engine {
                let e = match engine {
                    EngineArg::Dp => Engine::Dp,
                    EngineArg::Ryser => Engine::Ryser,
                    EngineArg::Enumerate => Engine::Enumerate,
                };
                vec![VolumeReport {
                    d,
                    n,
                    engine: Some(e),
                    volume: volume_with(e, d, n, budget)?,
                }]
            } else {
                let (report, warning) = cached_volume(cli, d, n)?;
                if let Some(w) = warning {
                    return Ok(Outcome {
                        code: EXIT_OK,
                        stdout: output::volumes(&[report], format),
                        stderr: w,
                    });
                }
                vec![report]
            };
            output::volumes(&reports, format)
        }

        Command::Omega {
            d,
            x,
            poly,
            shifted,
        } => {
            let p = if *shifted {
                omega_shifted_form(*d)?
            } else {
                omega_closed_form(*d)?
            };
            match x {
                Some(x) => {
                    let at = parse_exact(x).map_err(Failure::Usage)?;
                    let value = p.map(|c| BigRational::from_integer(c.clone())).eval(&at);
                    output::omega_value(
                        &OmegaValue {
                            d: *d,
                            shifted: *shifted,
                            x: exact_text(&at),
                            value: exact_text(&value),
                        },
                        format,
                    )
                }
                None => output::omega_poly(
                    &OmegaPoly {
                        d: *d,
                        shifted: *shifted,
                        coeffs: p.into_coeffs(),
                    },
                    *poly,
                    format,
                ),
            }
        }

        Command::Verify { which } => {
            let reports = match which {
                Verify::Conjecture { max_d } => sweep_conjecture(*max_d, budget)?,
                Verify::Lemma { max_m, max_n } => sweep_lemma(*max_m, *max_n, budget)?,
                Verify::Telescoping { max_i, max_n } => sweep_telescoping(*max_i, *max_n)?,
                Verify::Bm { max_d } => sweep_bm(*max_d, budget)?,
            };
            let text = output::identities(&reports, format);
            if reports.iter().all(|r| r.holds) {
                text
            } else {
                return Ok(Outcome {
                    code: EXIT_DOMAIN,
                    stdout: text,
                    stderr: "error: at least one identity failed\n".into(),
                });
            }
        }

        Command::Bounds { d, n, exact } => {
            output::bound_report(&bound_report(*d, *n, *exact)?, format)
        }

        Command::Crossover { d, n_max } => {
            let report = CrossoverReport {
                d: *d,
                n_max: *n_max,
                crossover: bound_crossover(*d, *n_max)?,
                ln_omega_d: omega_factor(*d)?,
                omega_excess: omega_excess(*d)?,
                dominance: dominance(*d)?,
            };
            output::crossover(&report, format)
        }

        Command::Codebounds { n, dist } => output::code_bounds(&code_bounds(*n, *dist)?, format),

        Command::CodeSearch {
            n,
            dist,
            method,
            order,
            words,
        } => {
            let order = match order {
                OrderArg::Lex => ScanOrder::Lex,
                OrderArg::Revlex => ScanOrder::Revlex,
            };
            let code = match method {
                Method::Greedy => greedy_code(*n, *dist, order)?,
                Method::Exact => exact_max_code(*n, *dist)?,
            };
            let report = CodeReport {
                n: *n,
                dist: *dist,
                size: code.size(),
                words: words.then_some(code.words),
            };
            output::code(&report, format)
        }
    };
    Ok(Outcome::ok(text))
}

fn stringify<T: ToString>(rows: Vec<Vec<T>>) -> Vec<Vec<String>> {
    rows.into_iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect()
}

/// `V(d, n)` through the cache when one is configured. The engine field is
/// always the one [`choose_engine`] picks, so output does not depend on
/// whether the value was cached.
fn cached_volume(cli: &Cli, d: usize, n: usize) -> Result<(VolumeReport, Option<String>), Failure> {
    let engine = if n > 0 && d + 1 >= n {
        None
    } else {
        Some(choose_engine(d, n)?)
    };
    let mut warning = None;
    let volume = match &cli.config.cache {
        None => ball_volume(d, n)?,
        Some(path) => {
            let mut cache = VolumeCache::open(path)?;
            if !cache.is_trusted() {
                warning = Some(format!(
                    "warning: cache {} failed its spot check and is ignored\n",
                    path.display()
                ));
            }
            match cache.get(d, n) {
                Some(v) => v.clone(),
                None => {
                    let v = ball_volume(d, n)?;
                    cache.record(d, n, &v)?;
                    v
                }
            }
        }
    };
    Ok((
        VolumeReport {
            d,
            n,
            engine,
            volume,
        },
        warning,
    ))
}
