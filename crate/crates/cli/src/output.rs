//! Report types printed by the CLI and their three renderings.
//!
//! Table output is for people; JSON and CSV are for machines and carry every
//! big integer as a decimal string.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use permcode::bounds::{BoundReport, CodeBounds, Dominance};
use permcode::codes::Permutation;
use permcode::identities::IdentityReport;
use permcode::permanent::Engine;
use serde::{Deserialize, Serialize};

use crate::args::Format;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeReport {
    pub d: usize,
    pub n: usize,
    /// Engine used; `None` when `d >= n - 1` and the value is `n!`.
    pub engine: Option<Engine>,
    #[serde(with = "permcode::serde_decimal")]
    pub volume: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaValue {
    pub d: u32,
    pub shifted: bool,
    pub x: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OmegaPoly {
    pub d: u32,
    pub shifted: bool,
    #[serde(with = "permcode::serde_decimal::vec")]
    pub coeffs: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrossoverReport {
    pub d: u32,
    pub n_max: u64,
    pub crossover: Option<u64>,
    pub ln_omega_d: f64,
    /// `ln omega_d - d ln 2`.
    pub omega_excess: f64,
    pub dominance: Dominance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub n: usize,
    pub dist: u32,
    pub size: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<Permutation>>,
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("flat csv record");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref()
        .map_or_else(|| "-".to_string(), ToString::to_string)
}

/// Left-aligned `key  value` lines.
fn aligned(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

pub fn volumes(reports: &[VolumeReport], format: Format) -> String {
    match format {
        Format::Table => reports
            .iter()
            .map(|r| match (reports.len(), r.engine) {
                (1, _) | (_, None) => format!("V({},{}) = {}\n", r.d, r.n, r.volume),
                (_, Some(e)) => format!("V({},{}) = {}  [{e}]\n", r.d, r.n, r.volume),
            })
            .collect(),
        Format::Json if reports.len() == 1 => json(&reports[0]),
        Format::Json => json(reports),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                d: usize,
                n: usize,
                engine: String,
                volume: &'a str,
            }
            let text: Vec<String> = reports.iter().map(|r| r.volume.to_string()).collect();
            let rows: Vec<Row> = reports
                .iter()
                .zip(&text)
                .map(|(r, v)| Row {
                    d: r.d,
                    n: r.n,
                    engine: opt(&r.engine),
                    volume: v,
                })
                .collect();
            csv(&rows)
        }
    }
}

pub fn omega_value(r: &OmegaValue, format: Format) -> String {
    match format {
        Format::Table => format!("{}\n", r.value),
        Format::Json => json(r),
        Format::Csv => csv(std::slice::from_ref(r)),
    }
}

pub fn omega_poly(r: &OmegaPoly, as_list: bool, format: Format) -> String {
    match format {
        Format::Table if as_list => {
            let parts: Vec<String> = r.coeffs.iter().map(ToString::to_string).collect();
            format!("[{}]\n", parts.join(", "))
        }
        Format::Table => {
            let poly = permcode::IntPolynomial::new(r.coeffs.clone());
            let arg = if r.shifted { "x+1" } else { "x" };
            format!("Omega_{}({arg}) = {poly}\n", r.d)
        }
        Format::Json => json(r),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                d: u32,
                shifted: bool,
                power: usize,
                coeff: String,
            }
            let rows: Vec<Row> = r
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| Row {
                    d: r.d,
                    shifted: r.shifted,
                    power: k,
                    coeff: c.to_string(),
                })
                .collect();
            csv(&rows)
        }
    }
}

fn side(values: &[BigInt]) -> String {
    match values {
        [v] => v.to_string(),
        _ => {
            let parts: Vec<String> = values.iter().map(ToString::to_string).collect();
            format!("[{}]", parts.join(", "))
        }
    }
}

fn params(r: &IdentityReport) -> String {
    r.parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn identities(reports: &[IdentityReport], format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = String::new();
            for r in reports {
                let verdict = if r.holds { "ok" } else { "FAIL" };
                let rel = if r.holds { "=" } else { "!=" };
                let _ = writeln!(
                    out,
                    "{verdict:<4} {} {}: {} {rel} {}",
                    r.name,
                    params(r),
                    side(&r.lhs),
                    side(&r.rhs)
                );
            }
            let failed = reports.iter().filter(|r| !r.holds).count();
            let _ = writeln!(out, "{} checked, {failed} failed", reports.len());
            out
        }
        Format::Json => json(reports),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                name: String,
                parameters: String,
                lhs: String,
                rhs: String,
                holds: bool,
            }
            let join = |v: &[BigInt]| {
                v.iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(";")
            };
            let rows: Vec<Row> = reports
                .iter()
                .map(|r| Row {
                    name: r.name.clone(),
                    parameters: params(r),
                    lhs: join(&r.lhs),
                    rhs: join(&r.rhs),
                    holds: r.holds,
                })
                .collect();
            csv(&rows)
        }
    }
}

pub fn bound_report(r: &BoundReport<f64>, format: Format) -> String {
    match format {
        Format::Table => aligned(&[
            ("d", r.d.to_string()),
            ("n", r.n.to_string()),
            ("ln_old", r.ln_old.to_string()),
            ("ln_new", r.ln_new.to_string()),
            ("ln_omega_d", r.ln_omega_d.to_string()),
            ("ln_exact", opt(&r.ln_exact)),
            ("gv_floor", opt(&r.gv_floor)),
            ("packing_ceiling", opt(&r.packing_ceiling)),
        ]),
        Format::Json => json(r),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                d: u32,
                n: u64,
                ln_old: f64,
                ln_new: f64,
                ln_omega_d: f64,
                ln_exact: Option<f64>,
            }
            csv(&[Row {
                d: r.d,
                n: r.n,
                ln_old: r.ln_old,
                ln_new: r.ln_new,
                ln_omega_d: r.ln_omega_d,
                ln_exact: r.ln_exact,
            }])
        }
    }
}

fn dominance_text(d: Dominance) -> String {
    match d {
        Dominance::Never => "never".to_string(),
        Dominance::Always => "all n".to_string(),
        Dominance::Through(last) => format!("1 <= n <= {last}"),
    }
}

pub fn crossover(r: &CrossoverReport, format: Format) -> String {
    match format {
        Format::Table => aligned(&[
            ("d", r.d.to_string()),
            ("n_max", r.n_max.to_string()),
            (
                "crossover",
                r.crossover
                    .map_or_else(|| "none".to_string(), |n| n.to_string()),
            ),
            ("ln_omega_d", r.ln_omega_d.to_string()),
            ("omega_excess", r.omega_excess.to_string()),
            ("new_bound_wins", dominance_text(r.dominance)),
        ]),
        Format::Json => json(r),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                d: u32,
                n_max: u64,
                crossover: Option<u64>,
                ln_omega_d: f64,
                omega_excess: f64,
                new_bound_wins: String,
            }
            csv(&[Row {
                d: r.d,
                n_max: r.n_max,
                crossover: r.crossover,
                ln_omega_d: r.ln_omega_d,
                omega_excess: r.omega_excess,
                new_bound_wins: dominance_text(r.dominance),
            }])
        }
    }
}

pub fn code_bounds(r: &CodeBounds, format: Format) -> String {
    match format {
        Format::Table => aligned(&[
            ("n", r.n.to_string()),
            ("dist", r.dist.to_string()),
            ("gv_floor", r.gv_floor.to_string()),
            ("packing_ceiling", r.packing_ceiling.to_string()),
        ]),
        Format::Json => json(r),
        Format::Csv => csv(std::slice::from_ref(r)),
    }
}

pub fn code(r: &CodeReport, format: Format) -> String {
    match format {
        Format::Table => {
            let mut out = format!("size = {}\n", r.size);
            for w in r.words.iter().flatten() {
                let _ = writeln!(out, "{w}");
            }
            out
        }
        Format::Json => json(r),
        Format::Csv => match &r.words {
            None => {
                #[derive(Serialize)]
                struct Row {
                    n: usize,
                    dist: u32,
                    size: usize,
                }
                csv(&[Row {
                    n: r.n,
                    dist: r.dist,
                    size: r.size,
                }])
            }
            Some(words) => {
                #[derive(Serialize)]
                struct Row {
                    n: usize,
                    dist: u32,
                    word: String,
                }
                let rows: Vec<Row> = words
                    .iter()
                    .map(|w| Row {
                        n: r.n,
                        dist: r.dist,
                        word: w.to_string(),
                    })
                    .collect();
                csv(&rows)
            }
        },
    }
}

/// Matrix as a grid (table), array of arrays (JSON) or headed rows (CSV).
pub fn matrix(rows: &[Vec<String>], numeric: bool, format: Format) -> String {
    match format {
        Format::Table => {
            let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
            rows.iter()
                .map(|r| {
                    let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
                    cells.join(" ") + "\n"
                })
                .collect()
        }
        Format::Json if numeric => {
            let parsed: Vec<Vec<serde_json::Value>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .map(|c| {
                            c.parse::<u64>()
                                .map_or_else(|_| c.clone().into(), Into::into)
                        })
                        .collect()
                })
                .collect();
            json(&parsed)
        }
        Format::Json => json(rows),
        Format::Csv => {
            let cols = rows.first().map_or(0, Vec::len);
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record((1..=cols).map(|j| format!("c{j}")))
                .expect("csv header");
            for r in rows {
                w.write_record(r).expect("csv row");
            }
            String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
        }
    }
}
