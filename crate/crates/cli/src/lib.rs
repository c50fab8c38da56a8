//! Command-line front end: compute a moment, cross-check every formula
//! route against the quadrature (and optionally Monte Carlo) oracle, and
//! print the reference table.
//!
//! Output is one machine-readable `key=value` record per invocation on
//! stdout; diagnostics go to stderr. Exit statuses: 0 success, 1
//! check-failure, 2 usage or precondition error — and nothing else.

use std::str::FromStr;

use clap::{Parser, Subcommand};

use normal_moments::moments::{
    central_abs_moment, central_moment, consistency_report, raw_abs_moment, raw_moment,
    FormulaPath, MomentError, MomentKind, MomentQuery, MomentResult, NormalParams,
};
use normal_moments::oracle::{mc_moment, quad_moment, OracleError, OracleEstimate};
use normal_moments::record::{format_f64, kv_line, parse_kv_line};

/// Default tolerance for cross-route agreement, relative to
/// max(1, magnitudes).
pub const CONSISTENCY_TOL: f64 = 1e-10;
/// Default tolerance for formula-vs-oracle agreement, added to the oracle's
/// own error bound.
pub const ORACLE_TOL: f64 = 1e-9;

#[derive(Parser)]
#[command(
    name = "normal-moments",
    about = "Moments and absolute moments of the normal distribution for real order nu > -1",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute one moment and print its record
    Compute {
        /// Moment family: raw | central | abs | central-abs
        #[arg(long, value_parser = MomentKind::from_str)]
        kind: MomentKind,
        /// Real order, nu > -1
        #[arg(long)]
        nu: f64,
        /// Mean of the distribution
        #[arg(long)]
        mu: f64,
        /// Standard deviation, sigma > 0
        #[arg(long)]
        sigma: f64,
        /// Formula route: auto | pcf | phi-pair | psi | integer | gamma-form
        #[arg(long, default_value = "auto", value_parser = FormulaPath::from_str)]
        method: FormulaPath,
        /// Human-aligned output instead of one key=value line
        #[arg(long)]
        pretty: bool,
    },
    /// Evaluate every valid formula route plus the oracle and verify they
    /// agree; exit 1 with the worst deviation otherwise
    Check {
        /// Moment family: raw | central | abs | central-abs
        #[arg(long, value_parser = MomentKind::from_str)]
        kind: MomentKind,
        /// Real order, nu > -1
        #[arg(long)]
        nu: f64,
        /// Mean of the distribution
        #[arg(long)]
        mu: f64,
        /// Standard deviation, sigma > 0
        #[arg(long)]
        sigma: f64,
        /// Also run a Monte Carlo cross-check with this many samples
        #[arg(long)]
        samples: Option<u64>,
        /// Seed for --samples
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override both agreement tolerances (defaults 1e-10 / 1e-9)
        #[arg(long)]
        tol: Option<f64>,
        /// Human-aligned output instead of one key=value line
        #[arg(long)]
        pretty: bool,
    },
    /// Print central and central-absolute moments side by side for sigma = 1,
    /// nu in {0, 0.5, 1, 1.5, 2, 2.5, 3, 4, 5, 6, 7, 8}
    Table,
}

/// Oracle fields of a check record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleFields {
    pub value_re: f64,
    pub value_im: f64,
    pub bound: f64,
}

/// One output record; serialized numbers carry 17 significant digits and
/// re-parse to the identical doubles.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub kind: MomentKind,
    pub nu: f64,
    pub mu: f64,
    pub sigma: f64,
    pub value_re: f64,
    pub value_im: f64,
    pub path: FormulaPath,
    pub err_estimate: f64,
    pub oracle: Option<OracleFields>,
}

impl OutputRecord {
    fn new(
        kind: MomentKind,
        nu: f64,
        mu: f64,
        sigma: f64,
        result: &MomentResult,
        oracle: Option<&OracleEstimate>,
    ) -> Self {
        Self {
            kind,
            nu,
            mu,
            sigma,
            value_re: result.value.re,
            value_im: result.value.im,
            path: result.path,
            err_estimate: result.err_estimate,
            oracle: oracle.map(|o| OracleFields {
                value_re: o.value.re,
                value_im: o.value.im,
                bound: o.abs_error_bound,
            }),
        }
    }

    fn pairs(&self) -> Vec<(&'static str, String)> {
        let mut pairs = vec![
            ("kind", self.kind.to_string()),
            ("nu", format_f64(self.nu)),
            ("mu", format_f64(self.mu)),
            ("sigma", format_f64(self.sigma)),
            ("value_re", format_f64(self.value_re)),
            ("value_im", format_f64(self.value_im)),
            ("path", self.path.to_string()),
            ("err_estimate", format_f64(self.err_estimate)),
        ];
        if let Some(o) = &self.oracle {
            pairs.push(("oracle_value_re", format_f64(o.value_re)));
            pairs.push(("oracle_value_im", format_f64(o.value_im)));
            pairs.push(("oracle_bound", format_f64(o.bound)));
        }
        pairs
    }

    pub fn to_line(&self) -> String {
        kv_line(&self.pairs())
    }

    pub fn to_pretty(&self) -> String {
        self.pairs()
            .iter()
            .map(|(k, v)| format!("{k:<16} {v}"))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn parse_line(line: &str) -> Result<Self, String> {
        let pairs = parse_kv_line(line)?;
        let get = |key: &str| -> Result<&str, String> {
            pairs
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| v.as_str())
                .ok_or_else(|| format!("missing field `{key}`"))
        };
        let num = |key: &str| -> Result<f64, String> {
            get(key)?
                .parse::<f64>()
                .map_err(|e| format!("field `{key}`: {e}"))
        };
        let oracle = if pairs.iter().any(|(k, _)| k == "oracle_value_re") {
            Some(OracleFields {
                value_re: num("oracle_value_re")?,
                value_im: num("oracle_value_im")?,
                bound: num("oracle_bound")?,
            })
        } else {
            None
        };
        Ok(Self {
            kind: get("kind")?.parse()?,
            nu: num("nu")?,
            mu: num("mu")?,
            sigma: num("sigma")?,
            value_re: num("value_re")?,
            value_im: num("value_im")?,
            path: get("path")?.parse()?,
            err_estimate: num("err_estimate")?,
            oracle,
        })
    }
}

fn compute_moment(
    kind: MomentKind,
    nu: f64,
    mu: f64,
    sigma: f64,
    method: FormulaPath,
) -> Result<MomentResult, MomentError> {
    let p = NormalParams::new(mu, sigma)?;
    MomentQuery::new(kind, nu)?;
    match kind {
        MomentKind::Raw => raw_moment(&p, nu, method),
        MomentKind::Central => central_moment(&p, nu, method),
        MomentKind::RawAbs | MomentKind::CentralAbs => match method {
            FormulaPath::Auto | FormulaPath::GammaForm => {
                if kind == MomentKind::RawAbs {
                    raw_abs_moment(&p, nu)
                } else {
                    central_abs_moment(&p, nu)
                }
            }
            other => Err(MomentError::InvalidPath {
                path: other,
                reason: "absolute moments support only auto or gamma-form",
            }),
        },
    }
}

fn emit(record: &OutputRecord, pretty: bool) {
    if pretty {
        println!("{}", record.to_pretty());
    } else {
        println!("{}", record.to_line());
    }
}

fn run_compute(
    kind: MomentKind,
    nu: f64,
    mu: f64,
    sigma: f64,
    method: FormulaPath,
    pretty: bool,
) -> i32 {
    match compute_moment(kind, nu, mu, sigma, method) {
        Ok(result) => {
            emit(&OutputRecord::new(kind, nu, mu, sigma, &result, None), pretty);
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_check(
    kind: MomentKind,
    nu: f64,
    mu: f64,
    sigma: f64,
    samples: Option<u64>,
    seed: u64,
    tol: Option<f64>,
    pretty: bool,
) -> i32 {
    let result = match compute_moment(kind, nu, mu, sigma, FormulaPath::Auto) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let p = NormalParams::new(mu, sigma).expect("validated above");
    let q = MomentQuery::new(kind, nu).expect("validated above");

    let report = match consistency_report(&p, nu) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let oracle = match quad_moment(&p, &q) {
        Ok(o) => o,
        Err(OracleError::ToleranceNotMet { achieved, target }) => {
            eprintln!(
                "check failed: oracle quadrature tolerance not met \
                 (achieved {achieved:e}, target {target:e})"
            );
            return 1;
        }
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };

    let consistency_tol = tol.unwrap_or(CONSISTENCY_TOL);
    let oracle_tol = tol.unwrap_or(ORACLE_TOL);

    let mut worst: f64 = 0.0;
    let mut failures = Vec::new();

    let consistency_dev = report.max_deviation / report.scale;
    worst = worst.max(consistency_dev);
    if !report.passes(consistency_tol) {
        failures.push(format!(
            "formula routes disagree: relative deviation {consistency_dev:.3e} > {consistency_tol:.1e}"
        ));
    }

    let scale = result.value.norm().max(oracle.value.norm()).max(1.0);
    let oracle_dev = (result.value - oracle.value).norm();
    worst = worst.max(oracle_dev / scale);
    if oracle_dev > oracle.abs_error_bound + oracle_tol * scale {
        failures.push(format!(
            "oracle disagrees: |value - quad| = {oracle_dev:.3e} > bound {:.3e} + {oracle_tol:.1e} x {scale:.3e}",
            oracle.abs_error_bound
        ));
    }

    if let Some(n) = samples {
        match mc_moment(&p, &q, n, seed) {
            Ok(mc) => {
                let dev = (result.value - mc.value).norm();
                worst = worst.max(dev / scale);
                if dev > 4.0 * mc.abs_error_bound + oracle_tol * scale {
                    failures.push(format!(
                        "monte carlo disagrees: |value - mc| = {dev:.3e} > 4 x {:.3e} + {oracle_tol:.1e} x {scale:.3e}",
                        mc.abs_error_bound
                    ));
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                return 2;
            }
        }
    }

    emit(
        &OutputRecord::new(kind, nu, mu, sigma, &result, Some(&oracle)),
        pretty,
    );
    if failures.is_empty() {
        0
    } else {
        for f in &failures {
            eprintln!("check failed: {f}");
        }
        eprintln!("worst relative deviation: {worst:.3e}");
        1
    }
}

fn run_table() -> i32 {
    println!(
        "{:>5}  {:>19}  {:>19}  {:>19}",
        "nu", "central_re", "central_im", "central_abs"
    );
    let p = NormalParams::new(0.0, 1.0).expect("valid");
    for nu in [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0] {
        let central = central_moment(&p, nu, FormulaPath::Auto).expect("on-grid order");
        let central_abs = central_abs_moment(&p, nu).expect("on-grid order");
        println!(
            "{nu:>5}  {:>19.15}  {:>19.15}  {:>19.15}",
            central.value.re, central.value.im, central_abs.value.re
        );
    }
    0
}

pub fn run(command: Command) -> i32 {
    match command {
        Command::Compute {
            kind,
            nu,
            mu,
            sigma,
            method,
            pretty,
        } => run_compute(kind, nu, mu, sigma, method, pretty),
        Command::Check {
            kind,
            nu,
            mu,
            sigma,
            samples,
            seed,
            tol,
            pretty,
        } => run_check(kind, nu, mu, sigma, samples, seed, tol, pretty),
        Command::Table => run_table(),
    }
}
