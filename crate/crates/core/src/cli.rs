//! The `zs` command line: `eval`, `verify`, `suite`, `poles`, `residue`.
//!
//! Exit codes: 0 on success or pass, 1 on a failed comparison, 2 on usage,
//! domain, pole or other evaluation errors (and on a skipped `verify`).
//! Errors are written to stderr as a one-line JSON object.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::catalog::{self, Params, Side};
use crate::config::EvalConfig;
use crate::corpus;
use crate::error::{Error, Result};
use crate::poles::{self, PoleRecord, ResidueVariant};
use crate::report::{round15, SideReport, Status};
use crate::summation::SummationMethod;

/// Environment variable overriding the default term cap.
pub const MAX_TERMS_ENV: &str = "ZS_MAX_TERMS";

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "zs", version, about = "Partial-fraction sums and their Dirichlet power series")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate one side of an identity.
    Eval {
        #[arg(value_enum)]
        side: SideArg,
        /// identity id: order-p, weighted, derivative, multi-factor, dirichlet,
        /// compose, dirichlet-compose, general-dirichlet, sequence
        id: String,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        cfg: CfgArgs,
    },
    /// Evaluate both sides and print the comparison as JSON.
    Verify {
        id: String,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        cfg: CfgArgs,
    },
    /// Run the verification corpus.
    Suite {
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// also write the JSON report to this file
        #[arg(long)]
        report: Option<PathBuf>,
        /// run only this case id (and its `id/...` variants)
        #[arg(long)]
        only: Option<String>,
    },
    /// Export pole locations -n^s as CSV (n, re, im, abs, arg).
    Poles {
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 10)]
        count: u64,
        /// write to this file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Measure the residue at -n^s numerically.
    Residue {
        #[arg(long, default_value = "ones")]
        spec: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        n: u64,
        /// weight n^q ln^m(n); measured on Σ (-1)^k f^(m)(ks+s-q) z^k
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[command(flatten)]
        cfg: CfgArgs,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Lhs,
    Rhs,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, default_value = "2", allow_hyphen_values = true)]
    s: String,
    #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
    z: String,
    /// ones, mobius, von-mangoldt, totient, beta, char:q:idx
    #[arg(long, default_value = "ones")]
    spec: String,
    /// direct, cesaro:k, abel
    #[arg(long, default_value = "direct")]
    method: String,
    #[arg(long, default_value_t = 0)]
    m: u32,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    q: String,
    #[arg(long = "s-prime", default_value = "0", allow_hyphen_values = true)]
    s_prime: String,
    /// beta:alpha pairs, comma separated
    #[arg(long, default_value = "2:1,3:-1", allow_hyphen_values = true)]
    factors: String,
    /// exp, ln, sin, identity
    #[arg(long, default_value = "exp")]
    f: String,
    /// linear, log
    #[arg(long, default_value = "linear")]
    lambda: String,
    /// n2n, dirichlet
    #[arg(long, default_value = "n2n")]
    seq: String,
}

#[derive(Debug, Args)]
struct CfgArgs {
    #[arg(long)]
    target: Option<f64>,
    #[arg(long = "max-terms")]
    max_terms: Option<usize>,
    /// Euler–Maclaurin order (even, >= 2)
    #[arg(long)]
    order: Option<usize>,
}

impl ParamArgs {
    fn to_params(&self) -> Result<Params> {
        catalog::spec_by_name(&self.spec)?;
        Ok(Params {
            s: catalog::parse_complex(&self.s)?,
            z: catalog::parse_complex(&self.z)?,
            spec: self.spec.clone(),
            method: self.method.parse::<SummationMethod>()?,
            m: self.m,
            q: catalog::parse_complex(&self.q)?,
            s_prime: catalog::parse_complex(&self.s_prime)?,
            factors: catalog::parse_factors(&self.factors)?,
            f: self.f.clone(),
            lambda: self.lambda.clone(),
            seq: self.seq.clone(),
        })
    }
}

impl CfgArgs {
    fn to_config(&self, env_max_terms: Option<&str>) -> Result<EvalConfig> {
        let mut cfg = EvalConfig::default();
        if let Some(text) = env_max_terms {
            cfg.max_terms = text
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("{MAX_TERMS_ENV} must be a positive integer, got {text:?}")))?;
        }
        if let Some(t) = self.target {
            cfg.target_abs_error = t;
        }
        if let Some(n) = self.max_terms {
            cfg.max_terms = n;
        }
        if let Some(o) = self.order {
            cfg.euler_maclaurin_order = o;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn pair(z: Complex64) -> [f64; 2] {
    [round15(z.re), round15(z.im)]
}

/// JSON form of a pole record.
pub fn pole_record_json(r: &PoleRecord) -> serde_json::Value {
    json!({
        "n": r.n,
        "location": pair(r.location),
        "expected_residue": r.expected_residue.map(pair),
        "measured_residue": r.measured_residue.map(pair),
        "abs_error": r.abs_error.map(round15),
    })
}

fn error_json(e: &Error) -> String {
    json!({ "error": e.kind(), "message": e.to_string() }).to_string()
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let env_max_terms = std::env::var(MAX_TERMS_ENV).ok();
    match dispatch(cli.command, env_max_terms.as_deref(), out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(&e));
            EXIT_ERROR
        }
    }
}

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::Config(format!("i/o: {e}"))
}

fn emit(out: &mut dyn Write, value: &impl serde::Serialize) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(io_err)?;
    writeln!(out, "{text}").map_err(io_err)
}

fn dispatch(command: Command, env_max_terms: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Eval { side, id, params, cfg } => {
            let cfg = cfg.to_config(env_max_terms)?;
            let p = params.to_params()?;
            let side = match side {
                SideArg::Lhs => Side::Lhs,
                SideArg::Rhs => Side::Rhs,
            };
            if !catalog::IDENTITIES.contains(&id.as_str()) {
                return Err(Error::Config(format!("unknown identity {id:?}")));
            }
            let r = catalog::evaluate(&id, side, &p, &cfg)?;
            emit(out, &SideReport::from(&r))?;
            Ok(EXIT_PASS)
        }
        Command::Verify { id, params, tol, cfg } => {
            let cfg = cfg.to_config(env_max_terms)?;
            let p = params.to_params()?;
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(Error::Config(format!("tolerance must be finite and >= 0, got {tol}")));
            }
            let report = catalog::verify(&id, &p, tol, &cfg)?;
            emit(out, &report)?;
            Ok(match report.status {
                Status::Pass => EXIT_PASS,
                Status::Fail => EXIT_FAIL,
                Status::Skipped(_) => EXIT_ERROR,
            })
        }
        Command::Suite { tol, report, only } => {
            if !(tol.is_finite() && tol >= 0.0) {
                return Err(Error::Config(format!("tolerance must be finite and >= 0, got {tol}")));
            }
            let suite = corpus::run_suite(tol, only.as_deref());
            if suite.reports.is_empty() {
                return Err(Error::Config(format!("no corpus case matches {:?}", only.unwrap_or_default())));
            }
            if let Some(path) = report {
                let text = serde_json::to_string_pretty(&suite).map_err(io_err)?;
                std::fs::write(&path, text + "\n").map_err(io_err)?;
            }
            emit(out, &suite)?;
            Ok(if suite.all_pass() { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Poles { s, count, out: path } => {
            let s = catalog::parse_complex(&s)?;
            let rows = poles::spiral_export(s, count)?;
            match path {
                Some(path) => {
                    let file = std::fs::File::create(&path).map_err(io_err)?;
                    write_csv(file, &rows)?;
                }
                None => write_csv(&mut *out, &rows)?,
            }
            Ok(EXIT_PASS)
        }
        Command::Residue { spec, s, n, q, m, cfg } => {
            let cfg = cfg.to_config(env_max_terms)?;
            let spec = catalog::spec_by_name(&spec)?;
            let s = catalog::parse_complex(&s)?;
            let variant = match (q, m) {
                (None, None) => ResidueVariant::Plain,
                (q, m) => ResidueVariant::Weighted {
                    q: q.as_deref().map(catalog::parse_complex).transpose()?.unwrap_or_default(),
                    m: m.unwrap_or(0),
                },
            };
            let record = poles::residue(&spec, s, n, variant, &cfg)?;
            emit(out, &pole_record_json(&record))?;
            Ok(EXIT_PASS)
        }
    }
}

fn write_csv<W: Write>(w: W, rows: &[poles::SpiralRow]) -> Result<()> {
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(["n", "re", "im", "abs", "arg"]).map_err(io_err)?;
    for r in rows {
        // `{}` on f64 prints the shortest string that parses back exactly
        csv.write_record([r.n.to_string(), r.re.to_string(), r.im.to_string(), r.abs.to_string(), r.arg.to_string()])
            .map_err(io_err)?;
    }
    csv.flush().map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("zs").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn eval_prints_side_json() {
        let (code, out, _) = run_capture(&["eval", "lhs", "order-p", "--s", "2", "--z", "0"]);
        assert_eq!(code, 0);
        let side: SideReport = serde_json::from_str(&out).unwrap();
        assert!((side.value[0] - std::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn negative_values_are_accepted() {
        let (code, out, _) = run_capture(&["eval", "rhs", "order-p", "--s", "2", "--z", "-0.25"]);
        assert_eq!(code, 0);
        let side: SideReport = serde_json::from_str(&out).unwrap();
        assert!((side.value[0] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn usage_and_domain_errors_exit_2() {
        assert_eq!(run_capture(&["eval", "lhs", "nope"]).0, 2);
        assert_eq!(run_capture(&["frobnicate"]).0, 2);
        let (code, _, err) = run_capture(&["eval", "lhs", "order-p", "--s", "0.5"]);
        assert_eq!(code, 2);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"], "DomainError");
        assert_eq!(run_capture(&["eval", "lhs", "order-p", "--z", "-1"]).0, 2);
        assert_eq!(run_capture(&["eval", "lhs", "order-p", "--target", "0"]).0, 2);
    }

    #[test]
    fn help_exits_0() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("suite"));
    }

    #[test]
    fn env_max_terms_is_parsed() {
        let cfg = CfgArgs { target: None, max_terms: None, order: None };
        assert_eq!(cfg.to_config(Some("5000")).unwrap().max_terms, 5000);
        assert!(cfg.to_config(Some("lots")).is_err());
        let cfg = CfgArgs { target: None, max_terms: Some(100), order: None };
        assert_eq!(cfg.to_config(Some("5000")).unwrap().max_terms, 100);
    }
}
