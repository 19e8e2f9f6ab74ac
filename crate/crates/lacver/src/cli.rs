//! Command-line front end: list identities, verify a point, sweep a grid,
//! inspect term-by-term convergence.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 usage or domain error.
//! `LACVER_TOL` and `LACVER_MAX_TERMS` override the defaults; flags win
//! over the environment.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use crate::harness::{self, SweepTarget, VerificationRecord};
use crate::identities::{lhs_terms, rhs_terms, EvalParams, IdentityId};
use crate::series::{KahanSum, TruncationPolicy};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Lhs,
    Rhs,
}

#[derive(Parser)]
#[command(
    name = "lacver",
    version,
    about = "Verify lacunary generating-function identities for Laguerre polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the twelve identities and their parameter signatures.
    List {
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Verify one identity at one parameter point.
    Verify {
        #[arg(long, value_parser = IdentityId::from_str)]
        id: IdentityId,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        /// Relative comparison tolerance (default 1e-9, env LACVER_TOL).
        #[arg(long)]
        tol: Option<f64>,
        /// Series term cap (default 400, env LACVER_MAX_TERMS).
        #[arg(long)]
        max_terms: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Verify identities over a Cartesian parameter grid.
    Sweep {
        /// Identity to sweep, or "all".
        #[arg(long, value_parser = SweepTarget::from_str)]
        id: SweepTarget,
        /// x grid as a:b:n (n linearly spaced points from a to b).
        #[arg(long, allow_hyphen_values = true)]
        x_grid: String,
        /// t grid as a:b:n.
        #[arg(long, allow_hyphen_values = true)]
        t_grid: String,
        /// alpha grid as a:b:n (identities that take alpha).
        #[arg(long, allow_hyphen_values = true)]
        alpha_grid: Option<String>,
        /// k values as a comma list, e.g. 0,1,3.
        #[arg(long)]
        k_set: Option<String>,
        /// m values as a comma list, e.g. 0,1,3.
        #[arg(long)]
        m_set: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_terms: Option<usize>,
        /// Write records to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: ReportFormat,
    },
    /// Print term-by-term convergence of one side of an identity.
    Terms {
        #[arg(long, value_parser = IdentityId::from_str)]
        id: IdentityId,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        alpha: Option<f64>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        max_terms: Option<usize>,
    },
}

/// Entry point for the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::List { format } => Ok(cmd_list(format)),
        Command::Verify {
            id,
            x,
            t,
            alpha,
            k,
            m,
            tol,
            max_terms,
            format,
        } => {
            let params = build_params(x, t, alpha, k, m);
            cmd_verify(
                id,
                params,
                resolve_tol(tol)?,
                resolve_policy(max_terms)?,
                format,
            )
        }
        Command::Sweep {
            id,
            x_grid,
            t_grid,
            alpha_grid,
            k_set,
            m_set,
            tol,
            max_terms,
            out,
            format,
        } => {
            let grid = harness::ParamGrid {
                x_values: parse_grid(&x_grid)?,
                t_values: parse_grid(&t_grid)?,
                alpha_values: alpha_grid.as_deref().map(parse_grid).transpose()?,
                k_values: k_set.as_deref().map(parse_int_set).transpose()?,
                m_values: m_set.as_deref().map(parse_int_set).transpose()?,
            };
            cmd_sweep(
                id,
                &grid,
                resolve_tol(tol)?,
                resolve_policy(max_terms)?,
                out,
                format,
            )
        }
        Command::Terms {
            id,
            x,
            t,
            alpha,
            k,
            m,
            side,
            max_terms,
        } => {
            let params = build_params(x, t, alpha, k, m);
            cmd_terms(id, params, side, resolve_policy(max_terms)?)
        }
    }
}

fn build_params(x: f64, t: f64, alpha: Option<f64>, k: Option<u32>, m: Option<u32>) -> EvalParams {
    EvalParams { x, t, alpha, k, m }
}

fn env_parsed<T: FromStr>(name: &str) -> Result<Option<T>, String> {
    match std::env::var(name) {
        Ok(v) => v
            .parse::<T>()
            .map(Some)
            .map_err(|_| format!("invalid value in {name}: '{v}'")),
        Err(_) => Ok(None),
    }
}

fn resolve_tol(flag: Option<f64>) -> Result<f64, String> {
    let tol = match flag {
        Some(v) => v,
        None => env_parsed::<f64>("LACVER_TOL")?.unwrap_or(1e-9),
    };
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(format!("tolerance must be positive and finite (got {tol})"));
    }
    Ok(tol)
}

fn resolve_policy(max_terms_flag: Option<usize>) -> Result<TruncationPolicy, String> {
    let max_terms = match max_terms_flag {
        Some(v) => v,
        None => env_parsed::<usize>("LACVER_MAX_TERMS")?.unwrap_or(400),
    };
    let policy = TruncationPolicy {
        max_terms,
        ..TruncationPolicy::default()
    };
    if !policy.is_valid() {
        return Err(format!(
            "--max-terms must be at least {} (got {max_terms})",
            policy.streak
        ));
    }
    Ok(policy)
}

/// Parses a `a:b:n` grid spec into `n` inclusive linearly spaced points.
pub fn parse_grid(spec: &str) -> Result<Vec<f64>, String> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("malformed grid spec '{spec}' (expected a:b:n)"));
    }
    let a: f64 = parts[0]
        .parse()
        .map_err(|_| format!("malformed grid start in '{spec}'"))?;
    let b: f64 = parts[1]
        .parse()
        .map_err(|_| format!("malformed grid end in '{spec}'"))?;
    let n: usize = parts[2]
        .parse()
        .map_err(|_| format!("malformed grid count in '{spec}'"))?;
    if n == 0 {
        return Err(format!("grid count must be at least 1 in '{spec}'"));
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(format!("grid endpoints must be finite in '{spec}'"));
    }
    if n == 1 {
        return Ok(vec![a]);
    }
    let step = (b - a) / (n - 1) as f64;
    Ok((0..n).map(|i| a + step * i as f64).collect())
}

/// Parses a comma list of nonnegative integers, e.g. `0,1,3`.
pub fn parse_int_set(spec: &str) -> Result<Vec<u32>, String> {
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| format!("malformed integer set '{spec}'"))
        })
        .collect()
}

/// 17 significant digits, byte-stable across runs.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt_f64(v: Option<f64>) -> String {
    v.map(fmt_f64).unwrap_or_default()
}

fn opt_u32(v: Option<u32>) -> String {
    v.map(|u| u.to_string()).unwrap_or_default()
}

pub const CSV_HEADER: &str =
    "identity,x,t,alpha,k,m,lhs,rhs,abs_err,rel_err,lhs_terms,rhs_terms,pass";

fn csv_row(rec: &VerificationRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        rec.id,
        fmt_f64(rec.params.x),
        fmt_f64(rec.params.t),
        opt_f64(rec.params.alpha),
        opt_u32(rec.params.k),
        opt_u32(rec.params.m),
        fmt_f64(rec.lhs.value),
        fmt_f64(rec.rhs.value),
        fmt_f64(rec.abs_err),
        fmt_f64(rec.rel_err),
        rec.lhs.terms_used,
        rec.rhs.terms_used,
        rec.pass
    )
}

fn params_display(p: &EvalParams) -> String {
    let mut s = format!("x={} t={}", p.x, p.t);
    if let Some(a) = p.alpha {
        let _ = write!(s, " alpha={a}");
    }
    if let Some(k) = p.k {
        let _ = write!(s, " k={k}");
    }
    if let Some(m) = p.m {
        let _ = write!(s, " m={m}");
    }
    s
}

fn record_text(rec: &VerificationRecord) -> String {
    format!(
        "{:5} {:30} lhs={} ({} terms{}) rhs={} ({} terms{}) rel_err={:9.3e} {}",
        rec.id.to_string(),
        params_display(&rec.params),
        fmt_f64(rec.lhs.value),
        rec.lhs.terms_used,
        if rec.lhs.converged {
            ""
        } else {
            ", NOT CONVERGED"
        },
        fmt_f64(rec.rhs.value),
        rec.rhs.terms_used,
        if rec.rhs.converged {
            ""
        } else {
            ", NOT CONVERGED"
        },
        rec.rel_err,
        if rec.pass { "PASS" } else { "FAIL" }
    )
}

fn render_records(records: &[VerificationRecord], format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => {
            let mut out = String::new();
            for rec in records {
                out.push_str(&record_text(rec));
                out.push('\n');
            }
            out
        }
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(records).expect("records serialize");
            out.push('\n');
            out
        }
        ReportFormat::Csv => {
            let mut out = String::from(CSV_HEADER);
            out.push('\n');
            for rec in records {
                out.push_str(&csv_row(rec));
                out.push('\n');
            }
            out
        }
    }
}

fn cmd_list(format: ReportFormat) -> i32 {
    let descriptors: Vec<_> = IdentityId::ALL.iter().map(|id| id.descriptor()).collect();
    match format {
        ReportFormat::Text => {
            println!(
                "{:<5} {:>3} {:>4} {:>10} {:<8} {}",
                "id", "eq", "kind", "lacunarity", "params", "t-domain"
            );
            for d in &descriptors {
                let params = if d.required_params.is_empty() {
                    "-".to_string()
                } else {
                    d.required_params
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                };
                println!(
                    "{:<5} {:>3} {:>4} {:>10} {:<8} {}",
                    d.id.to_string(),
                    d.equation,
                    d.kind.to_string(),
                    d.lacunarity,
                    params,
                    d.t_domain_string()
                );
            }
        }
        ReportFormat::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&descriptors).expect("descriptors serialize")
            );
        }
        ReportFormat::Csv => {
            println!("id,equation,kind,lacunarity,required_params,t_domain");
            for d in &descriptors {
                let params = d
                    .required_params
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(";");
                println!(
                    "{},{},{},{},{},{}",
                    d.id,
                    d.equation,
                    d.kind,
                    d.lacunarity,
                    params,
                    d.t_domain_string()
                );
            }
        }
    }
    EXIT_PASS
}

fn cmd_verify(
    id: IdentityId,
    params: EvalParams,
    tol: f64,
    policy: TruncationPolicy,
    format: ReportFormat,
) -> Result<i32, String> {
    match harness::verify(id, &params, tol, &policy) {
        Ok(rec) => {
            match format {
                ReportFormat::Text => print!("{}", record_text(&rec) + "\n"),
                _ => print!("{}", render_records(std::slice::from_ref(&rec), format)),
            }
            Ok(if rec.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Err(harness::HarnessError::Numeric { side, source }) => {
            eprintln!("numeric failure on {side}: {source}");
            Ok(EXIT_FAIL)
        }
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_sweep(
    target: SweepTarget,
    grid: &harness::ParamGrid,
    tol: f64,
    policy: TruncationPolicy,
    out: Option<PathBuf>,
    format: ReportFormat,
) -> Result<i32, String> {
    let report = harness::sweep(target, grid, tol, &policy).map_err(|e| e.to_string())?;
    let rendered = render_records(&report.records, format);
    match &out {
        Some(path) => {
            let mut f = std::fs::File::create(path)
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            f.write_all(rendered.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
        }
        None => print!("{rendered}"),
    }
    for err in &report.errors {
        eprintln!(
            "errored: {} {}: {}",
            err.id,
            params_display(&err.params),
            err.message
        );
    }
    println!(
        "passed {} / failed {} / errored {}",
        report.passed(),
        report.failed(),
        report.errored()
    );
    Ok(if report.failed() == 0 && report.errored() == 0 {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

fn cmd_terms(
    id: IdentityId,
    params: EvalParams,
    side: SideArg,
    policy: TruncationPolicy,
) -> Result<i32, String> {
    let terms = match side {
        SideArg::Lhs => lhs_terms(id, &params),
        SideArg::Rhs => rhs_terms(id, &params),
    }
    .map_err(|e| e.to_string())?;

    println!(
        "{:>5}  {:>24}  {:>24}  {:>24}",
        "index", "term", "partial_sum", "compensation"
    );
    let mut acc = KahanSum::new();
    let mut small_run = 0usize;
    for (index, term) in terms.take(policy.max_terms).enumerate() {
        if !term.is_finite() {
            eprintln!("non-finite term at index {index}");
            return Ok(EXIT_FAIL);
        }
        acc.add(term);
        println!(
            "{index:>5}  {:>24}  {:>24}  {:>24}",
            fmt_f64(term),
            fmt_f64(acc.value()),
            fmt_f64(acc.compensation())
        );
        if term.abs() <= policy.rel_tol * acc.value().abs().max(1.0) {
            small_run += 1;
            if small_run >= policy.streak {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    Ok(EXIT_PASS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_spec_parsing() {
        assert_eq!(parse_grid("0:1:3").unwrap(), vec![0.0, 0.5, 1.0]);
        assert_eq!(parse_grid("2:2:1").unwrap(), vec![2.0]);
        assert_eq!(
            parse_grid("0.25:4:5").unwrap(),
            vec![0.25, 1.1875, 2.125, 3.0625, 4.0]
        );
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("a:2:3").is_err());
        assert!(parse_grid("1:2:0").is_err());
    }

    #[test]
    fn int_set_parsing() {
        assert_eq!(parse_int_set("0,1,3").unwrap(), vec![0, 1, 3]);
        assert_eq!(parse_int_set("5").unwrap(), vec![5]);
        assert!(parse_int_set("1,-2").is_err());
        assert!(parse_int_set("1,x").is_err());
    }

    #[test]
    fn float_formatting_width() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-0.5), "-5.0000000000000000e-1");
    }

    #[test]
    fn csv_row_shape() {
        let rec = harness::verify(
            IdentityId::Eq1,
            &EvalParams::new(1.0, 0.3),
            1e-9,
            &TruncationPolicy::default(),
        )
        .unwrap();
        let row = csv_row(&rec);
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("eq1,"));
        assert!(row.ends_with(",true"));
        // unused params stay empty
        let fields: Vec<&str> = row.split(',').collect();
        assert_eq!(fields[3], "");
        assert_eq!(fields[4], "");
        assert_eq!(fields[5], "");
    }
}
