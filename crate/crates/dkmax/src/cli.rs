//! Command-line surface: table generators for jump sets, superior chains,
//! lambda values and bound data, plus a persistent JSON-lines result cache.

use crate::bounds::{classical_bounds, eps0, stopping_data};
use crate::divisor::{d_k, f_k, factorize, FactoredNat};
use crate::error::{Error, Result};
use crate::maximizer::{
    find_lambda_with_rows, implied_epsilon, lambda_range, ChainRow, LambdaCache, LambdaResult,
    NoCache,
};
use crate::primes::{build_prime_table, PrimeTable, DEFAULT_SIEVE_LIMIT};
use crate::shcn::{enumerate_jump_groups, n_tilde};
use crate::verify::{brute_force_max_f, verify_k_highly_composite, verify_superiority, ScanReport};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest N printed in full decimal by default; bigger ones print as a
/// factorization unless --full-decimal asks for the expansion.
const DECIMAL_PRINT_CAP: u128 = 1_000_000_000_000_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Csv,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "dkmax",
    version,
    about = "Superior k-highly composite numbers and the maximum of f_k(n) = log d_k(n) loglog n / (log k log n)"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    global: GlobalArgs,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "md")]
    format: Format,
    /// JSON-lines cache for lambda results.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Prime sieve limit.
    #[arg(long, global = true, default_value_t = DEFAULT_SIEVE_LIMIT)]
    sieve_limit: u64,
    /// Print full decimal expansions however large N gets.
    #[arg(long, global = true)]
    full_decimal: bool,
}

fn parse_k(s: &str) -> std::result::Result<u32, String> {
    let k: u32 = s.parse().map_err(|_| format!("k must be ≥ 2, got `{s}`"))?;
    if k < 2 {
        return Err("k must be ≥ 2".into());
    }
    Ok(k)
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// List jump values eps[k,p;m] and the superior numbers they create.
    Jumps {
        #[arg(long, value_parser = parse_k)]
        k: u32,
        #[arg(long, requires = "eps_max")]
        eps_min: Option<f64>,
        #[arg(long, requires = "eps_min")]
        eps_max: Option<f64>,
        /// Number of jump points from the top of the jump set.
        #[arg(long, conflicts_with_all = ["eps_min", "eps_max"])]
        count: Option<usize>,
    },
    /// The largest superior k-highly composite number for one eps.
    Shcn {
        #[arg(long, value_parser = parse_k)]
        k: u32,
        #[arg(long)]
        eps: f64,
    },
    /// lambda(k), N_max(k) and the certified eps bracket.
    Lambda {
        #[arg(long, value_parser = parse_k)]
        k: u32,
    },
    /// lambda(k) for a range of k.
    LambdaRange {
        #[arg(long, value_parser = parse_k)]
        k_min: u32,
        #[arg(long, value_parser = parse_k)]
        k_max: u32,
    },
    /// N_max(k) for a range of k, grouped into constancy runs.
    NmaxRange {
        #[arg(long, value_parser = parse_k)]
        k_min: u32,
        #[arg(long, value_parser = parse_k)]
        k_max: u32,
    },
    /// The explicit constants eps0, c0, c1, lambda0/lambda1, eps2, N2, u.
    Bounds {
        #[arg(long, value_parser = parse_k)]
        k: u32,
        #[arg(long)]
        eps1: Option<f64>,
    },
    /// Brute-force scans: f_k argmax, superiority, k-highly-composite.
    Verify {
        #[arg(long, value_parser = parse_k)]
        k: u32,
        #[arg(long)]
        limit: u64,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        n: Option<u64>,
    },
    /// (k, lambda) pairs for plotting, full precision.
    PlotData {
        #[arg(long, value_parser = parse_k)]
        k_min: u32,
        #[arg(long, value_parser = parse_k)]
        k_max: u32,
    },
}

/// Entry point for the binary.
pub fn run() -> i32 {
    let args: Vec<std::ffi::OsString> = std::env::args_os().collect();
    let mut out = std::io::stdout();
    let mut err = std::io::stderr();
    run_command(args, &mut out, &mut err)
}

/// Dispatches one command line; 0 on success, 1 on validation failure,
/// 2 on usage errors.
pub fn run_command<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap help/version land on stdout with code 0.
            let code = i32::from(e.exit_code() != 0);
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match dispatch(&cli, out) {
        Ok(clean) => {
            if clean {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    let g = &cli.global;
    let table = build_prime_table(g.sieve_limit)?;
    match &cli.cmd {
        Cmd::Jumps { k, eps_min, eps_max, count } => {
            let rows = jump_rows(*k, *eps_min, *eps_max, *count, &table)?;
            let text = render_jump_rows(&rows, g)?;
            write!(out, "{text}")?;
            Ok(true)
        }
        Cmd::Shcn { k, eps } => {
            let n = n_tilde(*k, *eps, &table)?;
            let text = render_shcn(*k, *eps, &n, g)?;
            write!(out, "{text}")?;
            Ok(true)
        }
        Cmd::Lambda { k } => {
            let mut cache = open_cache(g.cache.as_deref())?;
            let (result, rows) = find_lambda_with_rows(*k, &table)?;
            cache.record(&result)?;
            let text = render_lambda(&result, &rows, g)?;
            write!(out, "{text}")?;
            Ok(true)
        }
        Cmd::LambdaRange { k_min, k_max } => {
            let results = run_lambda_range(*k_min, *k_max, &table, g)?;
            let text = render_lambda_range(&results, g)?;
            write!(out, "{text}")?;
            Ok(true)
        }
        Cmd::NmaxRange { k_min, k_max } => {
            let results = run_lambda_range(*k_min, *k_max, &table, g)?;
            let text = render_nmax_range(&results, g)?;
            write!(out, "{text}")?;
            Ok(true)
        }
        Cmd::Bounds { k, eps1 } => {
            let eps1 = eps1.unwrap_or_else(|| eps0(*k));
            let bounds = classical_bounds(*k, eps1)?;
            let stopping = stopping_data(*k, &table)?;
            let text = render_bounds(&bounds, &stopping, g)?;
            write!(out, "{text}")?;
            Ok(true)
        }
        Cmd::Verify { k, limit, eps, n } => {
            let report = match (eps, n) {
                (Some(eps), Some(n)) => {
                    let target = factorize(*n, &table)?;
                    verify_superiority(*k, *eps, &target, *limit)?
                }
                (None, Some(n)) => verify_k_highly_composite(*k, *n)?,
                (None, None) => brute_force_max_f(*k, *limit)?,
                (Some(_), None) => {
                    return Err(Error::invalid("--eps needs --n to name the candidate"))
                }
            };
            let text = render_scan(&report, g)?;
            write!(out, "{text}")?;
            Ok(report.passed())
        }
        Cmd::PlotData { k_min, k_max } => {
            let results = run_lambda_range(*k_min, *k_max, &table, g)?;
            let text = render_plot_data(&results, g)?;
            write!(out, "{text}")?;
            Ok(true)
        }
    }
}

fn run_lambda_range(
    k_min: u32,
    k_max: u32,
    table: &PrimeTable,
    g: &GlobalArgs,
) -> Result<Vec<LambdaResult>> {
    let mut cache = open_cache(g.cache.as_deref())?;
    lambda_range(k_min, k_max, table, cache.as_mut())
}

fn open_cache(path: Option<&Path>) -> Result<Box<dyn LambdaCache>> {
    match path {
        Some(p) => Ok(Box::new(ResultCache::open(p)?)),
        None => Ok(Box::new(NoCache)),
    }
}

// ---------------------------------------------------------------------------
// Jump listing

struct JumpRow {
    eps: f64,
    p: u64,
    m: u32,
    n_tilde: FactoredNat,
}

fn jump_rows(
    k: u32,
    eps_min: Option<f64>,
    eps_max: Option<f64>,
    count: Option<usize>,
    table: &PrimeTable,
) -> Result<Vec<JumpRow>> {
    let top = (k as f64).log2() + 1.0;
    let (lo, hi, want) = match (eps_min, eps_max, count) {
        (Some(lo), Some(hi), _) => (lo, hi, usize::MAX),
        (None, None, c) => {
            let want = c.unwrap_or(20);
            // Widen downward until the window holds enough jump points.
            let mut lo = (k as f64).log2() / 2.0;
            loop {
                let groups = enumerate_jump_groups(k, lo, top, table)?;
                let points: usize = groups.iter().map(|g| g.members.len()).sum();
                if points >= want || lo < 1e-6 {
                    break;
                }
                lo *= 0.7;
            }
            (lo, top, want)
        }
        _ => unreachable!("clap enforces eps-min with eps-max"),
    };
    let groups = enumerate_jump_groups(k, lo, hi, table)?;
    let mut rows = Vec::new();
    'outer: for g in &groups {
        let n = n_tilde(k, g.eps * (1.0 - 1e-13), table)?;
        for jp in &g.members {
            if rows.len() >= want {
                break 'outer;
            }
            rows.push(JumpRow { eps: g.eps, p: jp.p, m: jp.m, n_tilde: n.clone() });
        }
    }
    if rows.is_empty() {
        return Err(Error::invalid("no jump values in the requested window"));
    }
    Ok(rows)
}

fn render_jump_rows(rows: &[JumpRow], g: &GlobalArgs) -> Result<String> {
    let mut s = String::new();
    match g.format {
        Format::Md => {
            s.push_str("| eps | p | m | N |\n|---|---|---|---|\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} |",
                    fmt4(r.eps),
                    r.p,
                    r.m,
                    display_n(&r.n_tilde, g)
                );
            }
        }
        Format::Csv => {
            s.push_str("eps,p,m,n\n");
            for r in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    fmt4(r.eps),
                    r.p,
                    r.m,
                    csv_quote(&r.n_tilde.decimal_string())
                );
            }
        }
        Format::Json => {
            let items: Vec<String> = rows
                .iter()
                .map(|r| {
                    format!(
                        "{{\"eps\":{},\"p\":{},\"m\":{},\"n\":\"{}\",\"n_factors\":{}}}",
                        fmt_sig12(r.eps),
                        r.p,
                        r.m,
                        r.n_tilde.decimal_string(),
                        factors_json(&r.n_tilde)
                    )
                })
                .collect();
            let _ = writeln!(s, "[{}]", items.join(","));
        }
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// Single SHCN

fn render_shcn(k: u32, eps: f64, n: &FactoredNat, g: &GlobalArgs) -> Result<String> {
    let f_text = if n.is_at_least(3) {
        fmt4(f_k(n, k)?)
    } else {
        "-".to_string()
    };
    let log_dk = d_k(n, k).log();
    let mut s = String::new();
    match g.format {
        Format::Md => {
            s.push_str("| eps | N | factorization | f_k | log d_k |\n|---|---|---|---|---|\n");
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} |",
                fmt4(eps),
                display_n(n, g),
                n,
                f_text,
                fmt4(log_dk)
            );
        }
        Format::Csv => {
            s.push_str("eps,n,factorization,f,log_dk\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{}",
                fmt4(eps),
                csv_quote(&n.decimal_string()),
                csv_quote(&n.to_string()),
                f_text,
                fmt4(log_dk)
            );
        }
        Format::Json => {
            let f_json = if n.is_at_least(3) {
                fmt_sig12(f_k(n, k)?)
            } else {
                "null".to_string()
            };
            let _ = writeln!(
                s,
                "{{\"k\":{},\"eps\":{},\"n\":\"{}\",\"n_factors\":{},\"f\":{},\"log_dk\":{}}}",
                k,
                fmt_sig12(eps),
                n.decimal_string(),
                factors_json(n),
                f_json,
                fmt_sig12(log_dk)
            );
        }
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// Lambda rendering

fn render_lambda(r: &LambdaResult, rows: &[ChainRow], g: &GlobalArgs) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::invalid("empty chain: nothing to render"));
    }
    let mut s = String::new();
    match g.format {
        Format::Md => {
            s.push_str("| range of eps | N | f_k |\n|---|---|---|\n");
            for row in rows {
                let _ = writeln!(
                    s,
                    "| {} <= eps <= {} | {} | {} |",
                    fmt4(row.eps_lo),
                    fmt4(row.eps_hi),
                    display_n(&row.n, g),
                    fmt4(row.f)
                );
            }
            let _ = writeln!(
                s,
                "\nlambda({}) = {} at N_max = {}, {} <= eps <= {} (eps1 = {}, lambda1 = {}, implied eps = {}){}",
                r.k,
                fmt4(r.lambda),
                display_n(&r.n_max, g),
                fmt4(r.eps_lo),
                fmt4(r.eps_hi),
                fmt4(r.eps1_used),
                fmt4(r.lambda1),
                fmt4(r.implied_eps),
                if r.max_tie { " [tie: smaller N reported]" } else { "" }
            );
        }
        Format::Csv => {
            s.push_str("eps_lo,eps_hi,n,f\n");
            for row in rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    fmt4(row.eps_lo),
                    fmt4(row.eps_hi),
                    csv_quote(&row.n.decimal_string()),
                    fmt4(row.f)
                );
            }
        }
        Format::Json => {
            let _ = writeln!(s, "{}", lambda_result_json(r));
        }
    }
    Ok(s)
}

fn lambda_result_json(r: &LambdaResult) -> String {
    format!(
        "{{\"k\":{},\"lambda\":{},\"nmax\":\"{}\",\"nmax_factors\":{},\"eps_lo\":{},\"eps_hi\":{},\"eps1_used\":{},\"lambda1\":{},\"implied_eps\":{}}}",
        r.k,
        fmt_sig12(r.lambda),
        r.n_max.decimal_string(),
        factors_json(&r.n_max),
        fmt_sig12(r.eps_lo),
        fmt_sig12(r.eps_hi),
        fmt_sig12(r.eps1_used),
        fmt_sig12(r.lambda1),
        fmt_sig12(r.implied_eps),
    )
}

fn render_lambda_range(results: &[LambdaResult], g: &GlobalArgs) -> Result<String> {
    if results.is_empty() {
        return Err(Error::invalid("empty result set"));
    }
    let mut s = String::new();
    match g.format {
        Format::Md => {
            s.push_str("| k | lambda |\n|---|---|\n");
            for r in results {
                let _ = writeln!(s, "| {} | {} |", r.k, fmt4(r.lambda));
            }
        }
        Format::Csv => {
            s.push_str("k,lambda\n");
            for r in results {
                let _ = writeln!(s, "{},{}", r.k, fmt4(r.lambda));
            }
        }
        Format::Json => {
            let items: Vec<String> = results.iter().map(lambda_result_json).collect();
            let _ = writeln!(s, "[{}]", items.join(","));
        }
    }
    Ok(s)
}

fn render_nmax_range(results: &[LambdaResult], g: &GlobalArgs) -> Result<String> {
    if results.is_empty() {
        return Err(Error::invalid("empty result set"));
    }
    // Group consecutive k sharing one N_max.
    let mut runs: Vec<(u32, u32, &LambdaResult)> = Vec::new();
    for r in results {
        match runs.last_mut() {
            Some((_, hi, repr)) if repr.n_max == r.n_max && *hi + 1 == r.k => *hi = r.k,
            _ => runs.push((r.k, r.k, r)),
        }
    }
    let mut s = String::new();
    match g.format {
        Format::Md => {
            s.push_str("| k range | N_max | factorization |\n|---|---|---|\n");
            for (lo, hi, r) in &runs {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} |",
                    if lo == hi { format!("{lo}") } else { format!("{lo}..{hi}") },
                    display_n(&r.n_max, g),
                    r.n_max
                );
            }
        }
        Format::Csv => {
            s.push_str("k_lo,k_hi,nmax,factorization\n");
            for (lo, hi, r) in &runs {
                let _ = writeln!(
                    s,
                    "{},{},{},{}",
                    lo,
                    hi,
                    csv_quote(&r.n_max.decimal_string()),
                    csv_quote(&r.n_max.to_string())
                );
            }
        }
        Format::Json => {
            let items: Vec<String> = runs
                .iter()
                .map(|(lo, hi, r)| {
                    format!(
                        "{{\"k_lo\":{},\"k_hi\":{},\"nmax\":\"{}\",\"nmax_factors\":{}}}",
                        lo,
                        hi,
                        r.n_max.decimal_string(),
                        factors_json(&r.n_max)
                    )
                })
                .collect();
            let _ = writeln!(s, "[{}]", items.join(","));
        }
    }
    Ok(s)
}

fn render_plot_data(results: &[LambdaResult], g: &GlobalArgs) -> Result<String> {
    if results.is_empty() {
        return Err(Error::invalid("empty result set"));
    }
    let mut s = String::new();
    match g.format {
        Format::Json => {
            let items: Vec<String> = results
                .iter()
                .map(|r| format!("[{},{}]", r.k, fmt_sig12(r.lambda)))
                .collect();
            let _ = writeln!(s, "[{}]", items.join(","));
        }
        _ => {
            s.push_str("k,lambda\n");
            for r in results {
                let _ = writeln!(s, "{},{}", r.k, fmt_sig12(r.lambda));
            }
        }
    }
    Ok(s)
}

fn render_bounds(
    b: &crate::bounds::BoundSet,
    s2: &crate::bounds::StoppingData,
    g: &GlobalArgs,
) -> Result<String> {
    let mut s = String::new();
    match g.format {
        Format::Md => {
            s.push_str(
                "| k | eps0 | c0 | c1 | lambda0 | eps1 | lambda1 | eps2 | N2 | u |\n\
                 |---|---|---|---|---|---|---|---|---|---|\n",
            );
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                b.k,
                fmt4(b.eps0),
                fmt4(b.c0),
                fmt4(b.c1),
                fmt4(b.lambda0),
                fmt4(b.eps1),
                fmt4(b.lambda1),
                fmt4(s2.eps2),
                display_n(&s2.n2, g),
                fmt4(s2.u)
            );
        }
        Format::Csv => {
            s.push_str("k,eps0,c0,c1,lambda0,eps1,lambda1,eps2,n2,u\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{},{},{},{},{}",
                b.k,
                fmt4(b.eps0),
                fmt4(b.c0),
                fmt4(b.c1),
                fmt4(b.lambda0),
                fmt4(b.eps1),
                fmt4(b.lambda1),
                fmt4(s2.eps2),
                csv_quote(&s2.n2.decimal_string()),
                fmt4(s2.u)
            );
        }
        Format::Json => {
            let _ = writeln!(
                s,
                "{{\"k\":{},\"eps0\":{},\"c0\":{},\"c1\":{},\"lambda0\":{},\"eps1\":{},\"lambda1\":{},\"eps2\":{},\"n2\":\"{}\",\"n2_factors\":{},\"u\":{}}}",
                b.k,
                fmt_sig12(b.eps0),
                fmt_sig12(b.c0),
                fmt_sig12(b.c1),
                fmt_sig12(b.lambda0),
                fmt_sig12(b.eps1),
                fmt_sig12(b.lambda1),
                fmt_sig12(s2.eps2),
                s2.n2.decimal_string(),
                factors_json(&s2.n2),
                fmt_sig12(s2.u)
            );
        }
    }
    Ok(s)
}

fn render_scan(r: &ScanReport, g: &GlobalArgs) -> Result<String> {
    let mut s = String::new();
    match g.format {
        Format::Md => {
            let _ = writeln!(
                s,
                "scan k={} limit={}: argmax={} max_f={} -> {}",
                r.k,
                r.n_limit,
                r.argmax,
                fmt4(r.max_f),
                if r.passed() { "pass" } else { "FAIL" }
            );
            for (n, detail) in &r.violations {
                let _ = writeln!(s, "  violation at n={n}: {detail}");
            }
            if r.truncated {
                let _ = writeln!(s, "  ... violation list truncated at 32 entries");
            }
        }
        Format::Csv => {
            s.push_str("k,n_limit,argmax,max_f,violations,truncated\n");
            let _ = writeln!(
                s,
                "{},{},{},{},{},{}",
                r.k,
                r.n_limit,
                r.argmax,
                fmt4(r.max_f),
                r.violations.len(),
                r.truncated
            );
        }
        Format::Json => {
            let viols: Vec<String> = r
                .violations
                .iter()
                .map(|(n, d)| format!("{{\"n\":{},\"detail\":\"{}\"}}", n, json_escape(d)))
                .collect();
            let _ = writeln!(
                s,
                "{{\"k\":{},\"n_limit\":{},\"argmax\":{},\"max_f\":{},\"pass\":{},\"violations\":[{}],\"truncated\":{}}}",
                r.k,
                r.n_limit,
                r.argmax,
                fmt_sig12(r.max_f),
                r.passed(),
                viols.join(","),
                r.truncated
            );
        }
    }
    Ok(s)
}

// ---------------------------------------------------------------------------
// Formatting helpers

/// Four decimals, round-half-even (Rust's default float formatting).
pub fn fmt4(x: f64) -> String {
    format!("{x:.4}")
}

/// Twelve significant digits, stable under a parse/format round trip.
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return "null".to_string();
    }
    let exp_form = format!("{x:.11e}");
    let (mantissa, exp) = exp_form.split_once('e').expect("exponential form");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..12).contains(&exp) {
        let trimmed = mantissa.trim_end_matches('0').trim_end_matches('.');
        return format!("{trimmed}e{exp}");
    }
    // Fixed form: shift the decimal point by hand to avoid re-rounding.
    let neg = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = 1 + exp; // digits before the decimal point
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if point <= 0 {
        out.push_str("0.");
        for _ in 0..-point {
            out.push('0');
        }
        out.push_str(&digits);
    } else if (point as usize) >= digits.len() {
        out.push_str(&digits);
        for _ in 0..(point as usize - digits.len()) {
            out.push('0');
        }
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        let trimmed = out.trim_end_matches('0').trim_end_matches('.');
        return trimmed.to_string();
    }
    out
}

fn display_n(n: &FactoredNat, g: &GlobalArgs) -> String {
    let big = n.to_biguint();
    if g.full_decimal || big.bits() <= 60 && big.clone().try_into().map(|v: u128| v <= DECIMAL_PRINT_CAP).unwrap_or(false) {
        format!("{} = {}", big, n)
    } else {
        n.to_string()
    }
}

fn csv_quote(field: &str) -> String {
    format!("\"{}\"", field.replace('"', "\"\""))
}

fn json_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn factors_json(n: &FactoredNat) -> String {
    let items: Vec<String> = n
        .factors()
        .iter()
        .map(|&(p, e)| format!("[{p},{e}]"))
        .collect();
    format!("[{}]", items.join(","))
}

// ---------------------------------------------------------------------------
// Result cache

/// One cached lambda result, serialized as a single canonical JSON line.
#[derive(Clone, Debug, PartialEq)]
pub struct CacheLine {
    pub k: u32,
    pub lambda: f64,
    pub nmax_factors: Vec<(u64, u32)>,
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub eps1_used: f64,
    pub lambda1: f64,
    pub tool_version: String,
}

impl CacheLine {
    pub fn from_result(r: &LambdaResult) -> Self {
        CacheLine {
            k: r.k,
            lambda: r.lambda,
            nmax_factors: r.n_max.factors().to_vec(),
            eps_lo: r.eps_lo,
            eps_hi: r.eps_hi,
            eps1_used: r.eps1_used,
            lambda1: r.lambda1,
            tool_version: TOOL_VERSION.to_string(),
        }
    }

    pub fn to_result(&self) -> Result<LambdaResult> {
        let n_max = FactoredNat::from_factors(self.nmax_factors.clone())?;
        let implied_eps = implied_epsilon(self.lambda, self.k, &n_max)?;
        Ok(LambdaResult {
            k: self.k,
            lambda: self.lambda,
            n_max,
            eps_lo: self.eps_lo,
            eps_hi: self.eps_hi,
            eps1_used: self.eps1_used,
            lambda1: self.lambda1,
            implied_eps,
            max_tie: false,
        })
    }

    /// Canonical serialization: fixed field order, 12 significant digits.
    pub fn serialize(&self) -> String {
        let factors: Vec<String> = self
            .nmax_factors
            .iter()
            .map(|&(p, e)| format!("[{p},{e}]"))
            .collect();
        format!(
            "{{\"k\":{},\"lambda\":{},\"nmax_factors\":[{}],\"eps_lo\":{},\"eps_hi\":{},\"eps1_used\":{},\"lambda1\":{},\"tool_version\":\"{}\"}}",
            self.k,
            fmt_sig12(self.lambda),
            factors.join(","),
            fmt_sig12(self.eps_lo),
            fmt_sig12(self.eps_hi),
            fmt_sig12(self.eps1_used),
            fmt_sig12(self.lambda1),
            json_escape(&self.tool_version)
        )
    }

    pub fn parse(line: &str) -> std::result::Result<CacheLine, String> {
        let v: serde_json::Value =
            serde_json::from_str(line).map_err(|e| format!("bad JSON: {e}"))?;
        let obj = v.as_object().ok_or("not a JSON object")?;
        let get_f64 = |name: &str| -> std::result::Result<f64, String> {
            obj.get(name)
                .and_then(|x| x.as_f64())
                .ok_or_else(|| format!("missing float field `{name}`"))
        };
        let k = obj
            .get("k")
            .and_then(|x| x.as_u64())
            .ok_or("missing field `k`")? as u32;
        let factors = obj
            .get("nmax_factors")
            .and_then(|x| x.as_array())
            .ok_or("missing field `nmax_factors`")?
            .iter()
            .map(|pair| {
                let arr = pair.as_array().filter(|a| a.len() == 2)?;
                Some((arr[0].as_u64()?, arr[1].as_u64()? as u32))
            })
            .collect::<Option<Vec<_>>>()
            .ok_or("malformed `nmax_factors`")?;
        Ok(CacheLine {
            k,
            lambda: get_f64("lambda")?,
            nmax_factors: factors,
            eps_lo: get_f64("eps_lo")?,
            eps_hi: get_f64("eps_hi")?,
            eps1_used: get_f64("eps1_used")?,
            lambda1: get_f64("lambda1")?,
            tool_version: obj
                .get("tool_version")
                .and_then(|x| x.as_str())
                .ok_or("missing field `tool_version`")?
                .to_string(),
        })
    }
}

/// Append-only JSON-lines cache keyed by k. Malformed lines are skipped with
/// a warning; later lines for the same k win.
pub struct ResultCache {
    path: PathBuf,
    /// k -> (file line number, entry); later lines for the same k win.
    entries: BTreeMap<u32, (usize, CacheLine)>,
    warnings: Vec<String>,
    file_lines: usize,
}

impl ResultCache {
    pub fn open(path: &Path) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let mut warnings = Vec::new();
        let mut file_lines = 0;
        if path.exists() {
            let reader = BufReader::new(std::fs::File::open(path)?);
            for (idx, line) in reader.lines().enumerate() {
                let line = line?;
                file_lines = idx + 1;
                if line.trim().is_empty() {
                    continue;
                }
                match CacheLine::parse(&line) {
                    Ok(entry) => {
                        entries.insert(entry.k, (idx + 1, entry));
                    }
                    Err(msg) => {
                        warnings.push(format!("cache line {}: {msg} (skipped)", idx + 1));
                    }
                }
            }
        }
        for w in &warnings {
            eprintln!("warning: {w}");
        }
        Ok(ResultCache { path: path.to_path_buf(), entries, warnings, file_lines })
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn entries(&self) -> impl Iterator<Item = &CacheLine> {
        self.entries.values().map(|(_, entry)| entry)
    }

    fn append_line(&self, line: &str) -> Result<()> {
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)?;
        file.write_all(line.as_bytes())?;
        file.write_all(b"\n")?;
        Ok(())
    }
}

impl LambdaCache for ResultCache {
    fn lookup(&self, k: u32) -> Result<Option<LambdaResult>> {
        match self.entries.get(&k) {
            Some((line_no, line)) => {
                let result = line.to_result().map_err(|e| Error::Cache {
                    line: *line_no,
                    msg: format!("entry for k = {k} is inconsistent: {e}"),
                })?;
                Ok(Some(result))
            }
            None => Ok(None),
        }
    }

    fn record(&mut self, result: &LambdaResult) -> Result<()> {
        if self.entries.contains_key(&result.k) {
            return Ok(());
        }
        let line = CacheLine::from_result(result);
        self.append_line(&line.serialize())?;
        self.file_lines += 1;
        self.entries.insert(result.k, (self.file_lines, line));
        Ok(())
    }
}

/// Store-then-load convenience: appends `results` to the cache at `path` and
/// returns everything the file now holds.
pub fn cache_roundtrip(path: &Path, results: &[LambdaResult]) -> Result<Vec<LambdaResult>> {
    let mut cache = ResultCache::open(path)?;
    for r in results {
        cache.record(r)?;
    }
    let reloaded = ResultCache::open(path)?;
    reloaded
        .entries()
        .map(|line| line.to_result())
        .collect::<Result<Vec<_>>>()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt_sig12_cases() {
        assert_eq!(fmt_sig12(0.0), "0");
        assert_eq!(fmt_sig12(1.5), "1.5");
        assert_eq!(fmt_sig12(0.2224), "0.2224");
        assert_eq!(fmt_sig12(-2.5), "-2.5");
        assert_eq!(fmt_sig12(1.537944983354), "1.53794498335");
        assert_eq!(fmt_sig12(1e20), "1e20");
        assert_eq!(fmt_sig12(1.25e-7), "1.25e-7");
    }

    #[test]
    fn fmt_sig12_roundtrip_stable() {
        for &x in &[
            1.5379449833540327,
            0.22243596329710958,
            5.876049998041882,
            -34.62891089984,
            1.0000000000001,
            3.333333333333333e-5,
        ] {
            let s1 = fmt_sig12(x);
            let y: f64 = s1.parse().unwrap();
            let s2 = fmt_sig12(y);
            assert_eq!(s1, s2, "unstable for {x}");
        }
    }

    #[test]
    fn fmt4_round_half_even() {
        assert_eq!(fmt4(0.63093), "0.6309");
        assert_eq!(fmt4(1.46775), "1.4678"); // nearest double sits above the tie
        assert_eq!(fmt4(2.0), "2.0000");
    }

    #[test]
    fn cache_line_roundtrip() {
        let line = CacheLine {
            k: 2,
            lambda: 1.5379449833540327,
            nmax_factors: vec![(2, 5), (3, 3), (5, 2), (7, 1), (11, 1), (13, 1), (17, 1), (19, 1)],
            eps_lo: 0.22243596329710958,
            eps_hi: 0.23540891336663824,
            eps1_used: 0.19499809123434878,
            lambda1: 1.5126094101881195,
            tool_version: TOOL_VERSION.to_string(),
        };
        let text = line.serialize();
        let parsed = CacheLine::parse(&text).unwrap();
        assert_eq!(parsed.serialize(), text);
    }
}
