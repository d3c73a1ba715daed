//! Brute-force scans: exhaustive maximization of f_k and exhaustive checks
//! of the (superior) k-highly composite definitions on small ranges. These
//! are the independent referees for the chain machinery.

use crate::divisor::{d_k, FactoredNat};
use crate::error::{Error, Result};
use num_bigint::BigUint;

const BRUTE_FORCE_CAP: u64 = 100_000_000;
const SUPERIORITY_CAP: u64 = 10_000_000;
const KHC_CAP: u64 = 10_000_000;
const VIOLATION_CAP: usize = 32;

/// Outcome of one scan. `violations` is empty on success and capped at 32
/// entries with `truncated` set past that.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub k: u32,
    pub n_limit: u64,
    pub argmax: u64,
    pub max_f: f64,
    pub violations: Vec<(u64, String)>,
    pub truncated: bool,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Smallest-prime-factor sieve with cached log-binomials: everything a scan
/// needs to evaluate log d_k(n) in a few array hits.
struct ScanContext {
    spf: Vec<u32>,
    log_binom: Vec<f64>,
    k: u32,
}

impl ScanContext {
    fn new(limit: u64, k: u32) -> Self {
        let n = limit as usize + 1;
        let mut spf = vec![0u32; n];
        let mut i = 2usize;
        while i < n {
            if spf[i] == 0 {
                let mut j = i;
                while j < n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        ScanContext { spf, log_binom: vec![0.0], k }
    }

    fn log_binomial(&mut self, m: u32) -> f64 {
        while self.log_binom.len() <= m as usize {
            let j = self.log_binom.len() as u64;
            let prev = *self.log_binom.last().unwrap();
            self.log_binom
                .push(prev + ((self.k as u64 - 1 + j) as f64).ln() - (j as f64).ln());
        }
        self.log_binom[m as usize]
    }

    fn log_d_k(&mut self, mut n: u64) -> f64 {
        let mut acc = 0.0;
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut m = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                m += 1;
            }
            acc += self.log_binomial(m);
        }
        acc
    }

    fn factorize(&self, mut n: u64) -> FactoredNat {
        let mut factors = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            let mut m = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                m += 1;
            }
            factors.push((p, m));
        }
        factors.sort_unstable_by_key(|&(p, _)| p);
        FactoredNat::from_factors(factors).expect("spf factorization is well formed")
    }
}

/// Exhaustive argmax of f_k over 3 <= n <= n_limit. Ties keep the smaller n.
pub fn brute_force_max_f(k: u32, n_limit: u64) -> Result<ScanReport> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be >= 2, got {k}")));
    }
    if n_limit < 3 {
        return Err(Error::invalid(format!("scan needs n_limit >= 3, got {n_limit}")));
    }
    if n_limit > BRUTE_FORCE_CAP {
        return Err(Error::resource(format!(
            "scan limit {n_limit} above the {BRUTE_FORCE_CAP} cap"
        )));
    }
    let mut ctx = ScanContext::new(n_limit, k);
    let ln_k = (k as f64).ln();
    let mut argmax = 3u64;
    let mut max_f = f64::NEG_INFINITY;
    for n in 3..=n_limit {
        let log_n = (n as f64).ln();
        let f = ctx.log_d_k(n) * log_n.ln() / (ln_k * log_n);
        if f > max_f {
            max_f = f;
            argmax = n;
        }
    }
    Ok(ScanReport {
        k,
        n_limit,
        argmax,
        max_f,
        violations: Vec::new(),
        truncated: false,
    })
}

/// Checks log d_k(n) - eps ln n <= log d_k(N) - eps ln N for every
/// n <= n_limit, i.e. that N really is superior for this eps over the range.
pub fn verify_superiority(
    k: u32,
    eps: f64,
    n_super: &FactoredNat,
    n_limit: u64,
) -> Result<ScanReport> {
    if k < 2 || eps <= 0.0 {
        return Err(Error::invalid(format!("need k >= 2 and eps > 0, got k={k} eps={eps}")));
    }
    if n_limit > SUPERIORITY_CAP {
        return Err(Error::resource(format!(
            "scan limit {n_limit} above the {SUPERIORITY_CAP} cap"
        )));
    }
    let mut ctx = ScanContext::new(n_limit, k);
    let rhs = d_k(n_super, k).log() - eps * n_super.log_value();
    let tol = 1e-9 * rhs.abs().max(1.0);
    let mut violations = Vec::new();
    let mut truncated = false;
    let mut worst = (1u64, f64::NEG_INFINITY);
    for n in 1..=n_limit {
        let lhs = ctx.log_d_k(n) - eps * (n as f64).ln();
        if lhs > worst.1 {
            worst = (n, lhs);
        }
        if lhs > rhs + tol {
            if violations.len() < VIOLATION_CAP {
                violations.push((
                    n,
                    format!("log d_k(n) - eps ln n = {lhs:.6} exceeds {rhs:.6}"),
                ));
            } else {
                truncated = true;
            }
        }
    }
    let max_f = scan_f(&mut ctx, worst.0, k);
    Ok(ScanReport {
        k,
        n_limit,
        argmax: worst.0,
        max_f,
        violations,
        truncated,
    })
}

/// Exhaustive k-highly-composite check: d_k(n) < d_k(N) for all n < N.
/// Near-equal logs are settled with exact integer values.
pub fn verify_k_highly_composite(k: u32, n_value: u64) -> Result<ScanReport> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be >= 2, got {k}")));
    }
    if n_value < 2 {
        return Err(Error::invalid(format!("need N >= 2, got {n_value}")));
    }
    if n_value > KHC_CAP {
        return Err(Error::resource(format!(
            "N = {n_value} above the {KHC_CAP} cap"
        )));
    }
    let mut ctx = ScanContext::new(n_value, k);
    let target = ctx.factorize(n_value);
    let target_log = d_k(&target, k).log();
    let mut target_exact: Option<BigUint> = None;
    let mut violations = Vec::new();
    let mut truncated = false;
    for n in 1..n_value {
        let log = ctx.log_d_k(n);
        if log < target_log - 1e-9 * target_log.max(1.0) {
            continue;
        }
        // Settle exactly.
        let exact = d_k(&ctx.factorize(n), k).exact();
        let target_exact =
            target_exact.get_or_insert_with(|| d_k(&target, k).exact());
        if exact >= *target_exact {
            if violations.len() < VIOLATION_CAP {
                violations.push((n, format!("d_k({n}) = {exact} >= d_k({n_value})")));
            } else {
                truncated = true;
            }
        }
    }
    let max_f = scan_f(&mut ctx, n_value, k);
    Ok(ScanReport {
        k,
        n_limit: n_value,
        argmax: n_value,
        max_f,
        violations,
        truncated,
    })
}

fn scan_f(ctx: &mut ScanContext, n: u64, k: u32) -> f64 {
    if n < 3 {
        return 0.0;
    }
    let log_n = (n as f64).ln();
    ctx.log_d_k(n) * log_n.ln() / ((k as f64).ln() * log_n)
}
