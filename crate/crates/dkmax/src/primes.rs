//! Prime sieve plus the arithmetic functions pi(x), theta(x) and psi(x).

use crate::error::{Error, Result};
use crate::util::Kahan;

/// pi(x) <= OMEGA1 * x / ln x for x > 1.
pub const OMEGA1: f64 = 1.2551;
/// theta(x) <= OMEGA2 * x for x >= 0.
pub const OMEGA2: f64 = 1.00001;

/// Default sieve bound. Queries are of the form k^(1/eps) which stays small
/// for every k the search loop visits, so this leaves plenty of headroom.
pub const DEFAULT_SIEVE_LIMIT: u64 = 2_000_000;

/// Memory budget for the odd-only bitset (about 64 MiB at the cap).
const MAX_SIEVE_LIMIT: u64 = 1 << 30;

/// All primes up to `limit` with prefix sums of their logarithms.
///
/// Immutable after construction; growing means rebuilding with
/// [`build_prime_table`] at a larger limit.
#[derive(Clone, Debug)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
    log_prefix: Vec<f64>,
}

/// Sieves all primes up to `limit` (odd-only bitset of Eratosthenes).
pub fn build_prime_table(limit: u64) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(Error::invalid(format!("sieve limit must be >= 2, got {limit}")));
    }
    if limit > MAX_SIEVE_LIMIT {
        return Err(Error::resource(format!(
            "sieve limit {limit} exceeds the {MAX_SIEVE_LIMIT} budget"
        )));
    }

    // Bit i represents the odd number 2i + 1; index 0 (the number 1) stays unset.
    let n_odds = limit.div_ceil(2) as usize;
    let mut composite = vec![0u64; n_odds / 64 + 1];
    let is_set = |bits: &[u64], i: usize| bits[i / 64] >> (i % 64) & 1 == 1;

    let mut p = 3u64;
    while p * p <= limit {
        if !is_set(&composite, (p / 2) as usize) {
            let mut q = p * p;
            while q <= limit {
                composite[(q / 2) as usize / 64] |= 1 << ((q / 2) as usize % 64);
                q += 2 * p;
            }
        }
        p += 2;
    }

    let mut primes = vec![2u64];
    for i in 1..n_odds {
        if !is_set(&composite, i) {
            primes.push(2 * i as u64 + 1);
        }
    }

    let mut log_prefix = Vec::with_capacity(primes.len());
    let mut acc = Kahan::new();
    for &p in &primes {
        acc.add((p as f64).ln());
        log_prefix.push(acc.value());
    }

    Ok(PrimeTable { limit, primes, log_prefix })
}

impl PrimeTable {
    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    fn check_range(&self, x: f64) -> Result<()> {
        if !(0.0..=self.limit as f64).contains(&x) {
            return Err(Error::range(format!(
                "x = {x} outside [0, {}] covered by the sieve",
                self.limit
            )));
        }
        Ok(())
    }

    /// Number of primes p <= x. Floor semantics: the float is compared
    /// against exact integer primes, never rounded first.
    pub fn prime_pi(&self, x: f64) -> Result<u64> {
        self.check_range(x)?;
        Ok(self.primes.partition_point(|&p| p as f64 <= x) as u64)
    }

    /// theta(x) = sum of ln p over primes p <= x; zero for x < 2.
    pub fn chebyshev_theta(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        let count = self.primes.partition_point(|&p| p as f64 <= x);
        Ok(if count == 0 { 0.0 } else { self.log_prefix[count - 1] })
    }

    /// psi(x) = sum over m >= 1 of theta(x^(1/m)); the sum stops once the
    /// m-th root drops below 2.
    pub fn chebyshev_psi(&self, x: f64) -> Result<f64> {
        self.check_range(x)?;
        if x < 2.0 {
            return Ok(0.0);
        }
        let mut acc = Kahan::new();
        for m in 1u32.. {
            let root = float_root_floor(x, m);
            if root < 2 {
                break;
            }
            acc.add(self.chebyshev_theta(root as f64)?);
        }
        Ok(acc.value())
    }
}

/// Largest integer q >= 1 with q^m <= x. The float m-th root is corrected by
/// exact integer power comparisons so p^m <= x never flips from rounding.
fn float_root_floor(x: f64, m: u32) -> u64 {
    debug_assert!(x >= 1.0 && m >= 1);
    if m == 1 {
        return x as u64; // x <= limit < 2^53, truncation is the floor
    }
    let mut q = x.powf(1.0 / m as f64).floor().max(1.0) as u64;
    while int_pow_leq(q + 1, m, x) {
        q += 1;
    }
    while q > 1 && !int_pow_leq(q, m, x) {
        q -= 1;
    }
    q
}

/// q^m <= x, computed exactly (q^m is only formed while it stays below x+1).
fn int_pow_leq(q: u64, m: u32, x: f64) -> bool {
    let bound = x.floor() as u128;
    let mut acc: u128 = 1;
    for _ in 0..m {
        acc = match acc.checked_mul(q as u128) {
            Some(v) if v <= bound => v,
            _ => return false,
        };
    }
    acc as f64 <= x
}
