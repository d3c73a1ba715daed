//! Generalized divisor functions d_k over factored integers, the normalized
//! quantity f_k, and an independent Dirichlet-convolution oracle for d_k.

use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::util::{kahan_sum, ln_biguint, Kahan};
use num_bigint::BigUint;
use num_traits::One;
use std::cmp::Ordering;
use std::fmt;

/// Cap for the convolution oracle; it exists to cross-check, not to scale.
const ORACLE_N_CAP: u64 = 1_000_000;
const ORACLE_K_CAP: u32 = 12;

/// An integer held as its prime factorization with a cached natural log.
/// The only representation used for large candidates: the interesting
/// maximizers run to hundreds of decimal digits.
#[derive(Clone, Debug)]
pub struct FactoredNat {
    factors: Vec<(u64, u32)>,
    log_value: f64,
}

/// Equality is equality of the factorization; the cached log is derived and
/// may differ in its last bits between construction paths.
impl PartialEq for FactoredNat {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for FactoredNat {}

impl FactoredNat {
    /// The empty product, i.e. the integer 1.
    pub fn one() -> Self {
        FactoredNat { factors: Vec::new(), log_value: 0.0 }
    }

    /// Builds from (prime, exponent) pairs; primes must be strictly
    /// ascending and exponents positive.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::invalid(format!(
                    "factors not strictly ascending: {} before {}",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(&(p, _)) = factors.iter().find(|&&(p, e)| e == 0 || p < 2) {
            return Err(Error::invalid(format!("bad factor entry at prime {p}")));
        }
        let log_value = kahan_sum(
            factors.iter().map(|&(p, e)| e as f64 * (p as f64).ln()),
        );
        Ok(FactoredNat { factors, log_value })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// ln of the represented integer (0 for the integer 1).
    pub fn log_value(&self) -> f64 {
        self.log_value
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when the integer is at least `n` (decided exactly for small n).
    pub fn is_at_least(&self, n: u64) -> bool {
        match self.to_u64() {
            Some(v) => v >= n,
            None => true,
        }
    }

    pub fn to_biguint(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &(p, e) in &self.factors {
            acc *= BigUint::from(p).pow(e);
        }
        acc
    }

    pub fn to_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for &(p, e) in &self.factors {
            for _ in 0..e {
                acc = acc.checked_mul(p)?;
            }
        }
        Some(acc)
    }

    pub fn decimal_string(&self) -> String {
        self.to_biguint().to_string()
    }

    /// Multiplies by one extra copy of `p`, keeping factors sorted.
    pub fn times_prime(&self, p: u64) -> FactoredNat {
        let mut factors = self.factors.clone();
        match factors.binary_search_by_key(&p, |&(q, _)| q) {
            Ok(i) => factors[i].1 += 1,
            Err(i) => factors.insert(i, (p, 1)),
        }
        FactoredNat {
            factors,
            log_value: self.log_value + (p as f64).ln(),
        }
    }

    /// Value ordering; falls back to exact integer comparison when the logs
    /// are too close to trust.
    pub fn cmp_value(&self, other: &FactoredNat) -> Ordering {
        if self.factors == other.factors {
            return Ordering::Equal;
        }
        let d = self.log_value - other.log_value;
        if d.abs() > 1e-9 * self.log_value.abs().max(1.0) {
            return if d < 0.0 { Ordering::Less } else { Ordering::Greater };
        }
        self.to_biguint().cmp(&other.to_biguint())
    }
}

impl fmt::Display for FactoredNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Factorizes n by trial division over the sieved primes. Works for any
/// n <= limit^2 since the cofactor left standing is then certified prime.
pub fn factorize(n: u64, table: &PrimeTable) -> Result<FactoredNat> {
    if n == 0 {
        return Err(Error::invalid("cannot factorize 0"));
    }
    let limit = table.limit();
    if n > limit.saturating_mul(limit) {
        return Err(Error::resource(format!(
            "{n} exceeds limit^2 = {} of the prime table",
            limit.saturating_mul(limit)
        )));
    }
    let mut rem = n;
    let mut factors = Vec::new();
    for &p in table.primes() {
        if p * p > rem {
            break;
        }
        if rem.is_multiple_of(p) {
            let mut e = 0u32;
            while rem.is_multiple_of(p) {
                rem /= p;
                e += 1;
            }
            factors.push((p, e));
        }
    }
    if rem > 1 {
        factors.push((rem, 1));
    }
    FactoredNat::from_factors(factors)
}

/// d_k of a factored integer: the exact value is the product of binomials
/// C(m_i + k - 1, k - 1) and is only materialized on demand; the log is kept
/// in compensated double precision (the maximizer never needs more).
#[derive(Clone, Debug)]
pub struct DivisorValue {
    k: u32,
    exponents: Vec<u32>,
    log: f64,
}

impl DivisorValue {
    pub fn log(&self) -> f64 {
        self.log
    }

    /// Materializes the exact arbitrary-precision value.
    pub fn exact(&self) -> BigUint {
        let mut acc = BigUint::one();
        for &m in &self.exponents {
            acc *= binomial_exact(m, self.k);
        }
        acc
    }
}

/// ln C(m + k - 1, k - 1), accumulated as sums of ln-numerator minus
/// ln-denominator terms.
pub fn log_binomial(m: u32, k: u32) -> f64 {
    let mut acc = Kahan::new();
    for j in 1..=m as u64 {
        acc.add(((k as u64 - 1 + j) as f64).ln());
        acc.add(-((j as f64).ln()));
    }
    acc.value()
}

/// C(m + k - 1, k - 1) as an exact natural.
pub fn binomial_exact(m: u32, k: u32) -> BigUint {
    let mut acc = BigUint::one();
    for j in 1..=m as u64 {
        acc *= BigUint::from(k as u64 - 1 + j);
        acc /= BigUint::from(j);
    }
    acc
}

/// d_k(n) for k >= 1 (k = 1 is the all-ones function).
pub fn d_k(n: &FactoredNat, k: u32) -> DivisorValue {
    debug_assert!(k >= 1);
    let exponents: Vec<u32> = n.factors().iter().map(|&(_, e)| e).collect();
    let log = kahan_sum(exponents.iter().map(|&m| log_binomial(m, k)));
    DivisorValue { k, exponents, log }
}

/// f_k(n) = log d_k(n) * ln ln n / (ln k * ln n), defined for n >= 3.
pub fn f_k(n: &FactoredNat, k: u32) -> Result<f64> {
    if k < 2 {
        return Err(Error::invalid(format!("f_k needs k >= 2, got {k}")));
    }
    if !n.is_at_least(3) {
        return Err(Error::domain(format!("f_k needs n >= 3, got {n}")));
    }
    let log_n = n.log_value();
    Ok(d_k(n, k).log * log_n.ln() / ((k as f64).ln() * log_n))
}

/// Independent oracle for d_k(n): k - 1 successive divisor-sum convolutions
/// of the all-ones function over the divisor lattice of n. Deliberately never
/// touches the binomial formula.
pub fn d_k_oracle(n: u64, k: u32) -> Result<BigUint> {
    if n == 0 || n > ORACLE_N_CAP {
        return Err(Error::resource(format!(
            "oracle handles 1 <= n <= {ORACLE_N_CAP}, got {n}"
        )));
    }
    if k == 0 || k > ORACLE_K_CAP {
        return Err(Error::resource(format!(
            "oracle handles 1 <= k <= {ORACLE_K_CAP}, got {k}"
        )));
    }
    let divisors = divisor_list(n);
    // vals[i] = d_j(divisors[i]); starts at d_1 = 1 everywhere.
    let mut vals: Vec<u128> = vec![1; divisors.len()];
    for _ in 2..=k {
        let mut next = vec![0u128; divisors.len()];
        for (i, &d) in divisors.iter().enumerate() {
            let mut acc: u128 = 0;
            for (j, &q) in divisors.iter().enumerate().take(i + 1) {
                if d % q == 0 {
                    acc += vals[j];
                }
            }
            next[i] = acc;
        }
        vals = next;
    }
    Ok(BigUint::from(*vals.last().unwrap()))
}

/// Sorted list of the divisors of n (trial division; n is capped small).
fn divisor_list(n: u64) -> Vec<u64> {
    let mut divisors = vec![1u64];
    let mut rem = n;
    let push_prime_power = |divs: &mut Vec<u64>, p: u64, e: u32| {
        let base = divs.clone();
        let mut pe = 1u64;
        for _ in 0..e {
            pe *= p;
            divs.extend(base.iter().map(|&d| d * pe));
        }
    };
    let mut p = 2u64;
    while p * p <= rem {
        if rem.is_multiple_of(p) {
            let mut e = 0;
            while rem.is_multiple_of(p) {
                rem /= p;
                e += 1;
            }
            push_prime_power(&mut divisors, p, e);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        push_prime_power(&mut divisors, rem, 1);
    }
    divisors.sort_unstable();
    divisors
}

/// ln of an exact divisor value, for invariant checks and display.
pub fn ln_exact(v: &BigUint) -> f64 {
    ln_biguint(v)
}
