//! The search for lambda(k) = max f_k and its maximizer N_max(k): bracket
//! eps in [eps1, eps2], walk every superior k-highly composite number whose
//! eps falls inside, and certify the winner against the lambda1 ceiling.

use crate::bounds::{classical_bounds, eps0, stopping_data};
use crate::divisor::{d_k, f_k, FactoredNat};
use crate::error::{Error, Result};
use crate::primes::PrimeTable;
use crate::shcn::{enumerate_jump_groups, exponent_cap_strict, TieGroup};
use std::cmp::Ordering;

/// Retry budget for the geometric eps1 schedule. lambda1 -> 1 as eps1 -> 0
/// while the maximum stays above 1.4677, so far fewer always suffice.
const MAX_SHRINK_STEPS: u32 = 60;
const SHRINK_FACTOR: f64 = 0.99;

/// The answer record for one k.
#[derive(Clone, Debug)]
pub struct LambdaResult {
    pub k: u32,
    pub lambda: f64,
    pub n_max: FactoredNat,
    /// Jump interval on which n_max is the superior number, clamped to the
    /// search bracket.
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub eps1_used: f64,
    pub lambda1: f64,
    pub implied_eps: f64,
    /// Set when two candidates attained the maximum exactly; the smaller
    /// integer is reported.
    pub max_tie: bool,
}

/// One interval of the superior chain: n is the largest superior number for
/// every eps in [eps_lo, eps_hi].
#[derive(Clone, Debug)]
pub struct ChainRow {
    pub eps_lo: f64,
    pub eps_hi: f64,
    pub n: FactoredNat,
    pub f: f64,
}

/// Computes lambda(k) and N_max(k).
pub fn find_lambda(k: u32, table: &PrimeTable) -> Result<LambdaResult> {
    find_lambda_with_rows(k, table).map(|(result, _)| result)
}

/// Same, also returning the chain intervals of the certified bracket
/// (the rows the table printers show).
pub fn find_lambda_with_rows(k: u32, table: &PrimeTable) -> Result<(LambdaResult, Vec<ChainRow>)> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be >= 2, got {k}")));
    }
    let stopping = stopping_data(k, table)?;
    let eps2 = stopping.eps2;
    let mut eps1 = eps0(k);

    for _ in 0..MAX_SHRINK_STEPS {
        let bounds = classical_bounds(k, eps1)?;
        let groups = enumerate_jump_groups(k, eps1, eps2, table).map_err(|e| match e {
            Error::ResourceLimit(msg) => {
                Error::resource(format!("{msg} (search reached eps1 = {eps1})"))
            }
            other => other,
        })?;
        let walk = walk_chain(k, eps1, eps2, &groups, table)?;

        if walk.best_f >= bounds.lambda1 {
            let lambda = f_k(&walk.best_n, k)?;
            let (eps_lo, eps_hi) =
                eps_range_for_nmax(k, &walk.best_n, &groups, (eps1, eps2), table)?;
            let implied_eps = implied_epsilon(lambda, k, &walk.best_n)?;
            let result = LambdaResult {
                k,
                lambda,
                n_max: walk.best_n,
                eps_lo,
                eps_hi,
                eps1_used: eps1,
                lambda1: bounds.lambda1,
                implied_eps,
                max_tie: walk.tie,
            };
            return Ok((result, walk.rows));
        }
        eps1 *= SHRINK_FACTOR;
    }
    Err(Error::internal(format!(
        "no bracket certified for k = {k} after {MAX_SHRINK_STEPS} shrink steps"
    )))
}

/// eps(k) = lambda(k) ln k (ln ln N - 1) / (ln ln N)^2: the eps the
/// maximizer is provably associated to.
pub fn implied_epsilon(lambda: f64, k: u32, n_max: &FactoredNat) -> Result<f64> {
    if !n_max.is_at_least(3) {
        return Err(Error::domain("implied epsilon needs n >= 3"));
    }
    let b = n_max.log_value().ln();
    Ok(lambda * (k as f64).ln() * (b - 1.0) / (b * b))
}

/// The jump interval on which `n_max` is the superior number: eps_hi is the
/// group at which it first appears (or the bracket top), eps_lo the next
/// group below (or the bracket bottom).
pub fn eps_range_for_nmax(
    k: u32,
    n_max: &FactoredNat,
    groups: &[TieGroup],
    bracket: (f64, f64),
    table: &PrimeTable,
) -> Result<(f64, f64)> {
    let (eps1, eps2) = bracket;
    let mut current = initial_exponents(k, eps2, table);
    if current == n_max.factors() {
        let lo = groups.first().map(|g| g.eps).unwrap_or(eps1);
        return Ok((lo.max(eps1), eps2));
    }
    for (gi, group) in groups.iter().enumerate() {
        match subset_bump(&current, n_max.factors(), group) {
            Some(BumpKind::Full) => {
                let lo = groups.get(gi + 1).map(|g| g.eps).unwrap_or(eps1);
                return Ok((lo.max(eps1), group.eps.min(eps2)));
            }
            Some(BumpKind::Partial) => {
                // Superior only at the tie value itself.
                return Ok((group.eps, group.eps));
            }
            None => {}
        }
        advance_exponents(&mut current, group);
    }
    Err(Error::invalid(format!(
        "{n_max} is not on the superior chain of k = {k} in [{eps1}, {eps2}]"
    )))
}

/// Batch driver: one result per k in [k_lo, k_hi], served from the cache
/// when present.
pub fn lambda_range(
    k_lo: u32,
    k_hi: u32,
    table: &PrimeTable,
    cache: &mut dyn LambdaCache,
) -> Result<Vec<LambdaResult>> {
    if k_lo < 2 || k_lo > k_hi {
        return Err(Error::invalid(format!(
            "need 2 <= k_lo <= k_hi, got [{k_lo}, {k_hi}]"
        )));
    }
    let mut out = Vec::with_capacity((k_hi - k_lo + 1) as usize);
    for k in k_lo..=k_hi {
        match cache.lookup(k)? {
            Some(hit) => out.push(hit),
            None => {
                let result = find_lambda(k, table)?;
                cache.record(&result)?;
                out.push(result);
            }
        }
    }
    Ok(out)
}

/// Persistent lookup used by [`lambda_range`]; the file-backed implementation
/// lives with the CLI.
pub trait LambdaCache {
    fn lookup(&self, k: u32) -> Result<Option<LambdaResult>>;
    fn record(&mut self, result: &LambdaResult) -> Result<()>;
}

/// Cache that never hits.
pub struct NoCache;

impl LambdaCache for NoCache {
    fn lookup(&self, _k: u32) -> Result<Option<LambdaResult>> {
        Ok(None)
    }
    fn record(&mut self, _result: &LambdaResult) -> Result<()> {
        Ok(())
    }
}

struct WalkOutcome {
    best_f: f64,
    best_n: FactoredNat,
    tie: bool,
    rows: Vec<ChainRow>,
}

/// Exponent map of the largest superior number for eps just above `eps2`.
fn initial_exponents(k: u32, eps2: f64, table: &PrimeTable) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    for &p in table.primes() {
        let e = exponent_cap_strict(p, k, eps2);
        if e == 0 {
            break;
        }
        factors.push((p, e));
    }
    factors
}

/// Walks the jump groups in descending eps, evaluating f_k at every superior
/// number associated to the bracket: the chain point on each interval plus
/// all 2^r variants at each tie. f is tracked incrementally (one log per
/// exponent bump); the caller re-derives the reported lambda canonically.
fn walk_chain(
    k: u32,
    eps1: f64,
    eps2: f64,
    groups: &[TieGroup],
    table: &PrimeTable,
) -> Result<WalkOutcome> {
    let ln_k = (k as f64).ln();
    let mut factors = initial_exponents(k, eps2, table);
    let start = FactoredNat::from_factors(factors.clone())?;
    let mut log_n = start.log_value();
    let mut log_dk = d_k(&start, k).log();

    let eval = |log_n: f64, log_dk: f64| -> Option<f64> {
        // log 2 < 1 < log 3 separates the excluded n in {1, 2}.
        (log_n > 1.0).then(|| log_dk * log_n.ln() / (ln_k * log_n))
    };

    let mut best_f = f64::NEG_INFINITY;
    let mut best_n = FactoredNat::one();
    let mut tie = false;
    if let Some(f) = eval(log_n, log_dk) {
        best_f = f;
        best_n = start.clone();
    }

    let mut rows = Vec::with_capacity(groups.len() + 1);
    let mut push_row = |lo: f64, hi: f64, n: &FactoredNat, f: Option<f64>| {
        if let Some(f) = f {
            if hi > lo {
                rows.push(ChainRow { eps_lo: lo, eps_hi: hi, n: n.clone(), f });
            }
        }
    };
    if let Some(first) = groups.first() {
        push_row(first.eps, eps2, &start, eval(log_n, log_dk));
    } else {
        push_row(eps1, eps2, &start, eval(log_n, log_dk));
    }

    for (gi, group) in groups.iter().enumerate() {
        let r = group.members.len();
        let mut deltas = Vec::with_capacity(r);
        for jp in &group.members {
            let have = factors
                .iter()
                .find(|&&(p, _)| p == jp.p)
                .map(|&(_, e)| e)
                .unwrap_or(0);
            if have != jp.m - 1 {
                return Err(Error::internal(format!(
                    "chain walk for k = {k} expected {}^{} before eps = {}, found {}^{have}",
                    jp.p,
                    jp.m - 1,
                    group.eps,
                    jp.p
                )));
            }
            let d_log_n = (jp.p as f64).ln();
            let d_log_dk = ((jp.m as u64 + k as u64 - 1) as f64).ln() - (jp.m as f64).ln();
            deltas.push((d_log_n, d_log_dk));
        }

        let materialize = |factors: &[(u64, u32)], mask: u32| -> Result<FactoredNat> {
            let mut n = FactoredNat::from_factors(factors.to_vec())?;
            for (i, jp) in group.members.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    n = n.times_prime(jp.p);
                }
            }
            Ok(n)
        };

        for mask in 1u32..(1 << r) {
            let mut ln2 = log_n;
            let mut ld2 = log_dk;
            for (i, &(dn, dd)) in deltas.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    ln2 += dn;
                    ld2 += dd;
                }
            }
            let Some(f) = eval(ln2, ld2) else { continue };
            if f > best_f {
                best_f = f;
                best_n = materialize(&factors, mask)?;
            } else if f == best_f {
                let contender = materialize(&factors, mask)?;
                tie = true;
                if contender.cmp_value(&best_n) == Ordering::Less {
                    best_n = contender;
                }
            }
        }

        // Advance to the largest variant: every member exponent becomes m.
        for jp in &group.members {
            match factors.binary_search_by_key(&jp.p, |&(p, _)| p) {
                Ok(i) => factors[i].1 += 1,
                Err(i) => factors.insert(i, (jp.p, 1)),
            }
        }
        for &(dn, dd) in &deltas {
            log_n += dn;
            log_dk += dd;
        }

        let lo = groups.get(gi + 1).map(|g| g.eps).unwrap_or(eps1);
        let chain_point = FactoredNat::from_factors(factors.clone())?;
        push_row(lo, group.eps, &chain_point, eval(log_n, log_dk));
    }

    if best_f == f64::NEG_INFINITY {
        return Err(Error::internal(format!(
            "no admissible candidate (n >= 3) in the bracket for k = {k}"
        )));
    }
    Ok(WalkOutcome { best_f, best_n, tie, rows })
}

enum BumpKind {
    Full,
    Partial,
}

/// Is `target` equal to `base` raised on some subset of the group's member
/// primes? Distinguishes the full subset (the next chain point) from proper
/// ones (superior only at the tie value).
fn subset_bump(base: &[(u64, u32)], target: &[(u64, u32)], group: &TieGroup) -> Option<BumpKind> {
    let mut bumped = 0usize;
    let mut bi = 0usize;
    for &(p, e) in target {
        let base_e = loop {
            if bi < base.len() && base[bi].0 < p {
                // base has a prime target lacks
                if base[bi].1 != 0 {
                    return None;
                }
                bi += 1;
            } else if bi < base.len() && base[bi].0 == p {
                let e = base[bi].1;
                bi += 1;
                break e;
            } else {
                break 0;
            }
        };
        if e == base_e {
            continue;
        }
        if e == base_e + 1 && group.members.iter().any(|jp| jp.p == p) {
            bumped += 1;
        } else {
            return None;
        }
    }
    if bi < base.len() {
        return None; // leftover base primes missing from target
    }
    if bumped == 0 {
        None // equal to base: it already appeared earlier on the chain
    } else if bumped == group.members.len() {
        Some(BumpKind::Full)
    } else {
        Some(BumpKind::Partial)
    }
}

fn advance_exponents(factors: &mut Vec<(u64, u32)>, group: &TieGroup) {
    for jp in &group.members {
        match factors.binary_search_by_key(&jp.p, |&(p, _)| p) {
            Ok(i) => factors[i].1 += 1,
            Err(i) => factors.insert(i, (jp.p, 1)),
        }
    }
}
