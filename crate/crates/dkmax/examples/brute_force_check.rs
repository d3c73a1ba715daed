//! Cross-checks the structural search against exhaustive scans: the brute
//! force argmax of f_k over an initial segment, a superiority scan for the
//! certified maximizer, and the k-highly-composite property of a chain point.
//!
//!     cargo run --release --example brute_force_check -- [k] [scan_limit]

use dkmax::divisor::f_k;
use dkmax::maximizer::find_lambda;
use dkmax::primes::build_prime_table;
use dkmax::verify::{brute_force_max_f, verify_k_highly_composite, verify_superiority};

fn main() -> dkmax::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map(|s| s.parse().unwrap()).unwrap_or(2);
    let limit: u64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(100_000);

    let table = build_prime_table(2_000_000)?;
    let result = find_lambda(k, &table)?;
    println!(
        "search:     lambda({k}) = {:.6} at N_max = {}",
        result.lambda,
        result.n_max.decimal_string()
    );

    let scan = brute_force_max_f(k, limit)?;
    println!(
        "scan <= {limit}: best f_{k} = {:.6} at n = {} (the global maximizer may lie beyond)",
        scan.max_f, scan.argmax
    );
    assert!(scan.max_f <= result.lambda + 1e-12, "scan beat the certified maximum");

    let superiority = verify_superiority(k, result.implied_eps, &result.n_max, limit)?;
    println!(
        "superiority of N_max at eps = {:.4} over n <= {limit}: {}",
        result.implied_eps,
        if superiority.passed() { "holds" } else { "VIOLATED" }
    );

    let khc = verify_k_highly_composite(k, scan.argmax)?;
    println!(
        "d_{k}(n) < d_{k}({}) for all n below: {}",
        scan.argmax,
        if khc.passed() { "holds" } else { "VIOLATED" }
    );

    let f_at_argmax = f_k(&dkmax::divisor::factorize(scan.argmax, &table)?, k)?;
    assert!((f_at_argmax - scan.max_f).abs() <= 1e-12 * scan.max_f.abs().max(1.0));
    Ok(())
}
