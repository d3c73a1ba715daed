//! Computes lambda(k) = max f_k(n) with its maximizer and the certificate
//! that pins the search bracket: lambda1 is the analytic ceiling for
//! everything below eps1, and the implied eps confirms the maximizer's
//! position inside [eps_lo, eps_hi].
//!
//!     cargo run --example lambda_single -- [k]

use dkmax::maximizer::find_lambda_with_rows;
use dkmax::primes::build_prime_table;

fn main() -> dkmax::Result<()> {
    let k: u32 = std::env::args()
        .nth(1)
        .map(|s| s.parse().unwrap())
        .unwrap_or(4);

    let table = build_prime_table(2_000_000)?;
    let (result, rows) = find_lambda_with_rows(k, &table)?;

    println!("candidates in the certified bracket [{:.4}, {:.4}]:", result.eps1_used, rows[0].eps_hi);
    for row in &rows {
        println!(
            "  {:.4} <= eps <= {:.4}   f_{k} = {:.4}   N = {}",
            row.eps_lo,
            row.eps_hi,
            row.f,
            row.n
        );
    }
    println!();
    println!("lambda({k})  = {:.4}", result.lambda);
    println!("N_max({k})   = {} = {}", result.n_max.decimal_string(), result.n_max);
    println!("superior for {:.4} <= eps <= {:.4}", result.eps_lo, result.eps_hi);
    println!(
        "certificate: lambda1 = {:.4} at eps1 = {:.4}; implied eps = {:.4}",
        result.lambda1, result.eps1_used, result.implied_eps
    );
    Ok(())
}
