//! Walks the chain of superior k-highly composite numbers across an eps
//! window, expanding tie groups into their full 2^r variant sets. With the
//! default k = 5 the window contains the three-prime tie at eps = 1, whose
//! eight variants 24, 48, ..., 720 are all superior at that single eps.
//!
//!     cargo run --example shcn_chain -- [k] [eps_lo] [eps_hi]

use dkmax::primes::build_prime_table;
use dkmax::shcn::{enumerate_jump_groups, n_tilde, shcn_variants};

fn main() -> dkmax::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map(|s| s.parse().unwrap()).unwrap_or(5);
    let eps_lo: f64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(0.8);
    let eps_hi: f64 = args.next().map(|s| s.parse().unwrap()).unwrap_or(2.5);

    let table = build_prime_table(2_000_000)?;
    let groups = enumerate_jump_groups(k, eps_lo, eps_hi, &table)?;

    let top = n_tilde(k, eps_hi * (1.0 + 1e-9), &table)?;
    println!("above eps = {eps_hi}: N = {} = {top}", top.decimal_string());

    for group in &groups {
        let base = n_tilde(k, group.eps * (1.0 + 1e-9), &table)?;
        let variants = shcn_variants(k, group, &base)?;
        let names: Vec<String> = variants.iter().map(|n| n.decimal_string()).collect();
        let primes: Vec<String> = group.members.iter().map(|m| m.p.to_string()).collect();
        println!(
            "at eps = {:.4} (primes {}): {} superior numbers: {}",
            group.eps,
            primes.join(", "),
            variants.len(),
            names.join(", ")
        );
    }
    Ok(())
}
