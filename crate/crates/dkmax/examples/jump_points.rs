//! Lists the first jump values eps[k,p;m] of the jump set for a given k,
//! together with the largest superior k-highly composite number at each one.
//!
//!     cargo run --example jump_points -- [k] [count]

use dkmax::primes::build_prime_table;
use dkmax::shcn::{enumerate_jump_groups, n_tilde};

fn main() -> dkmax::Result<()> {
    let mut args = std::env::args().skip(1);
    let k: u32 = args.next().map(|s| s.parse().unwrap()).unwrap_or(2);
    let count: usize = args.next().map(|s| s.parse().unwrap()).unwrap_or(20);

    let table = build_prime_table(2_000_000)?;

    // Widen the window until it holds enough jump values.
    let top = (k as f64).log2() + 1.0;
    let mut lo = (k as f64).log2() / 2.0;
    let groups = loop {
        let groups = enumerate_jump_groups(k, lo, top, &table)?;
        if groups.len() >= count || lo < 1e-6 {
            break groups;
        }
        lo *= 0.7;
    };

    println!("{:>10}  {:>7} {:>4}   N", "eps", "p", "m");
    for group in groups.iter().take(count) {
        let n = n_tilde(k, group.eps, &table)?;
        for jp in &group.members {
            println!("{:>10.4}  {:>7} {:>4}   {} = {}", group.eps, jp.p, jp.m, n.decimal_string(), n);
        }
        if group.members.len() > 1 {
            println!(
                "            ^ exact tie of {} primes at the integer eps = {}",
                group.members.len(),
                group.integer_eps.expect("ties certify an integer eps")
            );
        }
    }
    Ok(())
}
