//! Prints the explicit bracketing constants for a range of k: the low-side
//! eps0, c0, c1, lambda0 and the high-side eps2, N2, u(k). u(k) < 0 is what
//! guarantees nothing below N2 can maximize f_k.
//!
//!     cargo run --example bounds_table -- [k_min] [k_max]

use dkmax::bounds::{classical_bounds, eps0, stopping_data};
use dkmax::primes::build_prime_table;

fn main() -> dkmax::Result<()> {
    let mut args = std::env::args().skip(1);
    let k_min: u32 = args.next().map(|s| s.parse().unwrap()).unwrap_or(2);
    let k_max: u32 = args.next().map(|s| s.parse().unwrap()).unwrap_or(25);

    let table = build_prime_table(2_000_000)?;
    println!(
        "{:>5} {:>8} {:>9} {:>9} {:>9} {:>9} {:>9}  N2",
        "k", "eps0", "c0", "c1", "lambda0", "eps2", "u"
    );
    for k in k_min..=k_max {
        let b = classical_bounds(k, eps0(k))?;
        let s = stopping_data(k, &table)?;
        println!(
            "{:>5} {:>8.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4} {:>9.4}  {} = {}",
            k,
            b.eps0,
            b.c0,
            b.c1,
            b.lambda0,
            s.eps2,
            s.u,
            s.n2.decimal_string(),
            s.n2
        );
    }
    Ok(())
}
