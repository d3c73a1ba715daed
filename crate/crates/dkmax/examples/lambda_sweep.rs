//! Sweeps lambda(k) over a k range with a persistent cache and writes the
//! (k, lambda) series as CSV, suitable for plotting. Re-running with the
//! same cache path serves every k from the cache file.
//!
//!     cargo run --release --example lambda_sweep -- [k_min] [k_max] [cache_path]

use dkmax::cli::ResultCache;
use dkmax::maximizer::lambda_range;
use dkmax::primes::build_prime_table;

fn main() -> dkmax::Result<()> {
    let mut args = std::env::args().skip(1);
    let k_min: u32 = args.next().map(|s| s.parse().unwrap()).unwrap_or(2);
    let k_max: u32 = args.next().map(|s| s.parse().unwrap()).unwrap_or(200);
    let cache_path = args.next().unwrap_or_else(|| "lambda_cache.jsonl".to_string());

    let table = build_prime_table(2_000_000)?;
    let mut cache = ResultCache::open(std::path::Path::new(&cache_path))?;
    let start = std::time::Instant::now();
    let results = lambda_range(k_min, k_max, &table, &mut cache)?;
    eprintln!(
        "{} values in {:?} (cache: {})",
        results.len(),
        start.elapsed(),
        cache_path
    );

    println!("k,lambda");
    for r in &results {
        println!("{},{:.12}", r.k, r.lambda);
    }
    Ok(())
}
