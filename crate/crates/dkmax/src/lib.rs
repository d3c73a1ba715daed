//! Superior k-highly composite numbers and the exact maximum of
//!
//! ```text
//! f_k(n) = log d_k(n) * log log n / (log k * log n),    n >= 3,
//! ```
//!
//! where d_k(n) counts the ordered factorizations of n into k parts. For
//! every k >= 2 the maximum lambda(k) is attained at a superior k-highly
//! composite number; this crate brackets the attaining eps with explicit
//! bounds, enumerates every candidate inside the bracket, and certifies the
//! winner. Brute-force scan oracles double-check the structural machinery on
//! small ranges.
//!
//! Start from [`maximizer::find_lambda`] or run the `dkmax` binary; the
//! `examples/` directory has one runnable walkthrough per capability.

pub mod bounds;
pub mod cli;
pub mod divisor;
mod error;
mod hiprec;
pub mod maximizer;
pub mod primes;
pub mod shcn;
mod util;
pub mod verify;

pub use error::{Error, Result};
