//! Fixed-point logarithms with ~190 bits of precision.
//!
//! Jump values log_p(1 + (k-1)/m) can collide or come microscopically close
//! for distinct primes. Doubles cannot settle those cases, so the comparisons
//! that matter are redone here on top of `BigInt` fixed-point arithmetic
//! (well beyond 50 significant decimal digits).

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::sync::OnceLock;

/// Fractional bits of the fixed-point representation.
const FRAC: u32 = 192;
/// Everything closer than this is treated as indistinguishable: the series
/// truncation and the per-operation rounding stay far below 2^-160.
const RESOLUTION_SHIFT: u32 = 160;

fn fixed_mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> FRAC
}

fn fixed_from_ratio(num: u128, den: u128) -> BigInt {
    (BigInt::from(num) << FRAC) / BigInt::from(den)
}

/// ln((1+z)/(1-z)) = 2 * sum z^(2i+1)/(2i+1) for a rational z = num/den,
/// 0 <= z < 1/2. Used with z <= 1/3 so roughly three bits converge per term.
fn atanh_series(num: u128, den: u128) -> BigInt {
    debug_assert!(num * 2 < den);
    let z = fixed_from_ratio(num, den);
    let z2 = fixed_mul(&z, &z);
    let mut power = z.clone();
    let mut acc = z;
    let mut i = 1u32;
    loop {
        power = fixed_mul(&power, &z2);
        if power.is_zero() {
            break;
        }
        let term = &power / BigInt::from(2 * i + 1);
        if term.is_zero() {
            break;
        }
        acc += term;
        i += 1;
    }
    acc << 1
}

fn ln2_fixed() -> &'static BigInt {
    static LN2: OnceLock<BigInt> = OnceLock::new();
    // ln 2 = 2 atanh(1/3)
    LN2.get_or_init(|| atanh_series(1, 3))
}

/// ln(n) for an integer n >= 1 in fixed point.
pub(crate) fn ln_u128_fixed(n: u128) -> BigInt {
    assert!(n >= 1);
    if n == 1 {
        return BigInt::zero();
    }
    let s = 127 - n.leading_zeros(); // n in [2^s, 2^(s+1))
    // ln n = s ln 2 + ln(n / 2^s), the latter via atanh with z = (n-2^s)/(n+2^s) < 1/3.
    let pow = 1u128 << s;
    let mut acc = ln2_fixed() * BigInt::from(s);
    if n != pow {
        acc += atanh_series(n - pow, n + pow);
    }
    acc
}

/// ln(num/den) for positive integers, fixed point (may be negative).
fn ln_ratio_fixed(num: u128, den: u128) -> BigInt {
    ln_u128_fixed(num) - ln_u128_fixed(den)
}

/// Exact conversion of a finite positive f64 into fixed point.
fn fixed_from_f64(x: f64) -> BigInt {
    assert!(x.is_finite() && x > 0.0);
    let bits = x.to_bits();
    let exp_field = ((bits >> 52) & 0x7ff) as i64;
    let mant_field = bits & ((1u64 << 52) - 1);
    let (mant, exp) = if exp_field == 0 {
        (mant_field, -1074i64)
    } else {
        (mant_field | (1u64 << 52), exp_field - 1075)
    };
    let shift = FRAC as i64 + exp;
    if shift >= 0 {
        BigInt::from(mant) << (shift as u32)
    } else {
        BigInt::from(mant) >> ((-shift) as u32)
    }
}

fn resolution() -> BigInt {
    BigInt::from(1) << (FRAC - RESOLUTION_SHIFT)
}

/// Where a float epsilon sits relative to the exact jump log_p((m+k-1)/m).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum JumpSide {
    Below,
    At,
    Above,
}

/// Classifies eps against the jump for (k, p, m). "At" means the difference
/// is below one ulp of eps (the caller's float cannot encode anything finer)
/// or below the fixed-point resolution.
pub(crate) fn eps_versus_jump(eps: f64, p: u64, k: u32, m: u32) -> JumpSide {
    let eps_fixed = fixed_from_f64(eps);
    let ln_p = ln_u128_fixed(p as u128);
    let lhs = fixed_mul(&eps_fixed, &ln_p);
    let rhs = ln_ratio_fixed(m as u128 + k as u128 - 1, m as u128);
    let delta = &lhs - &rhs;
    // One ulp of eps, propagated through the multiplication by ln p.
    let mut tol = fixed_mul(&(&eps_fixed >> 51), &ln_p);
    let res = resolution();
    if tol < res {
        tol = res;
    }
    if delta.abs() <= tol {
        JumpSide::At
    } else if delta.is_negative() {
        JumpSide::Below
    } else {
        JumpSide::Above
    }
}

/// Orders two jump values log_{p1}((m1+k-1)/m1) vs log_{p2}((m2+k-1)/m2)
/// by cross-multiplying the logarithms. `None` means the fixed-point
/// resolution cannot separate them.
pub(crate) fn cmp_jumps(k: u32, a: (u64, u32), b: (u64, u32)) -> Option<Ordering> {
    let num_a = a.1 as u128 + k as u128 - 1;
    let num_b = b.1 as u128 + k as u128 - 1;
    let lhs = fixed_mul(
        &ln_ratio_fixed(num_a, a.1 as u128),
        &ln_u128_fixed(b.0 as u128),
    );
    let rhs = fixed_mul(
        &ln_ratio_fixed(num_b, b.1 as u128),
        &ln_u128_fixed(a.0 as u128),
    );
    let delta = &lhs - &rhs;
    if delta.abs() <= resolution() {
        None
    } else if delta.is_negative() {
        Some(Ordering::Less)
    } else {
        Some(Ordering::Greater)
    }
}

/// Orders a jump value against an exact positive integer t.
pub(crate) fn cmp_jump_to_integer(k: u32, a: (u64, u32), t: u32) -> Option<Ordering> {
    let num = a.1 as u128 + k as u128 - 1;
    let lhs = ln_ratio_fixed(num, a.1 as u128);
    let rhs = ln_u128_fixed(a.0 as u128) * BigInt::from(t);
    let delta = &lhs - &rhs;
    if delta.abs() <= resolution() {
        None
    } else if delta.is_negative() {
        Some(Ordering::Less)
    } else {
        Some(Ordering::Greater)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn fixed_to_f64(x: &BigInt) -> f64 {
        x.to_f64().unwrap() / 2f64.powi(FRAC as i32)
    }

    #[test]
    fn ln2_matches_f64() {
        let got = fixed_to_f64(ln2_fixed());
        assert!((got - std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn ln_integers_match_f64() {
        for n in [2u128, 3, 7, 10, 720, 2_000_003, 1 << 40] {
            let got = fixed_to_f64(&ln_u128_fixed(n));
            let want = (n as f64).ln();
            assert!((got - want).abs() < 1e-13 * want.max(1.0), "n={n}");
        }
    }

    #[test]
    fn separates_the_close_pair_for_k4() {
        // log_7(9/2) and log_19(4) differ in the 5th decimal.
        let ord = cmp_jumps(4, (7, 2), (19, 1)).expect("separable");
        assert_eq!(ord, Ordering::Greater);
    }

    #[test]
    fn equal_jumps_are_unresolvable() {
        // log_2(4/2) = log_3(3/1) = 1 for k = 3.
        assert_eq!(cmp_jumps(3, (2, 2), (3, 1)), None);
        assert_eq!(cmp_jump_to_integer(3, (2, 2), 1), None);
        assert_eq!(cmp_jump_to_integer(3, (3, 1), 1), None);
    }

    #[test]
    fn eps_classification() {
        // eps = 1 is exactly the jump for (k=3, p=2, m=2).
        assert_eq!(eps_versus_jump(1.0, 2, 3, 2), JumpSide::At);
        assert_eq!(eps_versus_jump(1.0 + 1e-9, 2, 3, 2), JumpSide::Above);
        assert_eq!(eps_versus_jump(1.0 - 1e-9, 2, 3, 2), JumpSide::Below);
        // log2(10) computed in doubles is "at" the jump for (k=100, p=2, m=11):
        // 2^eps = 10 = 1 + 99/11.
        let eps = 10f64.log2();
        assert_eq!(eps_versus_jump(eps, 2, 100, 11), JumpSide::At);
    }
}
