//! The explicit bracketing constants: eps0, c0, c1, lambda0, lambda1 on the
//! low side and eps2, N2, u(k) on the high side. All logarithms are natural.

use crate::divisor::{d_k, FactoredNat};
use crate::error::{Error, Result};
use crate::primes::{PrimeTable, OMEGA2};
use crate::shcn::n_tilde;

/// The low-side constants for one k at a chosen eps1 <= eps0(k).
#[derive(Clone, Copy, Debug)]
pub struct BoundSet {
    pub k: u32,
    pub eps0: f64,
    pub c0: f64,
    pub c1: f64,
    pub eps1: f64,
    pub lambda0: f64,
    pub lambda1: f64,
}

/// eps0(k) = ln((k+1)/2) / ln 8, the threshold below which the sharper
/// log N <= c1 k^(1/eps) bound applies.
pub fn eps0(k: u32) -> f64 {
    ((k as f64 + 1.0) / 2.0).ln() / 8f64.ln()
}

/// log N_{k,eps} <= c0(k) k^(1/eps) for every eps > 0.
pub fn c0(k: u32) -> f64 {
    (k as f64 - 1.0) / (std::f64::consts::E * (2.0 * k as f64 / (k as f64 + 1.0)).ln()) + OMEGA2
}

/// log N_{k,eps} <= c1(k) k^(1/eps) once eps <= eps0(k).
pub fn c1(k: u32) -> f64 {
    (k as f64 - 1.0)
        / (2.0 * std::f64::consts::E * (2.0 * k as f64 / (k as f64 + 1.0)).ln())
        + OMEGA2
}

fn lambda_at(k: u32, c1: f64, eps: f64) -> f64 {
    let ln_k = (k as f64).ln();
    let c2 = c1.ln();
    (ln_k + eps * c2).powi(2) / (ln_k * (ln_k + (c2 - 1.0) * eps))
}

/// Evaluates eps0, c0, c1 and the ceilings lambda0 = lambda(eps0) and
/// lambda1 = lambda(eps1): no f_k value at a superior number associated to
/// eps <= eps1 can exceed lambda1.
pub fn classical_bounds(k: u32, eps1: f64) -> Result<BoundSet> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be >= 2, got {k}")));
    }
    let eps0 = eps0(k);
    if !eps1.is_finite() || eps1 <= 0.0 || eps1 > eps0 * (1.0 + 1e-12) {
        return Err(Error::invalid(format!(
            "eps1 = {eps1} must lie in (0, eps0(k) = {eps0:.6}]"
        )));
    }
    let c0 = c0(k);
    let c1 = c1(k);
    Ok(BoundSet {
        k,
        eps0,
        c0,
        c1,
        eps1,
        lambda0: lambda_at(k, c1, eps0),
        lambda1: lambda_at(k, c1, eps1),
    })
}

/// The high-side data: no n below N2(k) can maximize f_k.
#[derive(Clone, Debug)]
pub struct StoppingData {
    pub k: u32,
    pub eps2: f64,
    pub n2: FactoredNat,
    /// u = log d_k(N2) - eps2 log N2 - e^2 eps2; the argument needs u <= 0.
    pub u: f64,
}

/// eps2(k): (ln k)/2 up to k = 25, then log2((k+10)/11) so that the exponent
/// of 2 pins at 11.
pub fn eps2(k: u32) -> f64 {
    if k <= 25 {
        (k as f64).ln() / 2.0
    } else {
        ((k as f64 + 10.0) / 11.0).ln() / 2f64.ln()
    }
}

/// Builds eps2, N2 = N~_{k, eps2} and the slack u(k), verifying the two
/// conditions the bracketing argument rests on.
pub fn stopping_data(k: u32, table: &PrimeTable) -> Result<StoppingData> {
    if k < 2 {
        return Err(Error::invalid(format!("k must be >= 2, got {k}")));
    }
    let eps2 = eps2(k);
    let n2 = n_tilde(k, eps2, table)?;
    let e2 = (2.0f64).exp();
    let log_n2 = n2.log_value();
    let u = d_k(&n2, k).log() - eps2 * log_n2 - e2 * eps2;
    if u > 0.0 {
        return Err(Error::internal(format!(
            "u({k}) = {u} > 0 contradicts the stopping bound"
        )));
    }
    if log_n2 <= e2 {
        return Err(Error::internal(format!(
            "N2({k}) = {n2} is not above e^(e^2)"
        )));
    }
    Ok(StoppingData { k, eps2, n2, u })
}

/// F_b(t) = e^t/t * (1 - (b-1) t / b^2); on t >= 2 its maximum sits at t = b
/// with value e^b / b^2. Exercised by the property suite.
pub fn f_b(b: f64, t: f64) -> f64 {
    t.exp() / t * (1.0 - (b - 1.0) * t / (b * b))
}
