use num_bigint::BigUint;

/// Compensated (Kahan) accumulator for float sums.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Kahan::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

pub(crate) fn kahan_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = Kahan::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// Natural log of an arbitrary-precision natural, good to a few ulp even
/// when the value does not fit in an f64.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        let v: u64 = x.iter_u64_digits().next().unwrap_or(0);
        return (v as f64).ln();
    }
    // Take the top 64 bits as a mantissa and account for the shift.
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    let mant = top.iter_u64_digits().next().unwrap_or(0);
    (mant as f64).ln() + (shift as f64) * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn kahan_matches_naive_on_small_sums() {
        let xs = [1.0f64, 1e-16, 1e-16, 1e-16, -1.0];
        let naive: f64 = xs.iter().sum(); // collapses to 0
        let k = kahan_sum(xs.iter().copied());
        assert_eq!(naive, 0.0);
        assert!((k - 3e-16).abs() < 1.5e-16);
    }

    #[test]
    fn ln_biguint_agrees_with_f64() {
        for v in [1u64, 2, 48, 720, 6_983_776_800] {
            let b = BigUint::from(v);
            let want = (v as f64).ln();
            assert!((ln_biguint(&b) - want).abs() <= 1e-12 * want.max(1.0));
        }
        // 2^200: exactly 200 ln 2
        let big = BigUint::from(1u8) << 200;
        let want = 200.0 * std::f64::consts::LN_2;
        assert!((ln_biguint(&big) - want).abs() <= 1e-9);
    }
}
