//! Log-gamma and related special values.

use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2j} / (2j (2j - 1)) for j = 1..=8
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const SHIFT_TO: f64 = 10.0;

fn stirling_series(y: f64) -> f64 {
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let mut acc = 0.0;
    for &c in STIRLING_COEFFS.iter().rev() {
        acc = acc * inv2 + c;
    }
    (y - 0.5) * y.ln() - y + HALF_LN_2PI + acc * inv
}

/// `ln Γ(x)` for `x > 0`.
///
/// Arguments below 10 are shifted up with the recurrence, then an 8-term
/// asymptotic series is applied.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("log_gamma requires x > 0, got {x}")));
    }
    Ok(log_gamma_unchecked(x))
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    if x == 1.0 || x == 2.0 {
        return 0.0;
    }
    if x >= SHIFT_TO {
        return stirling_series(x);
    }
    let mut y = x;
    let mut prod = 1.0;
    while y < SHIFT_TO {
        prod *= y;
        y += 1.0;
    }
    stirling_series(y) - prod.ln()
}

/// Stirling approximation `√(2π) x^{x-1/2} e^{-x}` in log form.
pub fn ln_stirling(x: f64) -> f64 {
    HALF_LN_2PI + (x - 0.5) * x.ln() - x
}

/// Binomial coefficient `C(n, r)`, or `None` on `u128` overflow.
pub fn binomial_u128(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}
