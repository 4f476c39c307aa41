//! Signed values stored as natural logarithms of their magnitude.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
    Zero,
}

/// A real number `sign * exp(ln_abs)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogValue {
    ln_abs: f64,
    sign: Sign,
}

impl LogValue {
    pub const ZERO: LogValue = LogValue {
        ln_abs: f64::NEG_INFINITY,
        sign: Sign::Zero,
    };
    pub const ONE: LogValue = LogValue {
        ln_abs: 0.0,
        sign: Sign::Positive,
    };

    /// Positive value with the given logarithm. `-inf` maps to zero.
    pub fn from_ln(ln: f64) -> Self {
        if ln == f64::NEG_INFINITY {
            Self::ZERO
        } else {
            LogValue {
                ln_abs: ln,
                sign: Sign::Positive,
            }
        }
    }

    pub fn from_f64(x: f64) -> Self {
        match x.partial_cmp(&0.0) {
            Some(Ordering::Greater) => LogValue {
                ln_abs: x.ln(),
                sign: Sign::Positive,
            },
            Some(Ordering::Less) => LogValue {
                ln_abs: (-x).ln(),
                sign: Sign::Negative,
            },
            _ => Self::ZERO,
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// Logarithm of the magnitude; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        self.ln_abs
    }

    /// Logarithm of a nonnegative value. Negative values give NaN.
    pub fn ln(&self) -> f64 {
        match self.sign {
            Sign::Negative => f64::NAN,
            Sign::Zero => f64::NEG_INFINITY,
            Sign::Positive => self.ln_abs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn to_f64(&self) -> f64 {
        match self.sign {
            Sign::Positive => self.ln_abs.exp(),
            Sign::Negative => -self.ln_abs.exp(),
            Sign::Zero => 0.0,
        }
    }

    pub fn powf(self, p: f64) -> Self {
        match self.sign {
            Sign::Zero if p > 0.0 => Self::ZERO,
            Sign::Zero => LogValue::from_ln(f64::INFINITY),
            _ => LogValue {
                ln_abs: self.ln_abs * p,
                sign: Sign::Positive,
            },
        }
    }
}

impl Neg for LogValue {
    type Output = LogValue;
    fn neg(self) -> Self {
        let sign = match self.sign {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
        };
        LogValue { sign, ..self }
    }
}

/// Signed sum, exact up to rounding of the magnitudes.
impl Add for LogValue {
    type Output = LogValue;
    fn add(self, other: LogValue) -> LogValue {
        if self.is_zero() {
            return other;
        }
        if other.is_zero() {
            return self;
        }
        let (big, small) = if self.ln_abs >= other.ln_abs {
            (self, other)
        } else {
            (other, self)
        };
        let d = small.ln_abs - big.ln_abs;
        if big.sign == small.sign {
            LogValue {
                ln_abs: big.ln_abs + d.exp().ln_1p(),
                sign: big.sign,
            }
        } else if d == 0.0 {
            Self::ZERO
        } else {
            LogValue {
                ln_abs: big.ln_abs + (-d.exp()).ln_1p(),
                sign: big.sign,
            }
        }
    }
}

impl Sub for LogValue {
    type Output = LogValue;
    fn sub(self, other: LogValue) -> LogValue {
        self + (-other)
    }
}

impl Mul for LogValue {
    type Output = LogValue;
    fn mul(self, rhs: LogValue) -> LogValue {
        let sign = match (self.sign, rhs.sign) {
            (Sign::Zero, _) | (_, Sign::Zero) => return LogValue::ZERO,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        };
        LogValue {
            ln_abs: self.ln_abs + rhs.ln_abs,
            sign,
        }
    }
}

impl Div for LogValue {
    type Output = LogValue;
    fn div(self, rhs: LogValue) -> LogValue {
        self * LogValue {
            ln_abs: -rhs.ln_abs,
            sign: rhs.sign,
        }
    }
}

const LEAF: usize = 8;

/// Pairwise sum in a fixed tree order.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= LEAF {
        let mut s = 0.0;
        for &x in xs {
            s += x;
        }
        return s;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// [`pairwise_sum`] of `f(0), …, f(len - 1)` without materializing the terms.
pub fn pairwise_sum_by<F: Fn(usize) -> f64>(len: usize, f: &F) -> f64 {
    fn go<F: Fn(usize) -> f64>(lo: usize, hi: usize, f: &F) -> f64 {
        if hi - lo <= LEAF {
            let mut s = 0.0;
            for i in lo..hi {
                s += f(i);
            }
            return s;
        }
        let mid = lo + (hi - lo) / 2;
        go(lo, mid, f) + go(mid, hi, f)
    }
    go(0, len, f)
}

/// `ln Σ exp(x_i)` with a fixed reduction order; `-inf` entries are skipped.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if m.is_infinite() || m.is_nan() {
        return m;
    }
    let shifted: Vec<f64> = xs.iter().map(|&x| (x - m).exp()).collect();
    m + pairwise_sum(&shifted).ln()
}

/// Streaming variant of [`log_sum_exp`] for iterators.
pub fn log_sum_exp_iter<I: IntoIterator<Item = f64>>(it: I) -> f64 {
    let xs: Vec<f64> = it.into_iter().collect();
    log_sum_exp(&xs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairwise_by_matches_slice() {
        let xs: Vec<f64> = (0..1037)
            .map(|i| ((i * 7919) % 1000) as f64 * 1e-3 + 1e-17 * i as f64)
            .collect();
        assert_eq!(
            pairwise_sum_by(xs.len(), &|i| xs[i]).to_bits(),
            pairwise_sum(&xs).to_bits()
        );
    }

    #[test]
    fn signed_addition() {
        let a = LogValue::from_f64(3.0);
        let b = LogValue::from_f64(-5.0);
        assert!(((a + b).to_f64() + 2.0).abs() < 1e-14);
        assert!((a - a).is_zero());
        assert_eq!(LogValue::ZERO + b, b);
    }

    #[test]
    fn products() {
        let a = LogValue::from_f64(-2.0);
        let b = LogValue::from_f64(-4.0);
        assert!(((a * b).to_f64() - 8.0).abs() < 1e-14);
        assert!(((a / b).to_f64() - 0.5).abs() < 1e-15);
        assert!((a * LogValue::ZERO).is_zero());
    }

    #[test]
    fn lse_edge_cases() {
        assert_eq!(log_sum_exp(&[]), f64::NEG_INFINITY);
        assert_eq!(
            log_sum_exp(&[f64::NEG_INFINITY, f64::NEG_INFINITY]),
            f64::NEG_INFINITY
        );
        assert_eq!(log_sum_exp(&[1.0, f64::INFINITY]), f64::INFINITY);
        let v = log_sum_exp(&[1000.0, 1000.0]);
        assert!((v - (1000.0 + 2f64.ln())).abs() < 1e-12);
    }

    #[test]
    fn lse_is_order_fixed() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37).sin()).collect();
        assert_eq!(
            log_sum_exp(&xs).to_bits(),
            log_sum_exp(&xs.clone()).to_bits()
        );
    }
}
