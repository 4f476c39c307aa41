//! Simplex points, type vectors and the counting primitives built on them.

use crate::error::{Error, Result};
use crate::logspace::LogValue;
use crate::special::{binomial_u128, log_gamma_unchecked};
use serde::{Deserialize, Serialize};

pub const SUM_TOL: f64 = 1e-12;
pub const DEFAULT_TYPE_CAP: u128 = 10_000_000;

/// A probability vector on `k >= 2` symbols.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    probs: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 2 {
            return Err(Error::InvalidDistribution(format!(
                "simplex point needs k >= 2, got {}",
                probs.len()
            )));
        }
        check_probabilities(&probs)?;
        Ok(SimplexPoint { probs })
    }

    /// Normalizes nonnegative weights.
    pub fn from_weights(w: &[f64]) -> Result<Self> {
        let s: f64 = w.iter().sum();
        if !(s > 0.0) || w.iter().any(|&x| x < 0.0 || !x.is_finite()) {
            return Err(Error::InvalidDistribution(
                "weights must be nonnegative with positive sum".into(),
            ));
        }
        Self::new(w.iter().map(|&x| x / s).collect())
    }

    pub fn binary(theta1: f64) -> Result<Self> {
        Self::new(vec![theta1, 1.0 - theta1])
    }

    pub fn uniform(k: usize) -> Result<Self> {
        Self::new(vec![1.0 / k as f64; k])
    }

    pub fn vertex(k: usize, i: usize) -> Result<Self> {
        let mut p = vec![0.0; k];
        *p.get_mut(i)
            .ok_or_else(|| Error::Domain(format!("vertex index {i} out of range")))? = 1.0;
        Self::new(p)
    }

    pub fn k(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn ln_probs(&self) -> Vec<f64> {
        self.probs.iter().map(|p| p.ln()).collect()
    }

    pub fn support_size(&self) -> usize {
        self.probs.iter().filter(|&&p| p > 0.0).count()
    }
}

pub(crate) fn check_probabilities(p: &[f64]) -> Result<()> {
    if p.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(Error::InvalidDistribution(
            "entries must be finite and nonnegative".into(),
        ));
    }
    let s: f64 = p.iter().sum();
    if (s - 1.0).abs() > SUM_TOL {
        return Err(Error::InvalidDistribution(format!("entries sum to {s}")));
    }
    Ok(())
}

/// Occurrence counts of each symbol in a length-`n` sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TypeVector {
    counts: Vec<u32>,
}

impl TypeVector {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.len() < 2 {
            return Err(Error::Domain("type vector needs k >= 2".into()));
        }
        if counts.iter().map(|&c| c as u64).sum::<u64>() == 0 {
            return Err(Error::Domain("type vector needs n >= 1".into()));
        }
        Ok(TypeVector { counts })
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn n(&self) -> u32 {
        self.counts.iter().sum()
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    pub fn min_count(&self) -> u32 {
        self.counts.iter().copied().min().unwrap_or(0)
    }

    /// Empirical distribution `t / n`.
    pub fn empirical(&self) -> SimplexPoint {
        let n = self.n() as f64;
        SimplexPoint {
            probs: self.counts.iter().map(|&c| c as f64 / n).collect(),
        }
    }
}

/// Number of compositions of `n` into `k` parts, `C(n+k-1, k-1)`.
pub fn type_count(n: u32, k: usize) -> Option<u128> {
    binomial_u128(n as u64 + k as u64 - 1, k as u64 - 1)
}

/// All compositions of `n` into `k` nonnegative parts, first coordinate descending.
pub fn enumerate_types(n: u32, k: usize) -> Result<Vec<TypeVector>> {
    enumerate_types_capped(n, k, DEFAULT_TYPE_CAP)
}

pub fn enumerate_types_capped(n: u32, k: usize, cap: u128) -> Result<Vec<TypeVector>> {
    if n < 1 || k < 2 {
        return Err(Error::Domain(format!(
            "enumerate_types needs n >= 1 and k >= 2, got n={n}, k={k}"
        )));
    }
    let count = type_count(n, k).unwrap_or(u128::MAX);
    if count > cap {
        return Err(Error::TooManyTypes { n, k, count, cap });
    }
    let mut out = Vec::with_capacity(count as usize);
    let mut cur = vec![0u32; k];
    fill(&mut cur, 0, n, &mut out);
    Ok(out)
}

fn fill(cur: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<TypeVector>) {
    let k = cur.len();
    if pos == k - 1 {
        cur[pos] = remaining;
        out.push(TypeVector {
            counts: cur.clone(),
        });
        return;
    }
    for a in (0..=remaining).rev() {
        cur[pos] = a;
        fill(cur, pos + 1, remaining - a, out);
    }
}

/// `ln(n! / (t_1! ... t_k!))`.
pub fn log_multinomial(t: &TypeVector) -> LogValue {
    LogValue::from_ln(ln_multinomial(t.counts()))
}

pub(crate) fn ln_multinomial(counts: &[u32]) -> f64 {
    let n: u32 = counts.iter().sum();
    let mut acc = ln_factorial(n);
    for &c in counts {
        acc -= ln_factorial(c);
    }
    // exact zero when a single part holds everything
    if counts.iter().filter(|&&c| c > 0).count() <= 1 {
        return 0.0;
    }
    acc
}

pub(crate) fn ln_factorial(m: u32) -> f64 {
    if m < 2 {
        0.0
    } else if m <= 20 {
        ((2..=m as u64).product::<u64>() as f64).ln()
    } else {
        log_gamma_unchecked(m as f64 + 1.0)
    }
}

/// `Σ t_i ln θ_i` with `0 ln 0 = 0`; zero when an observed symbol has `θ_i = 0`.
pub fn type_log_likelihood(theta: &SimplexPoint, t: &TypeVector) -> Result<LogValue> {
    if theta.k() != t.k() {
        return Err(Error::Dimension {
            expected: theta.k(),
            got: t.k(),
        });
    }
    Ok(LogValue::from_ln(ln_likelihood(
        &theta.ln_probs(),
        t.counts(),
    )))
}

pub(crate) fn ln_likelihood(ln_theta: &[f64], counts: &[u32]) -> f64 {
    let mut acc = 0.0;
    for (&lt, &c) in ln_theta.iter().zip(counts) {
        if c > 0 {
            acc += c as f64 * lt;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_enumerations() {
        let t = enumerate_types(1, 2).unwrap();
        let c: Vec<&[u32]> = t.iter().map(|x| x.counts()).collect();
        assert_eq!(c, vec![&[1, 0][..], &[0, 1][..]]);
        let t = enumerate_types(2, 2).unwrap();
        let c: Vec<&[u32]> = t.iter().map(|x| x.counts()).collect();
        assert_eq!(c, vec![&[2, 0][..], &[1, 1][..], &[0, 2][..]]);
    }

    #[test]
    fn cap_error_names_count() {
        let err = enumerate_types_capped(10, 3, 10).unwrap_err();
        assert_eq!(
            err,
            Error::TooManyTypes {
                n: 10,
                k: 3,
                count: 66,
                cap: 10
            }
        );
        assert!(err.to_string().contains("66"));
    }

    #[test]
    fn multinomials() {
        let t = TypeVector::new(vec![2, 2]).unwrap();
        assert!((log_multinomial(&t).ln() - 6f64.ln()).abs() < 1e-14);
        let t = TypeVector::new(vec![7, 0, 0]).unwrap();
        assert_eq!(log_multinomial(&t).ln(), 0.0);
        let t = TypeVector::new(vec![1, 1]).unwrap();
        assert!((log_multinomial(&t).ln() - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn likelihood_conventions() {
        let v = SimplexPoint::new(vec![1.0, 0.0]).unwrap();
        let t = TypeVector::new(vec![3, 0]).unwrap();
        assert_eq!(type_log_likelihood(&v, &t).unwrap().ln(), 0.0);
        let t = TypeVector::new(vec![2, 1]).unwrap();
        assert!(type_log_likelihood(&v, &t).unwrap().is_zero());
        let u = SimplexPoint::uniform(2).unwrap();
        let t = TypeVector::new(vec![2, 2]).unwrap();
        assert!((type_log_likelihood(&u, &t).unwrap().ln() - (1.0f64 / 16.0).ln()).abs() < 1e-15);
    }

    #[test]
    fn invalid_points() {
        assert!(SimplexPoint::new(vec![1.0]).is_err());
        assert!(SimplexPoint::new(vec![0.6, 0.6]).is_err());
        assert!(SimplexPoint::new(vec![-0.1, 1.1]).is_err());
        assert!(TypeVector::new(vec![0, 0]).is_err());
    }
}
