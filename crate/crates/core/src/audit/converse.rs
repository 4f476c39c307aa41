//! Finite-n lower bound on the minimax Rényi redundancy from Jeffreys' prior.

use crate::error::{Error, Result};
use crate::logspace::pairwise_sum;
use crate::mixtures::ln_dirichlet_half;
use crate::simplex::enumerate_types;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConverseBound {
    pub n: u32,
    pub k: usize,
    pub lambda: f64,
    pub delta: f64,
    /// Riemann sum of `Π τ_i^{-1/2}` over types with every count at least `nδ/k`.
    pub beta: f64,
    /// Product of Stirling correction factors; tends to 1.
    pub epsilon: f64,
    /// Lower bound on `R_λ(n) - (k-1)/2 ln(n/2π)`.
    pub residual_lower: f64,
    /// Same bound with `(k-1)/2 ln(n/2π)` added back.
    pub redundancy_lower: f64,
}

fn check(n: u32, k: usize, delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Precondition(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    if k < 2 || (n as f64) * delta / (k as f64) < 1.0 {
        return Err(Error::Precondition(format!(
            "need k >= 2 and n delta / k >= 1; got n={n}, k={k}, delta={delta}"
        )));
    }
    Ok(())
}

pub fn converse_beta(n: u32, k: usize, delta: f64) -> Result<f64> {
    check(n, k, delta)?;
    let nf = n as f64;
    let floor = nf * delta / k as f64;
    let terms: Vec<f64> = enumerate_types(n, k)?
        .iter()
        .filter(|t| t.counts().iter().all(|&c| c as f64 >= floor))
        .map(|t| {
            let s: f64 = t.counts().iter().map(|&c| (c as f64 / nf).ln()).sum();
            (-(k as f64 - 1.0) * nf.ln() - 0.5 * s).exp()
        })
        .collect();
    Ok(pairwise_sum(&terms))
}

pub fn converse_epsilon(n: u32, k: usize, lambda: f64, delta: f64) -> Result<f64> {
    check(n, k, delta)?;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "lambda must lie in (0, inf), got {lambda}"
        )));
    }
    let (nf, kf, a) = (n as f64, k as f64, 1.0 + lambda);
    let nd = nf * delta;
    let ln = 1.0 / (12.0 * (nf + 1.0)) - kf * kf / (12.0 * nd) + nd * (kf / (2.0 * a * nd)).ln_1p()
        - (nf + (kf - 1.0) / (2.0 * a)) * (kf / (2.0 * a * nf)).ln_1p()
        + (kf * (2.0 - (kf / (12.0 * a * nd + 6.0 * kf)).exp()).ln()
            - 1.0 / (12.0 * a * nf + 6.0 * kf))
            / a;
    Ok(ln.exp())
}

pub fn converse_lower_bound(n: u32, k: usize, lambda: f64, delta: f64) -> Result<ConverseBound> {
    let beta = converse_beta(n, k, delta)?;
    let epsilon = converse_epsilon(n, k, lambda, delta)?;
    let kf = k as f64;
    let residual_lower = -ln_dirichlet_half(k) / lambda
        - (kf - 1.0) / (2.0 * lambda) * lambda.ln_1p()
        + (1.0 + lambda) / lambda * (beta.ln() + epsilon.ln());
    let redundancy_lower =
        residual_lower + 0.5 * (kf - 1.0) * ((n as f64) / (2.0 * std::f64::consts::PI)).ln();
    Ok(ConverseBound {
        n,
        k,
        lambda,
        delta,
        beta,
        epsilon,
        residual_lower,
        redundancy_lower,
    })
}
