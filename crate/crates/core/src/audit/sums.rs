//! Exact sums over types that appear in the achievability argument.

use super::constants::ln_k_factor;
use crate::error::{Error, Result};
use crate::logspace::log_sum_exp;
use crate::measures::kl_slices;
use crate::mixtures::{ln_dirichlet, ln_dirichlet_half};
use crate::simplex::{enumerate_types, ln_likelihood, ln_multinomial, SimplexPoint};
use std::f64::consts::PI;

/// `ln[ C(n,t) (θ^t)^{1+λ} (D_k(1/2) / D_k(t + 1/2))^λ ]`, one term of `exp(λ D(P_θ^n ‖ Q*))`.
pub(crate) fn ln_jeffreys_term(ln_theta: &[f64], counts: &[u32], lambda: f64) -> f64 {
    let shifted: Vec<f64> = counts.iter().map(|&c| c as f64 + 0.5).collect();
    ln_multinomial(counts)
        + (1.0 + lambda) * ln_likelihood(ln_theta, counts)
        + lambda * (ln_dirichlet_half(counts.len()) - ln_dirichlet(&shifted))
}

/// `ln Q*(y^n)` for a sequence of type `counts`.
pub(crate) fn ln_jeffreys_sequence(counts: &[u32]) -> f64 {
    let shifted: Vec<f64> = counts.iter().map(|&c| c as f64 + 0.5).collect();
    ln_dirichlet(&shifted) - ln_dirichlet_half(counts.len())
}

/// `D_{1+λ}(P_θ^n ‖ Q*)` summed directly from closed-form sequence probabilities.
pub fn jeffreys_divergence_direct(theta: &SimplexPoint, n: u32, lambda: f64) -> Result<f64> {
    let lt = theta.ln_probs();
    let terms: Vec<f64> = enumerate_types(n, theta.k())?
        .iter()
        .map(|t| ln_jeffreys_term(&lt, t.counts(), lambda))
        .collect();
    Ok((log_sum_exp(&terms) / lambda).max(0.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeSplit {
    /// ln of the sum over types with at least one zero count.
    pub ln_edge: f64,
    /// ln of the sum over all-positive types.
    pub ln_interior: f64,
}

impl EdgeSplit {
    /// `ln(edge + interior) = λ D_{1+λ}(P_θ^n ‖ Q*)`.
    pub fn ln_total(&self) -> f64 {
        log_sum_exp(&[self.ln_edge, self.ln_interior])
    }
}

/// Splits `exp(λ D_{1+λ}(P_θ^n ‖ Q*))` by whether a type touches the boundary.
pub fn edge_split(theta: &SimplexPoint, n: u32, lambda: f64) -> Result<EdgeSplit> {
    let lt = theta.ln_probs();
    let mut edge = Vec::new();
    let mut interior = Vec::new();
    for t in enumerate_types(n, theta.k())? {
        let v = ln_jeffreys_term(&lt, t.counts(), lambda);
        if t.min_count() == 0 {
            edge.push(v);
        } else {
            interior.push(v);
        }
    }
    Ok(EdgeSplit {
        ln_edge: log_sum_exp(&edge),
        ln_interior: log_sum_exp(&interior),
    })
}

/// `ln[(2π)^{-(k-1)/2} (n / Π t_i)^{1/2} exp(-n(1+λ) D(t/n ‖ θ))]` for an all-positive type.
pub(crate) fn ln_laplace_kernel(theta: &[f64], counts: &[u32], lambda: f64) -> f64 {
    let n: u32 = counts.iter().sum();
    let nf = n as f64;
    let k = counts.len() as f64;
    let emp: Vec<f64> = counts.iter().map(|&c| c as f64 / nf).collect();
    let ln_prod: f64 = counts.iter().map(|&c| (c as f64).ln()).sum();
    -0.5 * (k - 1.0) * (2.0 * PI).ln() + 0.5 * (nf.ln() - ln_prod)
        - nf * (1.0 + lambda) * kl_slices(&emp, theta)
}

/// Kernel times `K(k, λ, n, t)`.
pub(crate) fn ln_laplace_term(theta: &[f64], counts: &[u32], lambda: f64) -> f64 {
    let n: u32 = counts.iter().sum();
    let t: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    ln_laplace_kernel(theta, counts, lambda) + ln_k_factor(lambda, n, &t)
}

fn positive_types(n: u32, k: usize) -> Result<Vec<Vec<u32>>> {
    if (n as usize) < k {
        return Err(Error::Precondition(format!(
            "no all-positive types with n={n} < k={k}"
        )));
    }
    Ok(enumerate_types(n, k)?
        .into_iter()
        .filter(|t| t.min_count() > 0)
        .map(|t| t.counts().to_vec())
        .collect())
}

/// Sum of the Laplace kernel over all-positive types (without `K`).
pub fn ln_kernel_sum(theta: &SimplexPoint, n: u32, lambda: f64) -> Result<f64> {
    let terms: Vec<f64> = positive_types(n, theta.k())?
        .iter()
        .map(|t| ln_laplace_kernel(theta.probs(), t, lambda))
        .collect();
    Ok(log_sum_exp(&terms))
}

/// Sum of kernel times `K` over all-positive types.
pub fn ln_laplace_sum(theta: &SimplexPoint, n: u32, lambda: f64) -> Result<f64> {
    let terms: Vec<f64> = positive_types(n, theta.k())?
        .iter()
        .map(|t| ln_laplace_term(theta.probs(), t, lambda))
        .collect();
    Ok(log_sum_exp(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mixtures::{divergence_to_mixture, jeffreys_mixture};

    #[test]
    fn edge_plus_interior_is_total() {
        for (theta, n, lambda) in [
            (SimplexPoint::binary(0.3).unwrap(), 20, 1.0),
            (SimplexPoint::new(vec![0.2, 0.3, 0.5]).unwrap(), 12, 0.5),
            (SimplexPoint::new(vec![0.6, 0.3, 0.1]).unwrap(), 9, 2.0),
        ] {
            let s = edge_split(&theta, n, lambda).unwrap();
            let q = jeffreys_mixture(n, theta.k()).unwrap();
            let d = divergence_to_mixture(&theta, &q, lambda).unwrap();
            assert!((s.ln_total() / lambda - d).abs() < 1e-12);
            assert!((jeffreys_divergence_direct(&theta, n, lambda).unwrap() - d).abs() < 1e-12);
        }
    }

    #[test]
    fn positive_types_needed() {
        assert!(ln_kernel_sum(&SimplexPoint::uniform(3).unwrap(), 2, 1.0).is_err());
    }
}
