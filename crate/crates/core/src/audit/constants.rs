//! Closed-form constants appearing in the non-asymptotic bounds, all as logarithms.

use crate::error::{Error, Result};
use crate::mixtures::ln_dirichlet_half;
use crate::special::log_gamma_unchecked;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub k: usize,
    pub lambda: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c_tilde: f64,
    pub m_uniform: f64,
}

fn check(k: usize, lambda: f64) -> Result<()> {
    if k < 2 {
        return Err(Error::Domain(format!(
            "alphabet size must be at least 2, got {k}"
        )));
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "lambda must lie in (0, inf), got {lambda}"
        )));
    }
    Ok(())
}

/// Values (not logarithms) of the bound constants for `(k, λ)`.
pub fn constants(k: usize, lambda: f64) -> Result<Constants> {
    check(k, lambda)?;
    Ok(Constants {
        k,
        lambda,
        c1: ln_c1(k).exp(),
        c2: ln_c2(k).exp(),
        c3: ln_c3(k).exp(),
        c_tilde: ln_c_tilde(k, lambda).exp(),
        m_uniform: ln_m_uniform(k, lambda).exp(),
    })
}

/// Uniform bound constant for the pointwise information density to Jeffreys' mixture.
pub fn ln_c1(k: usize) -> f64 {
    let kf = k as f64;
    (6.0 * kf + 1.0) / 12.0 + ln_dirichlet_half(k)
        - 0.5 * (kf - 1.0) * (2.0 * PI).ln()
        - kf * (2.0 - (1.0f64 / 6.0).exp()).ln()
        + 0.5 * (kf - 1.0) * (0.5 * kf).ln_1p()
}

pub fn ln_c2(k: usize) -> f64 {
    let kf = k as f64;
    log_gamma_unchecked(0.5 * (kf - 1.0)) - log_gamma_unchecked(0.5 * kf)
        + 0.5 * (kf - 1.0) * (0.5 * kf).ln_1p()
        + (12.0 * kf + 1.0) / 24.0
        - (2.0 - (1.0f64 / 18.0).exp()).ln()
}

pub fn ln_c3(k: usize) -> f64 {
    let kf = k as f64;
    PI.ln() + (6.0 * kf - 5.0) / 12.0 - (2.0 - (1.0f64 / 6.0).exp()).ln()
        + 0.5 * (kf - 2.0) * (0.5 * (kf - 1.0)).ln_1p()
}

pub fn ln_c_tilde(k: usize, lambda: f64) -> f64 {
    (2f64.powi(k as i32) - 2.0).ln() + lambda * (ln_c2(k) + ln_c3(k))
}

/// `M(k, λ)`: uniform bound on `K(k, λ, n, t)` over all positive types.
pub fn ln_m_uniform(k: usize, lambda: f64) -> f64 {
    let kf = k as f64;
    1.0 / 12.0
        + lambda
            * (0.5 * kf + 0.5 * (kf - 1.0) * (0.5 * kf).ln_1p() + 1.0 / (12.0 + 6.0 * kf)
                - kf * (1.5 * (2.0 - (1.0f64 / 18.0).exp())).ln())
}

/// `ln K(k, λ, n, t)`; `t` may be real-valued (used for the windowed bound).
pub fn ln_k_factor(lambda: f64, n: u32, t: &[f64]) -> f64 {
    let kf = t.len() as f64;
    let nf = n as f64;
    let mut inner =
        (nf + 0.5 * (kf - 1.0)) * (kf / (2.0 * nf)).ln_1p() + 1.0 / (12.0 * nf + 6.0 * kf);
    for &ti in t {
        inner -= ti * (0.5 / ti).ln_1p() + (2.0 - (1.0 / (12.0 * ti + 6.0)).exp()).ln();
    }
    1.0 / (12.0 * nf) + lambda * inner
}

/// `M(k, λ, n, c, δ)`: `K` at `v = (c(1-δ) ln n, …, (1-(k-1)δ) n / k)`.
pub fn ln_m_windowed(k: usize, lambda: f64, n: u32, c: f64, delta: f64) -> Result<f64> {
    check(k, lambda)?;
    let kf = k as f64;
    if !(delta > 0.0 && delta < 1.0 / (kf - 1.0)) || n <= 2 || !(c > 0.0 && c < 0.5) {
        return Err(Error::Precondition(format!(
            "windowed K bound needs n > 2, 0 < c < 1/2 and 0 < delta < 1/(k-1); got n={n}, c={c}, delta={delta}"
        )));
    }
    let nf = n as f64;
    let mut v = vec![c * (1.0 - delta) * nf.ln(); k - 1];
    v.push((1.0 - (kf - 1.0) * delta) * nf / kf);
    Ok(ln_k_factor(lambda, n, &v))
}

/// Right side of the uniform bound on the all-positive Laplace-type sum.
pub fn ln_t_bound(k: usize, lambda: f64) -> f64 {
    ln_t_bound_with(k, lambda, ln_c1(k))
}

pub(crate) fn ln_t_bound_with(k: usize, lambda: f64, ln_c1: f64) -> f64 {
    let kf = k as f64;
    lambda * ln_c1 + 0.5 * lambda * (kf - 1.0) * (2.0 * PI).ln() - lambda * ln_dirichlet_half(k)
        + kf * (20.0 * lambda + 3.0) / 36.0
        - lambda * (2.0 - (1.0 / (6.0 * kf)).exp()).ln()
}

/// Right side of the edge-mass bound, `C̃ n^{-(1+λ)c + λ(k-1)/2}`.
pub fn ln_edge_bound(k: usize, lambda: f64, n: u32, c: f64) -> f64 {
    ln_c_tilde(k, lambda)
        + (-(1.0 + lambda) * c + 0.5 * lambda * (k as f64 - 1.0)) * (n as f64).ln()
}

/// Auxiliary factor `L(k, l, n)` of the face-versus-interior comparison.
pub fn ln_face_factor(k: usize, l: usize, n: u32) -> f64 {
    let (kf, lf, nf) = (k as f64, l as f64, n as f64);
    (nf + 0.5 * (kf - 1.0)) * (kf / (2.0 * nf)).ln_1p()
        - (nf + 0.5 * (lf - 1.0)) * (lf / (2.0 * nf)).ln_1p()
        + (2.0 - (1.0 / (12.0 * nf + 6.0 * kf)).exp()).ln()
        - 0.5 * (kf - lf)
        - 1.0 / (12.0 * nf + 6.0 * lf)
}
