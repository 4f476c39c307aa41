//! Window decompositions of the Laplace-type sum around `nθ`.

use super::sums::ln_laplace_term;
use crate::error::{Error, Result};
use crate::logspace::pairwise_sum;
use crate::simplex::{enumerate_types, SimplexPoint};
use serde::{Deserialize, Serialize};

/// Binary split: below the window, inside it, and above it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinarySplit {
    pub s1: f64,
    pub s2: f64,
    pub s3: f64,
    pub total: f64,
}

/// Splits the binary sum over `t_1 = 1..n-1` at `⌈n(1-δ)θ_1⌉` and `⌊n(1+δ)θ_1⌋`.
pub fn laplace_decomposition_binary(
    n: u32,
    lambda: f64,
    theta1: f64,
    delta: f64,
    c: f64,
) -> Result<BinarySplit> {
    let nf = n as f64;
    if n < 2 || !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(
            "binary decomposition needs n >= 2 and 0 < lambda < inf".into(),
        ));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Precondition(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    let lo = c * nf.ln() / nf;
    if !(theta1 >= lo && theta1 <= 0.5) {
        return Err(Error::Precondition(format!(
            "theta1 = {theta1} outside [{lo}, 1/2]"
        )));
    }
    let theta = [theta1, 1.0 - theta1];
    let a = (nf * (1.0 - delta) * theta1).ceil().max(1.0) as u32;
    let b = ((nf * (1.0 + delta) * theta1).floor() as u32).min(n - 1);
    let (mut p1, mut p2, mut p3) = (Vec::new(), Vec::new(), Vec::new());
    let mut all = Vec::with_capacity(n as usize);
    for t in 1..n {
        let v = ln_laplace_term(&theta, &[t, n - t], lambda).exp();
        all.push(v);
        if t < a {
            p1.push(v);
        } else if t <= b {
            p2.push(v);
        } else {
            p3.push(v);
        }
    }
    Ok(BinarySplit {
        s1: pairwise_sum(&p1),
        s2: pairwise_sum(&p2),
        s3: pairwise_sum(&p3),
        total: pairwise_sum(&all),
    })
}

/// General split: inside the relative window `|t_i/(nθ_i) - 1| <= δ` for all `i`, and the rest.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneralSplit {
    pub s1: f64,
    pub s2: f64,
    pub total: f64,
}

pub fn laplace_decomposition_general(
    n: u32,
    lambda: f64,
    theta: &SimplexPoint,
    delta: f64,
    c: f64,
) -> Result<GeneralSplit> {
    let k = theta.k();
    let kf = k as f64;
    let nf = n as f64;
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain("lambda must lie in (0, inf)".into()));
    }
    if !(delta > 0.0 && delta < 1.0 / (kf - 1.0)) {
        return Err(Error::Precondition(format!(
            "delta must lie in (0, 1/(k-1)), got {delta}"
        )));
    }
    let edge = c * nf.ln() / nf;
    let p = theta.probs();
    if p.iter().any(|&x| x < edge) || p[k - 1] < 1.0 / kf {
        return Err(Error::Precondition(
            "theta must have all coordinates >= c ln n / n and theta_k >= 1/k".into(),
        ));
    }
    let (mut p1, mut p2, mut all) = (Vec::new(), Vec::new(), Vec::new());
    for t in enumerate_types(n, k)? {
        if t.min_count() == 0 {
            continue;
        }
        let v = ln_laplace_term(p, t.counts(), lambda).exp();
        all.push(v);
        let inside = t
            .counts()
            .iter()
            .zip(p)
            .all(|(&ti, &th)| (ti as f64 / (nf * th) - 1.0).abs() <= delta);
        if inside {
            p1.push(v);
        } else {
            p2.push(v);
        }
    }
    Ok(GeneralSplit {
        s1: pairwise_sum(&p1),
        s2: pairwise_sum(&p2),
        total: pairwise_sum(&all),
    })
}

/// `θ_1` grid of `points` equally spaced values on `[c ln n / n, 1/2]`.
pub fn binary_sup_grid(n: u32, c: f64, points: usize) -> Vec<f64> {
    let nf = n as f64;
    let lo = c * nf.ln() / nf;
    (0..points)
        .map(|j| lo + (0.5 - lo) * j as f64 / (points - 1) as f64)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SupSplit {
    pub s1: f64,
    pub s1_at: f64,
    pub s2: f64,
    pub s2_at: f64,
    pub s3: f64,
    pub s3_at: f64,
}

/// Suprema of each part of the binary split over [`binary_sup_grid`].
pub fn binary_split_sup(
    n: u32,
    lambda: f64,
    delta: f64,
    c: f64,
    points: usize,
) -> Result<SupSplit> {
    use rayon::prelude::*;
    let grid = binary_sup_grid(n, c, points);
    let parts = grid
        .par_iter()
        .map(|&th| laplace_decomposition_binary(n, lambda, th, delta, c))
        .collect::<Result<Vec<_>>>()?;
    let pick = |f: &dyn Fn(&BinarySplit) -> f64| {
        let mut best = 0;
        for (i, p) in parts.iter().enumerate() {
            if f(p) > f(&parts[best]) {
                best = i;
            }
        }
        (f(&parts[best]), grid[best])
    };
    let (s1, s1_at) = pick(&|p| p.s1);
    let (s2, s2_at) = pick(&|p| p.s2);
    let (s3, s3_at) = pick(&|p| p.s3);
    Ok(SupSplit {
        s1,
        s1_at,
        s2,
        s2_at,
        s3,
        s3_at,
    })
}
