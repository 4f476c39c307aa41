//! Divergences, entropies, escort distributions and α-mutual information.

use crate::error::{Error, Result};
use crate::logspace::{log_sum_exp, log_sum_exp_iter};
use crate::mixtures::DiscretePrior;
use crate::simplex::{check_probabilities, SimplexPoint};
use serde::{Deserialize, Serialize};

/// Risk-aversion parameter `λ`; the divergence order is `1 + λ`.
///
/// `λ = 0` selects relative entropy and `λ = ∞` the max log-ratio.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenyiOrder {
    lambda: f64,
}

impl RenyiOrder {
    pub fn new(lambda: f64) -> Result<Self> {
        if lambda.is_nan() || lambda < 0.0 {
            return Err(Error::Domain(format!(
                "lambda must be >= 0 or infinite, got {lambda}"
            )));
        }
        Ok(RenyiOrder { lambda })
    }

    /// Order `α = 1 + λ`.
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        Self::new(alpha - 1.0)
    }

    pub fn infinity() -> Self {
        RenyiOrder {
            lambda: f64::INFINITY,
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> f64 {
        1.0 + self.lambda
    }

    pub fn is_shannon(&self) -> bool {
        self.lambda == 0.0
    }

    pub fn is_infinite(&self) -> bool {
        self.lambda.is_infinite()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FiniteDistribution {
    probs: Vec<f64>,
}

impl FiniteDistribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::InvalidDistribution("empty alphabet".into()));
        }
        check_probabilities(&probs)?;
        Ok(FiniteDistribution { probs })
    }

    pub fn uniform(m: usize) -> Result<Self> {
        Self::new(vec![1.0 / m as f64; m])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

impl From<&SimplexPoint> for FiniteDistribution {
    fn from(p: &SimplexPoint) -> Self {
        FiniteDistribution {
            probs: p.probs().to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CodeLengths {
    lengths: Vec<f64>,
}

impl CodeLengths {
    pub fn new(lengths: Vec<f64>) -> Result<Self> {
        if lengths.iter().any(|&l| !(l >= 0.0)) {
            return Err(Error::Domain("code lengths must be nonnegative".into()));
        }
        Ok(CodeLengths { lengths })
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }
}

fn same_len(p: &FiniteDistribution, q: &FiniteDistribution) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::Dimension {
            expected: p.len(),
            got: q.len(),
        });
    }
    Ok(())
}

/// `ln P(a) - ln Q(a)`.
pub fn relative_information(
    p: &FiniteDistribution,
    q: &FiniteDistribution,
    a: usize,
) -> Result<f64> {
    same_len(p, q)?;
    let (pa, qa) = match (p.probs.get(a), q.probs.get(a)) {
        (Some(&x), Some(&y)) => (x, y),
        _ => {
            return Err(Error::Domain(format!(
                "symbol {a} outside alphabet of size {}",
                p.len()
            )))
        }
    };
    if pa > 0.0 && qa == 0.0 {
        return Err(Error::NotDominated { symbol: a });
    }
    if pa == 0.0 {
        return Ok(f64::NEG_INFINITY);
    }
    Ok(pa.ln() - qa.ln())
}

/// Rényi divergence `D_{1+λ}(P‖Q)` in nats; `+∞` when `P` is not dominated by `Q`.
pub fn renyi_divergence(
    p: &FiniteDistribution,
    q: &FiniteDistribution,
    order: RenyiOrder,
) -> Result<f64> {
    same_len(p, q)?;
    Ok(renyi_divergence_slices(&p.probs, &q.probs, order.lambda))
}

pub(crate) fn renyi_divergence_slices(p: &[f64], q: &[f64], lambda: f64) -> f64 {
    if p.iter().zip(q).any(|(&a, &b)| a > 0.0 && b == 0.0) {
        return f64::INFINITY;
    }
    let support = p.iter().zip(q).filter(|(&a, _)| a > 0.0);
    if lambda == 0.0 {
        let terms: Vec<f64> = support.map(|(&a, &b)| a * (a.ln() - b.ln())).collect();
        crate::logspace::pairwise_sum(&terms).max(0.0)
    } else if lambda.is_infinite() {
        support
            .map(|(&a, &b)| a.ln() - b.ln())
            .fold(f64::NEG_INFINITY, f64::max)
            .max(0.0)
    } else {
        let lse =
            log_sum_exp_iter(support.map(|(&a, &b)| (1.0 + lambda) * a.ln() - lambda * b.ln()));
        (lse / lambda).max(0.0)
    }
}

/// Escort distribution `P^α / Σ P^α`.
pub fn scaled_distribution(p: &FiniteDistribution, alpha: f64) -> Result<FiniteDistribution> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "scaling exponent must be positive, got {alpha}"
        )));
    }
    Ok(FiniteDistribution {
        probs: scaled_slice(&p.probs, alpha),
    })
}

fn scaled_slice(p: &[f64], alpha: f64) -> Vec<f64> {
    if alpha == 1.0 {
        return p.to_vec();
    }
    let logs: Vec<f64> = p
        .iter()
        .map(|&x| {
            if x > 0.0 {
                alpha * x.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let z = log_sum_exp(&logs);
    logs.iter().map(|&l| (l - z).exp()).collect()
}

/// Sundaresan divergence: Rényi divergence between the `1/(1+λ)` escorts of `P` and `Q`.
pub fn sundaresan_divergence(
    p: &FiniteDistribution,
    q: &FiniteDistribution,
    order: RenyiOrder,
) -> Result<f64> {
    same_len(p, q)?;
    let lambda = order.lambda;
    if !(lambda > 0.0) || lambda.is_infinite() {
        return Err(Error::Domain(
            "Sundaresan divergence needs 0 < lambda < inf".into(),
        ));
    }
    let a = 1.0 / (1.0 + lambda);
    Ok(renyi_divergence_slices(
        &scaled_slice(&p.probs, a),
        &scaled_slice(&q.probs, a),
        lambda,
    ))
}

/// `θ ↦ θ^{1/(1+λ)} / κ`, the parameter of the escorted i.i.d. law.
pub fn scale_bijection(theta: &SimplexPoint, lambda: f64) -> Result<SimplexPoint> {
    if !(lambda >= 0.0) || lambda.is_infinite() {
        return Err(Error::Domain(format!(
            "lambda must be finite and >= 0, got {lambda}"
        )));
    }
    SimplexPoint::new(scaled_slice(theta.probs(), 1.0 / (1.0 + lambda)))
}

fn check_channel(prior: &DiscretePrior, rows: &[FiniteDistribution]) -> Result<usize> {
    if prior.is_empty() {
        return Err(Error::EmptySupport);
    }
    if rows.len() != prior.len() {
        return Err(Error::Dimension {
            expected: prior.len(),
            got: rows.len(),
        });
    }
    let m = rows[0].len();
    for r in rows {
        if r.len() != m {
            return Err(Error::Dimension {
                expected: m,
                got: r.len(),
            });
        }
    }
    Ok(m)
}

/// Per-output `ln Σ_θ w_θ P_θ(y)^{1+λ}`.
fn sibson_inner(
    prior: &DiscretePrior,
    rows: &[FiniteDistribution],
    lambda: f64,
    m: usize,
) -> Vec<f64> {
    (0..m)
        .map(|y| {
            log_sum_exp_iter(prior.weights().iter().zip(rows).map(|(&w, r)| {
                let p = r.probs[y];
                if w > 0.0 && p > 0.0 {
                    w.ln() + (1.0 + lambda) * p.ln()
                } else {
                    f64::NEG_INFINITY
                }
            }))
        })
        .collect()
}

/// α-mutual information of order `1 + λ` (Sibson).
///
/// `λ = 0` gives Shannon mutual information; `λ = ∞` gives `ln Σ_y max_θ P_θ(y)`
/// over the support of the prior.
pub fn alpha_mutual_information(
    prior: &DiscretePrior,
    rows: &[FiniteDistribution],
    order: RenyiOrder,
) -> Result<f64> {
    let m = check_channel(prior, rows)?;
    let lambda = order.lambda;
    if lambda == 0.0 {
        let out = sibson_optimal_output(prior, rows, order)?;
        let terms: Vec<f64> = prior
            .weights()
            .iter()
            .zip(rows)
            .filter(|(&w, _)| w > 0.0)
            .map(|(&w, r)| w * renyi_divergence_slices(&r.probs, &out.probs, 0.0))
            .collect();
        return Ok(crate::logspace::pairwise_sum(&terms));
    }
    if lambda.is_infinite() {
        let maxes = (0..m).map(|y| {
            prior
                .weights()
                .iter()
                .zip(rows)
                .filter(|(&w, _)| w > 0.0)
                .map(|(_, r)| r.probs[y])
                .fold(0.0, f64::max)
        });
        let s: Vec<f64> = maxes.collect();
        return Ok(crate::logspace::pairwise_sum(&s).ln());
    }
    let inner = sibson_inner(prior, rows, lambda, m);
    let outer = log_sum_exp_iter(inner.iter().map(|&v| v / (1.0 + lambda)));
    Ok(((1.0 + lambda) / lambda * outer).max(0.0))
}

/// Output distribution attaining the infimum in the α-mutual information.
pub fn sibson_optimal_output(
    prior: &DiscretePrior,
    rows: &[FiniteDistribution],
    order: RenyiOrder,
) -> Result<FiniteDistribution> {
    let m = check_channel(prior, rows)?;
    let lambda = order.lambda;
    let logs: Vec<f64> = if lambda.is_infinite() {
        (0..m)
            .map(|y| {
                prior
                    .weights()
                    .iter()
                    .zip(rows)
                    .filter(|(&w, _)| w > 0.0)
                    .map(|(_, r)| r.probs[y])
                    .fold(0.0, f64::max)
                    .ln()
            })
            .collect()
    } else {
        sibson_inner(prior, rows, lambda, m)
            .into_iter()
            .map(|v| v / (1.0 + lambda))
            .collect()
    };
    let z = log_sum_exp(&logs);
    Ok(FiniteDistribution {
        probs: logs.iter().map(|&l| (l - z).exp()).collect(),
    })
}

/// Conditional divergence `D_{1+λ}(P_{Y|V} P_V ‖ R_Y P_V)`.
pub fn conditional_renyi_divergence(
    prior: &DiscretePrior,
    rows: &[FiniteDistribution],
    r: &FiniteDistribution,
    lambda: f64,
) -> Result<f64> {
    check_channel(prior, rows)?;
    if !(lambda > 0.0) || lambda.is_infinite() {
        return Err(Error::Domain(
            "conditional divergence needs 0 < lambda < inf".into(),
        ));
    }
    let terms = prior
        .weights()
        .iter()
        .zip(rows)
        .filter(|(&w, _)| w > 0.0)
        .map(|(&w, row)| w.ln() + lambda * renyi_divergence_slices(&row.probs, &r.probs, lambda));
    Ok(log_sum_exp_iter(terms) / lambda)
}

/// Campbell exponential-moment cost `(1/λ) ln E[e^{λℓ}]`.
pub fn campbell_cost(
    p: &FiniteDistribution,
    lengths: &CodeLengths,
    order: RenyiOrder,
) -> Result<f64> {
    if p.len() != lengths.lengths.len() {
        return Err(Error::Dimension {
            expected: p.len(),
            got: lengths.lengths.len(),
        });
    }
    let pairs = p
        .probs
        .iter()
        .zip(&lengths.lengths)
        .filter(|(&pi, _)| pi > 0.0);
    let lambda = order.lambda;
    if lambda.is_infinite() {
        return Ok(pairs.map(|(_, &l)| l).fold(f64::NEG_INFINITY, f64::max));
    }
    if lambda == 0.0 {
        let terms: Vec<f64> = pairs.map(|(&pi, &l)| pi * l).collect();
        return Ok(crate::logspace::pairwise_sum(&terms));
    }
    Ok(log_sum_exp_iter(pairs.map(|(&pi, &l)| pi.ln() + lambda * l)) / lambda)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FisherInformation {
    pub matrix: Vec<Vec<f64>>,
    pub determinant: f64,
}

/// Fisher information of the categorical family in the first `k - 1` coordinates.
pub fn fisher_information(theta: &SimplexPoint) -> Result<FisherInformation> {
    let p = theta.probs();
    if p.iter().any(|&x| x <= 0.0) {
        return Err(Error::Domain(
            "Fisher information needs a strictly positive point".into(),
        ));
    }
    let k = p.len();
    let last = 1.0 / p[k - 1];
    let matrix = (0..k - 1)
        .map(|i| {
            (0..k - 1)
                .map(|j| if i == j { 1.0 / p[i] + last } else { last })
                .collect()
        })
        .collect();
    let determinant = (-p.iter().map(|x| x.ln()).sum::<f64>()).exp();
    Ok(FisherInformation {
        matrix,
        determinant,
    })
}

fn xlogy_ratio(x: f64, num: f64, den: f64) -> f64 {
    // x ln(num/den) with 0 ln 0 = 0, accurate near num == den
    if x == 0.0 {
        0.0
    } else if den == 0.0 {
        f64::INFINITY
    } else {
        x * ((num - den) / den).ln_1p()
    }
}

/// Binary relative entropy `d(τ‖θ)` in nats.
pub fn binary_divergence(tau: f64, theta: f64) -> f64 {
    xlogy_ratio(tau, tau, theta) + xlogy_ratio(1.0 - tau, 1.0 - tau, 1.0 - theta)
}

/// Binary entropy `h(τ)` in nats.
pub fn binary_entropy(tau: f64) -> f64 {
    let term = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
    term(tau) + term(1.0 - tau)
}

/// Relative entropy between probability slices, `0 ln 0 = 0`.
pub fn kl_slices(p: &[f64], q: &[f64]) -> f64 {
    let terms: Vec<f64> = p
        .iter()
        .zip(q)
        .map(|(&a, &b)| xlogy_ratio(a, a, b))
        .collect();
    crate::logspace::pairwise_sum(&terms)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(v: &[f64]) -> FiniteDistribution {
        FiniteDistribution::new(v.to_vec()).unwrap()
    }

    #[test]
    fn relative_information_cases() {
        let p = fd(&[0.3, 0.7]);
        assert_eq!(relative_information(&p, &p, 0).unwrap(), 0.0);
        let v = fd(&[1.0, 0.0]);
        let u = fd(&[0.5, 0.5]);
        assert!((relative_information(&v, &u, 0).unwrap() - 2f64.ln()).abs() < 1e-15);
        assert!((relative_information(&p, &u, 1).unwrap() - 1.4f64.ln()).abs() < 1e-15);
        assert_eq!(relative_information(&v, &u, 1).unwrap(), f64::NEG_INFINITY);
        assert_eq!(
            relative_information(&u, &v, 1),
            Err(Error::NotDominated { symbol: 1 })
        );
    }

    #[test]
    fn renyi_examples() {
        let two = RenyiOrder::new(1.0).unwrap();
        let p = fd(&[0.3, 0.7]);
        assert_eq!(renyi_divergence(&p, &p, two).unwrap(), 0.0);
        let d =
            renyi_divergence(&fd(&[1.0, 0.0]), &fd(&[0.5, 0.5]), RenyiOrder::infinity()).unwrap();
        assert!((d - 2f64.ln()).abs() < 1e-15);
        let d = renyi_divergence(&fd(&[0.5, 0.5]), &fd(&[0.25, 0.75]), two).unwrap();
        assert!((d - (4.0f64 / 3.0).ln()).abs() < 1e-15);
        let d = renyi_divergence(&fd(&[0.5, 0.5]), &fd(&[1.0, 0.0]), two).unwrap();
        assert_eq!(d, f64::INFINITY);
        assert!(renyi_divergence(&fd(&[1.0]), &fd(&[0.5, 0.5]), two).is_err());
    }

    #[test]
    fn order_rejects_negative() {
        assert!(RenyiOrder::new(-0.5).is_err());
        assert!(RenyiOrder::new(f64::NAN).is_err());
        assert!(RenyiOrder::new(0.0).unwrap().is_shannon());
    }

    #[test]
    fn scaled_examples() {
        let p = fd(&[0.9, 0.1]);
        assert_eq!(scaled_distribution(&p, 1.0).unwrap().probs(), p.probs());
        let s = scaled_distribution(&p, 0.5).unwrap();
        let z = 0.9f64.sqrt() + 0.1f64.sqrt();
        assert!((s.probs()[0] - 0.9f64.sqrt() / z).abs() < 1e-15);
        let u = scaled_distribution(&fd(&[0.25; 4]), 3.7).unwrap();
        assert!(u.probs().iter().all(|&x| (x - 0.25).abs() < 1e-15));
    }

    #[test]
    fn bijection_examples() {
        let t = SimplexPoint::new(vec![0.81, 0.19]).unwrap();
        let f = scale_bijection(&t, 1.0).unwrap();
        let z = 0.9 + 0.19f64.sqrt();
        assert!((f.probs()[0] - 0.9 / z).abs() < 1e-15);
        let near = scale_bijection(&t, 1e-12).unwrap();
        assert!((near.probs()[0] - 0.81).abs() < 1e-10);
    }

    #[test]
    fn campbell_examples() {
        let p = fd(&[0.5, 0.5]);
        let l = CodeLengths::new(vec![2f64.ln(), 2.0 * 2f64.ln()]).unwrap();
        let c = campbell_cost(&p, &l, RenyiOrder::new(1.0).unwrap()).unwrap();
        assert!((c - 3f64.ln()).abs() < 1e-15);
        let p = fd(&[0.9, 0.1]);
        let l = CodeLengths::new(vec![1.0, 5.0]).unwrap();
        assert_eq!(campbell_cost(&p, &l, RenyiOrder::infinity()).unwrap(), 5.0);
    }

    #[test]
    fn fisher_examples() {
        let f = fisher_information(&SimplexPoint::uniform(2).unwrap()).unwrap();
        assert!((f.matrix[0][0] - 4.0).abs() < 1e-15);
        assert!((f.determinant - 4.0).abs() < 1e-12);
        let f = fisher_information(&SimplexPoint::uniform(3).unwrap()).unwrap();
        assert!((f.determinant - 27.0).abs() < 1e-9);
        assert!(fisher_information(&SimplexPoint::new(vec![1.0, 0.0]).unwrap()).is_err());
    }

    #[test]
    fn binary_functions() {
        assert_eq!(binary_divergence(0.3, 0.3), 0.0);
        assert!((binary_entropy(0.5) - 2f64.ln()).abs() < 1e-15);
        let v = 0.25 * 0.5f64.ln() + 0.75 * 1.5f64.ln();
        assert!((binary_divergence(0.25, 0.5) - v).abs() < 1e-15);
        assert_eq!(binary_divergence(0.0, 0.0), 0.0);
        assert_eq!(binary_divergence(0.5, 0.0), f64::INFINITY);
        assert!((binary_divergence(0.0, 0.5) - 2f64.ln()).abs() < 1e-15);
    }
}
