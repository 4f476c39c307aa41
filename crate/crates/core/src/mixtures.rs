//! Dirichlet integrals, Jeffreys prior and mixtures, modified mixtures, and
//! exact divergences from i.i.d. sources to exchangeable mixtures.

use crate::error::{Error, Result};
use crate::logspace::{log_sum_exp, LogValue};
use crate::simplex::{
    enumerate_types, ln_likelihood, ln_multinomial, SimplexPoint, TypeVector, SUM_TOL,
};
use crate::special::log_gamma_unchecked;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::Arc;

/// Finitely supported prior on simplex points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscretePrior {
    support: Vec<SimplexPoint>,
    weights: Vec<f64>,
}

impl DiscretePrior {
    pub fn new(support: Vec<SimplexPoint>, weights: Vec<f64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::EmptySupport);
        }
        if support.len() != weights.len() {
            return Err(Error::Dimension {
                expected: support.len(),
                got: weights.len(),
            });
        }
        if weights.iter().any(|&w| !(w >= 0.0) || !w.is_finite()) {
            return Err(Error::InvalidDistribution(
                "prior weights must be nonnegative".into(),
            ));
        }
        let s: f64 = weights.iter().sum();
        if (s - 1.0).abs() > SUM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "prior weights sum to {s}"
            )));
        }
        Ok(DiscretePrior { support, weights })
    }

    pub fn point_mass(theta: SimplexPoint) -> Self {
        DiscretePrior {
            support: vec![theta],
            weights: vec![1.0],
        }
    }

    pub fn uniform(support: Vec<SimplexPoint>) -> Result<Self> {
        let m = support.len();
        Self::new(support, vec![1.0 / m as f64; m])
    }

    pub fn support(&self) -> &[SimplexPoint] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Mixture `t·self + (1-t)·other` over the union of supports.
    pub fn blend(&self, other: &DiscretePrior, t: f64) -> Result<DiscretePrior> {
        let mut support = self.support.clone();
        let mut weights: Vec<f64> = self.weights.iter().map(|w| t * w).collect();
        for (p, w) in other.support.iter().zip(&other.weights) {
            match support.iter().position(|q| q == p) {
                Some(i) => weights[i] += (1.0 - t) * w,
                None => {
                    support.push(p.clone());
                    weights.push((1.0 - t) * w);
                }
            }
        }
        DiscretePrior::new(support, weights)
    }
}

/// All types of length `n` over `k` symbols with their log multinomial coefficients.
#[derive(Debug)]
pub struct TypeTable {
    n: u32,
    k: usize,
    types: Vec<TypeVector>,
    ln_multinomial: Vec<f64>,
    index: HashMap<Vec<u32>, usize>,
}

impl TypeTable {
    pub fn new(n: u32, k: usize) -> Result<Arc<Self>> {
        let types = enumerate_types(n, k)?;
        let ln_multinomial = types.iter().map(|t| ln_multinomial(t.counts())).collect();
        let index = types
            .iter()
            .enumerate()
            .map(|(i, t)| (t.counts().to_vec(), i))
            .collect();
        Ok(Arc::new(TypeTable {
            n,
            k,
            types,
            ln_multinomial,
            index,
        }))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn types(&self) -> &[TypeVector] {
        &self.types
    }

    pub fn ln_multinomial(&self) -> &[f64] {
        &self.ln_multinomial
    }

    pub fn len(&self) -> usize {
        self.types.len()
    }

    pub fn is_empty(&self) -> bool {
        self.types.is_empty()
    }

    pub fn position(&self, t: &TypeVector) -> Option<usize> {
        self.index.get(t.counts()).copied()
    }

    /// Per-sequence log-likelihood of every type under `θ`.
    pub fn ln_likelihoods(&self, theta: &SimplexPoint) -> Vec<f64> {
        let lt = theta.ln_probs();
        self.types
            .iter()
            .map(|t| ln_likelihood(&lt, t.counts()))
            .collect()
    }
}

/// Exchangeable distribution on `Y^n`, stored as the probability of one
/// sequence of each type.
#[derive(Debug, Clone)]
pub struct ExchangeableMixture {
    table: Arc<TypeTable>,
    log_prob: Vec<f64>,
}

impl ExchangeableMixture {
    /// Builds a mixture from unnormalized per-sequence log-weights.
    pub fn from_unnormalized(table: Arc<TypeTable>, log_weight: Vec<f64>) -> Result<Self> {
        if log_weight.len() != table.len() {
            return Err(Error::Dimension {
                expected: table.len(),
                got: log_weight.len(),
            });
        }
        if log_weight.iter().any(|v| v.is_nan() || *v == f64::INFINITY) {
            return Err(Error::InvalidDistribution(
                "log weights must be finite or -inf".into(),
            ));
        }
        let terms: Vec<f64> = table
            .ln_multinomial
            .iter()
            .zip(&log_weight)
            .map(|(m, w)| m + w)
            .collect();
        let z = log_sum_exp(&terms);
        if !z.is_finite() {
            return Err(Error::InvalidDistribution(
                "mixture has zero total mass".into(),
            ));
        }
        let log_prob = log_weight.iter().map(|w| w - z).collect();
        Ok(ExchangeableMixture { table, log_prob })
    }

    pub fn n(&self) -> u32 {
        self.table.n
    }

    pub fn k(&self) -> usize {
        self.table.k
    }

    pub fn table(&self) -> &Arc<TypeTable> {
        &self.table
    }

    pub fn log_probs(&self) -> &[f64] {
        &self.log_prob
    }

    /// Probability of one sequence of type `t`.
    pub fn log_type_prob(&self, t: &TypeVector) -> Result<LogValue> {
        let i = self.table.position(t).ok_or_else(|| {
            Error::Domain(format!(
                "type {:?} is not a composition of n={}",
                t.counts(),
                self.n()
            ))
        })?;
        Ok(LogValue::from_ln(self.log_prob[i]))
    }

    /// `ln Σ_t C(n,t) Q(t)`; zero for a normalized mixture.
    pub fn log_total_mass(&self) -> f64 {
        let terms: Vec<f64> = self
            .table
            .ln_multinomial
            .iter()
            .zip(&self.log_prob)
            .map(|(m, w)| m + w)
            .collect();
        log_sum_exp(&terms)
    }

    /// CSV rows `t_1,...,t_k,log_prob` with a header, floats at 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = (1..=self.k()).map(|i| format!("t{i}")).collect();
        let _ = writeln!(out, "{},log_prob", header.join(","));
        for (t, lp) in self.table.types.iter().zip(&self.log_prob) {
            let counts: Vec<String> = t.counts().iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "{},{}", counts.join(","), crate::format::sig12(*lp));
        }
        out
    }
}

/// `ln D_k(α) = Σ ln Γ(α_i) - ln Γ(Σ α_i)`.
pub fn dirichlet_log(alphas: &[f64]) -> Result<LogValue> {
    if alphas.is_empty() || alphas.iter().any(|&a| !(a > 0.0) || !a.is_finite()) {
        return Err(Error::Domain(
            "Dirichlet integral needs positive arguments".into(),
        ));
    }
    Ok(LogValue::from_ln(ln_dirichlet(alphas)))
}

pub(crate) fn ln_dirichlet(alphas: &[f64]) -> f64 {
    let s: f64 = alphas.iter().sum();
    alphas.iter().map(|&a| log_gamma_unchecked(a)).sum::<f64>() - log_gamma_unchecked(s)
}

/// `ln D_k(1/2, ..., 1/2) = k ln Γ(1/2) - ln Γ(k/2)`.
pub fn ln_dirichlet_half(k: usize) -> f64 {
    0.5 * k as f64 * std::f64::consts::PI.ln() - log_gamma_unchecked(0.5 * k as f64)
}

/// Log density of Jeffreys' prior with respect to Lebesgue measure on the
/// first `k - 1` coordinates; `+inf` on the boundary.
pub fn jeffreys_prior_log_density(theta: &SimplexPoint) -> f64 {
    let p = theta.probs();
    if p.contains(&0.0) {
        return f64::INFINITY;
    }
    -0.5 * p.iter().map(|x| x.ln()).sum::<f64>() - ln_dirichlet_half(p.len())
}

fn jeffreys_log_weights(table: &TypeTable) -> Vec<f64> {
    let k = table.k;
    let base = ln_dirichlet_half(k);
    let mut buf = vec![0.0; k];
    table
        .types
        .iter()
        .map(|t| {
            for (b, &c) in buf.iter_mut().zip(t.counts()) {
                *b = c as f64 + 0.5;
            }
            ln_dirichlet(&buf) - base
        })
        .collect()
}

/// Jeffreys' mixture on `Y^n` over a `k`-letter alphabet.
pub fn jeffreys_mixture(n: u32, k: usize) -> Result<ExchangeableMixture> {
    let table = TypeTable::new(n, k)?;
    jeffreys_mixture_on(table)
}

pub fn jeffreys_mixture_on(table: Arc<TypeTable>) -> Result<ExchangeableMixture> {
    let log_prob = jeffreys_log_weights(&table);
    // already normalized in closed form; keep the exact values
    Ok(ExchangeableMixture { table, log_prob })
}

/// Parameters of the Jeffreys prior with point masses pushed near the faces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModifiedPriorSpec {
    pub epsilon: f64,
    pub c: f64,
    pub n: u32,
}

impl ModifiedPriorSpec {
    pub const DEFAULT_C: f64 = 0.25;
    pub const DEFAULT_EPSILON: f64 = 0.05;

    pub fn new(epsilon: f64, c: f64, n: u32) -> Self {
        ModifiedPriorSpec { epsilon, c, n }
    }

    /// Location `c ln n / n` of the point masses.
    pub fn edge(&self) -> f64 {
        self.c * (self.n as f64).ln() / self.n as f64
    }

    pub fn validate(&self, k: usize) -> Result<()> {
        if !(0.0..=1.0).contains(&self.epsilon) {
            return Err(Error::Precondition(format!(
                "epsilon must lie in [0, 1], got {}",
                self.epsilon
            )));
        }
        if !(self.c > 0.0 && self.c < 0.5) {
            return Err(Error::Precondition(format!(
                "c must lie in (0, 1/2), got {}",
                self.c
            )));
        }
        if self.n < 1 {
            return Err(Error::Precondition("n must be positive".into()));
        }
        if self.edge() >= 1.0 / k as f64 {
            return Err(Error::Precondition(format!(
                "c ln n / n = {} must be below 1/k = {}",
                self.edge(),
                1.0 / k as f64
            )));
        }
        Ok(())
    }
}

fn mix3(a: f64, b: f64, c: f64) -> f64 {
    log_sum_exp(&[a, b, c])
}

/// Binary modified mixture `(1-ε)Q* + (ε/2)P_a + (ε/2)P_{1-a}` with `a = c ln n / n`.
pub fn modified_mixture_binary(spec: &ModifiedPriorSpec) -> Result<ExchangeableMixture> {
    spec.validate(2)?;
    let table = TypeTable::new(spec.n, 2)?;
    let jeff = jeffreys_log_weights(&table);
    let a = spec.edge();
    let low = table.ln_likelihoods(&SimplexPoint::new(vec![a, 1.0 - a])?);
    let high = table.ln_likelihoods(&SimplexPoint::new(vec![1.0 - a, a])?);
    let (l1, l2) = ((1.0 - spec.epsilon).ln(), (0.5 * spec.epsilon).ln());
    let w = (0..table.len())
        .map(|i| mix3(l1 + jeff[i], l2 + low[i], l2 + high[i]))
        .collect();
    ExchangeableMixture::from_unnormalized(table, w)
}

/// General modified mixture `(ε/k) Σ_i M_i + (1-ε) Q*` for `k >= 3`.
pub fn modified_mixture_general(spec: &ModifiedPriorSpec, k: usize) -> Result<ExchangeableMixture> {
    if k < 3 {
        return Err(Error::Precondition(
            "general modified mixture needs k >= 3".into(),
        ));
    }
    modified_mixture_any(spec, k)
}

pub(crate) fn modified_mixture_any(
    spec: &ModifiedPriorSpec,
    k: usize,
) -> Result<ExchangeableMixture> {
    spec.validate(k)?;
    let table = TypeTable::new(spec.n, k)?;
    let jeff = jeffreys_log_weights(&table);
    let a = spec.edge();
    let (ln_a, ln_1a) = (a.ln(), (-a).ln_1p());
    let base = ln_dirichlet_half(k - 1);
    let n = spec.n;
    let le = (spec.epsilon / k as f64).ln();
    let l1 = (1.0 - spec.epsilon).ln();
    let mut rest = Vec::with_capacity(k - 1);
    let w = table
        .types
        .iter()
        .zip(&jeff)
        .map(|(t, &j)| {
            let mut terms = Vec::with_capacity(k + 1);
            terms.push(l1 + j);
            for i in 0..k {
                let ti = t.counts()[i];
                rest.clear();
                rest.extend(
                    t.counts()
                        .iter()
                        .enumerate()
                        .filter(|&(m, _)| m != i)
                        .map(|(_, &c)| c as f64 + 0.5),
                );
                let head = if ti > 0 { ti as f64 * ln_a } else { 0.0 } + (n - ti) as f64 * ln_1a;
                terms.push(le + head + ln_dirichlet(&rest) - base);
            }
            log_sum_exp(&terms)
        })
        .collect();
    ExchangeableMixture::from_unnormalized(table, w)
}

/// Per-type log summands of `exp(λ D_{1+λ}(P^n_θ ‖ Q))`.
pub fn divergence_log_terms(
    theta: &SimplexPoint,
    q: &ExchangeableMixture,
    lambda: f64,
) -> Result<Vec<f64>> {
    if theta.k() != q.k() {
        return Err(Error::Dimension {
            expected: q.k(),
            got: theta.k(),
        });
    }
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "lambda must lie in (0, inf), got {lambda}"
        )));
    }
    let lt = theta.ln_probs();
    Ok(log_terms_with(&lt, q, lambda))
}

pub(crate) fn log_terms_with(ln_theta: &[f64], q: &ExchangeableMixture, lambda: f64) -> Vec<f64> {
    let table = &q.table;
    table
        .types
        .iter()
        .zip(&table.ln_multinomial)
        .zip(&q.log_prob)
        .map(|((t, &m), &lq)| {
            let ll = ln_likelihood(ln_theta, t.counts());
            if ll == f64::NEG_INFINITY {
                f64::NEG_INFINITY
            } else if lq == f64::NEG_INFINITY {
                f64::INFINITY
            } else {
                m + (1.0 + lambda) * ll - lambda * lq
            }
        })
        .collect()
}

/// Exact `D_{1+λ}(P^n_θ ‖ Q)` by summing over type classes.
pub fn divergence_to_mixture(
    theta: &SimplexPoint,
    q: &ExchangeableMixture,
    lambda: f64,
) -> Result<f64> {
    let terms = divergence_log_terms(theta, q, lambda)?;
    Ok(log_sum_exp(&terms) / lambda)
}

pub(crate) fn divergence_ln_theta(ln_theta: &[f64], q: &ExchangeableMixture, lambda: f64) -> f64 {
    log_sum_exp(&log_terms_with(ln_theta, q, lambda)) / lambda
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VertexDivergence {
    /// `ln[Γ(l/2)Γ(n+k/2) / (Γ(k/2)Γ(n+l/2))]`
    pub correction: f64,
    /// `-ln Q*(constant sequence)`, present when `l = 1`.
    pub full: Option<f64>,
}

/// Shift in divergence to Jeffreys' mixture when `θ` lives on an `l`-support face.
pub fn vertex_divergence_closed_form(n: u32, k: usize, l: usize) -> Result<VertexDivergence> {
    if l < 1 || l > k || k < 2 || n < 1 {
        return Err(Error::Domain(format!(
            "need 1 <= l <= k and n >= 1, got n={n}, k={k}, l={l}"
        )));
    }
    let g = log_gamma_unchecked;
    let (nf, kf, lf) = (n as f64, k as f64, l as f64);
    let correction = if l == k {
        0.0
    } else {
        g(lf / 2.0) + g(nf + kf / 2.0) - g(kf / 2.0) - g(nf + lf / 2.0)
    };
    let full = (l == 1).then_some(correction);
    Ok(VertexDivergence { correction, full })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn dirichlet_values() {
        assert!((dirichlet_log(&[0.5, 0.5]).unwrap().ln() - PI.ln()).abs() < 1e-14);
        assert!((dirichlet_log(&[0.5, 0.5, 0.5]).unwrap().ln() - (2.0 * PI).ln()).abs() < 1e-14);
        assert!((dirichlet_log(&[1.5, 0.5]).unwrap().ln() - (PI / 2.0).ln()).abs() < 1e-14);
        assert!(dirichlet_log(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn jeffreys_density_center() {
        let d = jeffreys_prior_log_density(&SimplexPoint::uniform(2).unwrap());
        assert!((d - (2.0 / PI).ln()).abs() < 1e-14);
        assert_eq!(
            jeffreys_prior_log_density(&SimplexPoint::vertex(2, 0).unwrap()),
            f64::INFINITY
        );
    }

    #[test]
    fn jeffreys_small_cases() {
        let q = jeffreys_mixture(1, 2).unwrap();
        for lp in q.log_probs() {
            assert!((lp - 0.5f64.ln()).abs() < 1e-14);
        }
        let q = jeffreys_mixture(2, 2).unwrap();
        let want = [3.0 / 8.0, 1.0 / 8.0, 3.0 / 8.0];
        for (lp, w) in q.log_probs().iter().zip(want) {
            assert!((lp.exp() - w).abs() < 1e-14);
        }
        assert!(jeffreys_mixture(3, 3).unwrap().log_total_mass().abs() < 1e-10);
    }

    #[test]
    fn modified_spec_checks() {
        assert!(ModifiedPriorSpec::new(0.1, 0.6, 8).validate(2).is_err());
        assert!(ModifiedPriorSpec::new(1.5, 0.2, 8).validate(2).is_err());
        assert!(ModifiedPriorSpec::new(0.1, 0.2, 8).validate(2).is_ok());
        assert!(modified_mixture_general(&ModifiedPriorSpec::new(0.1, 0.2, 8), 2).is_err());
    }

    #[test]
    fn vertex_closed_form_n1() {
        let v = vertex_divergence_closed_form(1, 2, 1).unwrap();
        assert!((v.full.unwrap() - 2f64.ln()).abs() < 1e-14);
        assert_eq!(
            vertex_divergence_closed_form(5, 3, 3).unwrap().correction,
            0.0
        );
        assert!(vertex_divergence_closed_form(5, 3, 0).is_err());
    }

    #[test]
    fn csv_shape() {
        let csv = jeffreys_mixture(2, 2).unwrap().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "t1,t2,log_prob");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("2,0,"));
    }
}
