//! Minimax Rényi redundancy on a parameter grid, computed from both sides.
//!
//! The lower value maximizes the α-mutual information over priors on the
//! grid. The upper value is the largest divergence from any grid source to
//! the output distribution induced by that prior. Both are reported.

use crate::error::{Error, Result};
use crate::grid::ParameterGrid;
use crate::logspace::{log_sum_exp, pairwise_sum_by};
use crate::mixtures::{
    divergence_ln_theta, jeffreys_mixture_on, DiscretePrior, ExchangeableMixture, TypeTable,
};
use crate::simplex::{ln_likelihood, SimplexPoint};
use crate::special::log_gamma_unchecked;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::sync::Arc;

pub const DEFAULT_GAP_THRESHOLD: f64 = 1e-4;
const PARALLEL_WORK: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Stop once the conditional-gradient gap is at most this (nats).
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            tol: 1e-6,
            max_iter: 200_000,
        }
    }
}

#[derive(Debug, Clone)]
pub struct MaximinResult {
    pub prior: DiscretePrior,
    /// α-mutual information of `prior`, in nats.
    pub value: f64,
    /// `max_θ D(P_θ ‖ R_prior) - value` evaluated through the gradient.
    pub gap: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Dense `exp((1+λ) ln P_θ(t) - M_t)` matrix with per-type scales.
struct Objective {
    m: usize,
    t: usize,
    r: f64,
    lambda: f64,
    a: Vec<f64>,
    c: Vec<f64>,
    ln_c_scale: f64,
}

impl Objective {
    fn new(grid: &ParameterGrid, table: &TypeTable, lambda: f64) -> Objective {
        let m = grid.len();
        let nt = table.len();
        let rows: Vec<Vec<f64>> = grid
            .points()
            .par_iter()
            .map(|p| {
                let lt = p.ln_probs();
                table
                    .types()
                    .iter()
                    .map(|t| (1.0 + lambda) * ln_likelihood(&lt, t.counts()))
                    .collect()
            })
            .collect();
        let mut mt = vec![f64::NEG_INFINITY; nt];
        for row in &rows {
            for (mx, &v) in mt.iter_mut().zip(row) {
                *mx = mx.max(v);
            }
        }
        let r = 1.0 / (1.0 + lambda);
        let mut a = vec![0.0; m * nt];
        for (j, row) in rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                a[j * nt + i] = if mt[i] == f64::NEG_INFINITY {
                    0.0
                } else {
                    (v - mt[i]).exp()
                };
            }
        }
        let lc: Vec<f64> = table
            .ln_multinomial()
            .iter()
            .zip(&mt)
            .map(|(&lm, &mx)| {
                if mx == f64::NEG_INFINITY {
                    f64::NEG_INFINITY
                } else {
                    lm + r * mx
                }
            })
            .collect();
        let ln_c_scale = lc.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let c = lc.iter().map(|&l| (l - ln_c_scale).exp()).collect();
        Objective {
            m,
            t: nt,
            r,
            lambda,
            a,
            c,
            ln_c_scale,
        }
    }

    fn row(&self, j: usize) -> &[f64] {
        &self.a[j * self.t..(j + 1) * self.t]
    }

    fn mix(&self, w: &[f64]) -> Vec<f64> {
        let mut s = vec![0.0; self.t];
        for (j, &wj) in w.iter().enumerate() {
            if wj > 0.0 {
                for (si, &aij) in s.iter_mut().zip(self.row(j)) {
                    *si += wj * aij;
                }
            }
        }
        s
    }

    fn value_scaled(&self, s: &[f64]) -> f64 {
        pairwise_sum_by(self.t, &|i| self.c[i] * s[i].max(0.0).powf(self.r))
    }

    fn gradient_scaled(&self, s: &[f64]) -> Vec<f64> {
        let pw: Vec<f64> = s
            .iter()
            .zip(&self.c)
            .map(|(&si, &ci)| {
                if ci == 0.0 {
                    0.0
                } else {
                    ci * si.max(0.0).powf(self.r - 1.0)
                }
            })
            .collect();
        let entry = |j: usize| {
            let row = self.row(j);
            pairwise_sum_by(self.t, &|i| {
                if row[i] == 0.0 {
                    0.0
                } else {
                    row[i] * pw[i]
                }
            })
        };
        if self.m * self.t < PARALLEL_WORK {
            (0..self.m).map(entry).collect()
        } else {
            (0..self.m).into_par_iter().map(entry).collect()
        }
    }

    fn lower(&self, g_scaled: f64) -> f64 {
        ((self.ln_c_scale + g_scaled.ln()) / (self.r * self.lambda)).max(0.0)
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, hi: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let (mut a, mut b) = (0.0, hi);
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..200 {
        if b - a <= 1e-12 * hi {
            break;
        }
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (a + b);
    let best = if f(hi) >= f(mid) { hi } else { mid };
    if f(0.0) > f(best) {
        0.0
    } else {
        best
    }
}

fn argmax_lowest(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

/// Maximizes the α-mutual information of order `1 + λ` over priors on `grid`
/// by pairwise conditional-gradient steps with golden-section line search.
pub fn maximin_solve(
    grid: &ParameterGrid,
    n: u32,
    lambda: f64,
    opts: SolverOptions,
) -> Result<MaximinResult> {
    check_lambda(lambda)?;
    if grid.is_empty() {
        return Err(Error::EmptySupport);
    }
    if !(opts.tol > 0.0) {
        return Err(Error::Domain("solver tolerance must be positive".into()));
    }
    let table = TypeTable::new(n, grid.k())?;
    let obj = Objective::new(grid, &table, lambda);
    let m = obj.m;
    let mut w = vec![1.0 / m as f64; m];
    let mut s = obj.mix(&w);
    let mut iterations = 0;
    let mut converged = false;
    let mut gap;
    let mut g_val;
    loop {
        g_val = obj.value_scaled(&s);
        let grad = obj.gradient_scaled(&s);
        let a = argmax_lowest(&grad);
        gap = (grad[a] / g_val).ln() / lambda;
        if gap <= opts.tol {
            converged = true;
            break;
        }
        if iterations >= opts.max_iter {
            break;
        }
        let mut b = usize::MAX;
        for j in 0..m {
            if w[j] > 0.0 && j != a && (b == usize::MAX || grad[j] < grad[b]) {
                b = j;
            }
        }
        if b == usize::MAX {
            // all mass already on the best point
            converged = true;
            break;
        }
        let delta: Vec<f64> = obj
            .row(a)
            .iter()
            .zip(obj.row(b))
            .map(|(x, y)| x - y)
            .collect();
        let cap = w[b];
        let phi = |g: f64| {
            pairwise_sum_by(obj.t, &|i| {
                obj.c[i] * (s[i] + g * delta[i]).max(0.0).powf(obj.r)
            })
        };
        let slope_at_cap = pairwise_sum_by(obj.t, &|i| {
            if delta[i] == 0.0 || obj.c[i] == 0.0 {
                0.0
            } else {
                obj.c[i] * delta[i] * (s[i] + cap * delta[i]).max(0.0).powf(obj.r - 1.0)
            }
        });
        // concave along the segment: a nonnegative end slope means a drop step
        let step = if slope_at_cap >= 0.0 {
            cap
        } else {
            golden_max(phi, cap)
        };
        if step == cap {
            w[a] += w[b];
            w[b] = 0.0;
        } else {
            w[a] += step;
            w[b] -= step;
        }
        iterations += 1;
        if iterations % 64 == 0 {
            s = obj.mix(&w);
        } else {
            for (si, &di) in s.iter_mut().zip(&delta) {
                *si += step * di;
            }
        }
    }
    let total: f64 = w.iter().sum();
    let (support, weights): (Vec<SimplexPoint>, Vec<f64>) = grid
        .points()
        .iter()
        .zip(&w)
        .filter(|(_, &x)| x > 0.0)
        .map(|(p, &x)| (p.clone(), x / total))
        .unzip();
    let prior = DiscretePrior::new(support, weights)?;
    Ok(MaximinResult {
        prior,
        value: obj.lower(g_val),
        gap,
        iterations,
        converged,
    })
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::Domain(format!(
            "lambda must lie in (0, inf), got {lambda}"
        )));
    }
    Ok(())
}

/// Output law on `Y^n` minimizing the conditional divergence for `prior`:
/// per sequence proportional to `(Σ_θ w_θ P_θ(y^n)^{1+λ})^{1/(1+λ)}`.
pub fn equalizer_mixture(
    prior: &DiscretePrior,
    n: u32,
    lambda: f64,
) -> Result<ExchangeableMixture> {
    check_lambda(lambda)?;
    let k = prior.support()[0].k();
    let table = TypeTable::new(n, k)?;
    equalizer_mixture_on(prior, table, lambda)
}

pub fn equalizer_mixture_on(
    prior: &DiscretePrior,
    table: Arc<TypeTable>,
    lambda: f64,
) -> Result<ExchangeableMixture> {
    let lts: Vec<(f64, Vec<f64>)> = prior
        .support()
        .iter()
        .zip(prior.weights())
        .filter(|(_, &w)| w > 0.0)
        .map(|(p, &w)| (w.ln(), p.ln_probs()))
        .collect();
    let r = 1.0 / (1.0 + lambda);
    let logw: Vec<f64> = table
        .types()
        .par_iter()
        .map(|t| {
            let terms: Vec<f64> = lts
                .iter()
                .map(|(lw, lt)| lw + (1.0 + lambda) * ln_likelihood(lt, t.counts()))
                .collect();
            r * log_sum_exp(&terms)
        })
        .collect();
    ExchangeableMixture::from_unnormalized(table, logw)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSup {
    pub value: f64,
    pub index: usize,
    pub argmax: Vec<f64>,
}

/// `max_θ∈grid D_{1+λ}(P^n_θ ‖ Q)`, ties broken toward the lowest index.
pub fn minimax_upper(
    q: &ExchangeableMixture,
    grid: &ParameterGrid,
    lambda: f64,
) -> Result<GridSup> {
    check_lambda(lambda)?;
    if grid.is_empty() {
        return Err(Error::EmptySupport);
    }
    if grid.k() != q.k() {
        return Err(Error::Dimension {
            expected: q.k(),
            got: grid.k(),
        });
    }
    let vals = grid_divergences(q, grid, lambda);
    let index = argmax_lowest(&vals);
    Ok(GridSup {
        value: vals[index],
        index,
        argmax: grid.points()[index].probs().to_vec(),
    })
}

/// Divergence from each grid source to `q`, in grid order.
pub fn grid_divergences(q: &ExchangeableMixture, grid: &ParameterGrid, lambda: f64) -> Vec<f64> {
    grid.points()
        .par_iter()
        .map(|p| divergence_ln_theta(&p.ln_probs(), q, lambda))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RedundancyBracket {
    pub n: u32,
    pub k: usize,
    pub lambda: f64,
    pub lower: f64,
    pub upper: f64,
    pub gap: f64,
    pub argmax_theta: Vec<f64>,
    pub prior_support: Vec<(Vec<f64>, f64)>,
    pub iterations: usize,
    pub tolerance: f64,
    pub certified: bool,
}

/// Brackets the grid-restricted minimax Rényi redundancy from both sides.
pub fn renyi_redundancy(
    n: u32,
    lambda: f64,
    grid: &ParameterGrid,
    opts: SolverOptions,
    gap_threshold: f64,
) -> Result<RedundancyBracket> {
    let mm = maximin_solve(grid, n, lambda, opts)?;
    let q = equalizer_mixture(&mm.prior, n, lambda)?;
    let sup = minimax_upper(&q, grid, lambda)?;
    let gap = sup.value - mm.value;
    let prior_support = mm
        .prior
        .support()
        .iter()
        .zip(mm.prior.weights())
        .map(|(p, &w)| (p.probs().to_vec(), w))
        .collect();
    Ok(RedundancyBracket {
        n,
        k: grid.k(),
        lambda,
        lower: mm.value,
        upper: sup.value,
        gap,
        argmax_theta: sup.argmax,
        prior_support,
        iterations: mm.iterations,
        tolerance: opts.tol,
        certified: gap <= gap_threshold && mm.value <= sup.value + 1e-12,
    })
}

/// Log of the Shtarkov sum, `ln Σ_t C(n,t) exp(-n H(t/n))`.
pub fn shtarkov_regret(n: u32, k: usize) -> Result<f64> {
    let table = TypeTable::new(n, k)?;
    let nf = n as f64;
    let terms: Vec<f64> = table
        .types()
        .iter()
        .zip(table.ln_multinomial())
        .map(|(t, &m)| {
            let ml: f64 = t
                .counts()
                .iter()
                .filter(|&&c| c > 0)
                .map(|&c| c as f64 * (c as f64 / nf).ln())
                .sum();
            m + ml
        })
        .collect();
    Ok(log_sum_exp(&terms))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl CapacityResult {
    pub fn value(&self) -> f64 {
        self.lower
    }
}

/// Blahut–Arimoto sweeps before switching to pairwise conditional-gradient steps.
const BA_WARM_START: usize = 200;

/// Shannon capacity from the grid parameter to `Y^n`, run on the
/// type-aggregated channel. Starts with Blahut–Arimoto and finishes with
/// pairwise conditional-gradient steps, which do not stall on fine grids.
pub fn classical_redundancy_r0(
    n: u32,
    grid: &ParameterGrid,
    tol: f64,
    max_iter: usize,
) -> Result<CapacityResult> {
    if grid.is_empty() {
        return Err(Error::EmptySupport);
    }
    let table = TypeTable::new(n, grid.k())?;
    let nt = table.len();
    let m = grid.len();
    let ll: Vec<Vec<f64>> = grid
        .points()
        .par_iter()
        .map(|p| table.ln_likelihoods(p))
        .collect();
    let mut mt = vec![f64::NEG_INFINITY; nt];
    for row in &ll {
        for (mx, &v) in mt.iter_mut().zip(row) {
            *mx = mx.max(v);
        }
    }
    // P[j][t] = exp(ll - M_t), mass[t] = C(n,t) exp(M_t)
    let p: Vec<Vec<f64>> = ll
        .iter()
        .map(|row| {
            row.iter()
                .zip(&mt)
                .map(|(&v, &mx)| if mx.is_finite() { (v - mx).exp() } else { 0.0 })
                .collect()
        })
        .collect();
    let mass: Vec<f64> = table
        .ln_multinomial()
        .iter()
        .zip(&mt)
        .map(|(&lm, &mx)| if mx.is_finite() { (lm + mx).exp() } else { 0.0 })
        .collect();
    let div = |row: &[f64], q: &[f64]| {
        pairwise_sum_by(nt, &|i| {
            if row[i] > 0.0 {
                mass[i] * row[i] * (row[i].ln() - q[i].ln())
            } else {
                0.0
            }
        })
    };
    let divs = |q: &[f64]| -> Vec<f64> {
        if m * nt < PARALLEL_WORK {
            p.iter().map(|row| div(row, q)).collect()
        } else {
            p.par_iter().map(|row| div(row, q)).collect()
        }
    };
    let mix = |w: &[f64]| {
        let mut q = vec![0.0; nt];
        for (row, &wj) in p.iter().zip(w) {
            if wj > 0.0 {
                for (qi, &pij) in q.iter_mut().zip(row) {
                    *qi += wj * pij;
                }
            }
        }
        q
    };
    let mut w = vec![1.0 / m as f64; m];
    let mut q = mix(&w);
    let mut it = 0;
    loop {
        let d = divs(&q);
        let upper = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let lw: Vec<f64> = w
            .iter()
            .zip(&d)
            .map(|(&wj, &dj)| {
                if wj > 0.0 {
                    wj.ln() + dj
                } else {
                    f64::NEG_INFINITY
                }
            })
            .collect();
        let lower = log_sum_exp(&lw);
        if upper - lower <= tol || it >= max_iter {
            return Ok(CapacityResult {
                lower: lower.max(0.0),
                upper,
                iterations: it,
                converged: upper - lower <= tol,
            });
        }
        it += 1;
        if it <= BA_WARM_START {
            w = lw.iter().map(|&x| (x - lower).exp()).collect();
            q = mix(&w);
            continue;
        }
        let a = argmax_lowest(&d);
        let mut b = usize::MAX;
        for j in 0..m {
            if w[j] > 0.0 && j != a && (b == usize::MAX || d[j] < d[b]) {
                b = j;
            }
        }
        if b == usize::MAX {
            return Ok(CapacityResult {
                lower: upper,
                upper,
                iterations: it,
                converged: true,
            });
        }
        let (pa, pb) = (&p[a], &p[b]);
        let cap = w[b];
        let slope = |g: f64| {
            let qg: Vec<f64> = (0..nt).map(|i| q[i] + g * (pa[i] - pb[i])).collect();
            div(pa, &qg) - div(pb, &qg)
        };
        // the slope is decreasing along the segment
        let step = if slope(cap) >= 0.0 {
            cap
        } else {
            let (mut lo, mut hi) = (0.0, cap);
            while hi - lo > 1e-12 * cap {
                let mid = 0.5 * (lo + hi);
                if slope(mid) >= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lo
        };
        if step == cap {
            w[a] += w[b];
            w[b] = 0.0;
        } else {
            w[a] += step;
            w[b] -= step;
        }
        if it % 64 == 0 {
            q = mix(&w);
        } else {
            for i in 0..nt {
                q[i] += step * (pa[i] - pb[i]);
            }
        }
    }
}

/// `(k-1)/2 ln(n / (2π(1+λ)^{1/λ})) + ln(Γ(1/2)^k / Γ(k/2))`, with the
/// `λ → 0` and `λ → ∞` limits at the endpoints.
pub fn asymptotic_prediction(n: u32, k: usize, lambda: f64) -> Result<f64> {
    if n < 2 || k < 2 || lambda.is_nan() || lambda < 0.0 {
        return Err(Error::Domain(
            "asymptotic prediction needs n >= 2, k >= 2, lambda >= 0".into(),
        ));
    }
    Ok(
        0.5 * (k as f64 - 1.0) * ((n as f64).ln() - (2.0 * std::f64::consts::PI).ln())
            + asymptotic_constant(k, lambda),
    )
}

/// Constant term of [`asymptotic_prediction`].
pub fn asymptotic_constant(k: usize, lambda: f64) -> f64 {
    let ln_shift = if lambda == 0.0 {
        1.0
    } else if lambda.is_infinite() {
        0.0
    } else {
        lambda.ln_1p() / lambda
    };
    let kf = k as f64;
    -0.5 * (kf - 1.0) * ln_shift + 0.5 * kf * std::f64::consts::PI.ln()
        - log_gamma_unchecked(0.5 * kf)
}

/// Grid `{(1,0), (1/2,1/2)}`: the Z-channel rows as binary sources with `n = 1`.
pub fn zchannel_grid() -> ParameterGrid {
    ParameterGrid::custom(vec![
        SimplexPoint::new(vec![1.0, 0.0]).expect("valid point"),
        SimplexPoint::new(vec![0.5, 0.5]).expect("valid point"),
    ])
    .expect("distinct points")
}

fn zchannel_base(lambda: f64) -> f64 {
    (2f64.powf(1.0 + lambda) - 1.0).powf(-1.0 / lambda)
}

/// Optimal weight on the noisy input `(1/2, 1/2)`.
pub fn zchannel_optimal_prior(lambda: f64) -> f64 {
    let b = zchannel_base(lambda);
    let num = 1.0 - (2f64.powf(1.0 + lambda) - 1.0).powf(-(1.0 + lambda) / lambda);
    1.0 - num / (1.0 + b)
}

/// Maximal α-mutual information of the Z-channel, `ln(1 + (2^{1+λ}-1)^{-1/λ})`.
pub fn zchannel_value(lambda: f64) -> f64 {
    zchannel_base(lambda).ln_1p()
}

/// Jeffreys' mixture divergence from every grid source, used by trend checks.
pub fn jeffreys_grid_divergences(n: u32, grid: &ParameterGrid, lambda: f64) -> Result<Vec<f64>> {
    check_lambda(lambda)?;
    let q = jeffreys_mixture_on(TypeTable::new(n, grid.k())?)?;
    Ok(grid_divergences(&q, grid, lambda))
}
