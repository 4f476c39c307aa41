//! Inequality audits. Each builder returns an [`Audit`] whose points encode
//! every input needed to replay the check.

use super::constants::{
    ln_c1, ln_edge_bound, ln_k_factor, ln_m_uniform, ln_m_windowed, ln_t_bound_with,
};
use super::report::{Audit, BoundReport};
use super::sums::{edge_split, jeffreys_divergence_direct, ln_jeffreys_sequence, ln_kernel_sum};
use crate::error::{Error, Result};
use crate::logspace::{log_sum_exp, LogValue};
use crate::measures::{binary_divergence, fisher_information, kl_slices, renyi_divergence_slices};
use crate::quadrature::{integrate, DEFAULT_ABS_TOL};
use crate::simplex::{enumerate_types, ln_multinomial, SimplexPoint, TypeVector};
use crate::special::log_gamma_unchecked;
use std::f64::consts::PI;

fn point(v: &[f64]) -> SimplexPoint {
    SimplexPoint::new(v.to_vec()).expect("audit points are valid simplex points")
}

fn counts_of(v: &[f64]) -> Vec<u32> {
    v.iter().map(|&x| x as u32).collect()
}

fn positive_types(n: u32, k: usize) -> Vec<Vec<u32>> {
    enumerate_types(n, k)
        .map(|ts| {
            ts.into_iter()
                .filter(|t| t.min_count() > 0)
                .map(|t| t.counts().to_vec())
                .collect()
        })
        .unwrap_or_default()
}

fn ln_robbins(counts: &[u32]) -> (f64, f64, f64) {
    let n: u32 = counts.iter().sum();
    let nf = n as f64;
    let k = counts.len() as f64;
    let h: f64 = counts
        .iter()
        .map(|&c| -(c as f64) * (c as f64 / nf).ln())
        .sum();
    let ln_prod: f64 = counts.iter().map(|&c| (c as f64).ln()).sum();
    let base = h - 0.5 * (k - 1.0) * (2.0 * PI).ln() + 0.5 * (nf.ln() - ln_prod);
    let lo = base + 1.0 / (12.0 * (nf + 1.0))
        - counts.iter().map(|&c| 1.0 / (12.0 * c as f64)).sum::<f64>();
    let hi = base + 1.0 / (12.0 * nf)
        - counts
            .iter()
            .map(|&c| 1.0 / (12.0 * (c as f64 + 1.0)))
            .sum::<f64>();
    (lo, ln_multinomial(counts), hi)
}

/// Robbins-type two-sided bounds on a multinomial coefficient.
pub fn robbins_multinomial_bounds(t: &TypeVector) -> Result<(LogValue, LogValue, LogValue)> {
    if t.min_count() == 0 {
        return Err(Error::Domain(
            "multinomial bounds need every count positive".into(),
        ));
    }
    let (lo, ex, hi) = ln_robbins(t.counts());
    Ok((
        LogValue::from_ln(lo),
        LogValue::from_ln(ex),
        LogValue::from_ln(hi),
    ))
}

/// `(√(2π) x^{x-1/2} e^{-x}, e^{1/(12x)} - 1)`.
pub fn stirling_gamma_bounds(x: f64) -> Result<(LogValue, f64)> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "Stirling bound needs x > 0, got {x}"
        )));
    }
    let ln_approx = 0.5 * (2.0 * PI).ln() + (x - 0.5) * x.ln() - x;
    Ok((LogValue::from_ln(ln_approx), (1.0 / (12.0 * x)).exp_m1()))
}

pub fn robbins_audit(ks: &[usize], n_max: u32) -> Audit {
    let mut pts = Vec::new();
    for &k in ks {
        for n in k as u32..=n_max {
            pts.extend(
                positive_types(n, k)
                    .into_iter()
                    .map(|t| t.iter().map(|&c| c as f64).collect()),
            );
        }
    }
    Audit::new(
        "robbins_multinomial",
        format!("all positive types, k in {ks:?}, n <= {n_max}"),
        pts,
        |p| {
            let (lo, ex, hi) = ln_robbins(&counts_of(p));
            (lo - ex).max(ex - hi)
        },
    )
}

pub fn stirling_audit(xs: Vec<f64>) -> Audit {
    let domain = format!("{} points in [{}, {}]", xs.len(), xs[0], xs[xs.len() - 1]);
    Audit::new(
        "stirling_gamma_remainder",
        domain,
        xs.into_iter().map(|x| vec![x]).collect(),
        |p| {
            let x = p[0];
            let (approx, bound) = stirling_gamma_bounds(x).expect("positive x");
            (log_gamma_unchecked(x) - approx.ln()).exp_m1().abs() - bound
        },
    )
}

/// Log-spaced points on `[lo, hi]`.
pub fn log_spaced(lo: f64, hi: f64, m: usize) -> Vec<f64> {
    (0..m)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (m - 1) as f64).exp())
        .collect()
}

/// Pointwise information density to Jeffreys' mixture, maximized over the
/// whole simplex by plugging in the empirical distribution of each type.
pub fn uniform_density_audit(k: usize, n_max: u32, ln_c1_shift: f64) -> Audit {
    let mut pts = Vec::new();
    for n in 1..=n_max {
        for t in enumerate_types(n, k).expect("small sizes") {
            let mut v = vec![n as f64];
            v.extend(t.counts().iter().map(|&c| c as f64));
            pts.push(v);
        }
    }
    let c1 = ln_c1(k) + ln_c1_shift;
    Audit::new(
        format!("uniform_density_k{k}"),
        format!("all types, n <= {n_max}, sup over theta in the simplex"),
        pts,
        move |p| {
            let n = p[0];
            let t = counts_of(&p[1..]);
            let ml: f64 = t
                .iter()
                .filter(|&&c| c > 0)
                .map(|&c| c as f64 * (c as f64 / n).ln())
                .sum();
            let kf = t.len() as f64;
            ml - ln_jeffreys_sequence(&t) - (0.5 * (kf - 1.0) * n.ln() + c1)
        },
    )
}

fn grid_points(grid: &[SimplexPoint], ns: &[u32], lambdas: &[f64]) -> Vec<Vec<f64>> {
    let mut pts = Vec::new();
    for &n in ns {
        for &l in lambdas {
            for th in grid {
                let mut v = vec![n as f64, l];
                v.extend_from_slice(th.probs());
                pts.push(v);
            }
        }
    }
    pts
}

/// `D_{1+λ}(P_θ^n ‖ Q*) <= (k-1)/2 ln n + ln C_1(k)`.
pub fn uniform_divergence_audit(
    grid: &[SimplexPoint],
    ns: &[u32],
    lambdas: &[f64],
    ln_c1_shift: f64,
) -> Audit {
    let k = grid[0].k();
    let c1 = ln_c1(k) + ln_c1_shift;
    Audit::new(
        format!("uniform_divergence_k{k}"),
        format!(
            "{} grid points, n in {}..={}, lambda in {lambdas:?}",
            grid.len(),
            ns[0],
            ns[ns.len() - 1]
        ),
        grid_points(grid, ns, lambdas),
        move |p| {
            let (n, l) = (p[0] as u32, p[1]);
            let th = point(&p[2..]);
            let kf = th.k() as f64;
            jeffreys_divergence_direct(&th, n, l).expect("feasible size")
                - (0.5 * (kf - 1.0) * (n as f64).ln() + c1)
        },
    )
}

/// Edge-mass sum against its closed-form bound, in logs.
pub fn edge_mass_audit(grid: &[SimplexPoint], ns: &[u32], lambdas: &[f64], c: f64) -> Audit {
    let k = grid[0].k();
    let mut pts = Vec::new();
    for &n in ns {
        let nf = n as f64;
        if k as f64 * nf.ln() / (2.0 * nf) >= 1.0 {
            continue;
        }
        let edge = c * nf.ln() / nf;
        let inside: Vec<SimplexPoint> = grid
            .iter()
            .filter(|th| th.probs().iter().all(|&x| x >= edge))
            .cloned()
            .collect();
        for mut v in grid_points(&inside, &[n], lambdas) {
            v.insert(2, c);
            pts.push(v);
        }
    }
    Audit::new(
        format!("edge_mass_k{k}"),
        format!("theta with every coordinate >= c ln n / n, c = {c}, n in {}..={}, lambda in {lambdas:?}", ns[0], ns[ns.len() - 1]),
        pts,
        |p| {
            let (n, l, c) = (p[0] as u32, p[1], p[2]);
            let th = point(&p[3..]);
            edge_split(&th, n, l).expect("feasible size").ln_edge - ln_edge_bound(th.k(), l, n, c)
        },
    )
}

/// All-positive Laplace kernel sum against its `n`-free bound, in logs.
pub fn t_sum_audit(grid: &[SimplexPoint], ns: &[u32], lambdas: &[f64], ln_c1_shift: f64) -> Audit {
    let k = grid[0].k();
    let ns: Vec<u32> = ns.iter().copied().filter(|&n| n as usize >= k).collect();
    Audit::new(
        format!("t_sum_k{k}"),
        format!(
            "{} grid points, n in {}..={}, lambda in {lambdas:?}",
            grid.len(),
            ns[0],
            ns[ns.len() - 1]
        ),
        grid_points(grid, &ns, lambdas),
        move |p| {
            let (n, l) = (p[0] as u32, p[1]);
            let th = point(&p[2..]);
            let k = th.k();
            ln_kernel_sum(&th, n, l).expect("feasible size")
                - ln_t_bound_with(k, l, ln_c1(k) + ln_c1_shift)
        },
    )
}

/// `K(k, λ, n, t) <= M(k, λ)` over all positive types.
pub fn k_uniform_audit(k: usize, n_max: u32, lambdas: &[f64]) -> Audit {
    let mut pts = Vec::new();
    for n in k as u32..=n_max {
        for t in positive_types(n, k) {
            for &l in lambdas {
                let mut v = vec![l];
                v.extend(t.iter().map(|&c| c as f64));
                pts.push(v);
            }
        }
    }
    Audit::new(
        format!("k_uniform_k{k}"),
        format!("all positive types, n <= {n_max}, lambda in {lambdas:?}"),
        pts,
        |p| {
            let l = p[0];
            let t = &p[1..];
            let n = t.iter().sum::<f64>() as u32;
            ln_k_factor(l, n, t) - ln_m_uniform(t.len(), l)
        },
    )
}

/// Types in the relative window `n(1-δ)θ_i <= t_i <= n(1+δ)θ_i`, `i < k`,
/// for some `θ` in the list. The bound does not depend on `θ`, so types are deduplicated.
pub fn window_types(thetas: &[SimplexPoint], n: u32, delta: f64) -> Vec<Vec<u32>> {
    let nf = n as f64;
    let k = thetas[0].k();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for t in positive_types(n, k) {
        let hit = thetas.iter().any(|th| {
            t[..k - 1].iter().zip(th.probs()).all(|(&ti, &p)| {
                let ti = ti as f64;
                nf * (1.0 - delta) * p <= ti && ti <= nf * (1.0 + delta) * p
            })
        });
        if hit {
            out.push(t);
        }
    }
    out
}

/// `K(k, λ, n, t) <= M(k, λ, n, c, δ)` for `t` in the window around some admissible `θ`.
pub fn k_windowed_audit(
    thetas: &[SimplexPoint],
    n: u32,
    lambdas: &[f64],
    c: f64,
    delta: f64,
) -> Result<Audit> {
    let k = thetas[0].k();
    let nf = n as f64;
    let edge = c * nf.ln() / nf;
    let admissible: Vec<SimplexPoint> = thetas
        .iter()
        .filter(|th| th.probs().iter().all(|&x| x >= edge) && th.probs()[k - 1] >= 1.0 / k as f64)
        .cloned()
        .collect();
    if admissible.is_empty() {
        return Err(Error::Precondition(
            "no admissible theta for the windowed K bound".into(),
        ));
    }
    ln_m_windowed(k, lambdas[0], n, c, delta)?;
    let mut pts = Vec::new();
    for t in window_types(&admissible, n, delta) {
        for &l in lambdas {
            let mut v = vec![l, n as f64, c, delta];
            v.extend(t.iter().map(|&x| x as f64));
            pts.push(v);
        }
    }
    Ok(Audit::new(
        format!("k_windowed_k{k}"),
        format!("window types at n = {n}, c = {c}, delta = {delta}, lambda in {lambdas:?}"),
        pts,
        |p| {
            let (l, n, c, d) = (p[0], p[1] as u32, p[2], p[3]);
            let t = &p[4..];
            ln_k_factor(l, n, t)
                - ln_m_windowed(t.len(), l, n, c, d).expect("checked at build time")
        },
    ))
}

/// `M(2, λ) <= 3^λ e^{1/12}`.
pub fn m_binary_audit(lambdas: &[f64]) -> Audit {
    Audit::new(
        "m_binary_closed_form",
        format!("lambda in {lambdas:?}"),
        lambdas.iter().map(|&l| vec![l]).collect(),
        |p| ln_m_uniform(2, p[0]) - (p[0] * 3f64.ln() + 1.0 / 12.0),
    )
}

/// Pinsker: `d(τ‖θ) >= 2(τ - θ)^2`.
pub fn pinsker_audit(m: usize) -> Audit {
    let mut pts = Vec::new();
    for i in 0..m {
        for j in 0..m {
            pts.push(vec![i as f64 / (m - 1) as f64, j as f64 / (m - 1) as f64]);
        }
    }
    Audit::new("pinsker", format!("{m} x {m} grid of [0,1]^2"), pts, |p| {
        2.0 * (p[0] - p[1]).powi(2) - binary_divergence(p[0], p[1])
    })
}

/// `|τ-θ| <= δθ ⇒ d(τ‖θ) >= (1-δ)(τ-θ)^2 / (2θ(1-θ))` for `θ ∈ (0,1/2)`, `δ ∈ (0,1)`.
pub fn taylor_binary_window_audit(m: usize) -> Audit {
    let mut pts = Vec::new();
    for i in 1..m {
        let th = 0.5 * i as f64 / m as f64;
        for &d in &[0.05, 0.1, 0.25, 0.5, 0.75, 0.95] {
            for j in 0..=20 {
                let tau = th * (1.0 - d + 2.0 * d * j as f64 / 20.0);
                pts.push(vec![th, d, tau]);
            }
        }
    }
    Audit::new(
        "taylor_binary_window",
        format!("theta in (0,1/2) on {m} steps, 6 deltas, 21 taus"),
        pts,
        |p| {
            let (th, d, tau) = (p[0], p[1], p[2]);
            0.5 * (1.0 - d) * (tau - th).powi(2) / (th * (1.0 - th)) - binary_divergence(tau, th)
        },
    )
}

/// `0 < τ <= θ <= 1/2 ⇒ d(τ‖θ) >= (τ-θ)^2 / (2θ(1-θ))`.
pub fn taylor_binary_left_audit(m: usize) -> Audit {
    let mut pts = Vec::new();
    for i in 1..=m {
        let th = 0.5 * i as f64 / m as f64;
        for j in 1..=i {
            pts.push(vec![th, 0.5 * j as f64 / m as f64]);
        }
    }
    Audit::new(
        "taylor_binary_left",
        format!("0 < tau <= theta <= 1/2 on a {m}-step grid"),
        pts,
        |p| {
            let (th, tau) = (p[0], p[1]);
            0.5 * (tau - th).powi(2) / (th * (1.0 - th)) - binary_divergence(tau, th)
        },
    )
}

/// Cubic-remainder form of the binary expansion: the implied intermediate
/// point must lie between `τ` and `θ`. Uses `|τ-θ| >= 0.01` to avoid cancellation.
pub fn taylor_binary_remainder_audit(m: usize) -> Audit {
    let mut pts = Vec::new();
    for i in 1..m {
        for j in 1..m {
            let (th, tau) = (i as f64 / m as f64, j as f64 / m as f64);
            if (tau - th).abs() >= 0.01 {
                pts.push(vec![th, tau]);
            }
        }
    }
    Audit::new(
        "taylor_binary_remainder",
        format!("interior {m}-step grid, |tau - theta| >= 0.01"),
        pts,
        |p| {
            let (th, tau) = (p[0], p[1]);
            let h = tau - th;
            let val = (binary_divergence(tau, th) - 0.5 * h * h / (th * (1.0 - th))) / h.powi(3);
            let g = |a: f64| ((1.0 - a).powi(-2) - a.powi(-2)) / 6.0;
            (g(th.min(tau)) - val).max(val - g(th.max(tau)))
        },
    )
}

fn ternary_window_points(m: usize, deltas: &[f64]) -> Vec<Vec<f64>> {
    let k = 3;
    let mut pts = Vec::new();
    for i in 1..m {
        for j in 1..m {
            let (a, b) = (i as f64 / m as f64 * 0.66, j as f64 / m as f64 * 0.66);
            let c = 1.0 - a - b;
            if c < 1.0 / k as f64 || a <= 0.0 || b <= 0.0 {
                continue;
            }
            for &d in deltas {
                for s in [-1.0, -0.5, 0.0, 0.5, 1.0] {
                    for u in [-1.0, -0.3, 0.4, 1.0] {
                        let ta = a * (1.0 + s * d);
                        let tb = b * (1.0 + u * d);
                        let tc = 1.0 - ta - tb;
                        if tc > 0.0 {
                            pts.push(vec![d, a, b, c, ta, tb, tc]);
                        }
                    }
                }
            }
        }
    }
    pts
}

/// `|τ_i-θ_i| <= δθ_i (i < k) ⇒ D(τ‖θ) >= (1-(k-1)δ)/2 · (τ'-θ')ᵀ J(θ) (τ'-θ')`, at `k = 3`.
pub fn taylor_general_audit(m: usize) -> Audit {
    Audit::new(
        "taylor_general_k3",
        format!("theta_3 >= 1/3 on a {m}-step grid, delta in {{0.05, 0.2, 0.45}}"),
        ternary_window_points(m, &[0.05, 0.2, 0.45]),
        |p| {
            let d = p[0];
            let th = &p[1..4];
            let tau = &p[4..7];
            let j = fisher_information(&point(th))
                .expect("interior point")
                .matrix;
            let h = [tau[0] - th[0], tau[1] - th[1]];
            let quad =
                h[0] * (j[0][0] * h[0] + j[0][1] * h[1]) + h[1] * (j[1][0] * h[0] + j[1][1] * h[1]);
            0.5 * (1.0 - 2.0 * d) * quad - kl_slices(tau, th)
        },
    )
}

/// Per-coordinate cubic remainder of `τ ln(τ/θ) - τ + θ`: the implied
/// intermediate point must lie between `τ_i` and `θ_i`.
pub fn taylor_general_remainder_audit(m: usize) -> Audit {
    Audit::new(
        "taylor_general_remainder_k3",
        format!("theta_3 >= 1/3 on a {m}-step grid, coordinates with |tau_i - theta_i| >= 0.01"),
        ternary_window_points(m, &[0.2, 0.45]),
        |p| {
            let th = &p[1..4];
            let tau = &p[4..7];
            let mut worst = f64::NEG_INFINITY;
            for i in 0..3 {
                let h = tau[i] - th[i];
                if h.abs() < 0.01 {
                    continue;
                }
                let r = tau[i] * (tau[i] / th[i]).ln() - h - h * h / (2.0 * th[i]);
                let alpha = (-(h.powi(3)) / (6.0 * r)).sqrt();
                worst = worst.max((th[i].min(tau[i]) - alpha).max(alpha - th[i].max(tau[i])));
            }
            worst
        },
    )
}

/// `θ ↦ D_{1+λ}(Bern(θ) ‖ Bern(ξ))` is nonincreasing on `[0, ξ]`.
pub fn binary_monotonicity_audit(xis: &[f64], lambdas: &[f64], steps: usize) -> Audit {
    let mut pts = Vec::new();
    for &l in lambdas {
        for &xi in xis {
            for j in 0..steps {
                pts.push(vec![l, xi, j as f64, steps as f64]);
            }
        }
    }
    Audit::new(
        "binary_renyi_monotone",
        format!(
            "xi in {xis:?}, lambda in {lambdas:?}, {} grid points on [0, xi]",
            steps + 1
        ),
        pts,
        |p| {
            let (l, xi, j, steps) = (p[0], p[1], p[2], p[3]);
            let d = |t: f64| renyi_divergence_slices(&[t, 1.0 - t], &[xi, 1.0 - xi], l);
            let (a, b) = (d(xi * j / steps), d(xi * (j + 1.0) / steps));
            if a == b {
                0.0
            } else {
                b - a
            }
        },
    )
}

/// Left side of the tail-integral bound, by adaptive quadrature.
pub fn tail_integral(
    n: u32,
    lambda: f64,
    theta1: f64,
    delta: f64,
    kappa: f64,
) -> Result<(f64, f64)> {
    let an = n as f64 * (1.0 + lambda);
    let lo = (1.0 + delta) * theta1;
    if !(lo < kappa) {
        return Err(Error::Precondition(format!(
            "empty range: (1+delta) theta1 = {lo} >= kappa = {kappa}"
        )));
    }
    let f =
        |tau: f64| an / (tau * (1.0 - tau)).sqrt() * (-an * binary_divergence(tau, theta1)).exp();
    let q = integrate(f, lo, kappa, DEFAULT_ABS_TOL)?;
    Ok((q.value, q.error))
}

pub fn tail_integral_bound(theta1: f64, delta: f64) -> f64 {
    let x = (1.0 + delta) * theta1;
    1.0 / (delta.ln_1p() * (x * (1.0 - x)).sqrt())
}

/// Checks the integral-bound preconditions and returns the encoded point.
pub fn integral_point(
    n: u32,
    lambda: f64,
    theta1: f64,
    delta: f64,
    kappa: f64,
    beta: f64,
    c: f64,
) -> Result<Vec<f64>> {
    let nf = n as f64;
    let (lo, hi) = (c * nf.ln() / nf, nf.powf(-beta / 2.0));
    if !(c > 0.0 && c < 0.5) || !(beta > 0.0 && beta < 1.0) || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Precondition(
            "need 0 < c < 1/2, 0 < beta < 1, 0 < delta < 1".into(),
        ));
    }
    if !(kappa > 0.0 && kappa <= 0.5)
        || !(theta1 >= lo && theta1 <= hi)
        || (1.0 + delta) * theta1 >= kappa
    {
        return Err(Error::Precondition(format!(
            "need kappa in (0, 1/2], theta1 in [{lo}, {hi}] and (1+delta) theta1 < kappa"
        )));
    }
    Ok(vec![n as f64, lambda, theta1, delta, kappa])
}

/// Quadrature value plus its error estimate against the closed-form bound.
pub fn integral_audit(points: Vec<Vec<f64>>) -> Audit {
    Audit::new(
        "tail_integral",
        format!(
            "{} admissible (n, lambda, theta1, delta, kappa) tuples",
            points.len()
        ),
        points,
        |p| match tail_integral(p[0] as u32, p[1], p[2], p[3], p[4]) {
            Ok((v, e)) => v + e - tail_integral_bound(p[2], p[3]),
            Err(_) => f64::INFINITY,
        },
    )
}

/// Deterministic spread of admissible integral-bound tuples.
pub fn integral_sweep(count: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    let ns = [256u32, 1024, 4096];
    let lambdas = [0.5, 1.0, 2.0];
    let deltas = [0.05, 0.1, 0.3, 0.6];
    let kappas = [0.2, 0.35, 0.5];
    let (beta, c) = (0.5, 0.25);
    let mut i = 0usize;
    while out.len() < count && i < 10 * count {
        let n = ns[i % 3];
        let l = lambdas[(i / 3) % 3];
        let d = deltas[(i / 9) % 4];
        let kappa = kappas[(i / 36) % 3];
        let nf = n as f64;
        let (lo, hi) = (c * nf.ln() / nf, nf.powf(-beta / 2.0));
        let frac = ((i * 37) % 11) as f64 / 10.0;
        let th = lo + (hi - lo) * frac;
        if let Ok(p) = integral_point(n, l, th, d, kappa, beta, c) {
            out.push(p);
        }
        i += 1;
    }
    out
}

/// Single-instance wrappers returning one report each.
pub fn audit_uniform_divergence_bound(n: u32, lambda: f64, grid: &[SimplexPoint]) -> BoundReport {
    uniform_divergence_audit(grid, &[n], &[lambda], 0.0).run()
}

pub fn audit_edge_mass_bound(
    n: u32,
    lambda: f64,
    theta: &SimplexPoint,
    c: f64,
) -> Result<BoundReport> {
    let nf = n as f64;
    let k = theta.k() as f64;
    if k * nf.ln() / (2.0 * nf) >= 1.0 {
        return Err(Error::Precondition(format!(
            "k ln n / (2n) < 1 fails at n = {n}"
        )));
    }
    if !(c > 0.0 && c < 0.5) || theta.probs().iter().any(|&x| x < c * nf.ln() / nf) {
        return Err(Error::Precondition(
            "theta must have every coordinate >= c ln n / n with 0 < c < 1/2".into(),
        ));
    }
    Ok(edge_mass_audit(std::slice::from_ref(theta), &[n], &[lambda], c).run())
}

pub fn audit_t_bound(n: u32, lambda: f64, theta: &SimplexPoint) -> Result<BoundReport> {
    if (n as usize) < theta.k() {
        return Err(Error::Precondition(
            "need n >= k for an all-positive type".into(),
        ));
    }
    Ok(t_sum_audit(std::slice::from_ref(theta), &[n], &[lambda], 0.0).run())
}

pub fn audit_k_bounds(n: u32, k: usize, lambda: f64) -> BoundReport {
    let mut pts = Vec::new();
    for t in positive_types(n, k) {
        let mut v = vec![lambda];
        v.extend(t.iter().map(|&c| c as f64));
        pts.push(v);
    }
    Audit::new(
        format!("k_uniform_k{k}"),
        format!("positive types at n = {n}"),
        pts,
        |p| {
            let t = &p[1..];
            ln_k_factor(p[0], t.iter().sum::<f64>() as u32, t) - ln_m_uniform(t.len(), p[0])
        },
    )
    .run()
}

pub fn audit_integral_bound(
    n: u32,
    lambda: f64,
    theta1: f64,
    delta: f64,
    kappa: f64,
    beta: f64,
    c: f64,
) -> Result<BoundReport> {
    Ok(integral_audit(vec![integral_point(
        n, lambda, theta1, delta, kappa, beta, c,
    )?])
    .run())
}

/// `I_{1+λ}(P)` over types for a prior on `thetas`, in nats.
pub fn alpha_information_types(
    thetas: &[SimplexPoint],
    weights: &[f64],
    n: u32,
    lambda: f64,
) -> Result<f64> {
    let k = thetas[0].k();
    let lts: Vec<Vec<f64>> = thetas.iter().map(|t| t.ln_probs()).collect();
    let r = 1.0 / (1.0 + lambda);
    let terms: Vec<f64> = enumerate_types(n, k)?
        .iter()
        .map(|t| {
            let inner: Vec<f64> = lts
                .iter()
                .zip(weights)
                .filter(|(_, &w)| w > 0.0)
                .map(|(lt, &w)| {
                    w.ln() + (1.0 + lambda) * crate::simplex::ln_likelihood(lt, t.counts())
                })
                .collect();
            ln_multinomial(t.counts()) + r * log_sum_exp(&inner)
        })
        .collect();
    Ok(log_sum_exp(&terms) / (r * lambda))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn robbins_examples() {
        let (lo, ex, hi) =
            robbins_multinomial_bounds(&TypeVector::new(vec![2, 2]).unwrap()).unwrap();
        assert!((ex.ln() - 6f64.ln()).abs() < 1e-14);
        assert!(lo.ln() <= ex.ln() && ex.ln() <= hi.ln());
        let (lo, ex, hi) =
            robbins_multinomial_bounds(&TypeVector::new(vec![1, 1]).unwrap()).unwrap();
        assert!((ex.ln() - 2f64.ln()).abs() < 1e-15);
        assert!(lo.ln() <= ex.ln() && ex.ln() <= hi.ln());
        assert!(robbins_multinomial_bounds(&TypeVector::new(vec![3, 0]).unwrap()).is_err());
    }

    #[test]
    fn stirling_examples() {
        let (a, b) = stirling_gamma_bounds(1.0).unwrap();
        assert!((a.to_f64() - (2.0 * PI).sqrt() / std::f64::consts::E).abs() < 1e-15);
        assert!((a.to_f64() - 0.92214).abs() < 1e-5);
        assert!((b - 0.08690).abs() < 1e-5);
        assert!((1.0 / a.to_f64() - 1.0).abs() <= b);
        let (a, b) = stirling_gamma_bounds(10.0).unwrap();
        assert!((362880.0 / a.to_f64() - 1.0).abs() <= b);
        assert!(stirling_gamma_bounds(0.0).is_err());
    }

    #[test]
    fn integral_example_holds() {
        let r = audit_integral_bound(1024, 1.0, 0.01, 0.1, 0.25, 0.5, 0.25).unwrap();
        assert!(r.satisfied(), "{r:?}");
        assert!(audit_integral_bound(1024, 1.0, 0.5, 0.1, 0.25, 0.5, 0.25).is_err());
    }

    #[test]
    fn integral_sweep_is_admissible() {
        assert_eq!(integral_sweep(50).len(), 50);
    }

    #[test]
    fn edge_mass_example() {
        let th = SimplexPoint::uniform(2).unwrap();
        let r = audit_edge_mass_bound(64, 1.0, &th, 0.25).unwrap();
        assert!(r.satisfied());
        let bad = SimplexPoint::binary(0.001).unwrap();
        assert!(audit_edge_mass_bound(64, 1.0, &bad, 0.25).is_err());
    }
}
