//! Independent oracles: third-party special functions, sequence-level brute
//! force, and second routes through the public API.

use approx::assert_abs_diff_eq;
use renyi_core::audit::bounds::alpha_information_types;
use renyi_core::audit::constants::{constants, ln_m_windowed};
use renyi_core::audit::converse::{converse_beta, converse_epsilon, converse_lower_bound};
use renyi_core::audit::laplace::binary_split_sup;
use renyi_core::audit::sums::{edge_split, jeffreys_divergence_direct};
use renyi_core::audit::{
    battery, jeffreys_gap, laplace_decomposition_general, run_battery, AuditConfig,
};
use renyi_core::quadrature::{integrate_endpoint_singular, DEFAULT_ABS_TOL};
use renyi_core::solver::{maximin_solve, shtarkov_regret};
use renyi_core::special::log_gamma;
use renyi_core::*;

fn sequences(n: u32, k: usize) -> Vec<Vec<usize>> {
    (0..k.pow(n))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let s = x % k;
                    x /= k;
                    s
                })
                .collect()
        })
        .collect()
}

fn counts(seq: &[usize], k: usize) -> Vec<u32> {
    let mut c = vec![0u32; k];
    for &s in seq {
        c[s] += 1;
    }
    c
}

#[test]
fn log_gamma_matches_statrs() {
    let mut x = 0.01;
    while x < 1e6 {
        let ours = log_gamma(x).unwrap();
        let theirs = statrs::function::gamma::ln_gamma(x);
        assert!(
            (ours - theirs).abs() <= 1e-12 * theirs.abs().max(1.0),
            "x={x}: {ours} vs {theirs}"
        );
        x *= 1.37;
    }
}

#[test]
fn jeffreys_mixture_matches_sequential_rule() {
    for k in 2..=3usize {
        for n in 1..=6u32 {
            let q = jeffreys_mixture(n, k).unwrap();
            for s in sequences(n, k) {
                let mut c = vec![0.0; k];
                let mut lp = 0.0;
                for (j, &x) in s.iter().enumerate() {
                    lp += ((c[x] + 0.5) / (j as f64 + 0.5 * k as f64)).ln();
                    c[x] += 1.0;
                }
                let t = TypeVector::new(counts(&s, k)).unwrap();
                assert_abs_diff_eq!(q.log_type_prob(&t).unwrap().ln(), lp, epsilon = 1e-13);
            }
        }
    }
}

#[test]
fn shtarkov_matches_sequence_maximum_likelihood() {
    for k in 2..=3usize {
        for n in 1..=7u32 {
            let total: f64 = sequences(n, k)
                .iter()
                .map(|s| {
                    counts(s, k)
                        .iter()
                        .filter(|&&c| c > 0)
                        .map(|&c| (c as f64 / n as f64).powi(c as i32))
                        .product::<f64>()
                })
                .sum();
            assert_abs_diff_eq!(shtarkov_regret(n, k).unwrap(), total.ln(), epsilon = 1e-13);
        }
    }
}

#[test]
fn solver_value_matches_sequence_level_information() {
    let grid = ParameterGrid::binary(41).unwrap();
    for n in 1..=4u32 {
        for &l in &[0.5, 1.0, 2.0] {
            let r = maximin_solve(&grid, n, l, SolverOptions::default()).unwrap();
            let rows: Vec<FiniteDistribution> = r
                .prior
                .support()
                .iter()
                .map(|th| {
                    let probs = sequences(n, 2)
                        .iter()
                        .map(|s| s.iter().map(|&x| th.probs()[x]).product())
                        .collect();
                    FiniteDistribution::new(probs).unwrap()
                })
                .collect();
            let seq_level =
                alpha_mutual_information(&r.prior, &rows, RenyiOrder::new(l).unwrap()).unwrap();
            let type_level =
                alpha_information_types(r.prior.support(), r.prior.weights(), n, l).unwrap();
            assert_abs_diff_eq!(seq_level, r.value, epsilon = 1e-12);
            assert_abs_diff_eq!(type_level, r.value, epsilon = 1e-12);
        }
    }
}

#[test]
fn direct_jeffreys_sum_matches_mixture_route() {
    for k in 2..=3usize {
        let grid = ParameterGrid::lattice(k, 7).unwrap();
        for n in [1u32, 5, 17] {
            let q = jeffreys_mixture(n, k).unwrap();
            for th in grid.points() {
                let a = jeffreys_divergence_direct(th, n, 1.0).unwrap();
                let b = divergence_to_mixture(th, &q, 1.0).unwrap();
                assert_abs_diff_eq!(a, b, epsilon = 1e-12);
            }
        }
    }
}

#[test]
fn edge_and_interior_recombine() {
    let th = SimplexPoint::new(vec![0.2, 0.3, 0.5]).unwrap();
    let q = jeffreys_mixture(32, 3).unwrap();
    let s = edge_split(&th, 32, 1.0).unwrap();
    assert_abs_diff_eq!(
        s.ln_total() / 1.0,
        divergence_to_mixture(&th, &q, 1.0).unwrap(),
        epsilon = 1e-12
    );
}

#[test]
fn singular_quadrature_of_inverse_sqrt() {
    let q = integrate_endpoint_singular(|x| x.powf(-0.5), 0.0, 1.0, DEFAULT_ABS_TOL).unwrap();
    assert_abs_diff_eq!(q.value, 2.0, epsilon = 1e-9);
}

#[test]
fn constants_are_positive_and_finite() {
    for k in 2..=6 {
        for &l in &[0.1, 0.5, 1.0, 2.0, 4.0, 8.0] {
            let c = constants(k, l).unwrap();
            for v in [c.c1, c.c2, c.c3, c.c_tilde, c.m_uniform] {
                assert!(v.is_finite() && v > 0.0, "k={k} lambda={l}: {c:?}");
            }
        }
    }
    let c = constants(2, 1.5).unwrap();
    assert!((c.c_tilde - 2.0 * (c.c2 * c.c3).powf(1.5)).abs() <= 1e-12 * c.c_tilde);
    assert!(c.m_uniform <= 3f64.powf(1.5) * (1.0f64 / 12.0).exp());
}

#[test]
fn windowed_k_factor_decreases_with_n() {
    let v: Vec<f64> = [256u32, 1024, 4096, 1 << 16, 1 << 20]
        .iter()
        .map(|&n| ln_m_windowed(2, 1.0, n, 0.25, 0.1).unwrap().exp())
        .collect();
    assert!(v.windows(2).all(|w| w[1] < w[0]), "{v:?}");
}

#[test]
#[ignore = "fails at the stated size: M(2,1,4096,0.25,0.1) is about 1.098"]
fn windowed_k_factor_near_one_at_4096() {
    let m = ln_m_windowed(2, 1.0, 4096, 0.25, 0.1).unwrap().exp();
    assert!((m - 1.0).abs() <= 0.05, "{m}");
}

#[test]
fn binary_laplace_middle_part_envelope() {
    let s = binary_split_sup(4096, 1.0, 0.05, 0.25, 2001).unwrap();
    assert!(s.s2 <= 0.5f64.sqrt() + 0.05, "{s:?}");
}

#[test]
#[ignore = "fails at the stated size: the outer parts peak near the lower end of the theta range"]
fn binary_laplace_outer_parts_vanish() {
    let s = binary_split_sup(4096, 1.0, 0.1, 0.25, 2001).unwrap();
    assert!(s.s1 < 1e-6 && s.s3 < 1e-3, "{s:?}");
}

#[test]
fn general_laplace_split_examples() {
    let th = SimplexPoint::uniform(3).unwrap();
    let s = laplace_decomposition_general(512, 1.0, &th, 0.1, 0.25).unwrap();
    assert!((s.s1 + s.s2 - s.total).abs() <= 1e-12 * s.total.max(1.0));
    assert!(s.s1 <= 0.6, "{s:?}");
    let larger = laplace_decomposition_general(2048, 1.0, &th, 0.1, 0.25).unwrap();
    assert!(larger.s2 < s.s2, "{larger:?}");
}

#[test]
#[ignore = "fails at the stated size: the outside-window part is about 0.031 at n = 512"]
fn general_laplace_outside_part_small_at_512() {
    let s = laplace_decomposition_general(512, 1.0, &SimplexPoint::uniform(3).unwrap(), 0.1, 0.25)
        .unwrap();
    assert!(s.s2 < 0.01, "{s:?}");
}

#[test]
fn ternary_edge_face_gap_is_positive() {
    let g = jeffreys_gap(512, 3, 2, 1.0, &ParameterGrid::lattice(3, 40).unwrap()).unwrap();
    assert!(g.gap > 0.0, "{g:?}");
}

#[test]
fn converse_examples() {
    let eps = converse_epsilon(4096, 2, 1.0, 0.1).unwrap();
    assert!((eps - 1.0).abs() <= 0.02, "{eps}");
    assert!(converse_lower_bound(4, 2, 1.0, 0.3).is_err());
    let b = converse_lower_bound(1024, 2, 1.0, 0.1).unwrap();
    assert!(b.beta > 0.0 && b.beta < std::f64::consts::PI);
}

#[test]
#[ignore = "fails at the stated size: the truncated sum misses about 4 sqrt(delta/2) of mass"]
fn converse_beta_near_pi() {
    let b = converse_beta(4096, 2, 0.01).unwrap();
    assert!((b - std::f64::consts::PI).abs() <= 0.15, "{b}");
}

#[test]
fn converse_beta_approaches_truncated_integral() {
    // ∫ over [a, 1-a] of (τ(1-τ))^{-1/2} = π - 4 asin(√a)
    for &d in &[0.01, 0.1] {
        let a: f64 = d / 2.0;
        let want = std::f64::consts::PI - 4.0 * a.sqrt().asin();
        let b = converse_beta(1 << 16, 2, d).unwrap();
        assert!((b - want).abs() < 0.01, "delta={d}: {b} vs {want}");
    }
}

#[test]
fn battery_witnesses_replay_exactly() {
    let audits = battery::battery(&AuditConfig::default()).unwrap();
    for a in audits.iter().filter(|a| a.points().len() < 50_000) {
        let r = a.run();
        assert_eq!(
            a.replay(&r.witness).to_bits(),
            r.max_violation.to_bits(),
            "{}",
            r.name
        );
    }
}

#[test]
fn shrunk_first_constant_is_caught() {
    let s = run_battery(&AuditConfig { c1_scale: 0.1 }).unwrap();
    assert!(!s.all_satisfied);
    let bad = s
        .reports
        .iter()
        .find(|r| r.name == "uniform_density_k2")
        .unwrap();
    assert!(bad.max_violation > 0.0 && !bad.witness.is_empty());
}
