use proptest::prelude::*;
use renyi_core::audit::laplace::laplace_decomposition_binary;
use renyi_core::audit::sums::edge_split;
use renyi_core::format::sig12;
use renyi_core::logspace::pairwise_sum;
use renyi_core::measures::{binary_divergence, scale_bijection, scaled_distribution};
use renyi_core::*;

fn simplex(k: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, k).prop_map(|v| {
        let s: f64 = v.iter().sum();
        v.iter().map(|x| x / s).collect()
    })
}

fn order() -> impl Strategy<Value = f64> {
    0.05f64..6.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn renyi_is_nonnegative_and_nondecreasing_in_order(p in simplex(4), q in simplex(4), l1 in order(), l2 in order()) {
        let (p, q) = (FiniteDistribution::new(p).unwrap(), FiniteDistribution::new(q).unwrap());
        let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
        let a = renyi_divergence(&p, &q, RenyiOrder::new(lo).unwrap()).unwrap();
        let b = renyi_divergence(&p, &q, RenyiOrder::new(hi).unwrap()).unwrap();
        prop_assert!(a >= 0.0);
        prop_assert!(a <= b + 1e-12);
        prop_assert!(renyi_divergence(&p, &p, RenyiOrder::new(lo).unwrap()).unwrap().abs() < 1e-12);
    }

    #[test]
    fn escort_is_a_distribution(p in simplex(5), a in 0.1f64..3.0) {
        let e = scaled_distribution(&FiniteDistribution::new(p).unwrap(), a).unwrap();
        prop_assert!((pairwise_sum(e.probs()) - 1.0).abs() < 1e-12);
        prop_assert!(e.probs().iter().all(|&x| x > 0.0));
    }

    #[test]
    fn scaling_bijection_commutes_with_products(th in simplex(2), l in order(), n in 1u32..5) {
        let theta = SimplexPoint::new(th).unwrap();
        let ft = scale_bijection(&theta, l).unwrap();
        let seq = |p: &[f64]| {
            let mut out = vec![1.0];
            for _ in 0..n {
                out = out.iter().flat_map(|&a| p.iter().map(move |&b| a * b)).collect();
            }
            FiniteDistribution::new(out).unwrap()
        };
        let lhs = scaled_distribution(&seq(theta.probs()), 1.0 / (1.0 + l)).unwrap();
        let rhs = seq(ft.probs());
        for (a, b) in lhs.probs().iter().zip(rhs.probs()) {
            prop_assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn divergence_to_jeffreys_is_nonnegative(th in simplex(3), n in 1u32..20, l in order()) {
        let q = jeffreys_mixture(n, 3).unwrap();
        prop_assert!(q.log_total_mass().abs() < 1e-12);
        let d = divergence_to_mixture(&SimplexPoint::new(th).unwrap(), &q, l).unwrap();
        prop_assert!(d >= 0.0 && d.is_finite());
    }

    #[test]
    fn information_is_below_every_grid_divergence_sup(w in simplex(4), n in 1u32..6, l in order(), th in simplex(2)) {
        let support: Vec<SimplexPoint> = [0.05, 0.3, 0.6, 0.95].iter().map(|&x| SimplexPoint::binary(x).unwrap()).collect();
        let grid = ParameterGrid::custom(support.clone()).unwrap();
        let prior = DiscretePrior::new(support, w).unwrap();
        let info = renyi_core::audit::bounds::alpha_information_types(prior.support(), prior.weights(), n, l).unwrap();
        let other = DiscretePrior::new(vec![SimplexPoint::new(th).unwrap()], vec![1.0]).unwrap();
        for q in [jeffreys_mixture(n, 2).unwrap(), renyi_core::solver::equalizer_mixture(&other, n, l).unwrap()] {
            let sup = renyi_core::solver::minimax_upper(&q, &grid, l).unwrap().value;
            prop_assert!(info <= sup + 1e-12);
        }
    }

    #[test]
    fn information_is_quasi_concave(w1 in simplex(4), w2 in simplex(4), t in 0.0f64..1.0, n in 1u32..6, l in order()) {
        let support: Vec<SimplexPoint> = [0.0, 0.2, 0.7, 1.0].iter().map(|&x| SimplexPoint::binary(x).unwrap()).collect();
        let info = |w: &[f64]| renyi_core::audit::bounds::alpha_information_types(&support, w, n, l).unwrap();
        let mix: Vec<f64> = w1.iter().zip(&w2).map(|(a, b)| t * a + (1.0 - t) * b).collect();
        prop_assert!(info(&mix) >= info(&w1).min(info(&w2)) - 1e-12);
    }

    #[test]
    fn pinsker_holds(a in 0.0f64..=1.0, b in 0.001f64..0.999) {
        prop_assert!(binary_divergence(a, b) >= 2.0 * (a - b).powi(2) - 1e-15);
    }

    #[test]
    fn binary_laplace_split_is_a_partition(n in 64u32..2048, th in 0.0f64..1.0, d in 0.01f64..0.9, l in order()) {
        let nf = n as f64;
        let lo = 0.25 * nf.ln() / nf;
        let theta1 = lo + (0.5 - lo) * th;
        let s = laplace_decomposition_binary(n, l, theta1, d, 0.25).unwrap();
        prop_assert!((s.s1 + s.s2 + s.s3 - s.total).abs() <= 1e-12 * s.total.max(1.0));
    }

    #[test]
    fn edge_split_recombines(th in simplex(3), n in 1u32..40, l in order()) {
        let theta = SimplexPoint::new(th).unwrap();
        let q = jeffreys_mixture(n, 3).unwrap();
        let s = edge_split(&theta, n, l).unwrap();
        let full = divergence_to_mixture(&theta, &q, l).unwrap();
        prop_assert!((s.ln_total() / l - full).abs() <= 1e-12 * full.abs().max(1.0));
    }

    #[test]
    fn sig12_round_trips_to_twelve_digits(x in -1e12f64..1e12) {
        let back: f64 = sig12(x).parse().unwrap();
        prop_assert!((back - x).abs() <= 5e-12 * x.abs().max(1e-300));
    }

    #[test]
    fn log_sum_exp_matches_naive(xs in prop::collection::vec(-30.0f64..30.0, 1..40)) {
        let naive = xs.iter().map(|x| x.exp()).sum::<f64>().ln();
        prop_assert!((log_sum_exp(&xs) - naive).abs() < 1e-12);
    }
}
