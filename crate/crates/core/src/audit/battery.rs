//! The full audit battery with a stable JSON summary.

use super::bounds::*;
use super::report::{Audit, BoundReport};
use crate::error::Result;
use crate::grid::ParameterGrid;
use crate::mixtures::{
    jeffreys_mixture_on, modified_mixture_any, DiscretePrior, ModifiedPriorSpec, TypeTable,
};
use crate::simplex::SimplexPoint;
use crate::solver::{equalizer_mixture_on, minimax_upper};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const BATTERY_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AuditConfig {
    /// Multiplier on `C_1(k)` wherever it enters a bound. `1` is the true constant.
    pub c1_scale: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { c1_scale: 1.0 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatterySummary {
    pub schema_version: u32,
    pub reports: Vec<BoundReport>,
    pub all_satisfied: bool,
}

const LAMBDAS: [f64; 3] = [0.5, 1.0, 2.0];

fn pts(g: ParameterGrid) -> Vec<SimplexPoint> {
    g.points().to_vec()
}

fn range(lo: u32, hi: u32) -> Vec<u32> {
    (lo..=hi).collect()
}

fn random_prior(grid: &ParameterGrid, rng: &mut ChaCha8Rng, size: usize) -> DiscretePrior {
    let mut idx: Vec<usize> = Vec::with_capacity(size);
    while idx.len() < size {
        let i = rng.gen_range(0..grid.len());
        if !idx.contains(&i) {
            idx.push(i);
        }
    }
    idx.sort_unstable();
    let w: Vec<f64> = idx.iter().map(|_| rng.gen_range(0.05..1.0)).collect();
    let s: f64 = w.iter().sum();
    DiscretePrior::new(
        idx.iter().map(|&i| grid.points()[i].clone()).collect(),
        w.iter().map(|x| x / s).collect(),
    )
    .expect("valid random prior")
}

/// `I_{1+λ}(P) <= sup_θ D_{1+λ}(P^n_θ ‖ Q)` for random priors `P` on the grid and
/// three kinds of `Q`: Jeffreys (0), modified Jeffreys (1), equalizer of another random prior (2).
pub fn weak_duality_audit(grid: ParameterGrid, ns: &[u32], trials: u64) -> Audit {
    let mut points = Vec::new();
    for &n in ns {
        for &l in &LAMBDAS {
            for kind in 0..3 {
                for seed in 0..trials {
                    points.push(vec![kind as f64, seed as f64, n as f64, l]);
                }
            }
        }
    }
    let k = grid.k();
    Audit::new(
        format!("weak_duality_k{k}"),
        format!(
            "{trials} random priors per (n, lambda, mixture), n in {ns:?}, {} grid points",
            grid.len()
        ),
        points,
        move |p| {
            let (kind, seed, n, l) = (p[0] as u32, p[1] as u64, p[2] as u32, p[3]);
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9) ^ n as u64);
            let prior = random_prior(&grid, &mut rng, 5);
            let table = TypeTable::new(n, grid.k()).expect("small sizes");
            let q = match kind {
                0 => jeffreys_mixture_on(table),
                1 => modified_mixture_any(&ModifiedPriorSpec::new(0.05, 0.25, n), grid.k()),
                _ => equalizer_mixture_on(&random_prior(&grid, &mut rng, 3), table, l),
            }
            .expect("valid mixture");
            let info = alpha_information_types(prior.support(), prior.weights(), n, l)
                .expect("small sizes");
            info - minimax_upper(&q, &grid, l)
                .expect("matching dimension")
                .value
                - 1e-12
        },
    )
}

/// Every audit of the battery, in report order.
pub fn battery(config: &AuditConfig) -> Result<Vec<Audit>> {
    let shift = config.c1_scale.ln();
    let g2 = pts(ParameterGrid::binary(201)?);
    let g3 = pts(ParameterGrid::lattice(3, 20)?);
    let int2 = pts(ParameterGrid::binary(201)?.interior()?);
    let int3 = pts(ParameterGrid::lattice(3, 20)?.interior()?);
    Ok(vec![
        robbins_audit(&[2, 3], 64),
        stirling_audit(log_spaced(0.5, 500.0, 2000)),
        uniform_density_audit(2, 64, shift),
        uniform_density_audit(3, 64, shift),
        uniform_divergence_audit(&g2, &range(1, 64), &LAMBDAS, shift),
        uniform_divergence_audit(&g3, &range(1, 32), &LAMBDAS, shift),
        edge_mass_audit(&g2, &range(2, 64), &LAMBDAS, 0.25),
        edge_mass_audit(&int3, &range(2, 32), &LAMBDAS, 0.25),
        t_sum_audit(&int2, &range(2, 64), &LAMBDAS, shift),
        t_sum_audit(&int3, &range(3, 32), &LAMBDAS, shift),
        k_uniform_audit(2, 256, &LAMBDAS),
        k_uniform_audit(3, 64, &LAMBDAS),
        k_windowed_audit(
            &pts(ParameterGrid::binary(2001)?),
            1024,
            &LAMBDAS,
            0.25,
            0.1,
        )?,
        k_windowed_audit(
            &pts(ParameterGrid::lattice(3, 60)?),
            256,
            &LAMBDAS,
            0.25,
            0.1,
        )?,
        m_binary_audit(&[0.1, 0.25, 0.5, 1.0, 2.0, 4.0, 8.0]),
        pinsker_audit(201),
        taylor_binary_window_audit(200),
        taylor_binary_left_audit(200),
        taylor_binary_remainder_audit(200),
        taylor_general_audit(40),
        taylor_general_remainder_audit(40),
        binary_monotonicity_audit(&[0.001, 0.05, 0.2, 0.5, 0.8, 0.999, 1.0], &LAMBDAS, 400),
        integral_audit(integral_sweep(50)),
        weak_duality_audit(ParameterGrid::binary(201)?, &range(1, 8), 8),
        weak_duality_audit(ParameterGrid::lattice(3, 12)?, &range(1, 6), 4),
    ])
}

pub fn run_battery(config: &AuditConfig) -> Result<BatterySummary> {
    let audits = battery(config)?;
    let reports: Vec<BoundReport> = audits.par_iter().map(Audit::run).collect();
    let all_satisfied = reports.iter().all(BoundReport::satisfied);
    Ok(BatterySummary {
        schema_version: BATTERY_SCHEMA_VERSION,
        reports,
        all_satisfied,
    })
}
