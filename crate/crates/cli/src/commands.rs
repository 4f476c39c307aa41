use crate::config::SweepConfig;
use crate::error::CliError;
use crate::output::{Cell, Table};
use rayon::prelude::*;
use renyi_core::audit::{run_battery, AuditConfig, BatterySummary};
use renyi_core::mixtures::ModifiedPriorSpec;
use renyi_core::solver::{
    asymptotic_prediction, classical_redundancy_r0, equalizer_mixture, maximin_solve,
    shtarkov_regret, zchannel_grid, zchannel_optimal_prior, zchannel_value,
};
use renyi_core::{
    jeffreys_mixture, modified_mixture_binary, modified_mixture_general, renyi_redundancy,
    SolverOptions,
};
use std::f64::consts::PI;

/// A rendered table plus whether every claim it makes held.
pub struct Report {
    pub table: Table,
    pub ok: bool,
}

fn opts(cfg: &SweepConfig) -> SolverOptions {
    SolverOptions {
        tol: cfg.tolerance,
        max_iter: cfg.max_iter,
    }
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn pairs(cfg: &SweepConfig) -> Vec<(u32, f64)> {
    cfg.ns
        .iter()
        .flat_map(|&n| cfg.lambdas.iter().map(move |&l| (n, l)))
        .collect()
}

pub fn redundancy(cfg: &SweepConfig) -> Result<Report, CliError> {
    let grid = cfg.grid()?;
    let b = cfg.log_base;
    let km1 = (cfg.k - 1) as f64;
    let rows = pairs(cfg)
        .par_iter()
        .map(|&(n, l)| {
            let r = renyi_redundancy(n, l, &grid, opts(cfg), cfg.gap_threshold)?;
            let pred = asymptotic_prediction(n, cfg.k, l).unwrap_or(f64::NAN);
            let residual = r.upper - 0.5 * km1 * (n as f64 / (2.0 * PI)).ln();
            Ok((
                r.certified,
                vec![
                    Cell::Int(n as u64),
                    Cell::Num(l),
                    Cell::Num(b.scale(r.lower)),
                    Cell::Num(b.scale(r.upper)),
                    Cell::Num(b.scale(r.gap)),
                    Cell::Num(b.scale(pred)),
                    Cell::Num(b.scale(residual)),
                    Cell::Bool(r.certified),
                    Cell::Int(r.iterations as u64),
                ],
            ))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Report {
        ok: rows.iter().all(|(c, _)| *c),
        table: Table {
            command: "redundancy",
            log_base: b.name(),
            header: header(&[
                "n",
                "lambda",
                "lower",
                "upper",
                "gap",
                "asymptotic_prediction",
                "residual",
                "certified",
                "iterations",
            ]),
            rows: rows.into_iter().map(|(_, r)| r).collect(),
        },
    })
}

const ZCHANNEL_TOLERANCE: f64 = 1e-6;

pub fn zchannel(cfg: &SweepConfig) -> Result<Report, CliError> {
    let grid = zchannel_grid();
    let b = cfg.log_base;
    let rows = cfg
        .lambdas
        .par_iter()
        .map(|&l| {
            let r = maximin_solve(
                &grid,
                1,
                l,
                SolverOptions {
                    tol: 1e-12,
                    max_iter: cfg.max_iter,
                },
            )?;
            let prior = r
                .prior
                .support()
                .iter()
                .zip(r.prior.weights())
                .find(|(p, _)| p.probs()[0] == 0.5)
                .map_or(0.0, |(_, &w)| w);
            let diff = (r.value - zchannel_value(l)).abs();
            Ok((
                diff <= ZCHANNEL_TOLERANCE,
                vec![
                    Cell::Num(l),
                    Cell::Num(zchannel_optimal_prior(l)),
                    Cell::Num(prior),
                    Cell::Num(b.scale(zchannel_value(l))),
                    Cell::Num(b.scale(r.value)),
                    Cell::Num(b.scale(diff)),
                ],
            ))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Report {
        ok: rows.iter().all(|(c, _)| *c),
        table: Table {
            command: "zchannel",
            log_base: b.name(),
            header: header(&[
                "lambda",
                "prior_closed_form",
                "prior_solver",
                "value_closed_form",
                "value_solver",
                "abs_diff",
            ]),
            rows: rows.into_iter().map(|(_, r)| r).collect(),
        },
    })
}

/// Slack for the endpoint ordering, covering the solver tolerances.
const ORDER_SLACK: f64 = 1e-6;

pub fn endpoints(cfg: &SweepConfig) -> Result<Report, CliError> {
    let grid = cfg.grid()?;
    let b = cfg.log_base;
    let per_n = cfg
        .ns
        .par_iter()
        .map(|&n| {
            let r0 = classical_redundancy_r0(n, &grid, cfg.tolerance, cfg.max_iter)?;
            let rn = shtarkov_regret(n, cfg.k)?;
            let mut rows = Vec::new();
            for &l in &cfg.lambdas {
                let r = renyi_redundancy(n, l, &grid, opts(cfg), cfg.gap_threshold)?;
                let ordered = r0.lower <= r.upper + ORDER_SLACK && r.lower <= rn + ORDER_SLACK;
                rows.push((
                    ordered,
                    vec![
                        Cell::Int(n as u64),
                        Cell::Num(l),
                        Cell::Num(b.scale(r0.lower)),
                        Cell::Num(b.scale(r.lower)),
                        Cell::Num(b.scale(r.upper)),
                        Cell::Num(b.scale(rn)),
                        Cell::Bool(ordered),
                    ],
                ));
            }
            Ok(rows)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let rows: Vec<_> = per_n.into_iter().flatten().collect();
    Ok(Report {
        ok: rows.iter().all(|(o, _)| *o),
        table: Table {
            command: "endpoints",
            log_base: b.name(),
            header: header(&["n", "lambda", "r0", "lower", "upper", "shtarkov", "ordered"]),
            rows: rows.into_iter().map(|(_, r)| r).collect(),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MixtureKind {
    Jeffreys,
    Modified,
    Equalizer,
}

pub fn mixture_dump(cfg: &SweepConfig, kind: MixtureKind) -> Result<Report, CliError> {
    let b = cfg.log_base;
    let grid = cfg.grid()?;
    let l = cfg.lambdas[0];
    let mut rows = Vec::new();
    for &n in &cfg.ns {
        let q = match kind {
            MixtureKind::Jeffreys => jeffreys_mixture(n, cfg.k)?,
            MixtureKind::Modified => {
                let spec = ModifiedPriorSpec::new(cfg.epsilon, cfg.c, n);
                if cfg.k == 2 {
                    modified_mixture_binary(&spec)?
                } else {
                    modified_mixture_general(&spec, cfg.k)?
                }
            }
            MixtureKind::Equalizer => {
                let r = maximin_solve(&grid, n, l, opts(cfg))?;
                equalizer_mixture(&r.prior, n, l)?
            }
        };
        for (t, &lp) in q.table().types().iter().zip(q.log_probs()) {
            let mut row = vec![Cell::Int(n as u64)];
            row.extend(t.counts().iter().map(|&c| Cell::Int(c as u64)));
            row.push(Cell::Num(b.scale(lp)));
            rows.push(row);
        }
    }
    let mut cols = vec!["n".to_string()];
    cols.extend((1..=cfg.k).map(|i| format!("t{i}")));
    cols.push("log_prob".into());
    Ok(Report {
        ok: true,
        table: Table {
            command: "mixture-dump",
            log_base: b.name(),
            header: cols,
            rows,
        },
    })
}

/// Parses `c1=<scale>`.
pub fn parse_fault(s: &str) -> Result<AuditConfig, String> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    if name != "c1" {
        return Err(format!("unknown fault {name:?}; supported: c1"));
    }
    let scale: f64 = value
        .parse()
        .map_err(|e| format!("bad scale {value:?}: {e}"))?;
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(format!("scale must be finite and positive, got {scale}"));
    }
    Ok(AuditConfig { c1_scale: scale })
}

pub fn audit(config: &AuditConfig) -> Result<BatterySummary, CliError> {
    Ok(run_battery(config)?)
}

pub fn audit_table(s: &BatterySummary) -> String {
    let width = s
        .reports
        .iter()
        .map(|r| r.name.len())
        .max()
        .unwrap_or(4)
        .max(4);
    let mut out = format!(
        "{:<width$}  {:>9}  {:>19}  status\n",
        "name", "points", "max_violation"
    );
    for r in &s.reports {
        out.push_str(&format!(
            "{:<width$}  {:>9}  {:>19}  {}\n",
            r.name,
            r.points,
            renyi_core::format::sig12(r.max_violation),
            if r.satisfied() { "ok" } else { "VIOLATED" }
        ));
    }
    out
}

pub fn audit_json(s: &BatterySummary) -> String {
    use crate::output::rounded;
    let reports: Vec<serde_json::Value> = s
        .reports
        .iter()
        .map(|r| {
            serde_json::json!({
                "name": r.name,
                "domain": r.domain,
                "points": r.points,
                "max_violation": rounded(r.max_violation),
                "satisfied": r.satisfied(),
                "witness": r.witness.iter().map(|&x| rounded(x)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let v = serde_json::json!({
        "schema_version": s.schema_version,
        "command": "audit",
        "all_satisfied": s.all_satisfied,
        "reports": reports,
    });
    serde_json::to_string_pretty(&v).expect("serializable") + "\n"
}
