//! Numerical audits of the non-asymptotic inequalities behind the redundancy
//! asymptotics. Every audit sweeps a finite domain and reports the worst
//! violation together with the point that attains it.

pub mod battery;
pub mod bounds;
pub mod constants;
pub mod converse;
pub mod jeffreys;
pub mod laplace;
pub mod report;
pub mod sums;

pub use battery::{run_battery, AuditConfig, BatterySummary, BATTERY_SCHEMA_VERSION};
pub use bounds::{
    audit_edge_mass_bound, audit_integral_bound, audit_k_bounds, audit_t_bound,
    audit_uniform_divergence_bound, robbins_multinomial_bounds, stirling_gamma_bounds,
};
pub use constants::{constants, Constants};
pub use converse::{converse_lower_bound, ConverseBound};
pub use jeffreys::{jeffreys_gap, JeffreysGap};
pub use laplace::{
    laplace_decomposition_binary, laplace_decomposition_general, BinarySplit, GeneralSplit,
};
pub use report::{Audit, BoundReport};
