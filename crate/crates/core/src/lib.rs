#![allow(clippy::neg_cmp_op_on_partial_ord)]
//! Minimax Rényi redundancy for discrete memoryless sources.
//!
//! Everything is computed in nats. Probabilities that may underflow are
//! carried as logarithms.

pub mod audit;
pub mod error;
pub mod format;
pub mod grid;
pub mod logspace;
pub mod measures;
pub mod mixtures;
pub mod quadrature;
pub mod simplex;
pub mod solver;
pub mod special;

pub use error::{Error, Result};
pub use grid::{GridDescriptor, ParameterGrid};
pub use logspace::{log_sum_exp, LogValue, Sign};
pub use measures::{
    alpha_mutual_information, binary_divergence, campbell_cost, renyi_divergence,
    sundaresan_divergence, CodeLengths, FiniteDistribution, RenyiOrder,
};
pub use mixtures::{
    divergence_to_mixture, jeffreys_mixture, modified_mixture_binary, modified_mixture_general,
    DiscretePrior, ExchangeableMixture, ModifiedPriorSpec, TypeTable,
};
pub use simplex::{SimplexPoint, TypeVector};
pub use solver::{renyi_redundancy, RedundancyBracket, SolverOptions};
