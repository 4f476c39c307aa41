use crate::error::CliError;
use clap::Args;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    Nats,
    Bits,
}

impl LogBase {
    /// Converts a value in nats to this base.
    pub fn scale(self, nats: f64) -> f64 {
        match self {
            LogBase::Nats => nats,
            LogBase::Bits => nats / std::f64::consts::LN_2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogBase::Nats => "nats",
            LogBase::Bits => "bits",
        }
    }
}

/// Flat sweep configuration. Every quantity is computed in nats and converted
/// to `log_base` only for display.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SweepConfig {
    pub k: usize,
    pub lambdas: Vec<f64>,
    pub ns: Vec<u32>,
    /// Points per side: grid size for `k = 2`, lattice denominator otherwise.
    pub grid_resolution: u32,
    /// Conditional-gradient stopping gap, nats.
    pub tolerance: f64,
    /// Largest bracket gap accepted as certified, nats.
    pub gap_threshold: f64,
    pub max_iter: usize,
    pub c: f64,
    pub epsilon: f64,
    pub delta: f64,
    pub log_base: LogBase,
    pub csv_out: Option<PathBuf>,
    pub json_out: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            k: 2,
            lambdas: vec![1.0],
            ns: (1..=8).collect(),
            grid_resolution: 2001,
            tolerance: 1e-6,
            gap_threshold: 1e-4,
            max_iter: 200_000,
            c: 0.25,
            epsilon: 0.05,
            delta: 0.1,
            log_base: LogBase::Nats,
            csv_out: None,
            json_out: None,
        }
    }
}

/// Flags that override fields of the config file.
#[derive(Debug, Clone, Default, Args)]
pub struct ConfigArgs {
    /// Flat JSON config file; flags given on the command line take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Comma-separated orders λ.
    #[arg(long = "lambda", value_delimiter = ',')]
    pub lambdas: Option<Vec<f64>>,
    /// Comma-separated block lengths.
    #[arg(long = "n", value_delimiter = ',')]
    pub ns: Option<Vec<u32>>,
    #[arg(long = "grid")]
    pub grid_resolution: Option<u32>,
    #[arg(long = "tol")]
    pub tolerance: Option<f64>,
    #[arg(long)]
    pub gap_threshold: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    #[arg(long)]
    pub c: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_enum)]
    pub log_base: Option<LogBase>,
    #[arg(long = "csv")]
    pub csv_out: Option<PathBuf>,
    #[arg(long = "json")]
    pub json_out: Option<PathBuf>,
}

impl ConfigArgs {
    pub fn resolve(&self) -> Result<SweepConfig, CliError> {
        let mut cfg = match &self.config {
            Some(p) => load(p)?,
            None => SweepConfig::default(),
        };
        macro_rules! over {
            ($($f:ident),*) => {$(if let Some(v) = &self.$f { cfg.$f = v.clone(); })*};
        }
        over!(
            k,
            lambdas,
            ns,
            grid_resolution,
            tolerance,
            gap_threshold,
            max_iter,
            c,
            epsilon,
            delta,
            log_base
        );
        if self.csv_out.is_some() {
            cfg.csv_out = self.csv_out.clone();
        }
        if self.json_out.is_some() {
            cfg.json_out = self.json_out.clone();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn load(path: &Path) -> Result<SweepConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::Usage(m));
        if self.k < 2 {
            return bad(format!("k must be at least 2, got {}", self.k));
        }
        if self.lambdas.is_empty() || self.lambdas.iter().any(|&l| !(l > 0.0 && l.is_finite())) {
            return bad("lambdas must be a nonempty list of finite positive values".into());
        }
        if self.ns.is_empty() || self.ns.contains(&0) {
            return bad("ns must be a nonempty list of positive block lengths".into());
        }
        if self.grid_resolution < 2 {
            return bad("grid_resolution must be at least 2".into());
        }
        if !(self.tolerance > 0.0) || !(self.gap_threshold > 0.0) || self.max_iter == 0 {
            return bad("tolerance, gap_threshold and max_iter must be positive".into());
        }
        if !(self.c > 0.0 && self.c < 0.5) {
            return bad(format!("c must lie in (0, 1/2), got {}", self.c));
        }
        if !(0.0..=1.0).contains(&self.epsilon) {
            return bad(format!("epsilon must lie in [0, 1], got {}", self.epsilon));
        }
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return bad(format!("delta must lie in (0, 1), got {}", self.delta));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<renyi_core::ParameterGrid, CliError> {
        let g = if self.k == 2 {
            renyi_core::ParameterGrid::binary(self.grid_resolution as usize)
        } else {
            renyi_core::ParameterGrid::lattice(self.k, self.grid_resolution)
        };
        g.map_err(|e| CliError::Usage(e.to_string()))
    }
}
