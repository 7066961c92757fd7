//! Run configuration shared by the command-line subcommands.
//!
//! Values come from, in increasing priority: built-in defaults, the JSON file
//! named by `SL2R_CONFIG`, the file given with `--config`, and explicit flags.

use crate::error::{domain, Result};
use crate::io::read_json;
use crate::kernels::{KernelConfig, SpectralCutoffs};
use crate::transform::{RadialGrid, SpectralQuadrature};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

/// Environment variable naming the default config file.
pub const CONFIG_ENV: &str = "SL2R_CONFIG";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QuadratureConfig {
    /// Outer radius of the radial grid.
    pub r_max: f64,
    /// Gauss–Legendre order per radial panel.
    pub order: usize,
    /// Hard stop of spectral integrals.
    pub lambda_max: f64,
    /// Relative size at which spectral integrals are truncated.
    pub rel_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        let q = SpectralQuadrature::default();
        QuadratureConfig { r_max: 30.0, order: 12, lambda_max: q.lambda_max, rel_tol: q.rel_tol }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub m: i64,
    pub alpha: f64,
    pub quadrature: QuadratureConfig,
    /// Replaces the default `α_m`.
    pub alpha_m: Option<f64>,
    pub out: Option<PathBuf>,
    pub plot_data: Option<PathBuf>,
    pub seed: u64,
    pub threads: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            m: 0,
            alpha: 0.0,
            quadrature: QuadratureConfig::default(),
            alpha_m: None,
            out: None,
            plot_data: None,
            seed: 7,
            threads: 1,
        }
    }
}

impl RunConfig {
    /// Defaults overlaid with `explicit`, or else the file named by [`CONFIG_ENV`].
    pub fn load(explicit: Option<&Path>) -> Result<Self> {
        Self::load_with(explicit, std::env::var_os(CONFIG_ENV).map(PathBuf::from))
    }

    /// As [`RunConfig::load`], with the value of the environment variable given.
    pub fn load_with(explicit: Option<&Path>, from_env: Option<PathBuf>) -> Result<Self> {
        let cfg = match explicit.map(Path::to_path_buf).or(from_env) {
            Some(p) => read_json(&p)?,
            None => RunConfig::default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let q = &self.quadrature;
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(domain(format!("alpha = {} must be finite and nonnegative", self.alpha)));
        }
        if !(q.r_max >= 10.0 && q.r_max.is_finite()) {
            return Err(domain(format!("r_max = {} must be at least 10", q.r_max)));
        }
        if !(2..=64).contains(&q.order) {
            return Err(domain(format!("order = {} must lie in 2..=64", q.order)));
        }
        if !(q.lambda_max > 1.0) || !(q.rel_tol > 0.0 && q.rel_tol < 1e-3) {
            return Err(domain("lambda_max must exceed 1 and rel_tol lie in (0, 1e-3)"));
        }
        if self.threads == 0 {
            return Err(domain("threads must be at least 1"));
        }
        self.cutoffs().map(|_| ())
    }

    pub fn cutoffs(&self) -> Result<SpectralCutoffs> {
        match self.alpha_m {
            Some(a) => SpectralCutoffs::with_alpha_m(self.m, self.alpha, a),
            None => SpectralCutoffs::new(self.m, self.alpha),
        }
    }

    pub fn spectral(&self) -> SpectralQuadrature {
        SpectralQuadrature {
            lambda_max: self.quadrature.lambda_max,
            rel_tol: self.quadrature.rel_tol,
            ..SpectralQuadrature::default()
        }
    }

    pub fn grid(&self) -> Result<RadialGrid> {
        RadialGrid::graded(self.quadrature.r_max, self.quadrature.order)
    }

    pub fn kernel(&self) -> Result<KernelConfig> {
        Ok(KernelConfig { grid: self.grid()?, quad: self.spectral() })
    }
}
