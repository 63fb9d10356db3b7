use serde::Serialize;
use serde_json::{Map, Value};
use tree_energy_core::alpha::EPS_FLOOR;
use tree_energy_core::spectral::EnergyOptions;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Everything that determines a command's numerical output.
///
/// The cache location is deliberately absent: output must not depend on it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub params: Map<String, Value>,
    pub format: Format,
    pub dense_cap: usize,
    pub polynomial_cap: usize,
    pub eps: f64,
    pub eigen_tolerance: f64,
    pub root_tolerance: f64,
    pub zero_clamp: f64,
    pub workers: usize,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(CliError::input("--workers must be at least 1"));
        }
        if self.dense_cap == 0 {
            return Err(CliError::input("--dense-cap must be at least 1"));
        }
        if !(self.eps >= EPS_FLOOR && self.eps.is_finite()) {
            return Err(CliError::input(format!(
                "--eps {:e} must be a finite value >= {EPS_FLOOR:e}",
                self.eps
            )));
        }
        for (name, v) in [
            ("--eigen-tol", self.eigen_tolerance),
            ("--root-tol", self.root_tolerance),
            ("--zero-clamp", self.zero_clamp),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::input(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn energy_options(&self) -> EnergyOptions {
        EnergyOptions {
            dense_cap: self.dense_cap,
            polynomial_cap: self.polynomial_cap,
            eigen_tolerance: self.eigen_tolerance,
            root_tolerance: self.root_tolerance,
            zero_clamp: self.zero_clamp,
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_owned(), value.into());
    }
}
