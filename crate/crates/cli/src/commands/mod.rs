mod alpha;
mod census;
mod conjecture;
mod energy;
mod minimal;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde_json::Map;
use tree_energy_core::spectral::{energy_enclosure, matching_polynomial, EnergyOptions, EnergyResult, Method, TIE_ROOT_TOLERANCE};
use tree_energy_core::Tree;

use crate::cache::{Cache, CacheStats};
use crate::cli::{Cli, Command};
use crate::config::RunConfig;
use crate::error::{CliError, Result};
use crate::output::Table;

/// The rendered main table plus what produced it.
#[derive(Debug)]
pub struct RunOutput {
    pub config: RunConfig,
    pub table: Table,
    pub text: String,
    pub cache: CacheStats,
}

pub(crate) struct Context {
    pub config: RunConfig,
    pub cache: Cache,
    pool: rayon::ThreadPool,
}

impl Context {
    pub fn opts(&self) -> EnergyOptions {
        self.config.energy_options()
    }

    /// Energies in input order; `None` picks the method per tree size.
    pub fn energies(&self, trees: &[Tree], method: Option<Method>) -> Result<Vec<EnergyResult>> {
        let opts = self.opts();
        self.pool.install(|| {
            trees
                .par_iter()
                .map(|t| {
                    let m = method.unwrap_or_else(|| Method::auto(t.n(), &opts));
                    self.cache.energy(t, m, &opts)
                })
                .collect()
        })
    }

    /// Writes an auxiliary output file.
    pub fn write_file(&self, path: &Path, contents: &str) -> Result<()> {
        std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
    }
}

/// Whether `E < threshold`, resolving near-equal cases with a tight
/// enclosure when the tree is small enough. Equal within 1e-12 counts as
/// not below.
pub(crate) fn energy_below(t: &Tree, r: &EnergyResult, threshold: f64, opts: &EnergyOptions) -> Result<bool> {
    if r.value + r.error_bound < threshold {
        return Ok(true);
    }
    if r.value - r.error_bound > threshold {
        return Ok(false);
    }
    if t.n() > opts.polynomial_cap {
        log::warn!(
            "energy {} of a tree with n={} is within its error bound of {threshold}; comparing the estimate",
            r.value,
            t.n()
        );
        return Ok(r.value < threshold);
    }
    let e = energy_enclosure(&matching_polynomial(t)?, TIE_ROOT_TOLERANCE)?;
    if e.hi < threshold - 1e-12 {
        Ok(true)
    } else if e.lo > threshold + 1e-12 {
        Ok(false)
    } else {
        log::info!("energy of a tree with n={} equals {threshold} to 1e-12; not counted as below", t.n());
        Ok(false)
    }
}

fn default_cache_dir() -> Option<PathBuf> {
    let base = std::env::var_os("XDG_CACHE_HOME")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or_else(|| std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache")))?;
    Some(base.join("tree-energy"))
}

pub fn run(cli: Cli) -> Result<RunOutput> {
    let g = &cli.global;
    let workers = g
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let config = RunConfig {
        command: String::new(),
        params: Map::new(),
        format: g.format,
        dense_cap: g.dense_cap,
        polynomial_cap: g.poly_cap,
        eps: g.eps,
        eigen_tolerance: g.eigen_tol,
        root_tolerance: g.root_tol,
        zero_clamp: g.zero_clamp,
        workers,
    };
    config.validate()?;
    let cache = match (&g.cache_dir, g.no_cache) {
        (_, true) => Cache::disabled(),
        (Some(dir), false) => Cache::new(dir),
        (None, false) => default_cache_dir().map_or_else(Cache::disabled, Cache::new),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::input(format!("cannot start {workers} workers: {e}")))?;
    let mut ctx = Context { config, cache, pool };

    let table = match &cli.command {
        Command::Alpha { d } => alpha::run(&mut ctx, *d)?,
        Command::Energy { tree, method, spectrum } => energy::energy(&mut ctx, tree, *method, spectrum.as_deref())?,
        Command::Construct { tree, write, write_format } => {
            energy::construct(&mut ctx, tree, write.as_deref(), *write_format)?
        }
        Command::Conjecture1 { max_level, plot } => conjecture::run(&mut ctx, *max_level, plot.as_deref())?,
        Command::Minimal { n, d } => minimal::run(&mut ctx, *n, *d)?,
        Command::HypoCensus {
            max_n,
            max_degree,
            sweep_d,
            sweep_max,
            sweep_full,
            sweep_stride,
            sweep_out,
        } => census::run(
            &mut ctx,
            census::CensusArgs {
                max_n: *max_n,
                max_degree: *max_degree,
                sweep_d: *sweep_d,
                sweep_max: *sweep_max,
                sweep_full: *sweep_full,
                sweep_stride: *sweep_stride,
            },
            sweep_out.as_deref(),
        )?,
    };
    let text = table.render(&ctx.config, ctx.config.format)?;
    if let Some(path) = &g.out {
        ctx.write_file(path, &text)?;
    }
    Ok(RunOutput {
        cache: ctx.cache.stats(),
        config: ctx.config,
        table,
        text,
    })
}
