use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tree_energy_core::spectral::Method;

use crate::config::Format;
use crate::io::TreeSpec;

#[derive(Debug, Parser)]
#[command(name = "tree-energy", version, about = "Energies of extremal trees and related experiments")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,

    /// Energy cache location [default: $XDG_CACHE_HOME/tree-energy or ~/.cache/tree-energy]
    #[arg(long, global = true, env = "TREE_ENERGY_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    #[arg(long, global = true)]
    pub no_cache: bool,

    /// Worker threads for per-tree energy evaluation [default: available cores]
    #[arg(long, global = true)]
    pub workers: Option<usize>,

    /// Largest tree accepted by the dense eigensolver.
    #[arg(long, global = true, default_value_t = 8192)]
    pub dense_cap: usize,

    /// Largest tree accepted by exact polynomial root isolation.
    #[arg(long, global = true, default_value_t = 256)]
    pub poly_cap: usize,

    /// Accuracy of the asymptotic constant.
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub eps: f64,

    #[arg(long, global = true, default_value_t = 1e-10)]
    pub eigen_tol: f64,

    #[arg(long, global = true, default_value_t = 1e-12)]
    pub root_tol: f64,

    #[arg(long, global = true, default_value_t = 1e-10)]
    pub zero_clamp: f64,

    /// Write the main table here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Table of the asymptotic energy-per-vertex constant.
    Alpha {
        /// Branching parameters, `a..b` (inclusive) or a single value.
        #[arg(long, default_value = "2..4")]
        d: Span,
    },
    /// Energy of one tree: `cstar:d,h`, `bn:n`, `tstar:n,d` or a file.
    Energy {
        tree: TreeSpec,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Also write the eigenvalues as CSV.
        #[arg(long)]
        spectrum: Option<PathBuf>,
    },
    /// Build a tree and describe it.
    Construct {
        tree: TreeSpec,
        /// Write the tree to this file.
        #[arg(long)]
        write: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "edges")]
        write_format: TreeFormat,
    },
    /// Energy per vertex of the apex trees against the binary constant.
    Conjecture1 {
        #[arg(long, default_value_t = 10)]
        max_level: usize,
        /// Two-column `level ratio` file for plotting.
        #[arg(long)]
        plot: Option<PathBuf>,
    },
    /// Exhaustive minimum-energy search per vertex count.
    Minimal {
        #[arg(long)]
        n: Span,
        #[arg(long, default_value_t = 2)]
        d: usize,
    },
    /// Count hypoenergetic trees of bounded degree, and scan T*(n, d).
    HypoCensus {
        #[arg(long, default_value_t = 16)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        /// Branching parameter of the constructed family.
        #[arg(long, default_value_t = 3)]
        sweep_d: usize,
        #[arg(long, default_value_t = 2000)]
        sweep_max: usize,
        /// Every n up to this value is evaluated.
        #[arg(long, default_value_t = 300)]
        sweep_full: usize,
        /// Step between evaluated n beyond `--sweep-full`.
        #[arg(long, default_value_t = 50)]
        sweep_stride: usize,
        /// Write the per-n scan of the constructed family here.
        #[arg(long)]
        sweep_out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Dense,
    Polynomial,
    Cross,
}

impl MethodArg {
    pub fn method(self) -> Option<Method> {
        match self {
            MethodArg::Auto => None,
            MethodArg::Dense => Some(Method::Dense),
            MethodArg::Polynomial => Some(Method::Polynomial),
            MethodArg::Cross => Some(Method::Cross),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormat {
    Edges,
    Graph6,
}

/// Inclusive integer range written `a..b`, `a..=b` or `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    pub fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("{t:?} is not a non-negative integer"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}
