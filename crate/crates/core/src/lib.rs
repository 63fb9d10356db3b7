#![no_std]
//! Minimal-energy trees of bounded degree.
//!
//! This crate builds the extremal tree families (complete `d`-ary trees,
//! the apex family `B_n` and the minimal-energy tree `T*(n, d)` obtained from
//! a restricted base-`d` digit expansion), computes tree spectra and energies
//! through two independent engines, evaluates the asymptotic energy constant
//! `alpha_d` with a certified truncation bound, and enumerates bounded-degree
//! free trees for exhaustive checks.
//!
//! Everything here is pure computation on `alloc` types. File formats, the
//! on-disk cache and the command line live in the companion `tree-energy`
//! crate.

extern crate alloc;

pub mod alpha;
pub mod enumeration;
mod error;
pub mod spectral;
pub mod tree;

pub use error::{Error, Result};
pub use tree::{CanonicalCode, DigitalExpansion, RootedTree, Terminal, Tree};

/// Version tag of the numerical engines; bump whenever results may change.
pub const ENGINE_VERSION: &str = "tree-energy-engine/1";
