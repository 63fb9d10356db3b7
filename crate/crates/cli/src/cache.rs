//! On-disk energy cache keyed by canonical code, method and tolerances.
//!
//! Entries record the engine version; an entry written by another version is
//! ignored and overwritten. Floats are stored as their bit patterns so that a
//! cached answer is bit-identical to a recomputed one.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use tree_energy_core::spectral::{energy, EnergyOptions, EnergyResult, Method};
use tree_energy_core::tree::canonical_code;
use tree_energy_core::{CanonicalCode, Tree, ENGINE_VERSION};

use crate::error::Result;

#[derive(Debug, Serialize, Deserialize)]
struct Entry {
    engine_version: String,
    method: String,
    code: String,
    tolerance: String,
    value_bits: u64,
    error_bound_bits: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CacheStats {
    pub hits: usize,
    pub misses: usize,
}

#[derive(Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
    version: String,
    hits: AtomicUsize,
    misses: AtomicUsize,
    writes: AtomicUsize,
}

impl Cache {
    pub fn disabled() -> Self {
        Self::with_version(None, ENGINE_VERSION)
    }

    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Self::with_version(Some(dir.into()), ENGINE_VERSION)
    }

    /// A cache that stamps and accepts entries for `version` only.
    pub fn with_version(dir: Option<PathBuf>, version: &str) -> Self {
        Self {
            dir,
            version: version.to_owned(),
            hits: AtomicUsize::new(0),
            misses: AtomicUsize::new(0),
            writes: AtomicUsize::new(0),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn stats(&self) -> CacheStats {
        CacheStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    /// Energy of `t`, served from disk when possible.
    pub fn energy(&self, t: &Tree, method: Method, opts: &EnergyOptions) -> Result<EnergyResult> {
        let Some(dir) = &self.dir else {
            return Ok(energy(t, method, opts)?);
        };
        let code = canonical_code(t)?;
        let tolerance = tolerance_key(method, opts);
        let path = entry_path(dir, &code, method, &tolerance);
        if let Some(hit) = self.load(&path, &code, method, &tolerance) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return Ok(hit);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let result = energy(t, method, opts)?;
        self.store(&path, &code, method, &tolerance, &result);
        Ok(result)
    }

    fn load(&self, path: &Path, code: &CanonicalCode, method: Method, tolerance: &str) -> Option<EnergyResult> {
        let bytes = match fs::read(path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("cache entry {} unreadable ({e}); recomputing", path.display());
                return None;
            }
        };
        let entry: Entry = match serde_json::from_slice(&bytes) {
            Ok(e) => e,
            Err(e) => {
                log::warn!("cache entry {} is corrupt ({e}); recomputing", path.display());
                return None;
            }
        };
        if entry.engine_version != self.version {
            log::debug!("cache entry {} from {} ignored", path.display(), entry.engine_version);
            return None;
        }
        if entry.method != method.name() || entry.tolerance != tolerance || entry.code.as_bytes() != code.as_bytes() {
            log::warn!("cache entry {} does not match its key; recomputing", path.display());
            return None;
        }
        Some(EnergyResult {
            value: f64::from_bits(entry.value_bits),
            method,
            error_bound: f64::from_bits(entry.error_bound_bits),
        })
    }

    fn store(&self, path: &Path, code: &CanonicalCode, method: Method, tolerance: &str, r: &EnergyResult) {
        let entry = Entry {
            engine_version: self.version.clone(),
            method: method.name().to_owned(),
            code: code.to_string(),
            tolerance: tolerance.to_owned(),
            value_bits: r.value.to_bits(),
            error_bound_bits: r.error_bound.to_bits(),
        };
        let bytes = serde_json::to_vec(&entry).expect("entry serializes");
        let n = self.writes.fetch_add(1, Ordering::Relaxed);
        let tmp = path.with_extension(format!("tmp{}.{n}", std::process::id()));
        let written = path
            .parent()
            .map_or(Ok(()), fs::create_dir_all)
            .and_then(|()| fs::write(&tmp, &bytes))
            .and_then(|()| fs::rename(&tmp, path));
        if let Err(e) = written {
            let _ = fs::remove_file(&tmp);
            log::warn!("could not write cache entry {}: {e}", path.display());
        }
    }
}

fn tolerance_key(method: Method, opts: &EnergyOptions) -> String {
    let dense = format!("eig={:e},clamp={:e}", opts.eigen_tolerance, opts.zero_clamp);
    let poly = format!("root={:e}", opts.root_tolerance);
    match method {
        Method::Dense => dense,
        Method::Polynomial => poly,
        Method::Cross => format!("{dense},{poly}"),
    }
}

fn entry_path(dir: &Path, code: &CanonicalCode, method: Method, tolerance: &str) -> PathBuf {
    let mut h = Sha256::new();
    h.update(code.as_bytes());
    h.update([0]);
    h.update(method.name());
    h.update([0]);
    h.update(tolerance);
    let key = hex::encode(h.finalize());
    dir.join(&key[..2]).join(format!("{key}.json"))
}
