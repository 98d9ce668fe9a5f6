//! On-disk cache for expensive tables.
//!
//! Entries are the exact bytes the computation would have produced, stored
//! under a SHA-256 key of the schema version and the generating parameters.
//! An entry that fails its validity check is recomputed and overwritten.

use std::path::{Path, PathBuf};

use green_core::files::{content_hash, write_atomic};
use log::{debug, warn};

pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Self { dir: Some(dir) }
    }

    pub fn disabled() -> Self {
        Self { dir: None }
    }

    /// Default location when neither the flag nor the environment sets one.
    pub fn default_dir() -> PathBuf {
        std::env::temp_dir().join("green-cache")
    }

    pub fn key(schema: &str, params: &[&str]) -> String {
        // length-prefixed so that parameter boundaries are unambiguous
        let mut material = format!("{}:{schema}", schema.len());
        for p in params {
            material.push_str(&format!("{}:{p}", p.len()));
        }
        content_hash(material.as_bytes())
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Returns the cached text for `key` if `valid` accepts it, otherwise
    /// computes, stores and returns fresh text. Failing to store is only a
    /// warning.
    pub fn get_or_compute<E>(
        &self,
        key: &str,
        valid: impl Fn(&str) -> bool,
        compute: impl FnOnce() -> Result<String, E>,
    ) -> Result<String, E> {
        let Some(path) = self.path(key) else {
            return compute();
        };
        match std::fs::read_to_string(&path) {
            Ok(text) if valid(&text) => {
                debug!("cache hit {}", path.display());
                return Ok(text);
            }
            Ok(_) => warn!("cache entry {} is corrupt; recomputing", path.display()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => warn!("cannot read cache entry {}: {e}; recomputing", path.display()),
        }
        let text = compute()?;
        store(&path, &text);
        Ok(text)
    }
}

fn store(path: &Path, text: &str) {
    if let Err(e) = write_atomic(path, text.as_bytes()) {
        warn!("cannot write cache entry {}: {e}", path.display());
    }
}
