//! On-disk result cache for classification runs.
//!
//! Classification is the only expensive command, so only its rows are cached:
//! one JSON file per (level, mode) pair under the cache directory.  The
//! directory comes from `BEAUVILLE_CACHE_DIR`, falling back to
//! `.beauville-cache` in the working directory.  Files carry a schema version;
//! entries with a different version, or that fail to parse, are ignored and
//! rewritten.  All cache failures are soft: a broken cache never fails a
//! command, it just costs a recomputation.

use std::fs;
use std::path::PathBuf;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

/// Bump when a cached row type changes shape.
const SCHEMA_VERSION: u32 = 1;

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "BEAUVILLE_CACHE_DIR";

/// Default cache directory, relative to the working directory.
pub const DEFAULT_CACHE_DIR: &str = ".beauville-cache";

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    schema_version: u32,
    payload: T,
}

/// Handle to the cache directory; a disabled cache reads and writes nothing.
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    /// Cache rooted at `BEAUVILLE_CACHE_DIR` or the default directory.
    pub fn from_env() -> Self {
        let dir = std::env::var_os(CACHE_DIR_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
        Cache { dir: Some(dir) }
    }

    /// Cache that never reads or writes, for `--no-cache`.
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn path_for(&self, mode: &str, n: u64) -> Option<PathBuf> {
        self.dir.as_ref().map(|dir| dir.join(format!("{mode}-{n}.json")))
    }

    /// Returns the cached row for `(mode, n)`, if a current-schema entry exists.
    pub fn read<T: DeserializeOwned>(&self, mode: &str, n: u64) -> Option<T> {
        let path = self.path_for(mode, n)?;
        let text = fs::read_to_string(path).ok()?;
        let envelope: Envelope<T> = serde_json::from_str(&text).ok()?;
        (envelope.schema_version == SCHEMA_VERSION).then_some(envelope.payload)
    }

    /// Stores a row for `(mode, n)`; failures are silently ignored.
    pub fn write<T: Serialize>(&self, mode: &str, n: u64, payload: &T) {
        let Some(path) = self.path_for(mode, n) else {
            return;
        };
        let envelope = Envelope {
            schema_version: SCHEMA_VERSION,
            payload,
        };
        let Ok(text) = serde_json::to_string_pretty(&envelope) else {
            return;
        };
        if let Some(dir) = path.parent() {
            if fs::create_dir_all(dir).is_err() {
                return;
            }
        }
        let _ = fs::write(path, text);
    }
}
