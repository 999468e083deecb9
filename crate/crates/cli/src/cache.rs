//! Content-addressed store for expensive intermediate results.
//!
//! Entries live in `<dir>/<sha256>.json`, keyed by the cache version, a kind
//! tag and the serialized parameters. A version bump changes every key, so
//! old entries simply stop being found.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const CACHE_VERSION: u32 = 1;

/// Environment variable overriding `--cache-dir`.
pub const CACHE_ENV: &str = "SKEIN_CACHE_DIR";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache io error at {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("corrupt cache entry {path}: {why}")]
    Corrupt { path: PathBuf, why: String },
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    version: u32,
    kind: String,
    payload: T,
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    version: u32,
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, CacheError> {
        Self::with_version(dir, CACHE_VERSION)
    }

    pub fn with_version(dir: impl Into<PathBuf>, version: u32) -> Result<Self, CacheError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| CacheError::Io { path: dir.clone(), source })?;
        Ok(Self { dir, version })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(&self, kind: &str, params: &impl Serialize) -> String {
        let p = serde_json::to_string(params).expect("cache parameters serialize");
        let mut h = Sha256::new();
        h.update(format!("v{}\0{kind}\0{p}", self.version).as_bytes());
        hex::encode(h.finalize())
    }

    pub fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// `Ok(None)` on a miss.
    pub fn get<T: DeserializeOwned>(&self, kind: &str, params: &impl Serialize) -> Result<Option<T>, CacheError> {
        let path = self.path(&self.key(kind, params));
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(source) => return Err(CacheError::Io { path, source }),
        };
        let env: Envelope<T> =
            serde_json::from_slice(&bytes).map_err(|e| CacheError::Corrupt { path: path.clone(), why: e.to_string() })?;
        if env.version != self.version || env.kind != kind {
            return Err(CacheError::Corrupt { path, why: format!("stamped {} v{}", env.kind, env.version) });
        }
        Ok(Some(env.payload))
    }

    /// Writes through a temporary file so readers never see a partial entry.
    pub fn put<T: Serialize>(&self, kind: &str, params: &impl Serialize, value: &T) -> Result<(), CacheError> {
        let key = self.key(kind, params);
        let path = self.path(&key);
        let env = Envelope { version: self.version, kind: kind.to_string(), payload: value };
        let bytes = serde_json::to_vec(&env).expect("cache payload serializes");
        let tmp = self.dir.join(format!("{key}.{}.tmp", std::process::id()));
        fs::write(&tmp, bytes).map_err(|source| CacheError::Io { path: tmp.clone(), source })?;
        fs::rename(&tmp, &path).map_err(|source| CacheError::Io { path, source })
    }

    pub fn invalidate(&self, kind: &str, params: &impl Serialize) -> Result<bool, CacheError> {
        let path = self.path(&self.key(kind, params));
        match fs::remove_file(&path) {
            Ok(()) => Ok(true),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Ok(false),
            Err(source) => Err(CacheError::Io { path, source }),
        }
    }

    /// Returns the cached value or computes and stores it. Cache trouble is
    /// reported on stderr and never stops the computation.
    pub fn get_or_compute<T, E>(
        cache: Option<&Cache>,
        kind: &str,
        params: &impl Serialize,
        compute: impl FnOnce() -> Result<T, E>,
    ) -> Result<T, E>
    where
        T: Serialize + DeserializeOwned,
    {
        let Some(c) = cache else { return compute() };
        match c.get(kind, params) {
            Ok(Some(v)) => return Ok(v),
            Ok(None) => {}
            Err(e) => eprintln!("warning: {e}; recomputing"),
        }
        let v = compute()?;
        if let Err(e) = c.put(kind, params, &v) {
            eprintln!("warning: {e}");
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_depend_on_version() {
        let d = tempfile::tempdir().unwrap();
        let a = Cache::open(d.path()).unwrap();
        let b = Cache::with_version(d.path(), CACHE_VERSION + 1).unwrap();
        assert_ne!(a.key("k", &1), b.key("k", &1));
        assert_eq!(a.key("k", &1), a.key("k", &1));
    }
}
