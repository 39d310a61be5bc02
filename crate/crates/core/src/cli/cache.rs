//! On-disk cache of report documents keyed by a hash of the inputs that
//! determine them.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::document::{ReportDocument, SCHEMA_VERSION};
use crate::error::Result;

/// Overrides the cache directory when `--cache-dir` is absent.
pub const CACHE_DIR_ENV: &str = "TIGHTHILBERT_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CacheKey {
    pub schema_version: u32,
    pub command: String,
    pub params: Vec<(String, String)>,
}

impl CacheKey {
    pub fn new(command: &str, params: &[(&str, String)]) -> Self {
        let mut params: Vec<(String, String)> = params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        params.sort();
        CacheKey {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            params,
        }
    }

    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("plain data serializes");
        hex::encode(Sha256::digest(&bytes))
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    /// `explicit`, else the environment override, else no cache.
    pub fn from_sources(explicit: Option<&Path>) -> Option<Self> {
        explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// A missing entry is a miss; an unreadable one is logged and treated as a miss.
    pub fn get(&self, key: &CacheKey) -> Option<ReportDocument> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => {
                log::warn!("ignoring unreadable cache entry {}: {e}", path.display());
                return None;
            }
        };
        match ReportDocument::from_json(&text) {
            Ok(doc) => Some(doc),
            Err(e) => {
                log::warn!("ignoring corrupt cache entry {}: {e}", path.display());
                None
            }
        }
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// into place.
    pub fn put(&self, key: &CacheKey, doc: &ReportDocument) -> Result<()> {
        fs::create_dir_all(&self.dir)?;
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(doc.to_json()?.as_bytes())?;
        tmp.persist(self.path(key)).map_err(|e| e.error)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn put_get_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let key = CacheKey::new("verify", &[("scenario", "5,4,4".into()), ("nmax", "5".into())]);
        assert!(cache.get(&key).is_none());
        let mut doc = ReportDocument::new("verify");
        doc.param("scenario", "5,4,4");
        cache.put(&key, &doc).unwrap();
        assert_eq!(cache.get(&key).unwrap(), doc);
        fs::write(cache.path(&key), "{ not json").unwrap();
        assert!(cache.get(&key).is_none());
    }

    #[test]
    fn key_ignores_param_order() {
        let a = CacheKey::new("verify", &[("a", "1".into()), ("b", "2".into())]);
        let b = CacheKey::new("verify", &[("b", "2".into()), ("a", "1".into())]);
        assert_eq!(a.digest(), b.digest());
        assert_ne!(
            a.digest(),
            CacheKey::new("hilbert", &[("a", "1".into()), ("b", "2".into())]).digest()
        );
    }
}
