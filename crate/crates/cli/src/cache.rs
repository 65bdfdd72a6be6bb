//! File-backed result cache: one human-inspectable JSON document mapping
//! `(canonical group spec, constant kind)` to solved values.
//!
//! Hits are served only from exact-status entries written by the same tool
//! version. Writes go through a sibling advisory lock file plus an atomic
//! rename, so concurrent invocations do not interleave partial documents.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub value: u64,
    pub status: String,
    pub witness_path: Option<String>,
    pub timestamp: u64,
    pub tool_version: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct CacheDoc {
    schema_version: u32,
    entries: BTreeMap<String, CacheEntry>,
}

impl Default for CacheDoc {
    fn default() -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            entries: BTreeMap::new(),
        }
    }
}

#[derive(Debug)]
pub struct ResultCache {
    path: PathBuf,
    doc: CacheDoc,
}

fn lock_path(path: &Path) -> PathBuf {
    let mut p = path.as_os_str().to_owned();
    p.push(".lock");
    PathBuf::from(p)
}

struct LockGuard(PathBuf);

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn acquire_lock(path: &Path) -> io::Result<LockGuard> {
    let lock = lock_path(path);
    for _ in 0..40 {
        match fs::OpenOptions::new().write(true).create_new(true).open(&lock) {
            Ok(_) => return Ok(LockGuard(lock)),
            Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                std::thread::sleep(std::time::Duration::from_millis(25));
            }
            Err(e) => return Err(e),
        }
    }
    // assume the holder died; take over
    let _ = fs::remove_file(&lock);
    fs::OpenOptions::new()
        .write(true)
        .create_new(true)
        .open(&lock)?;
    Ok(LockGuard(lock))
}

impl ResultCache {
    /// Load the cache at `path`; a missing file or an unreadable/foreign
    /// schema yields an empty cache (it will be rewritten on save).
    pub fn open(path: impl Into<PathBuf>) -> Self {
        let path = path.into();
        let doc = fs::read_to_string(&path)
            .ok()
            .and_then(|text| serde_json::from_str::<CacheDoc>(&text).ok())
            .filter(|d| d.schema_version == SCHEMA_VERSION)
            .unwrap_or_default();
        Self { path, doc }
    }

    pub fn key(spec: &str, kind: &str) -> String {
        format!("{spec}|{kind}")
    }

    /// An entry usable as a cache hit: exact status and same tool version.
    pub fn get(&self, spec: &str, kind: &str) -> Option<&CacheEntry> {
        self.doc
            .entries
            .get(&Self::key(spec, kind))
            .filter(|e| e.status == "exact" && e.tool_version == TOOL_VERSION)
    }

    pub fn put(&mut self, spec: &str, kind: &str, value: u64, status: &str, witness_path: Option<String>) {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        self.doc.entries.insert(
            Self::key(spec, kind),
            CacheEntry {
                value,
                status: status.to_string(),
                witness_path,
                timestamp,
                tool_version: TOOL_VERSION.to_string(),
            },
        );
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.doc.entries.len()
    }

    #[cfg(test)]
    pub fn is_empty(&self) -> bool {
        self.doc.entries.is_empty()
    }

    pub fn save(&self) -> io::Result<()> {
        if let Some(dir) = self.path.parent() {
            if !dir.as_os_str().is_empty() {
                fs::create_dir_all(dir)?;
            }
        }
        let _guard = acquire_lock(&self.path)?;
        let tmp = self.path.with_extension("json.tmp");
        fs::write(&tmp, serde_json::to_string_pretty(&self.doc)?)?;
        fs::rename(&tmp, &self.path)?;
        Ok(())
    }
}

/// Default cache location: `$XDG_CACHE_HOME/zerosum/cache.json`, falling
/// back to `$HOME/.cache/zerosum/cache.json`, then the working directory.
pub fn default_cache_path() -> PathBuf {
    if let Ok(xdg) = std::env::var("XDG_CACHE_HOME") {
        if !xdg.is_empty() {
            return PathBuf::from(xdg).join("zerosum").join("cache.json");
        }
    }
    if let Ok(home) = std::env::var("HOME") {
        if !home.is_empty() {
            return PathBuf::from(home)
                .join(".cache")
                .join("zerosum")
                .join("cache.json");
        }
    }
    PathBuf::from(".zerosum-cache.json")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_file_is_empty() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::open(dir.path().join("cache.json"));
        assert!(cache.is_empty());
    }

    #[test]
    fn round_trip_and_hit_rules() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let mut cache = ResultCache::open(&path);
        cache.put("6^2", "D", 11, "exact", None);
        cache.put("6^2", "eta", 20, "node-capped", None);
        cache.save().unwrap();

        let back = ResultCache::open(&path);
        assert_eq!(back.len(), 2);
        assert_eq!(back.get("6^2", "D").unwrap().value, 11);
        // non-exact entries are stored but never hit
        assert!(back.get("6^2", "eta").is_none());
        assert!(back.get("4", "D").is_none());
    }

    #[test]
    fn foreign_tool_version_is_not_a_hit() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let mut cache = ResultCache::open(&path);
        cache.put("6^2", "D", 11, "exact", None);
        cache.save().unwrap();
        let mut text = fs::read_to_string(&path).unwrap();
        text = text.replace(TOOL_VERSION, "0.0.0-other");
        fs::write(&path, text).unwrap();
        let back = ResultCache::open(&path);
        assert!(back.get("6^2", "D").is_none());
        assert_eq!(back.len(), 1);
    }

    #[test]
    fn foreign_schema_is_ignored() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        fs::write(&path, r#"{"schema_version": 999, "entries": {}}"#).unwrap();
        let cache = ResultCache::open(&path);
        assert!(cache.is_empty());
    }

    #[test]
    fn lock_file_is_released() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cache.json");
        let mut cache = ResultCache::open(&path);
        cache.put("4", "D", 4, "exact", None);
        cache.save().unwrap();
        cache.save().unwrap();
        assert!(!lock_path(&path).exists());
    }
}
