//! Content-addressed result cache: one JSON file per computed object, keyed
//! by (object kind, family, n, strategy), carrying a version tag and a
//! sha256 of the payload. Mismatched version or hash invalidates the entry;
//! the cache is advisory and deleting it only costs recomputation.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_DIR_ENV: &str = "SUBSUM_CACHE_DIR";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CacheEntry {
    pub version: u32,
    pub object: String,
    pub family: String,
    pub n: u64,
    pub strategy: String,
    pub payload: Value,
    pub sha256: String,
}

fn payload_hash(payload: &Value) -> String {
    let canonical = serde_json::to_string(payload).expect("payload serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Resolve the cache directory: explicit flag, then the environment
/// override, then the user cache root.
pub fn resolve_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(dir) = flag {
        return Some(dir.to_path_buf());
    }
    if let Ok(dir) = std::env::var(CACHE_DIR_ENV) {
        if !dir.is_empty() {
            return Some(PathBuf::from(dir));
        }
    }
    if let Ok(xdg) = std::env::var("XDG_CACHE_HOME") {
        if !xdg.is_empty() {
            return Some(PathBuf::from(xdg).join("subsum"));
        }
    }
    std::env::var("HOME")
        .ok()
        .map(|home| PathBuf::from(home).join(".cache").join("subsum"))
}

fn entry_path(dir: &Path, object: &str, family: &str, n: u64, strategy: &str) -> PathBuf {
    dir.join(format!("{object}__{family}__{n}__{strategy}.json"))
}

/// Load a valid cache entry's payload, if present.
pub fn load(dir: &Path, object: &str, family: &str, n: u64, strategy: &str) -> Option<Value> {
    let path = entry_path(dir, object, family, n, strategy);
    let text = fs::read_to_string(path).ok()?;
    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
    if entry.version != CACHE_VERSION
        || entry.object != object
        || entry.family != family
        || entry.n != n
        || entry.strategy != strategy
        || payload_hash(&entry.payload) != entry.sha256
    {
        return None;
    }
    Some(entry.payload)
}

/// Persist a payload; errors are surfaced (a broken cache dir is an
/// internal error, not silent data loss).
pub fn store(
    dir: &Path,
    object: &str,
    family: &str,
    n: u64,
    strategy: &str,
    payload: &Value,
) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating cache dir {}", dir.display()))?;
    let entry = CacheEntry {
        version: CACHE_VERSION,
        object: object.to_string(),
        family: family.to_string(),
        n,
        strategy: strategy.to_string(),
        sha256: payload_hash(payload),
        payload: payload.clone(),
    };
    let path = entry_path(dir, object, family, n, strategy);
    let text = serde_json::to_string(&entry).expect("entry serializes");
    fs::write(&path, text).with_context(|| format!("writing cache entry {}", path.display()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_validation() {
        let dir = std::env::temp_dir().join(format!("subsum-cache-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let payload = serde_json::json!({"coeffs": ["3", "2", "4", "2", "3"]});
        store(&dir, "num", "all", 3, "default", &payload).unwrap();
        assert_eq!(
            load(&dir, "num", "all", 3, "default"),
            Some(payload.clone())
        );
        // Key mismatch misses.
        assert_eq!(load(&dir, "num", "all", 4, "default"), None);
        // A version bump invalidates.
        let path = entry_path(&dir, "num", "all", 3, "default");
        let pristine = fs::read_to_string(&path).unwrap();
        fs::write(&path, pristine.replace("\"version\":1", "\"version\":99")).unwrap();
        assert_eq!(load(&dir, "num", "all", 3, "default"), None);
        // Corruption invalidates.
        fs::write(&path, pristine.replace("\"3\"", "\"9\"")).unwrap();
        assert_eq!(load(&dir, "num", "all", 3, "default"), None);
        let _ = fs::remove_dir_all(&dir);
    }
}
