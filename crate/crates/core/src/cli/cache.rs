//! On-disk cache for parameter-free structure (fields, class groups).
//!
//! One file per key, `{family}-D{D}-N{N}-v{version}.json`, holding the
//! serialized payload and its SHA-256.  Writes go to a temporary file in the
//! same directory and are renamed into place.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub family: String,
    pub d: i64,
    pub n: u64,
    pub version: u32,
}

impl CacheKey {
    pub fn file_name(&self) -> String {
        format!("{}-D{}-N{}-v{}.json", self.family, self.d, self.n, self.version)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: CacheKey,
    /// The payload as compact JSON.
    pub payload: String,
    /// Lowercase hex SHA-256 of `payload`.
    pub checksum: String,
}

pub fn sha256_hex(data: &[u8]) -> String {
    Sha256::digest(data)
        .iter()
        .map(|b| format!("{:02x}", b))
        .collect()
}

impl CacheEntry {
    pub fn new(key: CacheKey, payload: &Value) -> Self {
        let payload = serde_json::to_string(payload).expect("JSON values serialize");
        let checksum = sha256_hex(payload.as_bytes());
        CacheEntry { key, payload, checksum }
    }

    fn validate(&self, key: &CacheKey) -> std::result::Result<Value, String> {
        if &self.key != key {
            return Err("key or version mismatch".into());
        }
        if sha256_hex(self.payload.as_bytes()) != self.checksum {
            return Err("checksum mismatch".into());
        }
        serde_json::from_str(&self.payload).map_err(|e| format!("payload does not parse: {}", e))
    }
}

#[derive(Clone, Debug)]
pub struct Cache {
    pub dir: PathBuf,
    pub version: u32,
}

/// Result of a cache lookup.
#[derive(Clone, Debug)]
pub struct Cached {
    pub payload: Value,
    pub hit: bool,
    pub warnings: Vec<String>,
}

impl Cache {
    /// Opens (creating if needed) the cache directory.
    pub fn open(dir: &Path, version: u32) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::Resource(format!("cache directory {} is not usable: {}", dir.display(), e)))?;
        Ok(Cache {
            dir: dir.to_path_buf(),
            version,
        })
    }

    pub fn key(&self, family: &str, d: i64, n: u64) -> CacheKey {
        CacheKey {
            family: family.to_string(),
            d,
            n,
            version: self.version,
        }
    }

    pub fn path(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(key.file_name())
    }

    fn load(&self, key: &CacheKey) -> Option<std::result::Result<Value, String>> {
        let path = self.path(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return None,
            Err(e) => return Some(Err(format!("unreadable: {}", e))),
        };
        Some(
            serde_json::from_str::<CacheEntry>(&text)
                .map_err(|e| format!("corrupt entry: {}", e))
                .and_then(|entry| entry.validate(key)),
        )
    }

    fn store(&self, key: &CacheKey, payload: &Value) -> std::result::Result<(), String> {
        let entry = CacheEntry::new(key.clone(), payload);
        let text = serde_json::to_string(&entry).expect("cache entries serialize");
        let path = self.path(key);
        let tmp = self.dir.join(format!(".{}.{}.tmp", key.file_name(), std::process::id()));
        let write = || -> std::io::Result<()> {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(text.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, &path)
        };
        write().map_err(|e| {
            let _ = fs::remove_file(&tmp);
            format!("cannot write cache entry {}: {}", path.display(), e)
        })
    }

    /// The cached payload for (family, D, N), computing and storing it on a
    /// miss.  Unreadable or corrupt entries are recomputed with a warning.
    pub fn get_or_compute(
        &self,
        family: &str,
        d: i64,
        n: u64,
        compute: impl FnOnce() -> Result<Value>,
    ) -> Result<Cached> {
        let key = self.key(family, d, n);
        let mut warnings = Vec::new();
        match self.load(&key) {
            Some(Ok(payload)) => {
                return Ok(Cached {
                    payload,
                    hit: true,
                    warnings,
                })
            }
            Some(Err(why)) => warnings.push(format!(
                "cache entry {} discarded ({}); recomputed",
                key.file_name(),
                why
            )),
            None => {}
        }
        let payload = compute()?;
        self.store(&key, &payload).map_err(Error::Resource)?;
        Ok(Cached {
            payload,
            hit: false,
            warnings,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn compute() -> Result<Value> {
        Ok(json!({"x": "1/2"}))
    }

    #[test]
    fn hit_after_miss_and_recovery_from_truncation() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path(), 1).unwrap();
        let a = c.get_or_compute("field", 5, 1, compute).unwrap();
        assert!(!a.hit);
        let b = c.get_or_compute("field", 5, 1, compute).unwrap();
        assert!(b.hit);
        assert_eq!(a.payload, b.payload);
        let p = c.path(&c.key("field", 5, 1));
        let text = fs::read_to_string(&p).unwrap();
        fs::write(&p, &text[..text.len() / 2]).unwrap();
        let r = c.get_or_compute("field", 5, 1, compute).unwrap();
        assert!(!r.hit);
        assert_eq!(r.warnings.len(), 1);
        assert!(c.get_or_compute("field", 5, 1, compute).unwrap().hit);
    }

    #[test]
    fn tampered_payload_fails_the_checksum() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::open(dir.path(), 1).unwrap();
        c.get_or_compute("field", 2, 1, compute).unwrap();
        let p = c.path(&c.key("field", 2, 1));
        let text = fs::read_to_string(&p).unwrap().replace("1/2", "1/3");
        fs::write(&p, text).unwrap();
        let r = c.get_or_compute("field", 2, 1, compute).unwrap();
        assert!(!r.hit);
        assert!(r.warnings[0].contains("checksum"));
    }

    #[test]
    fn version_bump_misses() {
        let dir = tempfile::tempdir().unwrap();
        let c1 = Cache::open(dir.path(), 1).unwrap();
        c1.get_or_compute("classgroup", 5, 3, compute).unwrap();
        let c2 = Cache::open(dir.path(), 2).unwrap();
        assert!(!c2.get_or_compute("classgroup", 5, 3, compute).unwrap().hit);
        // an old entry copied under the new name is rejected as well
        let old = fs::read_to_string(c1.path(&c1.key("classgroup", 5, 3))).unwrap();
        fs::write(c2.path(&c2.key("classgroup", 5, 7)), old).unwrap();
        let r = c2.get_or_compute("classgroup", 5, 7, compute).unwrap();
        assert!(!r.hit && r.warnings[0].contains("mismatch"));
    }
}
