//! Content-addressed result cache.
//!
//! One JSON file per key. Readers take a shared lock on `.lock` in the cache
//! directory and writers an exclusive one; entries are written to a temporary
//! file and renamed into place, so a crashed writer never leaves a torn entry.

use std::fs::{self, File, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Bumped whenever a result could change for the same job.
pub const CODE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+r1");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub key: String,
    pub version: String,
    pub created_at: u64,
    pub payload_sha256: String,
    pub payload: String,
}

impl CacheEntry {
    pub fn new(key: String, payload: String) -> Self {
        let created_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        CacheEntry { key, version: CODE_VERSION.into(), created_at, payload_sha256: sha256_hex(&payload), payload }
    }

    fn is_sound(&self, key: &str) -> bool {
        self.key == key && self.version == CODE_VERSION && self.payload_sha256 == sha256_hex(&self.payload)
    }
}

pub fn sha256_hex(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

/// Key of a job identity; `serde_json` maps are sorted, so this is canonical.
pub fn key_of(identity: &Value) -> String {
    sha256_hex(&identity.to_string())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lookup {
    Hit(String),
    Miss,
    /// present but unreadable or failing its checksum
    Corrupt,
}

#[derive(Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn default_dir() -> PathBuf {
        std::env::var_os("SILC_CACHE").map(PathBuf::from).unwrap_or_else(|| PathBuf::from(".silc-cache"))
    }

    pub fn open(dir: &Path) -> io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    fn lock_file(&self) -> io::Result<File> {
        OpenOptions::new().create(true).truncate(false).read(true).write(true).open(self.dir.join(".lock"))
    }

    pub fn get(&self, key: &str) -> Lookup {
        // a cache we cannot lock is still readable; the rename keeps entries whole
        let lock = self.lock_file().ok();
        if let Some(l) = &lock {
            let _ = l.lock_shared();
        }
        let text = match fs::read_to_string(self.path(key)) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Lookup::Miss,
            Err(_) => return Lookup::Corrupt,
        };
        match serde_json::from_str::<CacheEntry>(&text) {
            Ok(entry) if entry.is_sound(key) => Lookup::Hit(entry.payload),
            _ => Lookup::Corrupt,
        }
    }

    pub fn put(&self, entry: &CacheEntry) -> io::Result<()> {
        let lock = self.lock_file()?;
        lock.lock()?;
        let tmp = self.dir.join(format!(".{}.{}.tmp", entry.key, std::process::id()));
        let result = (|| {
            let mut f = File::create(&tmp)?;
            f.write_all(serde_json::to_string(entry).map_err(io::Error::other)?.as_bytes())?;
            f.sync_all()?;
            fs::rename(&tmp, self.path(&entry.key))
        })();
        if result.is_err() {
            let _ = fs::remove_file(&tmp);
        }
        result
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_and_corruption() {
        let dir = std::env::temp_dir().join(format!("silc-cache-test-{}", std::process::id()));
        let c = Cache::open(&dir).unwrap();
        let key = key_of(&serde_json::json!({"a": 1}));
        assert_eq!(c.get(&key), Lookup::Miss);
        let payload = "{\"result\": [1, 2]}\n".to_string();
        c.put(&CacheEntry::new(key.clone(), payload.clone())).unwrap();
        assert_eq!(c.get(&key), Lookup::Hit(payload));
        let path = c.path(&key);
        let text = fs::read_to_string(&path).unwrap().replace("[1, 2]", "[1, 3]");
        fs::write(&path, text).unwrap();
        assert_eq!(c.get(&key), Lookup::Corrupt);
        fs::write(&path, "not json").unwrap();
        assert_eq!(c.get(&key), Lookup::Corrupt);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn key_depends_on_every_field() {
        let a = key_of(&serde_json::json!({"command": "pieri", "version": CODE_VERSION}));
        let b = key_of(&serde_json::json!({"command": "pieri", "version": "0.0.0"}));
        assert_ne!(a, b);
    }
}
