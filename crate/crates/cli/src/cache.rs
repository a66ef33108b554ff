//! Content-addressed result cache: one JSON file per entry, named by the
//! SHA-256 of its key, with a checksum over the payload.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Bumped whenever a payload layout changes; older entries are ignored.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub schema_version: u32,
    pub space: String,
    pub kind: String,
    pub params: Vec<(String, String)>,
}

impl CacheKey {
    pub fn new(space: &str, kind: &str, params: &[(&str, String)]) -> Self {
        CacheKey {
            schema_version: SCHEMA_VERSION,
            space: space.to_string(),
            kind: kind.to_string(),
            params: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
        }
    }

    fn digest(&self) -> String {
        let text = serde_json::to_string(self).expect("keys serialise");
        hex::encode(Sha256::digest(text.as_bytes()))
    }
}

#[derive(Serialize, Deserialize)]
struct Entry {
    key: CacheKey,
    payload: Value,
    checksum: String,
}

fn checksum(payload: &Value) -> String {
    let text = serde_json::to_string(payload).expect("values serialise");
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    pub fn path_for(&self, key: &CacheKey) -> PathBuf {
        self.dir.join(format!("{}.json", key.digest()))
    }

    /// `Ok(None)` on a miss; `Err` with a reason when an entry exists but is unusable.
    pub fn get<T: DeserializeOwned>(&self, key: &CacheKey) -> Result<Option<T>, String> {
        let path = self.path_for(key);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(format!("{}: {e}", path.display())),
        };
        let entry: Entry =
            serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
        if entry.key != *key {
            return Err(format!("{}: key mismatch", path.display()));
        }
        if entry.checksum != checksum(&entry.payload) {
            return Err(format!("{}: checksum mismatch", path.display()));
        }
        serde_json::from_value(entry.payload)
            .map(Some)
            .map_err(|e| format!("{}: {e}", path.display()))
    }

    /// Writes through a temporary file and renames it into place.
    pub fn put<T: Serialize>(&self, key: &CacheKey, value: &T) -> std::io::Result<()> {
        let payload = serde_json::to_value(value).map_err(std::io::Error::other)?;
        let entry = Entry {
            key: key.clone(),
            checksum: checksum(&payload),
            payload,
        };
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        serde_json::to_writer_pretty(&mut tmp, &entry).map_err(std::io::Error::other)?;
        tmp.write_all(b"\n")?;
        tmp.persist(self.path_for(key)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }
}

/// Looks `key` up, or computes and stores it. Unusable entries are reported
/// on stderr and overwritten.
pub fn cached<T, E>(
    cache: Option<&Cache>,
    key: &CacheKey,
    compute: impl FnOnce() -> Result<T, E>,
) -> Result<T, E>
where
    T: Serialize + DeserializeOwned,
{
    let Some(cache) = cache else {
        return compute();
    };
    match cache.get(key) {
        Ok(Some(v)) => return Ok(v),
        Ok(None) => {}
        Err(reason) => eprintln!("warning: discarding cache entry ({reason}); recomputing"),
    }
    let value = compute()?;
    if let Err(e) = cache.put(key, &value) {
        eprintln!("warning: could not write cache entry: {e}");
    }
    Ok(value)
}
