//! On-disk result cache keyed by a content hash of the request.
//!
//! Each entry is one JSON file `<key>.json` holding the key, the payload and
//! a creation timestamp. Writes go to a temporary file in the same directory
//! and are renamed into place, so readers never see a partial entry. Entries
//! are re-validated by the caller on every read; a stale or corrupt entry is
//! treated as a miss and overwritten.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use sdepth_core::certificate::{canonical_encoding, sha256_hex};
use sdepth_core::{MonomialIdeal, ENGINE_VERSION};
use serde::{Deserialize, Serialize};
use tempfile::NamedTempFile;

use crate::error::LabError;

#[derive(Debug, Serialize, Deserialize)]
struct Record {
    key: String,
    payload: String,
    created_unix: u64,
}

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

/// Hash of the command, both ideals, the box corner and the engine version.
pub fn cache_key(
    command: &str,
    numerator: &MonomialIdeal,
    denominator: &MonomialIdeal,
    g: &[u32],
) -> String {
    let g: Vec<String> = g.iter().map(u32::to_string).collect();
    sha256_hex(&format!(
        "{command}|{}|{}|{}|{ENGINE_VERSION}",
        canonical_encoding(numerator),
        canonical_encoding(denominator),
        g.join(",")
    ))
}

impl Cache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, LabError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| LabError::io(&dir, e))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// The stored payload, if present, well-formed and accepted by `valid`.
    pub fn load(&self, key: &str, valid: impl Fn(&str) -> bool) -> Option<String> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let record: Record = serde_json::from_str(&text).ok()?;
        (record.key == key && valid(&record.payload)).then_some(record.payload)
    }

    pub fn store(&self, key: &str, payload: &str) -> Result<(), LabError> {
        let record = Record {
            key: key.to_string(),
            payload: payload.to_string(),
            created_unix: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        };
        let body = serde_json::to_string_pretty(&record).expect("serializable");
        let mut tmp = NamedTempFile::new_in(&self.dir).map_err(|e| LabError::io(&self.dir, e))?;
        tmp.write_all(body.as_bytes())
            .map_err(|e| LabError::io(tmp.path(), e))?;
        let target = self.path(key);
        tmp.persist(&target)
            .map_err(|e| LabError::io(&target, e.error))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path().join("c")).unwrap();
        let m = MonomialIdeal::maximal(2).unwrap();
        let z = MonomialIdeal::zero(2);
        let key = cache_key("sdepth", &m, &z, &[1, 1]);
        assert_eq!(cache.load(&key, |_| true), None);
        cache.store(&key, "payload").unwrap();
        assert_eq!(cache.load(&key, |_| true).as_deref(), Some("payload"));
        assert_eq!(cache.load(&key, |_| false), None);

        fs::write(cache.path(&key), "{ not json").unwrap();
        assert_eq!(cache.load(&key, |_| true), None);
    }

    #[test]
    fn keys_separate_inputs() {
        let m = MonomialIdeal::maximal(2).unwrap();
        let z = MonomialIdeal::zero(2);
        let a = cache_key("sdepth", &m, &z, &[1, 1]);
        assert_ne!(a, cache_key("quotient", &m, &z, &[1, 1]));
        assert_ne!(a, cache_key("sdepth", &m, &z, &[2, 1]));
        assert_eq!(a, cache_key("sdepth", &m.clone(), &z, &[1, 1]));
    }
}
