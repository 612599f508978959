//! Content-addressed result cache. Keys are SHA-256 digests of the
//! canonical request; entries are written to a temporary file and renamed
//! into place.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

/// A finished command: the JSON report and the text summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Output {
    pub json: String,
    pub summary: String,
    pub exit_code: i32,
}

pub fn key(request: &serde_json::Value) -> String {
    // serde_json maps are ordered, so this rendering is canonical
    let bytes = serde_json::to_vec(request).expect("serializable");
    hex::encode(Sha256::digest(bytes))
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> Self {
        Cache {
            dir: dir.to_path_buf(),
        }
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// A missing or unreadable entry is a miss.
    pub fn get(&self, key: &str) -> Option<Output> {
        let text = std::fs::read_to_string(self.path(key)).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, key: &str, out: &Output) -> Result<(), CliError> {
        std::fs::create_dir_all(&self.dir)
            .map_err(|e| CliError::Io(format!("{}: {e}", self.dir.display())))?;
        let mut tmp =
            tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| CliError::Io(e.to_string()))?;
        let body = serde_json::to_vec(out).expect("serializable");
        tmp.write_all(&body)
            .map_err(|e| CliError::Io(e.to_string()))?;
        tmp.persist(self.path(key))
            .map_err(|e| CliError::Io(e.to_string()))?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_key_stability() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path());
        let req = serde_json::json!({"command": "resolve", "p": 7});
        let k = key(&req);
        assert_eq!(k, key(&serde_json::json!({"p": 7, "command": "resolve"})));
        assert!(cache.get(&k).is_none());
        let out = Output {
            json: "{}".into(),
            summary: "ok".into(),
            exit_code: 0,
        };
        cache.put(&k, &out).unwrap();
        assert_eq!(cache.get(&k), Some(out));
        // no stray temporaries
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
