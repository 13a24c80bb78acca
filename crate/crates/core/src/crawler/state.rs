use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum StateError {
    #[error("cannot read state file {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("state file {path} is not a JSON map: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("cannot write state file {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },
}

/// Progress markers (cursor or watermark) keyed by subreddit or ticker,
/// persisted as a JSON map. Writes go through a temp file and rename.
#[derive(Debug, Clone, Default)]
pub struct StateFile<V> {
    path: Option<PathBuf>,
    entries: BTreeMap<String, V>,
}

impl<V: Serialize + DeserializeOwned + Clone + PartialEq> StateFile<V> {
    pub fn in_memory() -> Self {
        Self {
            path: None,
            entries: BTreeMap::new(),
        }
    }

    /// Missing file means no progress yet.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self, StateError> {
        let path = path.into();
        let entries = match std::fs::read(&path) {
            Ok(bytes) => serde_json::from_slice(&bytes).map_err(|source| StateError::Parse {
                path: path.clone(),
                source,
            })?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => BTreeMap::new(),
            Err(source) => return Err(StateError::Read { path, source }),
        };
        Ok(Self {
            path: Some(path),
            entries,
        })
    }

    pub fn path(&self) -> Option<&Path> {
        self.path.as_deref()
    }

    pub fn get(&self, key: &str) -> Option<&V> {
        self.entries.get(key)
    }

    pub fn entries(&self) -> &BTreeMap<String, V> {
        &self.entries
    }

    /// Stores all `updates` in one write. Unchanged values cause no I/O.
    pub fn commit(&mut self, updates: impl IntoIterator<Item = (String, V)>) -> Result<(), StateError> {
        let mut next = self.entries.clone();
        for (k, v) in updates {
            next.insert(k, v);
        }
        if next == self.entries {
            return Ok(());
        }
        if let Some(path) = &self.path {
            let bytes = serde_json::to_vec_pretty(&next).expect("state map serializes");
            write_atomic(path, &bytes).map_err(|source| StateError::Write {
                path: path.clone(),
                source,
            })?;
        }
        self.entries = next;
        Ok(())
    }
}

fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}
