use std::path::{Path, PathBuf};

use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

pub const TRACKED_FILE: &str = "tracked.json";

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrackedLists {
    pub subreddits: Vec<String>,
    pub tickers: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum TrackError {
    #[error("{0} must not be empty")]
    Empty(&'static str),
    #[error("cannot persist tracked lists: {0}")]
    Io(String),
}

/// Insertion-ordered sets of subreddits and tickers. Mutations are serialized
/// and, when a path is set, written through to disk.
#[derive(Debug, Default)]
pub struct TrackedSets {
    lists: Mutex<TrackedLists>,
    path: Option<PathBuf>,
}

pub fn normalize_subreddit(name: &str) -> String {
    let name = name.trim();
    let name = name
        .strip_prefix("/r/")
        .or_else(|| name.strip_prefix("r/"))
        .unwrap_or(name);
    name.to_lowercase()
}

pub fn normalize_ticker(symbol: &str) -> String {
    symbol.trim().to_uppercase()
}

impl TrackedSets {
    pub fn in_memory() -> Self {
        Self::default()
    }

    /// Loads `<dir>/tracked.json` when present.
    pub fn persistent(dir: &Path) -> Result<Self, TrackError> {
        let path = dir.join(TRACKED_FILE);
        let lists = match std::fs::read(&path) {
            Ok(bytes) => serde_json::from_slice(&bytes).map_err(|e| TrackError::Io(e.to_string()))?,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => TrackedLists::default(),
            Err(e) => return Err(TrackError::Io(e.to_string())),
        };
        Ok(Self {
            lists: Mutex::new(lists),
            path: Some(path),
        })
    }

    pub fn snapshot(&self) -> TrackedLists {
        self.lists.lock().clone()
    }

    pub fn subreddits(&self) -> Vec<String> {
        self.lists.lock().subreddits.clone()
    }

    pub fn tickers(&self) -> Vec<String> {
        self.lists.lock().tickers.clone()
    }

    /// Returns true when newly added.
    pub fn track_subreddit(&self, name: &str) -> Result<bool, TrackError> {
        let name = normalize_subreddit(name);
        if name.is_empty() {
            return Err(TrackError::Empty("subreddit"));
        }
        self.insert(name, |l| &mut l.subreddits)
    }

    pub fn track_ticker(&self, symbol: &str) -> Result<bool, TrackError> {
        let symbol = normalize_ticker(symbol);
        if symbol.is_empty() {
            return Err(TrackError::Empty("ticker"));
        }
        self.insert(symbol, |l| &mut l.tickers)
    }

    fn insert(
        &self,
        value: String,
        pick: impl Fn(&mut TrackedLists) -> &mut Vec<String>,
    ) -> Result<bool, TrackError> {
        let mut lists = self.lists.lock();
        if pick(&mut lists).contains(&value) {
            return Ok(false);
        }
        let mut next = lists.clone();
        pick(&mut next).push(value);
        if let Some(path) = &self.path {
            write_atomic(path, &serde_json::to_vec_pretty(&next).expect("lists serialize"))
                .map_err(|e| TrackError::Io(e.to_string()))?;
        }
        *lists = next;
        Ok(true)
    }
}

pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)
}
