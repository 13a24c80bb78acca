use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use parking_lot::RwLock;
use serde::de::DeserializeOwned;
use serde::Serialize;

use super::index::{Applied, CommentIndex, StockIndex};
use super::keywords::KeywordFilter;
use super::naming::{index_for_stock, index_for_subreddit, IndexName, IndexPrefix};
use super::{
    check_range, CommentDoc, Document, DocumentStore, SentimentBucket, SentimentQuery, StockBar,
    StoreError, UpsertOutcome, SEGMENT_FILE,
};
use crate::sentiment::NeutralBand;

enum IndexData {
    Comments(CommentIndex),
    Stocks(StockIndex),
}

impl IndexData {
    fn empty(prefix: IndexPrefix) -> Self {
        match prefix {
            IndexPrefix::Subreddit => IndexData::Comments(CommentIndex::default()),
            IndexPrefix::Stock => IndexData::Stocks(StockIndex::default()),
        }
    }

    fn len(&self) -> usize {
        match self {
            IndexData::Comments(idx) => idx.len(),
            IndexData::Stocks(idx) => idx.len(),
        }
    }
}

struct Segment {
    path: PathBuf,
    file: File,
}

impl Segment {
    fn append<T: Serialize>(&mut self, doc: &T) -> Result<(), StoreError> {
        let mut line = serde_json::to_vec(doc).expect("documents serialize");
        line.push(b'\n');
        self.file.write_all(&line).map_err(|source| StoreError::Io {
            path: self.path.clone(),
            source,
        })
    }
}

struct IndexSlot {
    data: IndexData,
    segment: Option<Segment>,
}

type SharedSlot = Arc<RwLock<IndexSlot>>;

/// The embedded store: in-memory indices, optionally backed by one
/// `<root>/<index>/segments.jsonl` file per index.
///
/// Every accepted change appends one JSON line; re-upserting an identical
/// document writes nothing, so replaying a delivery leaves the files untouched.
pub struct EmbeddedStore {
    root: Option<PathBuf>,
    indices: RwLock<BTreeMap<IndexName, SharedSlot>>,
}

impl EmbeddedStore {
    /// A store with no disk I/O.
    pub fn in_memory() -> Self {
        Self {
            root: None,
            indices: RwLock::new(BTreeMap::new()),
        }
    }

    /// Opens (creating if needed) a store rooted at `root` and replays every
    /// index segment found there.
    pub fn open(root: impl AsRef<Path>) -> Result<Self, StoreError> {
        let root = root.as_ref().to_path_buf();
        fs::create_dir_all(&root).map_err(|source| io_err(&root, source))?;
        let mut indices = BTreeMap::new();
        let entries = fs::read_dir(&root).map_err(|source| io_err(&root, source))?;
        for entry in entries {
            let entry = entry.map_err(|source| io_err(&root, source))?;
            if !entry.path().is_dir() {
                continue;
            }
            let dir_name = entry.file_name();
            let Some(name) = dir_name.to_str().and_then(|n| IndexName::parse(n).ok()) else {
                tracing::warn!(dir = ?entry.path(), "skipping directory that is not an index");
                continue;
            };
            let slot = load_index(&root, &name)?;
            indices.insert(name, Arc::new(RwLock::new(slot)));
        }
        tracing::info!(root = %root.display(), indices = indices.len(), "store opened");
        Ok(Self {
            root: Some(root),
            indices: RwLock::new(indices),
        })
    }

    pub fn root(&self) -> Option<&Path> {
        self.root.as_deref()
    }

    fn slot(&self, name: &IndexName) -> Option<SharedSlot> {
        self.indices.read().get(name).cloned()
    }

    fn slot_or_create(&self, name: &IndexName) -> Result<SharedSlot, StoreError> {
        if let Some(slot) = self.slot(name) {
            return Ok(slot);
        }
        let mut indices = self.indices.write();
        if let Some(slot) = indices.get(name) {
            return Ok(slot.clone());
        }
        let segment = match &self.root {
            Some(root) => Some(open_segment(root, name)?),
            None => None,
        };
        let slot = Arc::new(RwLock::new(IndexSlot {
            data: IndexData::empty(name.prefix()),
            segment,
        }));
        indices.insert(name.clone(), slot.clone());
        Ok(slot)
    }
}

impl DocumentStore for EmbeddedStore {
    fn upsert_comment(&self, doc: CommentDoc) -> Result<UpsertOutcome, StoreError> {
        doc.validate()?;
        let name = index_for_subreddit(&doc.subreddit)?;
        let slot = self.slot_or_create(&name)?;
        let mut slot = slot.write();
        let IndexSlot { data, segment } = &mut *slot;
        let IndexData::Comments(index) = data else {
            unreachable!("r_ index always holds comments");
        };
        let applied = index.probe(&doc);
        if applied != Applied::Unchanged {
            if let Some(segment) = segment {
                segment.append(&doc)?;
            }
            index.apply(doc);
        }
        Ok(outcome(applied))
    }

    fn upsert_stock(&self, bar: StockBar) -> Result<UpsertOutcome, StoreError> {
        bar.validate()?;
        let name = index_for_stock(&bar.stock)?;
        let slot = self.slot_or_create(&name)?;
        let mut slot = slot.write();
        let IndexSlot { data, segment } = &mut *slot;
        let IndexData::Stocks(index) = data else {
            unreachable!("f_ index always holds stock bars");
        };
        let applied = index.probe(&bar);
        if applied != Applied::Unchanged {
            if let Some(segment) = segment {
                segment.append(&bar)?;
            }
            index.apply(bar);
        }
        Ok(outcome(applied))
    }

    fn get_by_id(&self, index: &IndexName, id: &str) -> Option<Document> {
        let slot = self.slot(index)?;
        let slot = slot.read();
        match &slot.data {
            IndexData::Comments(idx) => idx.get(id).cloned().map(Document::Comment),
            IndexData::Stocks(idx) => idx.get(id).cloned().map(Document::Stock),
        }
    }

    fn aggregate_sentiment(
        &self,
        query: &SentimentQuery,
        band: NeutralBand,
    ) -> Result<Vec<SentimentBucket>, StoreError> {
        let count = query.bucket_count()?;
        let filter = KeywordFilter::new(&query.keywords)?;
        let name = index_for_subreddit(&query.subreddit)?;
        let Some(slot) = self.slot(&name) else {
            return Ok((0..count)
                .map(|i| SentimentBucket::empty(query.from + i as i64 * query.bucket_width))
                .collect());
        };
        let slot = slot.read();
        let IndexData::Comments(index) = &slot.data else {
            unreachable!("r_ index always holds comments");
        };
        Ok(index.aggregate(&filter, query.from, query.to, query.bucket_width, count, band))
    }

    fn stock_series(&self, ticker: &str, from: i64, to: i64) -> Result<Vec<StockBar>, StoreError> {
        check_range(from, to)?;
        let name = index_for_stock(ticker)?;
        let Some(slot) = self.slot(&name) else {
            return Ok(Vec::new());
        };
        let slot = slot.read();
        let IndexData::Stocks(index) = &slot.data else {
            unreachable!("f_ index always holds stock bars");
        };
        Ok(index.range(from, to))
    }

    fn list_indices(&self, prefix: IndexPrefix) -> Vec<IndexName> {
        self.indices
            .read()
            .keys()
            .filter(|name| name.prefix() == prefix)
            .cloned()
            .collect()
    }

    fn index_len(&self, index: &IndexName) -> usize {
        self.slot(index).map_or(0, |slot| slot.read().data.len())
    }

    fn len(&self) -> usize {
        let slots: Vec<SharedSlot> = self.indices.read().values().cloned().collect();
        slots.iter().map(|slot| slot.read().data.len()).sum()
    }
}

fn outcome(applied: Applied) -> UpsertOutcome {
    match applied {
        Applied::Created => UpsertOutcome::Created,
        Applied::Replaced | Applied::Unchanged => UpsertOutcome::Updated,
    }
}

fn io_err(path: &Path, source: std::io::Error) -> StoreError {
    StoreError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn open_segment(root: &Path, name: &IndexName) -> Result<Segment, StoreError> {
    let dir = root.join(name.as_str());
    fs::create_dir_all(&dir).map_err(|source| io_err(&dir, source))?;
    let path = dir.join(SEGMENT_FILE);
    let file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&path)
        .map_err(|source| io_err(&path, source))?;
    Ok(Segment { path, file })
}

fn load_index(root: &Path, name: &IndexName) -> Result<IndexSlot, StoreError> {
    let path = root.join(name.as_str()).join(SEGMENT_FILE);
    let mut data = IndexData::empty(name.prefix());
    if path.exists() {
        let bytes = fs::read(&path).map_err(|source| io_err(&path, source))?;
        let keep = match &mut data {
            IndexData::Comments(idx) => replay::<CommentDoc>(&path, &bytes, |doc| {
                doc.validate().map_err(|e| e.to_string())?;
                belongs(name, index_for_subreddit(&doc.subreddit))?;
                idx.apply(doc);
                Ok(())
            })?,
            IndexData::Stocks(idx) => replay::<StockBar>(&path, &bytes, |bar| {
                bar.validate().map_err(|e| e.to_string())?;
                belongs(name, index_for_stock(&bar.stock))?;
                idx.apply(bar);
                Ok(())
            })?,
        };
        repair_tail(&path, &bytes, keep)?;
    }
    let segment = open_segment(root, name)?;
    Ok(IndexSlot {
        data,
        segment: Some(segment),
    })
}

fn belongs(
    name: &IndexName,
    derived: Result<IndexName, super::NameError>,
) -> Result<(), String> {
    match derived {
        Ok(ref d) if d == name => Ok(()),
        Ok(d) => Err(format!("document belongs to index {d}")),
        Err(e) => Err(e.to_string()),
    }
}

/// Applies every complete line. A final line without a newline is a torn
/// write: it is kept when it parses and dropped otherwise. Returns the byte
/// length of the valid prefix.
fn replay<T: DeserializeOwned>(
    path: &Path,
    bytes: &[u8],
    mut apply: impl FnMut(T) -> Result<(), String>,
) -> Result<usize, StoreError> {
    let mut offset = 0;
    let mut line_no = 0;
    while offset < bytes.len() {
        line_no += 1;
        let rest = &bytes[offset..];
        let (line, next, complete) = match rest.iter().position(|&b| b == b'\n') {
            Some(n) => (&rest[..n], offset + n + 1, true),
            None => (rest, bytes.len(), false),
        };
        if line.iter().all(u8::is_ascii_whitespace) {
            offset = next;
            continue;
        }
        let corrupt = |reason: String| StoreError::Corrupt {
            path: path.to_path_buf(),
            line: line_no,
            reason,
        };
        match serde_json::from_slice::<T>(line) {
            Ok(doc) => apply(doc).map_err(corrupt)?,
            Err(_) if !complete => {
                tracing::warn!(path = %path.display(), line = line_no, "dropping torn trailing record");
                return Ok(offset);
            }
            Err(err) => return Err(corrupt(err.to_string())),
        }
        offset = next;
    }
    Ok(bytes.len())
}

fn repair_tail(path: &Path, bytes: &[u8], keep: usize) -> Result<(), StoreError> {
    if keep < bytes.len() {
        let file = OpenOptions::new()
            .write(true)
            .open(path)
            .map_err(|source| io_err(path, source))?;
        file.set_len(keep as u64).map_err(|source| io_err(path, source))?;
    } else if bytes.last().is_some_and(|&b| b != b'\n') {
        let mut file = OpenOptions::new()
            .append(true)
            .open(path)
            .map_err(|source| io_err(path, source))?;
        file.write_all(b"\n").map_err(|source| io_err(path, source))?;
    }
    Ok(())
}
